#include "nilsampler/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nilsampler {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + " is missing or has the wrong type");
    }
}

std::int64_t get_int(const json& v, const std::string& what) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) return std::int64_t(d);
    }
    throw ConfigError(what + " must be an integer");
}

std::string num(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<OrbitGenerator> parse_generators(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + " must be an array");
    std::vector<OrbitGenerator> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        only_keys(arr[i], {"element", "exponent"}, at);
        if (!arr[i].contains("element") || !arr[i].contains("exponent"))
            throw ConfigError(at + " needs element and exponent");
        HardyExpr f;
        try {
            f = parse_hardy(get<std::string>(arr[i], "exponent", at));
        } catch (const ParseError& e) {
            throw ConfigError(at + ".exponent: " + e.what());
        }
        out.push_back({parse_element(arr[i]["element"]), f});
    }
    return out;
}

}  // namespace

DoubleDouble parse_scalar(const json& v) {
    if (v.is_number()) return DoubleDouble(v.get<double>());
    if (!v.is_string()) throw ConfigError("scalar must be a number or a string");
    const std::string text = v.get<std::string>();
    try {
        return parse_dd(text);
    } catch (const std::exception&) {
    }
    HardyExpr c;
    try {
        c = parse_hardy(text);
    } catch (const ParseError& e) {
        throw ConfigError("cannot read scalar \"" + text + "\": " + e.what());
    }
    if (c.is_zero()) return DoubleDouble(0);
    if (c.terms().size() != 1 || !(c.level() == GrowthLevel::one()))
        throw ConfigError("scalar \"" + text + "\" depends on t");
    return c.dominant().coeff.value();
}

GroupElement<DoubleDouble> parse_element(const json& v) {
    if (!v.is_object()) throw ConfigError("group element must be an object");
    if (v.contains("heisenberg")) {
        only_keys(v, {"heisenberg"}, "element");
        const auto& h = v["heisenberg"];
        if (!h.is_array() || h.size() != 3) throw ConfigError("heisenberg needs [x, y, z]");
        return GroupElement<DoubleDouble>::heisenberg(parse_scalar(h[0]), parse_scalar(h[1]), parse_scalar(h[2]));
    }
    only_keys(v, {"dim", "entries"}, "element");
    const int n = int(get_int(v.value("dim", json()), "element.dim"));
    if (n < 2 || n > 12) throw ConfigError("element.dim must be between 2 and 12");
    GroupElement<DoubleDouble> g(n);
    if (!v.contains("entries")) return g;
    if (!v["entries"].is_object()) throw ConfigError("element.entries must be an object");
    for (const auto& [key, val] : v["entries"].items()) {
        int i = 0, j = 0;
        char comma = 0;
        std::istringstream is(key);
        if (!(is >> i >> comma >> j) || comma != ',' || !is.eof() || i < 1 || j <= i || j > n)
            throw ConfigError("entry key \"" + key + "\" must be \"i,j\" with 1 <= i < j <= dim");
        g.set(i - 1, j - 1, parse_scalar(val));
    }
    return g;
}

ExperimentConfig parse_config(const json& doc) {
    only_keys(doc, {"group", "generators", "poly_parts", "range", "progression", "scheme", "analysis", "output",
                    "progression_sweep"},
              "config");
    ExperimentConfig cfg;
    cfg.canonical = doc;
    auto& s = cfg.orbit;

    if (!doc.contains("group")) throw ConfigError("config.group is required");
    only_keys(doc["group"], {"dim"}, "group");
    s.dim = int(get_int(doc["group"].value("dim", json()), "group.dim"));
    if (s.dim < 2 || s.dim > 12) throw ConfigError("group.dim must be between 2 and 12");

    if (!doc.contains("generators")) throw ConfigError("config.generators is required");
    s.generators = parse_generators(doc["generators"], "generators");
    if (doc.contains("poly_parts")) s.poly_parts = parse_generators(doc["poly_parts"], "poly_parts");

    if (!doc.contains("range")) throw ConfigError("config.range is required");
    const auto& r = doc["range"];
    if (!r.is_array() || r.size() != 2) throw ConfigError("range must be [n_start, n_end]");
    s.n_start = get_int(r[0], "range[0]");
    s.n_end = get_int(r[1], "range[1]");
    if (doc.contains("progression")) {
        const auto& p = doc["progression"];
        if (!p.is_array() || p.size() != 2) throw ConfigError("progression must be [q, r]");
        s.q = get_int(p[0], "progression[0]");
        s.r = get_int(p[1], "progression[1]");
    }
    if (doc.contains("scheme")) {
        try {
            s.scheme = WScheme::parse(get<std::string>(doc, "scheme", "config"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (doc.contains("progression_sweep")) {
        cfg.progression_sweep = get_int(doc["progression_sweep"], "progression_sweep");
        if (*cfg.progression_sweep < 1) throw ConfigError("progression_sweep must be at least 1");
    }

    if (doc.contains("analysis")) {
        const auto& a = doc["analysis"];
        only_keys(a, {"max_freq", "thresholds", "l2_exact_limit", "vdc_H", "vdc_frequency"}, "analysis");
        if (a.contains("max_freq")) cfg.max_freq = int(get_int(a["max_freq"], "analysis.max_freq"));
        if (cfg.max_freq < 1) throw ConfigError("analysis.max_freq must be at least 1");
        if (a.contains("thresholds")) {
            only_keys(a["thresholds"], {"weyl", "discrepancy"}, "analysis.thresholds");
            if (a["thresholds"].contains("weyl"))
                cfg.thresholds.weyl = get<double>(a["thresholds"], "weyl", "analysis.thresholds");
            if (a["thresholds"].contains("discrepancy"))
                cfg.thresholds.discrepancy = get<double>(a["thresholds"], "discrepancy", "analysis.thresholds");
        }
        if (a.contains("l2_exact_limit"))
            cfg.l2_exact_limit = std::size_t(get_int(a["l2_exact_limit"], "analysis.l2_exact_limit"));
        if (a.contains("vdc_H")) cfg.vdc_H = int(get_int(a["vdc_H"], "analysis.vdc_H"));
        if (a.contains("vdc_frequency")) {
            if (!a["vdc_frequency"].is_array()) throw ConfigError("analysis.vdc_frequency must be an array");
            for (const auto& k : a["vdc_frequency"]) cfg.vdc_frequency.push_back(int(get_int(k, "vdc_frequency")));
        }
    }
    if (cfg.vdc_frequency.empty()) {
        cfg.vdc_frequency.assign(std::size_t(s.dim - 1), 0);
        cfg.vdc_frequency[0] = 1;
    }
    if (int(cfg.vdc_frequency.size()) != s.dim - 1)
        throw ConfigError("analysis.vdc_frequency needs one entry per torus coordinate");

    if (doc.contains("output")) {
        const auto& o = doc["output"];
        only_keys(o, {"report", "series", "dump"}, "output");
        if (o.contains("report")) cfg.report_path = get<std::string>(o, "report", "output");
        if (o.contains("series")) cfg.series_path = get<std::string>(o, "series", "output");
        if (o.contains("dump")) cfg.dump_path = get<std::string>(o, "dump", "output");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

std::string spec_hash(const json& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ordered_json to_json(const NormalForm& nf) {
    ordered_json j;
    j["g"] = ordered_json::array();
    for (const auto& g : nf.g) j["g"].push_back(g.str());
    j["lambda"] = ordered_json::array();
    for (const auto& row : nf.lambda) {
        ordered_json r = ordered_json::array();
        for (const auto& c : row) r.push_back(c.str());
        j["lambda"].push_back(r);
    }
    j["p"] = ordered_json::array();
    for (const auto& p : nf.p) j["p"].push_back(p.str());
    j["ell"] = nf.ell;
    return j;
}

ordered_json to_json(const PropertyReport& rep) {
    ordered_json j;
    j["holds"] = rep.holds;
    j["threshold"] = rep.threshold;
    if (rep.witness) {
        const auto& w = *rep.witness;
        ordered_json wj;
        wj["function"] = ordered_json::array();
        for (int f : w.function) wj["function"].push_back(f + 1);
        wj["c"] = ordered_json::array();
        for (const auto& c : w.c) wj["c"].push_back(c.str());
        wj["n"] = w.n;
        wj["combination"] = w.combination.str();
        wj["offending"] = w.offending.str();
        wj["classification"] = w.classification;
        j["witness"] = wj;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

ordered_json to_json(const CorrelationTable& t, int H) {
    ordered_json j;
    j["H"] = H;
    j["N"] = t.p.size();
    j["A"] = ordered_json::array();
    for (std::size_t h = 0; h < t.A.size(); ++h)
        j["A"].push_back({{"h", h + 1}, {"re", t.A[h].real()}, {"im", t.A[h].imag()}, {"abs", std::abs(t.A[h])}});
    j["average"] = {{"re", t.average.real()}, {"im", t.average.imag()}, {"abs", std::abs(t.average)}};
    j["P_N"] = t.P.back();
    j["tail"] = t.tail;
    j["inequality"] = {{"lhs", t.lhs}, {"rhs", t.rhs}, {"slack", t.slack}, {"violated", t.violated}};
    return j;
}

ordered_json to_json(const Diagnostic& d) {
    return {{"id", d.id}, {"ok", d.ok}, {"fatal", d.fatal}, {"detail", d.detail}};
}

ordered_json to_json(const EquidistReport& rep, const OrbitSpec& spec, const std::string& hash) {
    auto method = [](const L2Result& r) {
        ordered_json m;
        m["method"] = r.method;
        m["points_used"] = r.points_used;
        if (r.method == "binned") {
            m["cells_per_axis"] = r.cells_per_axis;
            m["bias_bound"] = r.bias_bound;
        }
        return m;
    };
    ordered_json j;
    j["weyl"] = ordered_json::array();
    for (const auto& w : rep.weyl)
        j["weyl"].push_back({{"k", w.k}, {"re", w.value.real()}, {"im", w.value.imag()}, {"abs", std::abs(w.value)}});
    j["torus_discrepancy"] = rep.torus_discrepancy.value;
    j["full_discrepancy"] = rep.full_discrepancy.value;
    j["verdicts"] = {{"torus", rep.torus_equidistributed},
                     {"full", rep.full_equidistributed},
                     {"consistent", rep.criterion_consistent}};
    j["scheme"] = rep.scheme;
    j["N"] = rep.N;
    j["thresholds"] = {{"weyl", rep.thresholds.weyl},
                       {"discrepancy", rep.thresholds.discrepancy},
                       {"max_freq", rep.max_freq}};
    j["discrepancy_methods"] = {{"torus", method(rep.torus_discrepancy)}, {"full", method(rep.full_discrepancy)}};
    j["max_weyl"] = rep.max_weyl;
    j["weight_sum"] = rep.weight_sum;
    j["range"] = {spec.n_start, spec.n_end};
    j["progression"] = {spec.q, spec.r};
    j["spec_hash"] = hash;
    return j;
}

void write_series_csv(std::ostream& os, const EquidistReport& rep) {
    os << "points,last_n,max_abs_weyl";
    for (const auto& w : rep.weyl) {
        os << ",abs_k";
        for (int k : w.k) os << '_' << k;
    }
    os << '\n';
    for (const auto& row : rep.series) {
        double mx = 0;
        for (double a : row.abs_weyl) mx = std::max(mx, a);
        os << row.n_points << ',' << row.last_n << ',' << num(mx);
        for (double a : row.abs_weyl) os << ',' << num(a);
        os << '\n';
    }
}

void write_dump_header(std::ostream& os, int dim) {
    os << "n";
    for (int c = 1; c <= coordinate_count(dim); ++c) os << ",coord_" << c;
    for (int c = 1; c < dim; ++c) os << ",torus_" << c;
    os << ",weight\n";
}

void write_dump_rows(std::ostream& os, const OrbitChunk& chunk, int dim) {
    for (std::size_t i = 0; i < chunk.size(); ++i) {
        os << chunk.n[i];
        const double* p = chunk.point(i);
        for (int c = 0; c < chunk.coords_per_point; ++c) os << ',' << num(p[c]);
        for (int c = 0; c < dim - 1; ++c) os << ',' << num(p[c]);
        os << ',' << num(chunk.weights[i]) << '\n';
    }
}

}  // namespace nilsampler
