#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nilsampler/config.hpp"

namespace nilsampler::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Global {
    int threads = 1;
    std::string precision = "extended";
    std::uint64_t seed = 1;
};

std::vector<HardyExpr> parse_exprs(const std::vector<std::string>& texts) {
    std::vector<HardyExpr> out;
    for (const auto& t : texts) out.push_back(parse_hardy(t));
    return out;
}

std::string args_hash(const std::string& cmd, const std::vector<std::string>& args) {
    json doc = {{"command", cmd}, {"args", args}};
    return spec_hash(doc);
}

void banner(std::ostream& err, const std::string& hash, const std::string& thresholds) {
    err << "spec_hash " << hash << "\n";
    err << "thresholds " << thresholds << "\n";
}

std::string thresholds_str(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "weyl=" << cfg.thresholds.weyl << " discrepancy=" << cfg.thresholds.discrepancy
       << " max_freq=" << cfg.max_freq;
    return os.str();
}

std::int64_t max_n(std::ostream& err) {
    const char* env = std::getenv("NILSAMPLER_MAX_N");
    if (!env || !*env) return kDefaultMaxN;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 2) throw ConfigError(std::string("NILSAMPLER_MAX_N is not a valid count: ") + env);
    err << "warning: NILSAMPLER_MAX_N overrides the range cap " << kDefaultMaxN << " with " << v << "\n";
    return v;
}

/// Prints diagnostics to err; false when any of them is fatal.
bool check_spec(const OrbitSpec& spec, std::int64_t cap, std::ostream& err) {
    bool ok = true;
    for (const auto& d : validate(spec, cap)) {
        if (d.ok) continue;
        err << (d.fatal ? "error" : "advisory") << " [" << d.id << "] " << d.detail << "\n";
        ok = ok && !d.fatal;
    }
    return ok;
}

void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

struct Loaded {
    ExperimentConfig cfg;
    std::string hash;
    std::int64_t cap;
};

std::optional<Loaded> load(const std::string& path, std::ostream& err) {
    Loaded l{load_config(path), "", max_n(err)};
    l.hash = spec_hash(l.cfg.canonical);
    banner(err, l.hash, thresholds_str(l.cfg));
    if (!check_spec(l.cfg.orbit, l.cap, err)) return std::nullopt;
    return l;
}

AnalysisOptions analysis_options(const Loaded& l, const Global& g, bool series) {
    AnalysisOptions opt;
    opt.max_freq = l.cfg.max_freq;
    opt.thresholds = l.cfg.thresholds;
    opt.l2.exact_limit = l.cfg.l2_exact_limit;
    opt.generate.threads = g.threads;
    opt.generate.precision = g.precision == "standard" ? Precision::Standard : Precision::Extended;
    opt.max_n = l.cap;
    opt.series = series;
    return opt;
}

ordered_json diagnostics_json(const OrbitSpec& spec, std::int64_t cap) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : validate(spec, cap)) arr.push_back(to_json(d));
    return arr;
}

int cmd_equidist(const std::string& path, std::string report, std::string series, const Global& g,
                 std::ostream& out, std::ostream& err) {
    auto l = load(path, err);
    if (!l) return kExitValidation;
    if (report.empty() && l->cfg.report_path) report = *l->cfg.report_path;
    if (series.empty() && l->cfg.series_path) series = *l->cfg.series_path;
    const auto opt = analysis_options(*l, g, !series.empty());

    ordered_json doc;
    std::ostringstream series_csv;
    if (l->cfg.progression_sweep) {
        doc["spec_hash"] = l->hash;
        doc["sweep"] = ordered_json::array();
        const std::int64_t q = *l->cfg.progression_sweep;
        for (std::int64_t r = 0; r < q; ++r) {
            OrbitSpec s = l->cfg.orbit;
            s.q = q;
            s.r = r;
            auto rep = criterion_check(s, opt);
            auto j = to_json(rep, s, l->hash);
            j["diagnostics"] = diagnostics_json(s, l->cap);
            doc["sweep"].push_back(j);
            if (!series.empty()) {
                series_csv << "# progression " << q << " " << r << "\n";
                write_series_csv(series_csv, rep);
            }
        }
    } else {
        auto rep = criterion_check(l->cfg.orbit, opt);
        doc = to_json(rep, l->cfg.orbit, l->hash);
        doc["diagnostics"] = diagnostics_json(l->cfg.orbit, l->cap);
        if (!series.empty()) write_series_csv(series_csv, rep);
    }
    const std::string text = doc.dump(2) + "\n";
    if (report.empty())
        out << text;
    else
        write_file(report, text);
    if (!series.empty()) write_file(series, series_csv.str());
    return kExitOk;
}

int cmd_orbit(const std::string& path, std::string dump, const Global& g, std::ostream& out, std::ostream& err) {
    auto l = load(path, err);
    if (!l) return kExitValidation;
    if (dump.empty() && l->cfg.dump_path) dump = *l->cfg.dump_path;
    const auto opt = analysis_options(*l, g, false);
    const auto co = compile(l->cfg.orbit, l->cap);
    const int dim = co.dim;

    std::ofstream file;
    if (!dump.empty()) {
        file.open(dump, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + dump);
    }
    std::ostream& os = dump.empty() ? out : file;
    write_dump_header(os, dim);
    for_each_chunk(
        co, opt.generate,
        [dim](const OrbitChunk& c) {
            std::ostringstream s;
            write_dump_rows(s, c, dim);
            return s.str();
        },
        [&os](const OrbitChunk&, const std::string& rows) { os << rows; });
    err << "points " << co.count() << "\n";
    return kExitOk;
}

int cmd_vdc(const std::string& path, int H, std::string report, const Global& g, std::ostream& out,
            std::ostream& err) {
    auto l = load(path, err);
    if (!l) return kExitValidation;
    if (H <= 0) H = l->cfg.vdc_H;
    const auto opt = analysis_options(*l, g, false);
    const auto co = compile(l->cfg.orbit, l->cap);
    const Frequency k = l->cfg.vdc_frequency;

    std::vector<std::complex<double>> values;
    std::vector<double> weights;
    const bool weighted = !(co.scheme == WScheme::identity());
    using Part = std::pair<std::vector<std::complex<double>>, std::vector<double>>;
    for_each_chunk(
        co, opt.generate,
        [&k](const OrbitChunk& c) {
            Part p;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const double* x = c.point(i);
                double phase = 0;
                for (std::size_t j = 0; j < k.size(); ++j) phase += k[j] * x[j];
                phase -= std::floor(phase);
                p.first.push_back(std::polar(1.0, 2 * M_PI * phase));
                p.second.push_back(c.weights.empty() ? 1.0 : c.weights[i]);
            }
            return p;
        },
        [&](const OrbitChunk&, const Part& p) {
            values.insert(values.end(), p.first.begin(), p.first.end());
            if (weighted) weights.insert(weights.end(), p.second.begin(), p.second.end());
        });

    auto table = vdc_correlations(values, weights, H);
    ordered_json doc = to_json(table, H);
    doc["frequency"] = k;
    doc["scheme"] = co.scheme.name();
    doc["spec_hash"] = l->hash;
    const std::string text = doc.dump(2) + "\n";
    if (report.empty())
        out << text;
    else
        write_file(report, text);
    if (table.violated) err << "warning: van der Corput inequality violated beyond the slack\n";
    return kExitOk;
}

// Randomized property checks over the symbolic and orbit layers.
int cmd_selftest(const Global& g, int trials, std::ostream& out, std::ostream& err) {
    banner(err, args_hash("selftest", {std::to_string(g.seed), std::to_string(trials)}), "residual<1 orbit<1e-9");
    std::mt19937_64 rng(g.seed);
    auto random_expr = [&rng](int max_terms) {
        std::uniform_int_distribution<int> num(-6, 12), den(1, 4), beta(0, 2), coef(-5, 5), count(1, max_terms);
        HardyExpr f;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            int c = coef(rng);
            if (c == 0) c = 1;
            f += HardyExpr::monomial(Coeff(c), Rational(num(rng), den(rng)), beta(rng));
        }
        return f;
    };

    struct Check {
        std::string name;
        int failures = 0;
        std::string first;
    };
    std::vector<Check> checks = {{"antiderivative", 0, ""}, {"compare_antisymmetry", 0, ""}, {"normal_form", 0, ""}, {"orbit_compiled", 0, ""}};
    auto fail = [](Check& c, const std::string& what) {
        if (c.failures++ == 0) c.first = what;
    };

    for (int it = 0; it < trials; ++it) {
        HardyExpr f = random_expr(3), h = random_expr(3);
        if (!(differentiate(antiderivative(f)) == f)) fail(checks[0], f.str());
        if (!f.is_zero() && !h.is_zero()) {
            const auto a = compare(f, h).kind, b = compare(h, f).kind;
            const bool ok = (a == GrowthKind::StrictlySlower && b == GrowthKind::StrictlyFaster) ||
                            (a == GrowthKind::StrictlyFaster && b == GrowthKind::StrictlySlower) ||
                            (a == b && (a == GrowthKind::SameOrder || a == GrowthKind::Equal));
            if (!ok) fail(checks[1], f.str() + " vs " + h.str());
        }

        std::vector<HardyExpr> fs = {f};
        if (it % 2 == 0) fs.push_back(h + f);
        const auto nf = normal_form(fs);
        bool ok = nf.ell.size() == nf.g.size();
        for (std::size_t j = 0; ok && j + 1 < nf.g.size(); ++j)
            ok = compare(nf.g[j], nf.g[j + 1]).kind == GrowthKind::StrictlySlower;
        for (std::size_t j = 0; ok && j < nf.g.size(); ++j) {
            const auto l = std::int64_t(nf.ell[j]);
            ok = compare(HardyExpr::t_pow(l - 1), nf.g[j]).kind == GrowthKind::StrictlySlower &&
                 compare(nf.g[j], HardyExpr::t_pow(l)).kind == GrowthKind::StrictlySlower;
            if (ok && degree(nf.g[j]) >= 2) {
                const auto dg = differentiate(nf.g[j]);
                ok = std::any_of(nf.g.begin(), nf.g.end(), [&](const HardyExpr& e) { return e == dg; });
            }
        }
        for (std::size_t i = 0; ok && i < fs.size(); ++i) {
            const auto r = nf.residual(i, fs[i]);
            ok = is_polynomial(nf.p[i]) && (r.is_zero() || r.level() < GrowthLevel::one());
        }
        if (!ok) fail(checks[2], f.str());

        std::uniform_real_distribution<double> u(-2, 2);
        std::uniform_int_distribution<int> nd(2, 400);
        OrbitSpec s;
        s.dim = 3;
        s.generators.push_back({GroupElement<DoubleDouble>::heisenberg(DoubleDouble(u(rng)), DoubleDouble(u(rng)),
                                                                       DoubleDouble(u(rng))),
                                HardyExpr::monomial(Coeff(1), Rational(std::uniform_int_distribution<int>(2, 8)(rng), 4),
                                                    std::uniform_int_distribution<int>(0, 1)(rng))});
        s.n_end = 400;
        const std::int64_t n = nd(rng);
        const auto a = evaluate_point(compile(s), n), b = direct_point(s, n);
        double worst = 0;
        for (std::size_t c = 0; c < a.size(); ++c) {
            double d = std::abs((a[c] - b[c]).to_double());
            worst = std::max(worst, std::min(d, 1 - d));
        }
        if (worst > 1e-9) fail(checks[3], "n=" + std::to_string(n));
    }

    ordered_json doc;
    doc["seed"] = g.seed;
    doc["trials"] = trials;
    doc["checks"] = ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        ordered_json j = {{"name", c.name}, {"failures", c.failures}};
        if (c.failures) j["first_failure"] = c.first;
        doc["checks"].push_back(j);
        all = all && c.failures == 0;
    }
    write_json(out, doc);
    return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hardy-field orbits on nilmanifolds: normal forms, Property (P), equidistribution runs"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("--precision", g.precision, "scalar evaluation precision")
        ->check(CLI::IsMember({"standard", "extended"}));
    app.add_option("--seed", g.seed, "seed for selftest");

    std::vector<std::string> exprs;
    std::string f1, f2, scheme, config, dump, report, series;
    int H = 0, trials = 200;

    auto* compare_cmd = app.add_subcommand("compare", "growth relation of f to g");
    compare_cmd->add_option("f", f1)->required();
    compare_cmd->add_option("g", f2)->required();
    auto* diff_cmd = app.add_subcommand("diff", "derivative");
    diff_cmd->add_option("f", f1)->required();
    auto* nf_cmd = app.add_subcommand("normal-form", "normal form as JSON");
    nf_cmd->add_option("f", exprs)->required();
    auto* p_cmd = app.add_subcommand("check-p", "Property (P), or (P_W) with --w");
    p_cmd->add_option("--w", scheme, "cesaro, log, loglog or powlog:<gamma>");
    p_cmd->add_option("f", exprs)->required();
    auto* w_cmd = app.add_subcommand("choose-w", "first catalogue scheme with (P_W)");
    w_cmd->add_option("f", exprs)->required();
    auto* orbit_cmd = app.add_subcommand("orbit", "dump reduced orbit points as CSV");
    orbit_cmd->add_option("config", config)->required();
    orbit_cmd->add_option("--dump", dump, "CSV path (stdout if absent)");
    auto* eq_cmd = app.add_subcommand("equidist", "Weyl sums, discrepancies and verdicts");
    eq_cmd->add_option("config", config)->required();
    eq_cmd->add_option("--report", report, "JSON report path (stdout if absent)");
    eq_cmd->add_option("--series", series, "CSV of running Weyl sums");
    auto* vdc_cmd = app.add_subcommand("vdc", "van der Corput correlation table");
    vdc_cmd->add_option("config", config)->required();
    vdc_cmd->add_option("-H", H, "largest shift");
    vdc_cmd->add_option("--report", report, "JSON path (stdout if absent)");
    auto* self_cmd = app.add_subcommand("selftest", "randomized property checks");
    self_cmd->add_option("--trials", trials)->check(CLI::Range(1, 100000));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (*compare_cmd) {
            banner(err, args_hash("compare", {f1, f2}), "none");
            const auto rel = compare(parse_hardy(f1), parse_hardy(f2));
            out << to_string(rel.kind);
            if (rel.kind == GrowthKind::SameOrder) out << " (limit " << rel.limit.str() << ")";
            out << "\n";
        } else if (*diff_cmd) {
            banner(err, args_hash("diff", {f1}), "none");
            out << differentiate(parse_hardy(f1)).str() << "\n";
        } else if (*nf_cmd) {
            banner(err, args_hash("normal-form", exprs), "window=log(t)");
            const auto fs = parse_exprs(exprs);
            auto doc = to_json(normal_form(fs));
            doc["property_p"] = check_property_p(fs).holds;
            try {
                doc["chosen_w"] = choose_w(fs).name();
            } catch (const NoSchemeFound&) {
                doc["chosen_w"] = nullptr;
            }
            write_json(out, doc);
        } else if (*p_cmd) {
            const auto fs = parse_exprs(exprs);
            auto args_all = exprs;
            args_all.insert(args_all.begin(), "w=" + scheme);
            const auto rep = scheme.empty() ? check_property_p(fs) : check_property_p_w(fs, WScheme::parse(scheme));
            banner(err, args_hash("check-p", args_all), "window=" + rep.threshold);
            auto doc = to_json(rep);
            doc["scheme"] = scheme.empty() ? "cesaro" : WScheme::parse(scheme).name();
            write_json(out, doc);
        } else if (*w_cmd) {
            banner(err, args_hash("choose-w", exprs), "catalogue=cesaro,powlog,log,loglog");
            try {
                out << choose_w(parse_exprs(exprs)).name() << "\n";
            } catch (const NoSchemeFound& e) {
                err << "error: " << e.what() << "\n";
                return kExitFailure;
            }
        } else if (*orbit_cmd) {
            return cmd_orbit(config, dump, g, out, err);
        } else if (*eq_cmd) {
            return cmd_equidist(config, report, series, g, out, err);
        } else if (*vdc_cmd) {
            return cmd_vdc(config, H, report, g, out, err);
        } else if (*self_cmd) {
            return cmd_selftest(g, trials, out, err);
        }
    } catch (const NumericBudgetExceeded& e) {
        err << "error: numeric budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const RangeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        // NonCommuting, ZeroComparand, InsufficientLength, DimensionTooLarge, bad scheme names
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace nilsampler::cli
