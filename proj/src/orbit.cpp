#include "nilsampler/orbit.hpp"

#include <cmath>
#include <sstream>

#include "nilsampler/normal_form.hpp"

namespace nilsampler {

namespace {

using Exponents = std::vector<int>;
using Poly = std::map<Exponents, DoubleDouble>;
using Matrix = GroupElement<DoubleDouble>::Matrix;

std::vector<GroupElement<DoubleDouble>> all_elements(const OrbitSpec& spec) {
    std::vector<GroupElement<DoubleDouble>> out;
    for (const auto& g : spec.generators) out.push_back(g.element);
    for (const auto& b : spec.poly_parts) out.push_back(b.element);
    return out;
}

std::vector<HardyExpr> hardy_exponents(const OrbitSpec& spec) {
    std::vector<HardyExpr> out;
    for (const auto& g : spec.generators) out.push_back(g.exponent);
    return out;
}

Diagnostic diag(std::string id, bool ok, std::string detail, bool fatal = false) {
    return Diagnostic{std::move(id), ok, fatal && !ok, std::move(detail)};
}

std::int64_t progression_count(std::int64_t lo, std::int64_t hi, std::int64_t q, std::int64_t r) {
    if (hi < lo) return 0;
    std::int64_t first = lo + ((r - lo) % q + q) % q;
    if (first > hi) return 0;
    return (hi - first) / q + 1;
}

// Exact value of a rational-coefficient polynomial at an integer.
Rational poly_at(const HardyExpr& p, std::int64_t x) {
    Rational acc(0);
    for (const auto& term : p.terms()) {
        Rational v = *term.coeff.exact();
        for (std::int64_t e = 0; e < term.level.alpha.num(); ++e) v = v * Rational(x);
        acc = acc + v;
    }
    return acc;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponents e(ea.size());
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == DoubleDouble(0) ? out.erase(it) : std::next(it);
    return out;
}

void poly_add(Poly& a, const Poly& b) {
    for (const auto& [e, c] : b) a[e] += c;
}

void check_budget(DoubleDouble x, const char* what, std::int64_t n) {
    if (!(std::abs(x.hi()) <= kMagnitudeBudget)) {
        std::ostringstream os;
        os << what << " magnitude " << x.hi() << " exceeds " << kMagnitudeBudget << " at n = " << n;
        throw NumericBudgetExceeded(os.str());
    }
}

std::vector<DoubleDouble> scalar_values(const std::vector<HardyExpr>& fs, std::size_t hardy_count, std::int64_t n,
                                        Precision precision) {
    std::vector<DoubleDouble> s(fs.size());
    const DoubleDouble t(static_cast<long long>(n));
    for (std::size_t v = 0; v < fs.size(); ++v) {
        s[v] = evaluate(fs[v], t, precision);
        // integer-valued polynomial exponents: snap to the integer they must be
        if (v >= hardy_count) s[v] = round(s[v]);
        check_budget(s[v], "scalar", n);
    }
    return s;
}

std::vector<DoubleDouble> reduce_checked(const GroupElement<DoubleDouble>& g, std::int64_t n) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) check_budget(g(i, j), "matrix entry", n);
    return reduce_mod_lattice(g).coords;
}

std::size_t hardy_count(const CompiledOrbit& co) { return co.scalars.size() - co.poly_count; }

// A double-double just below 1 can round to 1.0; keep coordinates in [0, 1).
double to_unit(DoubleDouble x) {
    const double d = x.to_double();
    return d < 1.0 ? d : std::nextafter(1.0, 0.0);
}

}  // namespace

bool integer_valued_polynomial(const HardyExpr& p) {
    if (!is_polynomial(p) || !p.is_exact()) return false;
    const int d = p.is_zero() ? 0 : int(p.level().alpha.num());
    // forward differences at 0..d are the binomial-basis coefficients
    std::vector<Rational> vals;
    for (int x = 0; x <= d; ++x) vals.push_back(poly_at(p, x));
    for (int k = 0; k <= d; ++k) {
        if (!vals[0].is_integer()) return false;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) vals[i] = vals[i + 1] - vals[i];
        vals.pop_back();
    }
    for (std::int64_t x = -20; x <= 20; ++x)
        if (!poly_at(p, x).is_integer()) return false;
    return true;
}

std::vector<Diagnostic> validate(const OrbitSpec& spec, std::int64_t max_n) {
    std::vector<Diagnostic> out;
    {
        std::ostringstream os;
        bool ok = spec.n_start >= 2 && spec.n_end >= spec.n_start && spec.n_end <= max_n && spec.q >= 1 &&
                  spec.r >= 0 && spec.r < spec.q;
        if (ok && progression_count(spec.n_start, spec.n_end, spec.q, spec.r) == 0) ok = false;
        os << "range [" << spec.n_start << ", " << spec.n_end << "], progression q = " << spec.q << ", r = " << spec.r
           << ", cap " << max_n;
        out.push_back(diag("range", ok, os.str(), true));
    }

    bool dims_ok = spec.dim >= 2;
    for (const auto& e : all_elements(spec)) dims_ok = dims_ok && e.dim() == spec.dim;
    out.push_back(diag("dimension", dims_ok, "all elements are " + std::to_string(spec.dim) + "x" +
                                                 std::to_string(spec.dim), true));
    if (!dims_ok) return out;

    const bool commuting = check_commuting(all_elements(spec));
    out.push_back(diag("commuting", commuting,
                       commuting ? "all generators commute" : "some pair of generators does not commute", true));

    bool polys_ok = true;
    for (const auto& b : spec.poly_parts) polys_ok = polys_ok && is_polynomial(b.exponent);
    out.push_back(diag("polynomial_parts", polys_ok, "poly_parts exponents are polynomials", true));

    {
        bool ok = true;
        std::string detail = "p_j(Z) in Z for every polynomial part";
        for (std::size_t j = 0; j < spec.poly_parts.size(); ++j)
            if (!integer_valued_polynomial(spec.poly_parts[j].exponent)) {
                ok = false;
                detail = "p_" + std::to_string(j + 1) + " = " + spec.poly_parts[j].exponent.str() +
                         " is not integer-valued";
                break;
            }
        out.push_back(diag("G1", ok, detail));
    }
    {
        const int m = int(spec.poly_parts.size());
        bool ok = true;
        int prev = 0;
        for (const auto& b : spec.poly_parts) {
            const int d = degree(b.exponent);
            if (d <= prev || d > m) ok = false;
            prev = d;
        }
        out.push_back(diag("G2", ok, "1 <= deg p_1 < ... < deg p_m <= m with m = " + std::to_string(m)));
    }

    // Growth hypotheses are stated for the derivative-closed basis the orbit
    // reduces to, so they are checked on the normal form of the exponents.
    const auto fs = hardy_exponents(spec);
    std::vector<HardyExpr> unbounded;
    for (const auto& f : fs)
        if (!is_bounded(f)) unbounded.push_back(f);
    std::optional<NormalForm> nf;
    std::string nf_error;
    if (!unbounded.empty()) {
        try {
            nf = normal_form(unbounded);
        } catch (const std::exception& e) {
            nf_error = e.what();
        }
    }
    if (unbounded.empty()) {
        for (const char* id : {"G3", "G4", "G5"}) out.push_back(diag(id, true, "no unbounded Hardy exponents"));
    } else if (!nf) {
        for (const char* id : {"G3", "G4", "G5"}) out.push_back(diag(id, false, "normal form failed: " + nf_error));
    } else {
        const auto& g = nf->g;
        std::string basis;
        for (std::size_t j = 0; j < g.size(); ++j) basis += (j ? ", " : "") + g[j].str();
        basis = "basis [" + basis + "]";

        bool g3 = true;
        for (std::size_t j = 1; j < g.size(); ++j) g3 = g3 && g[j - 1].level() < g[j].level();
        out.push_back(diag("G3", g3, basis + " strictly increasing in growth"));

        const GeneralizedLevel lw = spec.scheme.log_w_level();
        bool g4 = true;
        std::string g4_detail = basis + " inside t^{l-1} " + spec.scheme.log_w_str() + " < g < t^l";
        for (const auto& gj : g) {
            const int l = degree(gj);
            const GeneralizedLevel lower(lw.alpha + Rational(l - 1), lw.beta, lw.gamma, lw.delta);
            const GeneralizedLevel level(gj.level());
            if (l < 1 || !(lower < level) || !(gj.level() < GrowthLevel{Rational(l), 0})) {
                g4 = false;
                g4_detail = gj.str() + " is outside t^{l-1} " + spec.scheme.log_w_str() + " < g < t^l";
                break;
            }
        }
        out.push_back(diag("G4", g4, g4_detail));

        bool g5 = true;
        std::string g5_detail = basis + " closed under differentiation above degree 1";
        for (const auto& gj : g) {
            if (degree(gj) < 2) continue;
            const HardyExpr d = differentiate(gj);
            if (std::none_of(g.begin(), g.end(), [&](const HardyExpr& x) { return x == d; })) {
                g5 = false;
                g5_detail = "derivative of " + gj.str() + " is not a basis element";
                break;
            }
        }
        out.push_back(diag("G5", g5, g5_detail));
    }

    {
        std::string id = spec.scheme == WScheme::identity() ? "P" : "P_W";
        try {
            const auto rep = check_property_p_w(fs, spec.scheme);
            std::string detail = "window threshold " + rep.threshold;
            if (rep.witness) detail += "; witness " + rep.witness->combination.str() + ": " + rep.witness->classification;
            out.push_back(diag(id, rep.holds, detail));
        } catch (const std::exception& e) {
            out.push_back(diag(id, false, std::string("check failed: ") + e.what()));
        }
    }
    return out;
}

std::int64_t CompiledOrbit::first() const { return n_start + ((r - n_start) % q + q) % q; }

std::int64_t CompiledOrbit::count() const { return progression_count(n_start, n_end, q, r); }

CompiledOrbit compile(const OrbitSpec& spec, std::int64_t max_n) {
    if (spec.n_start < 2) throw RangeError("orbit range must start at n >= 2");
    if (spec.n_end < spec.n_start) throw RangeError("orbit range is empty");
    if (spec.n_end > max_n) throw RangeError("orbit range exceeds the cap " + std::to_string(max_n));
    if (spec.q < 1 || spec.r < 0 || spec.r >= spec.q) throw RangeError("progression needs q >= 1 and 0 <= r < q");
    if (progression_count(spec.n_start, spec.n_end, spec.q, spec.r) == 0)
        throw RangeError("progression has no index inside the range");
    const auto elements = all_elements(spec);
    for (const auto& e : elements)
        if (e.dim() != spec.dim) throw DimMismatch("generator dimension differs from the group dimension");
    if (!check_commuting(elements)) throw NonCommuting("orbit generators must pairwise commute");

    CompiledOrbit co;
    co.dim = spec.dim;
    for (const auto& g : spec.generators) co.scalars.push_back(g.exponent);
    for (const auto& b : spec.poly_parts) co.scalars.push_back(b.exponent);
    co.poly_count = spec.poly_parts.size();
    co.n_start = spec.n_start;
    co.n_end = spec.n_end;
    co.q = spec.q;
    co.r = spec.r;
    co.scheme = spec.scheme;

    const int n = spec.dim;
    const std::size_t vars = elements.size();
    std::vector<std::vector<Poly>> acc(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i) acc[i][i][Exponents(vars, 0)] = DoubleDouble(1);

    for (std::size_t v = 0; v < vars; ++v) {
        const OneParameterCurve<DoubleDouble> curve(elements[v]);
        const auto& cs = curve.coefficients();
        std::vector<std::vector<Poly>> c(n, std::vector<Poly>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (std::size_t k = 0; k < cs.size(); ++k) {
                    const DoubleDouble x = i == j ? DoubleDouble(k == 0 ? 1 : 0) : cs[k](i, j);
                    if (x == DoubleDouble(0)) continue;
                    Exponents e(vars, 0);
                    e[v] = int(k);
                    c[i][j][e] += x;
                }
        std::vector<std::vector<Poly>> next(n, std::vector<Poly>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int l = i; l <= j; ++l) poly_add(next[i][j], poly_mul(acc[i][l], c[l][j]));
        acc = std::move(next);
    }

    for (int cidx = 0; cidx < coordinate_count(n); ++cidx) {
        const auto [i, j] = coordinate_position(n, cidx);
        CompiledPolynomial cp;
        for (const auto& [e, coeff] : acc[i][j]) {
            if (coeff == DoubleDouble(0)) continue;
            cp.terms.push_back({coeff, e});
            for (int x : e) co.max_power = std::max(co.max_power, x);
        }
        co.entries.push_back(std::move(cp));
    }
    return co;
}

GroupElement<DoubleDouble> compiled_matrix(const CompiledOrbit& co, std::int64_t n, Precision precision) {
    const auto s = scalar_values(co.scalars, hardy_count(co), n, precision);
    std::vector<std::vector<DoubleDouble>> pw(s.size(), std::vector<DoubleDouble>(co.max_power + 1));
    for (std::size_t v = 0; v < s.size(); ++v) {
        pw[v][0] = DoubleDouble(1);
        for (int e = 1; e <= co.max_power; ++e) pw[v][e] = pw[v][e - 1] * s[v];
    }
    GroupElement<DoubleDouble> g(co.dim);
    for (int c = 0; c < int(co.entries.size()); ++c) {
        DoubleDouble sum(0);
        for (const auto& m : co.entries[c].terms) {
            DoubleDouble term = m.coeff;
            for (std::size_t v = 0; v < m.exps.size(); ++v)
                if (m.exps[v]) term *= pw[v][m.exps[v]];
            sum += term;
        }
        const auto [i, j] = coordinate_position(co.dim, c);
        g.set(i, j, sum);
    }
    return g;
}

std::vector<DoubleDouble> evaluate_point(const CompiledOrbit& co, std::int64_t n, Precision precision) {
    return reduce_checked(compiled_matrix(co, n, precision), n);
}

std::vector<DoubleDouble> direct_point(const OrbitSpec& spec, std::int64_t n, Precision precision) {
    std::vector<HardyExpr> fs;
    for (const auto& g : spec.generators) fs.push_back(g.exponent);
    for (const auto& b : spec.poly_parts) fs.push_back(b.exponent);
    const auto s = scalar_values(fs, spec.generators.size(), n, precision);
    const auto elements = all_elements(spec);
    GroupElement<DoubleDouble> g(spec.dim);
    for (std::size_t v = 0; v < elements.size(); ++v) g = mul(g, OneParameterCurve<DoubleDouble>(elements[v])(s[v]));
    return reduce_checked(g, n);
}

OrbitChunk compute_chunk(const CompiledOrbit& co, std::size_t chunk, const GenerateOptions& opt) {
    OrbitChunk out;
    out.chunk = chunk;
    out.coords_per_point = coordinate_count(co.dim);
    const std::int64_t total = co.count();
    const std::int64_t begin = std::int64_t(chunk * opt.chunk_size);
    const std::int64_t end = std::min<std::int64_t>(total, begin + std::int64_t(opt.chunk_size));
    if (begin >= end) return out;
    out.n.reserve(end - begin);
    out.coords.reserve(std::size_t(end - begin) * out.coords_per_point);
    out.weights.reserve(end - begin);
    for (std::int64_t i = begin; i < end; ++i) {
        const std::int64_t n = co.index(i);
        out.n.push_back(n);
        for (const auto& x : evaluate_point(co, n, opt.precision)) out.coords.push_back(to_unit(x));
        out.weights.push_back(co.scheme.weight(n));
    }
    return out;
}

void generate(const CompiledOrbit& co, const GenerateOptions& opt, const std::function<void(const OrbitChunk&)>& sink) {
    for_each_chunk(co, opt, [](const OrbitChunk&) { return 0; },
                   [&](const OrbitChunk& c, int) { sink(c); });
}

}  // namespace nilsampler
