#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "nilsampler/orbit.hpp"

using namespace nilsampler;
using G = GroupElement<DoubleDouble>;
using BF = boost::multiprecision::cpp_bin_float_50;

namespace {

double circle_distance(double a, double b) {
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

BF to_bf(DoubleDouble x) { return BF(x.hi()) + BF(x.lo()); }

BF frac_bf(const BF& x) { return x - floor(x); }

// Reduced coordinates of H(x, y, 0)^s, from the closed form
// (s x, s y, (s^2 - s) x y / 2) and one explicit lattice step.
std::vector<BF> heisenberg_oracle(const BF& x, const BF& y, const BF& s) {
    const BF X = s * x, Y = s * y, Z = (s * s - s) * x * y / 2;
    const BF xr = frac_bf(X);
    return {xr, frac_bf(Y), frac_bf(Z - floor(Y) * xr)};
}

OrbitSpec circle(DoubleDouble alpha, const std::string& f, std::int64_t lo, std::int64_t hi) {
    G a(2);
    a.set(0, 1, alpha);
    OrbitSpec s;
    s.dim = 2;
    s.generators.push_back({a, parse_hardy(f)});
    s.n_start = lo;
    s.n_end = hi;
    return s;
}

OrbitSpec heisenberg(DoubleDouble x, DoubleDouble y, const std::string& f, std::int64_t lo, std::int64_t hi) {
    OrbitSpec s;
    s.dim = 3;
    s.generators.push_back({G::heisenberg(x, y, 0), parse_hardy(f)});
    s.n_start = lo;
    s.n_end = hi;
    return s;
}

const Diagnostic& find(const std::vector<Diagnostic>& ds, const std::string& id) {
    auto it = std::find_if(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.id == id; });
    REQUIRE(it != ds.end());
    return *it;
}

std::vector<std::pair<std::int64_t, std::vector<double>>> collect(const CompiledOrbit& co, int threads,
                                                                  std::size_t chunk = 16384) {
    GenerateOptions opt;
    opt.threads = threads;
    opt.chunk_size = chunk;
    std::vector<std::pair<std::int64_t, std::vector<double>>> out;
    generate(co, opt, [&](const OrbitChunk& c) {
        for (std::size_t i = 0; i < c.size(); ++i)
            out.emplace_back(c.n[i], std::vector<double>(c.point(i), c.point(i) + c.coords_per_point));
    });
    return out;
}

G random_element(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-2, 2);
    G g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.set(i, j, DoubleDouble(u(rng)));
    return g;
}

}  // namespace

TEST_CASE("validate: conforming Heisenberg orbit") {
    auto spec = heisenberg(1, parse_dd("1.4142135623730950488016887242096981"), "t^{3/2}", 2, 1000);
    for (const auto& d : validate(spec)) {
        INFO(d.id << ": " << d.detail);
        CHECK(d.ok);
    }
}

TEST_CASE("validate: t log t fails the log window with witness log t + 1") {
    auto spec = circle(parse_dd("0.5"), "t*log(t)", 2, 100);
    const auto ds = validate(spec);
    const auto& p = find(ds, "P");
    CHECK_FALSE(p.ok);
    CHECK_FALSE(p.fatal);
    CHECK(p.detail.find("log(t) + 1") != std::string::npos);
    spec.scheme = WScheme::power_log(Rational(1, 2));
    CHECK(find(validate(spec), "P_W").ok);
}

TEST_CASE("validate: non-commuting generators and bad ranges are fatal") {
    OrbitSpec spec;
    spec.dim = 3;
    spec.generators.push_back({G::heisenberg(1, 0, 0), parse_hardy("t^{3/2}")});
    spec.generators.push_back({G::heisenberg(0, 1, 0), parse_hardy("t^{1/2}")});
    const auto& c = find(validate(spec), "commuting");
    CHECK_FALSE(c.ok);
    CHECK(c.fatal);
    CHECK_THROWS_AS(compile(spec), NonCommuting);

    auto bad = circle(0.25, "t", 1, 10);
    CHECK(find(validate(bad), "range").fatal);
    CHECK_THROWS_AS(compile(bad), RangeError);
    bad.n_start = 2;
    bad.n_end = 1000;
    CHECK_THROWS_AS(compile(bad, 999), RangeError);
    CHECK_NOTHROW(compile(bad, 1000));
    bad.q = 3;
    bad.r = 3;
    CHECK_THROWS_AS(compile(bad), RangeError);
}

TEST_CASE("validate: polynomial hypotheses") {
    CHECK(integer_valued_polynomial(parse_hardy("t^2/2 + t/2")));
    CHECK(integer_valued_polynomial(parse_hardy("t^3")));
    CHECK(integer_valued_polynomial(parse_hardy("t^3/6 - t/6")));
    CHECK_FALSE(integer_valued_polynomial(parse_hardy("t/2")));
    CHECK_FALSE(integer_valued_polynomial(parse_hardy("sqrt(2)*t")));
    CHECK_FALSE(integer_valued_polynomial(parse_hardy("t^{3/2}")));

    OrbitSpec spec;
    spec.dim = 3;
    spec.poly_parts.push_back({G::heisenberg(parse_dd("0.7071067811865475244008443621048490"), 0, 0),
                               parse_hardy("t")});
    spec.poly_parts.push_back({G::heisenberg(0, 0, parse_dd("0.3")), parse_hardy("t^2/2 + t/2")});
    auto ds = validate(spec);
    CHECK(find(ds, "G1").ok);
    CHECK(find(ds, "G2").ok);
    spec.poly_parts[1].exponent = parse_hardy("t^3");
    CHECK_FALSE(find(validate(spec), "G2").ok);
    spec.poly_parts[1].exponent = parse_hardy("t^2/2");
    CHECK_FALSE(find(validate(spec), "G1").ok);
}

TEST_CASE("validate: growth hypotheses are read off the normal form basis") {
    auto spec = circle(parse_dd("0.5"), "t^{3/2}", 2, 100);
    auto ds = validate(spec);
    CHECK(find(ds, "G3").ok);
    CHECK(find(ds, "G4").ok);
    CHECK(find(ds, "G5").ok);
    // log t itself is a basis element with l = 1, and log t is not above t^0 log t
    spec = circle(parse_dd("0.5"), "log(t)", 2, 100);
    CHECK_FALSE(find(validate(spec), "G4").ok);
}

TEST_CASE("compile: coordinate forms of single generators") {
    auto spec = heisenberg(1, 0, "t^{3/2}", 2, 100);
    auto co = compile(spec);
    for (std::int64_t n : {4, 9, 17}) {
        const auto g = compiled_matrix(co, n);
        const DoubleDouble f = evaluate(parse_hardy("t^{3/2}"), DoubleDouble(static_cast<long long>(n)));
        CHECK(std::abs((g(0, 1) - f).to_double()) < 1e-25);
        CHECK(g(1, 2) == DoubleDouble(0));
        CHECK(g(0, 2) == DoubleDouble(0));
    }

    spec = heisenberg(1, 1, "t^{3/2}", 2, 100);
    co = compile(spec);
    for (std::int64_t n : {4, 9, 17, 50}) {
        const auto g = compiled_matrix(co, n);
        const DoubleDouble f = evaluate(parse_hardy("t^{3/2}"), DoubleDouble(static_cast<long long>(n)));
        CHECK(std::abs((g(0, 1) - f).to_double()) < 1e-25);
        CHECK(std::abs((g(1, 2) - f).to_double()) < 1e-25);
        CHECK(std::abs((g(0, 2) - (f * f - f) / 2).to_double()) < 1e-22);
    }
}

TEST_CASE("compile: commuting horizontal and central generators add in z") {
    OrbitSpec spec;
    spec.dim = 3;
    const DoubleDouble c = parse_dd("0.3183098861837906715377675267450287");
    spec.generators.push_back({G::heisenberg(1, 1, 0), parse_hardy("t^{3/2}")});
    spec.generators.push_back({G::heisenberg(0, 0, c), parse_hardy("t*log(t)")});
    spec.n_end = 10;
    const auto co = compile(spec);
    const std::int64_t n = 5;
    const auto g = compiled_matrix(co, n);
    const DoubleDouble t(5);
    const DoubleDouble f = evaluate(parse_hardy("t^{3/2}"), t), h = evaluate(parse_hardy("t*log(t)"), t);
    CHECK(std::abs((g(0, 2) - ((f * f - f) / 2 + c * h)).to_double()) < 1e-25);
    const auto direct = direct_point(spec, n);
    const auto compiled = evaluate_point(co, n);
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(circle_distance(direct[i].to_double(), compiled[i].to_double()) < 1e-20);
}

TEST_CASE("compiled and direct evaluation agree on random commuting families") {
    std::mt19937_64 rng(2024);
    const char* pool[] = {"t^{3/2}", "sqrt(2)*t", "t*log(t)", "log(t)", "t^{1/2}", "t^2/3 + t^{1/3}", "t^{5/2}/7"};
    std::uniform_int_distribution<int> pick(0, 6), dimd(2, 4);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_int_distribution<std::int64_t> nd(2, 400);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = dimd(rng);
        const G a = random_element(rng, n);
        G central(n);
        central.set(0, n - 1, DoubleDouble(u(rng)));
        OrbitSpec spec;
        spec.dim = n;
        spec.generators.push_back({a, parse_hardy(pool[pick(rng)])});
        // a power of a commutes with a
        spec.generators.push_back({OneParameterCurve<DoubleDouble>(a)(DoubleDouble(u(rng))), parse_hardy(pool[pick(rng)])});
        spec.generators.push_back({central, parse_hardy(pool[pick(rng)])});
        if (trial % 2) spec.poly_parts.push_back({a, parse_hardy("t^2/2 + t/2")});
        spec.n_end = 400;
        const auto co = compile(spec);
        for (int s = 0; s < 20; ++s) {
            const std::int64_t idx = nd(rng);
            const auto direct = direct_point(spec, idx);
            const auto compiled = evaluate_point(co, idx);
            REQUIRE(direct.size() == compiled.size());
            for (std::size_t i = 0; i < direct.size(); ++i)
                worst = std::max(worst, circle_distance(direct[i].to_double(), compiled[i].to_double()));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("generate: golden ratio rotation") {
    const DoubleDouble alpha = (sqrt(DoubleDouble(5)) - 1) / 2;
    const auto co = compile(circle(alpha, "t", 2, 5));
    const auto pts = collect(co, 1);
    REQUIRE(pts.size() == 4);
    const double want[] = {0.2360679774997897, 0.8541019662496845, 0.4721359549995794, 0.0901699437494742};
    for (int i = 0; i < 4; ++i) {
        CHECK(pts[i].first == i + 2);
        CHECK(pts[i].second[0] == doctest::Approx(want[i]).epsilon(1e-14));
    }
    // n = 1 lies outside the half-line; its value frac(alpha) is still the first orbit step
    CHECK(scalar_ops::frac_of(alpha).to_double() == doctest::Approx(0.6180339887498949).epsilon(1e-15));
}

TEST_CASE("generate: progression indices") {
    auto spec = circle(0.25, "t", 2, 10);
    spec.q = 2;
    spec.r = 1;
    const auto pts = collect(compile(spec), 1);
    std::vector<std::int64_t> ns;
    for (const auto& p : pts) ns.push_back(p.first);
    CHECK(ns == std::vector<std::int64_t>{3, 5, 7, 9});
    spec.r = 0;
    const auto even = collect(compile(spec), 1);
    CHECK(even.front().first == 2);
    CHECK(even.back().first == 10);
}

TEST_CASE("generate: progression classes partition the full range") {
    auto spec = heisenberg(parse_dd("1.4142135623730950488016887242096981"), 1, "t^{3/2}", 2, 5000);
    auto full = collect(compile(spec), 1, 1000);
    std::vector<std::pair<std::int64_t, std::vector<double>>> merged;
    for (std::int64_t r = 0; r < 3; ++r) {
        spec.q = 3;
        spec.r = r;
        auto part = collect(compile(spec), 1, 1000);
        merged.insert(merged.end(), part.begin(), part.end());
    }
    std::sort(merged.begin(), merged.end());
    std::sort(full.begin(), full.end());
    CHECK(merged == full);
}

TEST_CASE("generate: deterministic across runs, threads and chunking order") {
    auto spec = heisenberg(parse_dd("1.4142135623730950488016887242096981"), parse_dd("0.5"), "t^{3/2}", 2, 60000);
    spec.scheme = WScheme::log();
    const auto co = compile(spec);
    const auto a = collect(co, 1);
    const auto b = collect(co, 1);
    const auto c = collect(co, 4);
    CHECK(a == b);
    CHECK(a == c);
    REQUIRE(a.size() == 59999);
    for (const auto& p : a)
        for (double x : p.second) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
    GenerateOptions opt;
    std::vector<double> w;
    generate(co, opt, [&](const OrbitChunk& ch) { w.insert(w.end(), ch.weights.begin(), ch.weights.end()); });
    CHECK(w.front() == doctest::Approx(std::log(1.5)));
}

TEST_CASE("precision: Heisenberg coordinates against a 50-digit oracle") {
    struct Case {
        std::string x, y, f;
        std::int64_t lo, hi;
    };
    const Case cases[] = {
        {"1", "1", "t^2", 900, 1000},  // z before reduction is (10^12 - 10^6) / 2 at n = 1000
        {"1.4142135623730950488016887242096981", "0.5772156649015328606065120900824024", "t^2", 20000, 21000},
        {"1.4142135623730950488016887242096981", "1", "t^{3/2}", 999000, 1000000},
        {"0.3183098861837906715377675267450287", "1.7320508075688772935274463415058723", "sqrt(2)*t^{3/2}", 500000,
         600000},
    };
    std::mt19937_64 rng(77);
    for (const auto& c : cases) {
        const DoubleDouble x = parse_dd(c.x), y = parse_dd(c.y);
        const auto spec = heisenberg(x, y, c.f, c.lo, c.hi);
        const auto co = compile(spec);
        const HardyExpr f = parse_hardy(c.f);
        std::uniform_int_distribution<std::int64_t> nd(c.lo, c.hi);
        double worst = 0;
        for (int s = 0; s < 10; ++s) {
            const std::int64_t n = s == 0 ? c.hi : nd(rng);
            // exact exponent: the single term c t^a with a in {3/2, 2}
            const auto& term = f.terms().front();
            BF sv = to_bf(term.coeff.value()) * pow(BF(n), BF(term.level.alpha.num()) / term.level.alpha.den());
            const auto want = heisenberg_oracle(to_bf(x), to_bf(y), sv);
            const auto got = evaluate_point(co, n);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, circle_distance(got[i].to_double(), want[i].convert_to<double>()));
        }
        INFO(c.f << " on [" << c.lo << ", " << c.hi << "]");
        CHECK(worst < 1e-9);
    }
    const auto g = compiled_matrix(compile(heisenberg(1, 1, "t^2", 2, 1000)), 1000);
    CHECK(g(0, 2) == DoubleDouble((1e12 - 1e6) / 2));
}

TEST_CASE("precision: circle scalar reaching 1e18") {
    const DoubleDouble alpha = parse_dd("1.4142135623730950488016887242096981");
    const auto co = compile(circle(alpha, "t^3", 2, 1'000'000));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> nd(900'000, 1'000'000);
    double worst = 0;
    for (int s = 0; s < 10; ++s) {
        const std::int64_t n = s == 0 ? 1'000'000 : nd(rng);
        const BF want = frac_bf(to_bf(alpha) * BF(n) * BF(n) * BF(n));
        worst = std::max(worst, circle_distance(evaluate_point(co, n)[0].to_double(), want.convert_to<double>()));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("numeric budget is enforced") {
    const auto co = compile(circle(0.5, "t^4", 2, 1'000'000));
    CHECK_NOTHROW(evaluate_point(co, 10'000));
    CHECK_THROWS_AS(evaluate_point(co, 1'000'000), NumericBudgetExceeded);
    const auto h = compile(heisenberg(1, 1, "t^3", 2, 1'000'000));
    CHECK_THROWS_AS(evaluate_point(h, 100'000), NumericBudgetExceeded);
    GenerateOptions opt;
    opt.threads = 2;
    auto spec = circle(0.5, "t^4", 2, 200'000);
    CHECK_THROWS_AS(generate(compile(spec), opt, [](const OrbitChunk&) {}), NumericBudgetExceeded);
}
