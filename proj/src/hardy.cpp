#include "nilsampler/hardy.hpp"

#include <algorithm>
#include <cmath>

namespace nilsampler {

HardyExpr::HardyExpr(std::vector<HardyTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const HardyTerm& a, const HardyTerm& b) { return a.level > b.level; });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().level == t.level) {
            terms_.back().coeff = Coeff::add_cancelling(terms_.back().coeff, t.coeff);
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const HardyTerm& t) { return t.coeff.is_zero(); });
}

HardyExpr HardyExpr::monomial(Coeff c, Rational alpha, int beta) {
    return HardyExpr(std::vector<HardyTerm>{{std::move(c), {alpha, beta}}});
}

Coeff HardyExpr::coefficient_at(const GrowthLevel& level) const {
    for (const auto& t : terms_)
        if (t.level == level) return t.coeff;
    return Coeff();
}

bool HardyExpr::is_exact() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const HardyTerm& t) { return t.coeff.is_exact(); });
}

HardyExpr HardyExpr::terms_above(const GrowthLevel& floor) const {
    std::vector<HardyTerm> kept;
    for (const auto& t : terms_)
        if (t.level > floor) kept.push_back(t);
    return HardyExpr(std::move(kept));
}

HardyExpr operator+(const HardyExpr& a, const HardyExpr& b) {
    std::vector<HardyTerm> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return HardyExpr(std::move(all));
}

HardyExpr operator-(const HardyExpr& a) {
    std::vector<HardyTerm> neg = a.terms_;
    for (auto& t : neg) t.coeff = -t.coeff;
    return HardyExpr(std::move(neg));
}

HardyExpr operator-(const HardyExpr& a, const HardyExpr& b) { return a + (-b); }

HardyExpr operator*(const Coeff& c, const HardyExpr& a) {
    if (c.is_zero()) return {};
    std::vector<HardyTerm> scaled = a.terms_;
    for (auto& t : scaled) t.coeff = c * t.coeff;
    return HardyExpr(std::move(scaled));
}

HardyExpr operator*(const HardyExpr& a, const HardyExpr& b) {
    std::vector<HardyTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            out.push_back({x.coeff * y.coeff, {x.level.alpha + y.level.alpha, x.level.beta + y.level.beta}});
    return HardyExpr(std::move(out));
}

bool operator==(const HardyExpr& a, const HardyExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].level != b.terms_[i].level) return false;
        if (!Coeff::approx_equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    }
    return true;
}

std::string to_string(GrowthKind kind) {
    switch (kind) {
        case GrowthKind::StrictlySlower: return "strictly slower";
        case GrowthKind::StrictlyFaster: return "strictly faster";
        case GrowthKind::SameOrder: return "same order";
        case GrowthKind::Equal: return "equal";
    }
    return "?";
}

HardyExpr add(const HardyExpr& f, const HardyExpr& g) { return f + g; }

HardyExpr differentiate(const HardyExpr& f) {
    HardyExpr out;
    for (const auto& t : f.terms()) {
        const Rational& a = t.level.alpha;
        const int b = t.level.beta;
        if (!a.is_zero()) out += HardyExpr::monomial(t.coeff * Coeff(a), a - Rational(1), b);
        if (b != 0) out += HardyExpr::monomial(t.coeff * Coeff(b), a - Rational(1), b - 1);
    }
    return out;
}

HardyExpr differentiate(const HardyExpr& f, int order) {
    HardyExpr out = f;
    for (int i = 0; i < order; ++i) out = differentiate(out);
    return out;
}

HardyExpr antiderivative(const HardyExpr& f) {
    HardyExpr out;
    for (const auto& t : f.terms()) {
        const Rational& alpha = t.level.alpha;
        const int beta = t.level.beta;
        if (beta < 0)
            throw DomainError("antiderivative of a negative log power leaves the term class: " + f.str());
        if (alpha == Rational(-1)) {
            out += HardyExpr::monomial(t.coeff / Coeff(beta + 1), Rational(0), beta + 1);
            continue;
        }
        // t^a sum_i (-1)^i beta!/(beta-i)! log^{beta-i} / a^{i+1}
        const Rational a = alpha + Rational(1);
        Coeff falling(1);
        Coeff a_pow = Coeff(a);
        for (int i = 0; i <= beta; ++i) {
            Coeff c = t.coeff * falling / a_pow;
            if (i % 2 == 1) c = -c;
            out += HardyExpr::monomial(c, a, beta - i);
            falling = falling * Coeff(beta - i);
            a_pow = a_pow * Coeff(a);
        }
    }
    return out;
}

GrowthRelation compare(const HardyExpr& f, const HardyExpr& g) {
    if (f.is_zero() || g.is_zero()) throw ZeroComparand("growth comparison with the zero function");
    const auto lf = f.level();
    const auto lg = g.level();
    if (lf < lg) return {GrowthKind::StrictlySlower, Coeff()};
    if (lf > lg) return {GrowthKind::StrictlyFaster, Coeff()};
    if (f == g) return {GrowthKind::Equal, Coeff(1)};
    return {GrowthKind::SameOrder, f.dominant().coeff / g.dominant().coeff};
}

bool is_bounded(const GrowthLevel& level) { return level <= GrowthLevel::one(); }

bool is_bounded(const HardyExpr& f) { return f.is_zero() || is_bounded(f.level()); }

int degree(const GrowthLevel& level) {
    if (is_bounded(level)) return 0;
    const Rational& a = level.alpha;
    int d = 0;
    if (level.beta > 0) {
        d = int(a.floor()) + 1;
    } else {
        d = int(a.ceil());  // covers integer alpha with beta <= 0
    }
    return std::max(d, 1);
}

int degree(const HardyExpr& f) { return f.is_zero() ? 0 : degree(f.level()); }

Coeff limit_at_infinity(const HardyExpr& f) {
    if (!is_bounded(f)) throw DomainError("limit of an unbounded expression: " + f.str());
    return f.coefficient_at(GrowthLevel::one());
}

LimitValue limit_ratio(const HardyExpr& f, const HardyExpr& g) {
    if (g.is_zero()) throw ZeroComparand("limit ratio with zero denominator");
    if (f.is_zero()) return {LimitValue::Kind::Finite, Coeff()};
    auto rel = compare(f, g);
    switch (rel.kind) {
        case GrowthKind::StrictlySlower: return {LimitValue::Kind::Finite, Coeff()};
        case GrowthKind::StrictlyFaster:
            return {f.eventual_sign() * g.eventual_sign() > 0 ? LimitValue::Kind::PlusInfinity
                                                              : LimitValue::Kind::MinusInfinity,
                    Coeff()};
        case GrowthKind::SameOrder:
        case GrowthKind::Equal: return {LimitValue::Kind::Finite, rel.limit};
    }
    return {};
}

std::pair<HardyExpr, HardyExpr> polynomial_part(const HardyExpr& f) {
    HardyExpr poly, rest;
    for (const auto& t : f.terms()) {
        auto piece = HardyExpr::monomial(t.coeff, t.level.alpha, t.level.beta);
        if (t.level.is_polynomial_monomial()) poly += piece;
        else rest += piece;
    }
    return {poly, rest};
}

bool is_polynomial(const HardyExpr& f) { return polynomial_part(f).second.is_zero(); }

namespace {

DoubleDouble t_power(const Rational& alpha, DoubleDouble t) {
    const std::int64_t q = alpha.den();
    const std::int64_t p = alpha.num();
    if (q == 1) return pow(t, long(p));
    if (q > (std::int64_t(1) << 20)) return exp(alpha.to_dd() * log(t));
    // t^{p/q} = t^{floor(p/q)} * (t^{1/q})^{p mod q}
    std::int64_t whole = alpha.floor();
    std::int64_t rem = p - whole * q;
    DoubleDouble root = nth_root(t, long(q));
    return pow(t, long(whole)) * pow(root, long(rem));
}

}  // namespace

DoubleDouble evaluate_monomial(const GrowthLevel& level, DoubleDouble t, DoubleDouble log_t) {
    DoubleDouble v = t_power(level.alpha, t);
    if (level.beta != 0) v *= pow(log_t, long(level.beta));
    return v;
}

DoubleDouble evaluate(const HardyExpr& f, DoubleDouble t, Precision precision) {
    if (t < DoubleDouble(2.0)) throw DomainError("evaluation below the half-line t >= 2");
    if (precision == Precision::Standard) {
        const double td = t.to_double();
        const double lt = std::log(td);
        double acc = 0.0;
        for (const auto& term : f.terms()) {
            acc += term.coeff.to_double() * std::pow(td, term.level.alpha.to_double()) *
                   std::pow(lt, term.level.beta);
        }
        return DoubleDouble(acc);
    }
    bool need_log = std::any_of(f.terms().begin(), f.terms().end(),
                                [](const HardyTerm& x) { return x.level.beta != 0; });
    DoubleDouble log_t = need_log ? log(t) : DoubleDouble();
    DoubleDouble acc{};
    for (const auto& term : f.terms()) acc += term.coeff.value() * evaluate_monomial(term.level, t, log_t);
    return acc;
}

std::string HardyExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Coeff mag = t.coeff.sign() < 0 ? -t.coeff : t.coeff;
        if (first) {
            if (t.coeff.sign() < 0) out += "-";
        } else {
            out += t.coeff.sign() < 0 ? " - " : " + ";
        }
        first = false;

        std::string factors;
        const Rational& a = t.level.alpha;
        if (!a.is_zero()) {
            if (a == Rational(1)) factors = "t";
            else if (a.is_integer() && a.num() > 0) factors = "t^" + a.str();
            else factors = "t^{" + a.str() + "}";
        }
        if (t.level.beta != 0) {
            if (!factors.empty()) factors += "*";
            factors += "log(t)";
            if (t.level.beta < 0) factors += "^{" + std::to_string(t.level.beta) + "}";
            else if (t.level.beta > 1) factors += "^" + std::to_string(t.level.beta);
        }
        if (factors.empty()) out += mag.str();
        else if (mag.is_one()) out += factors;
        else out += mag.str() + "*" + factors;
    }
    return out;
}

}  // namespace nilsampler
