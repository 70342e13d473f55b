#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilsampler/coeff.hpp"
#include "nilsampler/double_double.hpp"
#include "nilsampler/rational.hpp"

namespace nilsampler {

struct ZeroComparand : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Growth scale of t^alpha (log t)^beta; ordered lexicographically, which is
/// exactly the asymptotic order of the monomials.
struct GrowthLevel {
    Rational alpha;
    int beta = 0;

    friend bool operator==(const GrowthLevel&, const GrowthLevel&) = default;
    friend std::strong_ordering operator<=>(const GrowthLevel& a, const GrowthLevel& b) {
        if (auto c = a.alpha <=> b.alpha; c != 0) return c;
        return a.beta <=> b.beta;
    }

    /// Level of the constant function 1.
    static GrowthLevel one() { return {Rational(0), 0}; }
    bool is_polynomial_monomial() const { return beta == 0 && alpha.is_integer() && alpha.num() >= 0; }
};

/// c * t^alpha * (log t)^beta on [2, inf).
struct HardyTerm {
    Coeff coeff;
    GrowthLevel level;
};

/// Finite sum of HardyTerms with distinct levels, fastest first.
///
/// The empty sum is the zero function. Every constructor and operator
/// returns a normalized expression.
class HardyExpr {
public:
    HardyExpr() = default;

    static HardyExpr monomial(Coeff c, Rational alpha, int beta = 0);
    static HardyExpr constant(Coeff c) { return monomial(std::move(c), Rational(0), 0); }
    /// t^alpha
    static HardyExpr t_pow(Rational alpha) { return monomial(Coeff(1), alpha, 0); }
    /// t^k as used for polynomial pieces.
    static HardyExpr t_pow(std::int64_t k) { return t_pow(Rational(k)); }

    const std::vector<HardyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Fastest-growing term; precondition: !is_zero().
    const HardyTerm& dominant() const { return terms_.front(); }
    GrowthLevel level() const { return dominant().level; }
    /// Eventual sign (+1/-1), 0 for the zero function.
    int eventual_sign() const { return is_zero() ? 0 : dominant().coeff.sign(); }
    /// Coefficient of the exact monomial at `level`, zero if absent.
    Coeff coefficient_at(const GrowthLevel& level) const;
    /// True if every coefficient is an exact rational.
    bool is_exact() const;
    /// Terms with level strictly above `floor`.
    HardyExpr terms_above(const GrowthLevel& floor) const;

    std::string str() const;

    friend HardyExpr operator+(const HardyExpr& a, const HardyExpr& b);
    friend HardyExpr operator-(const HardyExpr& a, const HardyExpr& b);
    friend HardyExpr operator-(const HardyExpr& a);
    friend HardyExpr operator*(const Coeff& c, const HardyExpr& a);
    friend HardyExpr operator*(const HardyExpr& a, const HardyExpr& b);
    HardyExpr& operator+=(const HardyExpr& b) { return *this = *this + b; }
    HardyExpr& operator-=(const HardyExpr& b) { return *this = *this - b; }

    /// Same levels and coefficients (exact, or relative 2^-90 when inexact).
    friend bool operator==(const HardyExpr& a, const HardyExpr& b);

private:
    explicit HardyExpr(std::vector<HardyTerm> terms);
    std::vector<HardyTerm> terms_;
};

enum class GrowthKind { StrictlySlower, StrictlyFaster, SameOrder, Equal };

struct GrowthRelation {
    GrowthKind kind;
    /// lim f/g for SameOrder (1 for Equal).
    Coeff limit;
};

std::string to_string(GrowthKind kind);

HardyExpr add(const HardyExpr& f, const HardyExpr& g);
HardyExpr differentiate(const HardyExpr& f);
HardyExpr differentiate(const HardyExpr& f, int order);
/// Antiderivative with zero constant term; requires nonnegative log powers.
HardyExpr antiderivative(const HardyExpr& f);

/// Throws ZeroComparand if either side is the zero function.
GrowthRelation compare(const HardyExpr& f, const HardyExpr& g);

/// Smallest d >= 0 with |f| << t^d; bounded expressions have degree 0.
int degree(const HardyExpr& f);
int degree(const GrowthLevel& level);

bool is_bounded(const HardyExpr& f);
bool is_bounded(const GrowthLevel& level);
/// lim f(t) as t -> inf for bounded f (its constant term).
Coeff limit_at_infinity(const HardyExpr& f);

struct LimitValue {
    enum class Kind { Finite, PlusInfinity, MinusInfinity } kind = Kind::Finite;
    Coeff value;
};
/// lim f/g; g must be nonzero (ZeroComparand otherwise). f = 0 gives 0.
LimitValue limit_ratio(const HardyExpr& f, const HardyExpr& g);

/// f = p + r with p the terms c t^k (k a nonnegative integer, no log).
std::pair<HardyExpr, HardyExpr> polynomial_part(const HardyExpr& f);
bool is_polynomial(const HardyExpr& f);

enum class Precision { Standard, Extended };

/// Value at t >= 2; DomainError below the half-line.
DoubleDouble evaluate(const HardyExpr& f, DoubleDouble t, Precision precision = Precision::Extended);
/// t^alpha (log t)^beta at t >= 2.
DoubleDouble evaluate_monomial(const GrowthLevel& level, DoubleDouble t, DoubleDouble log_t);

/// Parses sums of c*t^a*log(t)^b, e.g. "t^{3/2} + 2*t + 1", "t/log(t)".
HardyExpr parse_hardy(std::string_view text);

}  // namespace nilsampler
