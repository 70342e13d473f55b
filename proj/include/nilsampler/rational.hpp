#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nilsampler/double_double.hpp"

namespace nilsampler {

/// Exact rational with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) = 1 and den > 0. Arithmetic that would
/// overflow throws std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d);

    /// Every finite double is a dyadic rational; fails if it does not fit.
    static std::optional<Rational> from_double(double x);
    /// Accepts "3", "-3/2", "1.01", "2.5e-3".
    static std::optional<Rational> parse(std::string_view text);

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr bool is_integer() const { return den_ == 1; }
    constexpr bool is_zero() const { return num_ == 0; }
    constexpr int sign() const { return (num_ > 0) - (num_ < 0); }

    double to_double() const { return double(num_) / double(den_); }
    DoubleDouble to_dd() const { return DoubleDouble(num_) / DoubleDouble(den_); }
    std::int64_t floor() const;
    std::int64_t ceil() const;
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace nilsampler
