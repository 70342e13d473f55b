#pragma once

#include <optional>
#include <string>

#include "nilsampler/double_double.hpp"
#include "nilsampler/rational.hpp"

namespace nilsampler {

/// Relative tolerance below which an inexact sum counts as exact cancellation.
inline constexpr double kCancellationTolerance = 8.077935669463161e-28;  // 2^-90

/// Real coefficient that stays an exact rational for as long as it can.
///
/// Values built from rationals keep an exact representation alongside the
/// double-double value; anything irrational (or overflowing 64-bit
/// rationals) degrades to double-double only.
class Coeff {
public:
    Coeff() = default;
    Coeff(int v) : exact_(Rational(v)), value_(v) {}
    Coeff(Rational r) : exact_(r), value_(r.to_dd()) {}
    Coeff(DoubleDouble v) : exact_(std::nullopt), value_(v) {}

    static Coeff from_double(double v);

    bool is_exact() const { return exact_.has_value(); }
    const std::optional<Rational>& exact() const { return exact_; }
    const DoubleDouble& value() const { return value_; }
    double to_double() const { return value_.to_double(); }

    bool is_zero() const { return exact_ ? exact_->is_zero() : (value_.hi() == 0.0); }
    bool is_one() const { return exact_ ? *exact_ == Rational(1) : (value_ == DoubleDouble(1.0)); }
    int sign() const {
        if (exact_) return exact_->sign();
        return (value_.hi() > 0) - (value_.hi() < 0);
    }

    /// a + b, snapping inexact near-cancellation (relative 2^-90) to exact zero.
    static Coeff add_cancelling(const Coeff& a, const Coeff& b);
    /// Equal exactly (both rational) or within relative 2^-90 otherwise.
    static bool approx_equal(const Coeff& a, const Coeff& b);

    std::string str() const;

    friend Coeff operator+(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a, const Coeff& b);
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    friend Coeff operator/(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a);

    Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
    Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
    Coeff& operator*=(const Coeff& b) { return *this = *this * b; }

private:
    std::optional<Rational> exact_ = Rational(0);
    DoubleDouble value_{};
};

}  // namespace nilsampler
