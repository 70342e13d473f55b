#pragma once
#ifdef __FAST_MATH__
#error fast math enabled (-ffast-math), this would negate compensation.
#endif

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace nilsampler {

/// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2.
///
/// Roughly 106 significant bits. Arithmetic follows the error-free
/// transformations of Dekker and Knuth; transcendental functions use
/// argument reduction plus Newton correction so that exp/log/sqrt come in
/// around 2^-104 relative error.
class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x) {}
    constexpr DoubleDouble(int x) : hi_(x) {}
    constexpr DoubleDouble(long x) : hi_(double(x)), lo_(double(x - long(double(x)))) {}
    constexpr DoubleDouble(long long x)
        : hi_(double(x)), lo_(double(x - (long long)(double(x)))) {}
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }
    constexpr double to_double() const { return hi_ + lo_; }

    static DoubleDouble sum(double a, double b);
    static DoubleDouble product(double a, double b);

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator+(DoubleDouble a, double b);
    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator*(DoubleDouble a, double b);
    friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b);
    friend DoubleDouble operator/(DoubleDouble a, double b);

    friend DoubleDouble operator+(double a, DoubleDouble b) { return b + a; }
    friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi_, -a.lo_}; }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }
    friend DoubleDouble operator-(DoubleDouble a, double b) { return a + (-b); }
    friend DoubleDouble operator-(double a, DoubleDouble b) { return (-b) + a; }
    friend DoubleDouble operator*(double a, DoubleDouble b) { return b * a; }
    friend DoubleDouble operator/(double a, DoubleDouble b) { return DoubleDouble(a) / b; }

    DoubleDouble& operator+=(DoubleDouble b) { return *this = *this + b; }
    DoubleDouble& operator-=(DoubleDouble b) { return *this = *this - b; }
    DoubleDouble& operator*=(DoubleDouble b) { return *this = *this * b; }
    DoubleDouble& operator/=(DoubleDouble b) { return *this = *this / b; }

    friend constexpr bool operator==(DoubleDouble a, DoubleDouble b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend constexpr bool operator!=(DoubleDouble a, DoubleDouble b) { return !(a == b); }
    friend constexpr bool operator<(DoubleDouble a, DoubleDouble b) {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend constexpr bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
    friend constexpr bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
    friend constexpr bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

using dd = DoubleDouble;

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

}  // namespace dd_detail

inline DoubleDouble DoubleDouble::sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble DoubleDouble::product(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = DoubleDouble::sum(a.hi_, b.hi_);
    DoubleDouble t = DoubleDouble::sum(a.lo_, b.lo_);
    double lo = s.lo_ + t.hi_;
    s = dd_detail::quick_two_sum(s.hi_, lo);
    lo = s.lo_ + t.lo_;
    return dd_detail::quick_two_sum(s.hi_, lo);
}

inline DoubleDouble operator+(DoubleDouble a, double b) {
    DoubleDouble s = DoubleDouble::sum(a.hi_, b);
    return dd_detail::quick_two_sum(s.hi_, s.lo_ + a.lo_);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = DoubleDouble::product(a.hi_, b.hi_);
    double lo = p.lo_ + (a.hi_ * b.lo_ + a.lo_ * b.hi_);
    return dd_detail::quick_two_sum(p.hi_, lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) {
    DoubleDouble p = DoubleDouble::product(a.hi_, b);
    return dd_detail::quick_two_sum(p.hi_, p.lo_ + a.lo_ * b);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * q1;
    double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    double q3 = r.hi_ / b.hi_;
    return dd_detail::quick_two_sum(q1, q2) + q3;
}

inline DoubleDouble operator/(DoubleDouble a, double b) { return a / DoubleDouble(b); }

inline DoubleDouble abs(DoubleDouble a) { return a.hi() < 0.0 ? -a : a; }
inline DoubleDouble fabs(DoubleDouble a) { return abs(a); }
inline DoubleDouble ldexp(DoubleDouble a, int e) {
    return {std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)};
}
inline bool isfinite(DoubleDouble a) { return std::isfinite(a.hi()); }
inline bool isnan(DoubleDouble a) { return std::isnan(a.hi()); }

DoubleDouble floor(DoubleDouble a);
DoubleDouble ceil(DoubleDouble a);
DoubleDouble round(DoubleDouble a);
DoubleDouble sqrt(DoubleDouble a);
DoubleDouble exp(DoubleDouble a);
DoubleDouble log(DoubleDouble a);
/// a^n for integer n by repeated squaring.
DoubleDouble pow(DoubleDouble a, long n);
/// Real power a^x = exp(x log a); a > 0.
DoubleDouble pow(DoubleDouble a, DoubleDouble x);
/// Principal n-th root of a > 0, Newton-corrected in double-double.
DoubleDouble nth_root(DoubleDouble a, long n);
/// Fractional part a - floor(a), in [0, 1).
DoubleDouble frac(DoubleDouble a);

/// Parses a decimal literal ("-1.25e3", "0.6180339887498948482045868").
/// Throws std::invalid_argument on malformed input.
DoubleDouble parse_dd(std::string_view text);
/// Shortest-ish decimal representation with the given significant digits.
std::string to_string(DoubleDouble a, int digits = 32);

namespace dd_const {
inline constexpr DoubleDouble pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DoubleDouble two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DoubleDouble ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr DoubleDouble e{2.718281828459045091e+00, 1.445646891729250158e-16};
inline constexpr double eps = 4.93038065763132e-32;  // 2^-104
}  // namespace dd_const

}  // namespace nilsampler

namespace std {
template <>
class numeric_limits<nilsampler::DoubleDouble> : public numeric_limits<double> {
public:
    static constexpr int digits = 104;
    static constexpr int digits10 = 31;
    static constexpr nilsampler::DoubleDouble epsilon() noexcept {
        return nilsampler::DoubleDouble(nilsampler::dd_const::eps);
    }
    static constexpr nilsampler::DoubleDouble dummy_precision() noexcept {
        return nilsampler::DoubleDouble(1e-28);
    }
};
}  // namespace std
