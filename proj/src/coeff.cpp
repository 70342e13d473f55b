#include "nilsampler/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nilsampler {

namespace {

template <class ExactOp, class DdOp>
Coeff combine(const Coeff& a, const Coeff& b, ExactOp exact_op, DdOp dd_op) {
    if (a.is_exact() && b.is_exact()) {
        try {
            return Coeff(exact_op(*a.exact(), *b.exact()));
        } catch (const std::overflow_error&) {
            // fall through to double-double
        }
    }
    return Coeff(dd_op(a.value(), b.value()));
}

}  // namespace

Coeff Coeff::from_double(double v) {
    if (auto r = Rational::from_double(v)) return Coeff(*r);
    return Coeff(DoubleDouble(v));
}

Coeff operator+(const Coeff& a, const Coeff& b) {
    return combine(a, b, [](auto x, auto y) { return x + y; }, [](auto x, auto y) { return x + y; });
}

Coeff operator-(const Coeff& a, const Coeff& b) {
    return combine(a, b, [](auto x, auto y) { return x - y; }, [](auto x, auto y) { return x - y; });
}

Coeff operator*(const Coeff& a, const Coeff& b) {
    if (a.is_zero() || b.is_zero()) return Coeff();
    return combine(a, b, [](auto x, auto y) { return x * y; }, [](auto x, auto y) { return x * y; });
}

Coeff operator/(const Coeff& a, const Coeff& b) {
    if (b.is_zero()) throw std::domain_error("coefficient division by zero");
    if (a.is_zero()) return Coeff();
    return combine(a, b, [](auto x, auto y) { return x / y; }, [](auto x, auto y) { return x / y; });
}

Coeff operator-(const Coeff& a) {
    if (a.exact_) return Coeff(-*a.exact_);
    return Coeff(-a.value_);
}

Coeff Coeff::add_cancelling(const Coeff& a, const Coeff& b) {
    Coeff s = a + b;
    if (s.is_exact()) return s;
    double scale = std::max(std::abs(a.value().hi()), std::abs(b.value().hi()));
    if (std::abs(s.value().hi()) <= kCancellationTolerance * scale) return Coeff();
    return s;
}

bool Coeff::approx_equal(const Coeff& a, const Coeff& b) {
    if (a.is_exact() && b.is_exact()) return *a.exact() == *b.exact();
    DoubleDouble d = a.value() - b.value();
    double scale = std::max(std::abs(a.value().hi()), std::abs(b.value().hi()));
    return std::abs(d.hi()) <= kCancellationTolerance * scale;
}

std::string Coeff::str() const {
    if (exact_) return exact_->str();
    if (value_.lo() == 0.0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value_.hi());
        return buf;
    }
    return to_string(value_, 32);
}

}  // namespace nilsampler
