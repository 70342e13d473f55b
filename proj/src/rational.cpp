#include "nilsampler/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nilsampler {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < -std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("rational arithmetic overflow");
    return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

std::optional<Rational> Rational::from_double(double x) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
    // scale mantissa to a 53-bit integer
    auto m = std::int64_t(std::ldexp(mant, 53));
    exp -= 53;
    while (exp < 0 && (m % 2) == 0) {
        m /= 2;
        ++exp;
    }
    if (exp >= 0) {
        if (exp > 62) return std::nullopt;
        i128 v = i128(m) << exp;
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
            return std::nullopt;
        return Rational(std::int64_t(v));
    }
    if (-exp > 62) return std::nullopt;
    return Rational(m, std::int64_t(1) << (-exp));
}

std::optional<Rational> Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
        while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto a = parse(text.substr(0, slash));
        auto b = parse(text.substr(slash + 1));
        if (!a || !b || b->is_zero()) return std::nullopt;
        try {
            return *a / *b;
        } catch (const std::overflow_error&) {
            return std::nullopt;
        }
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    i128 num = 0;
    i128 den = 1;
    bool after_point = false;
    bool any = false;
    constexpr i128 limit = i128(1) << 100;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit((unsigned char)c)) {
            num = num * 10 + (c - '0');
            if (after_point) den *= 10;
            if (num > limit || den > limit) return std::nullopt;
            any = true;
        } else if (c == '.' && !after_point) {
            after_point = true;
        } else {
            break;
        }
    }
    if (!any) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::string rest(text.substr(i + 1));
        if (rest.empty()) return std::nullopt;
        std::size_t used = 0;
        int e = 0;
        try {
            e = std::stoi(rest, &used);
        } catch (...) {
            return std::nullopt;
        }
        if (used != rest.size() || std::abs(e) > 30) return std::nullopt;
        for (int k = 0; k < std::abs(e); ++k) {
            if (e > 0) num *= 10;
            else den *= 10;
            if (num > limit || den > limit) return std::nullopt;
        }
        i = text.size();
    }
    if (i != text.size()) return std::nullopt;
    if (negative) num = -num;
    try {
        return make(num, den);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace nilsampler
