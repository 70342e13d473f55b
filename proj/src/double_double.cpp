#include "nilsampler/double_double.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace nilsampler {

DoubleDouble floor(DoubleDouble a) {
    double hi = std::floor(a.hi());
    if (hi != a.hi()) return {hi, 0.0};
    double lo = std::floor(a.lo());
    return dd_detail::quick_two_sum(hi, lo);
}

DoubleDouble ceil(DoubleDouble a) { return -floor(-a); }

DoubleDouble round(DoubleDouble a) { return floor(a + 0.5); }

DoubleDouble frac(DoubleDouble a) {
    DoubleDouble f = a - floor(a);
    // rounding can push the difference to exactly 1
    if (f >= DoubleDouble(1.0) || f.hi() < 0.0) return {0.0, 0.0};
    return f;
}

DoubleDouble sqrt(DoubleDouble a) {
    if (a.hi() <= 0.0) {
        if (a.hi() == 0.0) return {};
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    double q = std::sqrt(a.hi());
    DoubleDouble r = a - DoubleDouble::product(q, q);
    return DoubleDouble::sum(q, r.hi() / (2.0 * q));
}

DoubleDouble exp(DoubleDouble a) {
    constexpr double k = 512.0;
    if (a.hi() > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi() < -745.0) return {};
    if (a.hi() == 0.0 && a.lo() == 0.0) return {1.0};

    double m = std::floor(a.hi() / dd_const::ln2.hi() + 0.5);
    DoubleDouble r = (a - dd_const::ln2 * m) / k;

    // Taylor series of exp(r) - 1
    DoubleDouble s = r;
    DoubleDouble term = r;
    for (int i = 2; i < 20; ++i) {
        term = term * r / double(i);
        s += term;
        if (std::abs(term.hi()) < 1e-34 * std::abs(s.hi()) + 1e-300) break;
    }
    // (1+s)^512 - 1 via nine squarings
    for (int i = 0; i < 9; ++i) s = s * 2.0 + s * s;
    s = s + 1.0;
    return ldexp(s, int(m));
}

DoubleDouble log(DoubleDouble a) {
    if (a.hi() <= 0.0) {
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    if (a.hi() == 1.0 && a.lo() == 0.0) return {};
    DoubleDouble x = std::log(a.hi());
    // Newton step on exp(x) = a
    x = x + a * exp(-x) - 1.0;
    return x;
}

DoubleDouble pow(DoubleDouble a, long n) {
    if (n == 0) return {1.0};
    bool inv = n < 0;
    unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
    DoubleDouble result{1.0};
    DoubleDouble base = a;
    while (e) {
        if (e & 1UL) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return inv ? DoubleDouble(1.0) / result : result;
}

DoubleDouble pow(DoubleDouble a, DoubleDouble x) { return exp(x * log(a)); }

DoubleDouble nth_root(DoubleDouble a, long n) {
    if (n == 1) return a;
    if (n == 2) return sqrt(a);
    if (a.hi() <= 0.0) {
        if (a.hi() == 0.0) return {};
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    DoubleDouble y = std::pow(a.hi(), 1.0 / double(n));
    for (int it = 0; it < 2; ++it) {
        DoubleDouble ratio = a / pow(y, n);
        y = y + y * (ratio - 1.0) / double(n);
    }
    return y;
}

DoubleDouble parse_dd(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    DoubleDouble value{};
    int scale = 0;
    bool seen_digit = false;
    bool after_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit((unsigned char)c)) {
            value = value * 10.0 + double(c - '0');
            if (after_point) --scale;
            seen_digit = true;
        } else if (c == '.' && !after_point) {
            after_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::size_t start = i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (i == text.size() || !std::isdigit((unsigned char)text[i]))
            throw std::invalid_argument("malformed exponent: " + std::string(text));
        while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
        scale += std::stoi(std::string(text.substr(start, i - start)));
    }
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    if (i != text.size()) throw std::invalid_argument("trailing characters in number: " + std::string(text));
    if (scale > 0) value = value * pow(DoubleDouble(10.0), long(scale));
    if (scale < 0) value = value / pow(DoubleDouble(10.0), long(-scale));
    return negative ? -value : value;
}

std::string to_string(DoubleDouble a, int digits) {
    if (std::isnan(a.hi())) return "nan";
    if (std::isinf(a.hi())) return a.hi() > 0 ? "inf" : "-inf";
    if (a.hi() == 0.0) return "0";
    std::string out;
    if (a.hi() < 0) {
        out.push_back('-');
        a = -a;
    }
    int e = int(std::floor(std::log10(a.hi())));
    DoubleDouble r = e >= 0 ? a / pow(DoubleDouble(10.0), long(e)) : a * pow(DoubleDouble(10.0), long(-e));
    while (r.hi() >= 10.0) {
        r = r / 10.0;
        ++e;
    }
    while (r.hi() < 1.0) {
        r = r * 10.0;
        --e;
    }
    std::vector<int> d(digits + 1);
    for (int k = 0; k <= digits; ++k) {
        int digit = int(std::floor(r.hi()));
        if (digit > 9) digit = 9;
        if (digit < 0) digit = 0;
        d[k] = digit;
        r = (r - double(digit)) * 10.0;
        if (r.hi() < 0) r = {};
    }
    // round half up on the guard digit
    if (d[digits] >= 5) {
        int k = digits - 1;
        while (k >= 0 && ++d[k] == 10) {
            d[k] = 0;
            --k;
        }
        if (k < 0) {
            d.insert(d.begin(), 1);
            ++e;
        }
    }
    d.resize(digits);
    while (d.size() > 1 && d.back() == 0) d.pop_back();

    if (e >= 0 && e < digits) {
        for (int k = 0; k <= e; ++k) out.push_back(char('0' + (k < (int)d.size() ? d[k] : 0)));
        if ((int)d.size() > e + 1) {
            out.push_back('.');
            for (std::size_t k = e + 1; k < d.size(); ++k) out.push_back(char('0' + d[k]));
        }
    } else if (e < 0 && e >= -6) {
        out += "0.";
        for (int k = 0; k < -e - 1; ++k) out.push_back('0');
        for (int v : d) out.push_back(char('0' + v));
    } else {
        out.push_back(char('0' + d[0]));
        if (d.size() > 1) {
            out.push_back('.');
            for (std::size_t k = 1; k < d.size(); ++k) out.push_back(char('0' + d[k]));
        }
        out += "e" + std::to_string(e);
    }
    return out;
}

}  // namespace nilsampler
