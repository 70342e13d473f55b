#include "nilsampler/wscheme.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nilsampler {

std::string GeneralizedLevel::str() const {
    std::string out;
    auto factor = [&](const std::string& base, const Rational& power) {
        if (power.is_zero()) return;
        if (!out.empty()) out += "*";
        out += base;
        if (power != Rational(1)) out += "^{" + power.str() + "}";
    };
    factor("t", alpha);
    factor("log(t)", beta);
    factor("log(log(t))", Rational(gamma));
    factor("log(log(log(t)))", Rational(delta));
    return out.empty() ? "1" : out;
}

WScheme WScheme::power_log(Rational gamma) {
    if (gamma.sign() <= 0 || gamma > Rational(1))
        throw std::invalid_argument("power-log exponent must lie in (0, 1], got " + gamma.str());
    if (gamma == Rational(1)) return identity();
    return WScheme(Shape::PowerLog, gamma);
}

WScheme WScheme::parse(std::string_view text) {
    if (text == "cesaro" || text == "identity") return identity();
    if (text == "log") return log();
    if (text == "loglog") return loglog();
    constexpr std::string_view prefix = "powlog:";
    if (text.substr(0, prefix.size()) == prefix) {
        auto g = Rational::parse(text.substr(prefix.size()));
        if (!g) throw std::invalid_argument("bad power-log exponent in scheme \"" + std::string(text) + "\"");
        return power_log(*g);
    }
    throw std::invalid_argument("unknown scheme \"" + std::string(text) + "\"");
}

std::string WScheme::name() const {
    switch (shape_) {
        case Shape::Identity: return "cesaro";
        case Shape::PowerLog: {
            // decimal when it reads back to the same rational, e.g. 0.5
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", gamma_.to_double());
            auto back = Rational::parse(buf);
            return "powlog:" + ((back && *back == gamma_) ? std::string(buf) : gamma_.str());
        }
        case Shape::Log: return "log";
        case Shape::LogLog: return "loglog";
    }
    return "?";
}

GeneralizedLevel WScheme::log_w_level() const {
    switch (shape_) {
        case Shape::Identity: return {Rational(0), Rational(1)};
        case Shape::PowerLog: return {Rational(0), gamma_};
        case Shape::Log: return {Rational(0), Rational(0), 1};
        case Shape::LogLog: return {Rational(0), Rational(0), 0, 1};
    }
    return {};
}

std::string WScheme::log_w_str() const { return log_w_level().str(); }

double WScheme::W(double t) const {
    switch (shape_) {
        case Shape::Identity: return t;
        case Shape::PowerLog: return std::exp(std::pow(std::log(t), gamma_.to_double()));
        case Shape::Log: return std::log(t);
        case Shape::LogLog: return std::log(std::log(t));
    }
    return 0.0;
}

double WScheme::weight(std::int64_t n) const {
    const double x = double(n);
    const double step = std::log1p(1.0 / x);  // log(n+1) - log(n)
    switch (shape_) {
        case Shape::Identity: return 1.0;
        case Shape::Log: return step;
        case Shape::LogLog: return std::log1p(step / std::log(x));
        case Shape::PowerLog: {
            const double g = gamma_.to_double();
            const double a = std::log(x);
            const double ag = std::pow(a, g);
            // (a + step)^g - a^g, then exp of it minus one
            const double inc = ag * std::expm1(g * std::log1p(step / a));
            return std::exp(ag) * std::expm1(inc);
        }
    }
    return 0.0;
}

}  // namespace nilsampler
