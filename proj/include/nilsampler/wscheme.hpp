#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "nilsampler/hardy.hpp"
#include "nilsampler/rational.hpp"

namespace nilsampler {

/// Growth of t^alpha (log t)^beta (log log t)^gamma (log log log t)^delta, ordered
/// lexicographically. Wide enough to hold log W for every catalogue scheme.
struct GeneralizedLevel {
    Rational alpha;
    Rational beta;
    int gamma = 0;
    int delta = 0;

    GeneralizedLevel() = default;
    GeneralizedLevel(Rational a, Rational b, int g = 0, int d = 0) : alpha(a), beta(b), gamma(g), delta(d) {}
    explicit GeneralizedLevel(const GrowthLevel& l) : alpha(l.alpha), beta(Rational(l.beta)) {}

    friend bool operator==(const GeneralizedLevel&, const GeneralizedLevel&) = default;
    friend std::strong_ordering operator<=>(const GeneralizedLevel& a, const GeneralizedLevel& b) {
        if (auto c = a.alpha <=> b.alpha; c != 0) return c;
        if (auto c = a.beta <=> b.beta; c != 0) return c;
        if (auto c = a.gamma <=> b.gamma; c != 0) return c;
        return a.delta <=> b.delta;
    }
    std::string str() const;
};

/// Summation scheme W with weights w(n) = W(n+1) - W(n).
class WScheme {
public:
    enum class Shape { Identity, PowerLog, Log, LogLog };

    static WScheme identity() { return WScheme(Shape::Identity, Rational(1)); }
    /// W(t) = exp((log t)^gamma), 0 < gamma <= 1.
    static WScheme power_log(Rational gamma);
    static WScheme log() { return WScheme(Shape::Log, Rational(0)); }
    static WScheme loglog() { return WScheme(Shape::LogLog, Rational(0)); }
    /// "cesaro" (or "identity"), "log", "loglog", "powlog:<gamma>".
    static WScheme parse(std::string_view text);

    Shape shape() const { return shape_; }
    const Rational& gamma() const { return gamma_; }
    std::string name() const;

    /// Growth of log W(t).
    GeneralizedLevel log_w_level() const;
    std::string log_w_str() const;

    double W(double t) const;
    /// W(n+1) - W(n), computed without cancellation; exactly 1 for Identity.
    double weight(std::int64_t n) const;

    friend bool operator==(const WScheme&, const WScheme&) = default;

private:
    WScheme(Shape s, Rational g) : shape_(s), gamma_(g) {}
    Shape shape_;
    Rational gamma_;
};

}  // namespace nilsampler
