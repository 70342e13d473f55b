#include <cctype>
#include <cmath>

#include "nilsampler/hardy.hpp"

namespace nilsampler {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    HardyExpr run() {
        HardyExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("cannot parse \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " +
                         what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    HardyExpr expr() {
        HardyExpr acc = signed_term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    HardyExpr signed_term() {
        if (accept('-')) return -term();
        accept('+');
        return term();
    }

    static bool starts_factor(char c) {
        return std::isdigit((unsigned char)c) || c == '.' || c == 't' || c == 'l' || c == 's' || c == '(';
    }

    HardyExpr term() {
        HardyExpr acc = power();
        for (;;) {
            if (accept('*')) acc = acc * power();
            else if (accept('/')) acc = acc * reciprocal(power());
            else if (starts_factor(peek())) acc = acc * power();
            else return acc;
        }
    }

    HardyExpr reciprocal(const HardyExpr& d) {
        if (d.terms().size() != 1) fail("division only by a single monomial");
        const auto& t = d.dominant();
        return HardyExpr::monomial(Coeff(1) / t.coeff, Rational(0) - t.level.alpha, -t.level.beta);
    }

    HardyExpr power() {
        HardyExpr base = atom();
        if (!accept('^')) return base;
        Rational r = exponent();
        return raise(base, r);
    }

    HardyExpr raise(const HardyExpr& base, const Rational& r) {
        if (base.is_zero()) {
            if (r.sign() <= 0) fail("zero to a non-positive power");
            return base;
        }
        if (base.terms().size() == 1) {
            const auto& t = base.dominant();
            Coeff c(1);
            if (r.is_integer()) {
                Coeff b = r.sign() < 0 ? Coeff(1) / t.coeff : t.coeff;
                for (std::int64_t i = 0; i < (r.num() < 0 ? -r.num() : r.num()); ++i) c = c * b;
            } else if (!t.coeff.is_one()) {
                fail("fractional power of a scaled monomial");
            }
            Rational beta = Rational(t.level.beta) * r;
            if (!beta.is_integer()) fail("fractional power of log(t)");
            return HardyExpr::monomial(c, t.level.alpha * r, int(beta.num()));
        }
        if (!r.is_integer() || r.sign() < 0) fail("only nonnegative integer powers of sums");
        HardyExpr out = HardyExpr::constant(Coeff(1));
        for (std::int64_t i = 0; i < r.num(); ++i) out = out * base;
        return out;
    }

    Rational exponent() {
        char open = peek();
        if (open == '{' || open == '(') {
            ++pos_;
            char close = open == '{' ? '}' : ')';
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != close) ++pos_;
            if (pos_ == s_.size()) fail("unterminated exponent");
            auto r = Rational::parse(s_.substr(start, pos_ - start));
            if (!r) fail("exponent must be rational");
            ++pos_;
            return *r;
        }
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.')) ++pos_;
        auto r = Rational::parse(s_.substr(start, pos_ - start));
        if (!r) fail("exponent must be rational");
        return *r;
    }

    Coeff number_literal() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
            if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
                while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            } else {
                pos_ = save;
            }
        }
        auto text = s_.substr(start, pos_ - start);
        if (text.empty()) fail("expected a number");
        if (auto r = Rational::parse(text)) return Coeff(*r);
        return Coeff(parse_dd(text));
    }

    HardyExpr atom() {
        char c = peek();
        if (std::isdigit((unsigned char)c) || c == '.') return HardyExpr::constant(number_literal());
        if (accept('(')) {
            HardyExpr e = expr();
            expect(')');
            return e;
        }
        if (accept_word("sqrt")) {
            expect('(');
            Coeff v = number_literal();
            if (accept('/')) v = v / number_literal();
            expect(')');
            if (v.sign() < 0) fail("sqrt of a negative number");
            return HardyExpr::constant(exact_sqrt(v));
        }
        if (accept_word("log") || accept_word("ln")) {
            expect('(');
            if (!accept('t')) fail("log accepts only t");
            expect(')');
            return HardyExpr::monomial(Coeff(1), Rational(0), 1);
        }
        if (accept('t')) return HardyExpr::t_pow(Rational(1));
        fail("expected a term");
    }

    static Coeff exact_sqrt(const Coeff& v) {
        if (v.is_exact()) {
            const Rational& r = *v.exact();
            auto isqrt = [](std::int64_t x) -> std::optional<std::int64_t> {
                auto s = std::int64_t(std::llround(std::sqrt(double(x))));
                for (std::int64_t k = std::max<std::int64_t>(0, s - 2); k <= s + 2; ++k)
                    if (k * k == x) return k;
                return std::nullopt;
            };
            auto n = isqrt(r.num());
            auto d = isqrt(r.den());
            if (n && d) return Coeff(Rational(*n, *d));
        }
        return Coeff(sqrt(v.value()));
    }
};

}  // namespace

HardyExpr parse_hardy(std::string_view text) { return Parser(text).run(); }

}  // namespace nilsampler
