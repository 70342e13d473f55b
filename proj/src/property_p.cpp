#include <algorithm>

#include "nilsampler/normal_form.hpp"

namespace nilsampler {

namespace {

// Non-polynomial, unbounded part: the only part that can decide the window test,
// since any polynomial can be subtracted and bounded terms never reach log-growth.
HardyExpr relevant_part(const HardyExpr& f) {
    return polynomial_part(f).second.terms_above(GrowthLevel::one());
}

// Number of derivatives after which nothing relevant remains.
int relevant_order(const HardyExpr& f) {
    HardyExpr cur = f;
    int n = 0;
    while (!relevant_part(cur).is_zero()) {
        cur = differentiate(cur);
        ++n;
    }
    return n;
}

bool in_window(const GrowthLevel& level, const GeneralizedLevel& upper) {
    return level > GrowthLevel::one() && GeneralizedLevel(level) <= upper;
}

struct Row {
    HardyExpr v;
    std::vector<Coeff> combo;
};

// Echelon basis of span{vs} with pairwise distinct leading levels. The set of
// leading growth levels reachable by nonzero combinations is exactly the set
// of leading levels of such a basis, so the window test is finite.
std::vector<Row> echelon(const std::vector<HardyExpr>& vs) {
    std::vector<Row> basis;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Row cur{vs[i], std::vector<Coeff>(vs.size())};
        cur.combo[i] = Coeff(1);
        while (!cur.v.is_zero()) {
            auto it = std::find_if(basis.begin(), basis.end(),
                                   [&](const Row& b) { return b.v.level() == cur.v.level(); });
            if (it == basis.end()) break;
            Coeff r = cur.v.dominant().coeff / it->v.dominant().coeff;
            cur.v -= r * it->v;
            for (std::size_t j = 0; j < vs.size(); ++j) cur.combo[j] -= r * it->combo[j];
        }
        if (!cur.v.is_zero()) basis.push_back(std::move(cur));
    }
    return basis;
}

std::string threshold_name(const WScheme& w) { return w.log_w_str(); }

PropertyWitness make_witness(const std::vector<HardyExpr>& fs, const std::vector<int>& which,
                             const std::vector<int>& orders, const std::vector<Coeff>& combo,
                             const WScheme& w) {
    PropertyWitness wit;
    for (std::size_t j = 0; j < combo.size(); ++j) {
        if (combo[j].is_zero()) continue;
        wit.function.push_back(which[j]);
        wit.c.push_back(combo[j]);
        wit.n.push_back(orders[j]);
        wit.combination += combo[j] * differentiate(fs[which[j]], orders[j]);
    }
    wit.offending = polynomial_part(wit.combination).second;
    const auto lead = relevant_part(wit.combination).level();
    std::string grows = HardyExpr::monomial(Coeff(1), lead.alpha, lead.beta).str();
    wit.classification = "non-polynomial part grows like " + grows + ": unbounded but not faster than " +
                         threshold_name(w);
    return wit;
}

}  // namespace

PropertyReport check_property_p_w(const std::vector<HardyExpr>& fs, const WScheme& w) {
    PropertyReport rep;
    rep.threshold = threshold_name(w);
    const GeneralizedLevel upper = w.log_w_level();
    const std::size_t k = fs.size();
    if (k == 0) return rep;

    std::vector<int> top(k);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        top[i] = relevant_order(fs[i]);
        total *= std::size_t(top[i]) + 1;
        if (total > 2'000'000) throw std::length_error("too many derivative-order combinations");
    }

    std::vector<std::vector<HardyExpr>> parts(k);
    for (std::size_t i = 0; i < k; ++i) {
        HardyExpr cur = fs[i];
        for (int n = 0; n <= top[i]; ++n) {
            parts[i].push_back(relevant_part(cur));
            cur = differentiate(cur);
        }
    }

    std::vector<int> which(k);
    for (std::size_t i = 0; i < k; ++i) which[i] = int(i);
    std::vector<int> n(k, 0);
    for (std::size_t iter = 0; iter < total; ++iter) {
        std::vector<HardyExpr> vs(k);
        for (std::size_t i = 0; i < k; ++i) vs[i] = parts[i][n[i]];
        for (const auto& row : echelon(vs)) {
            if (in_window(row.v.level(), upper)) {
                rep.holds = false;
                rep.witness = make_witness(fs, which, n, row.combo, w);
                return rep;
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (++n[i] <= top[i]) break;
            n[i] = 0;
        }
    }
    return rep;
}

PropertyReport check_property_p(const std::vector<HardyExpr>& fs) {
    return check_property_p_w(fs, WScheme::identity());
}

PropertyReport check_property_span(const std::vector<HardyExpr>& fs, const WScheme& w) {
    PropertyReport rep;
    rep.threshold = threshold_name(w);
    std::vector<HardyExpr> vs;
    std::vector<int> which, orders;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        HardyExpr cur = fs[i];
        for (int n = 0;; ++n) {
            HardyExpr v = relevant_part(cur);
            if (v.is_zero()) break;
            vs.push_back(v);
            which.push_back(int(i));
            orders.push_back(n);
            cur = differentiate(cur);
        }
    }
    for (const auto& row : echelon(vs)) {
        if (in_window(row.v.level(), w.log_w_level())) {
            rep.holds = false;
            rep.witness = make_witness(fs, which, orders, row.combo, w);
            return rep;
        }
    }
    return rep;
}

WScheme choose_w(const std::vector<HardyExpr>& fs) {
    std::vector<HardyExpr> nonconst;
    for (const auto& f : fs)
        if (!is_bounded(f)) nonconst.push_back(f);
    if (nonconst.empty()) return WScheme::identity();
    const NormalForm nf = normal_form(nonconst);

    std::vector<GeneralizedLevel> ms;
    for (std::size_t j = 0; j < nf.g.size(); ++j) {
        auto l = nf.g[j].level();
        ms.emplace_back(l.alpha - Rational(nf.ell[j] - 1), Rational(l.beta));
    }
    const WScheme catalogue[] = {WScheme::identity(), WScheme::power_log(Rational(1, 2)), WScheme::log(),
                                 WScheme::loglog()};
    for (const auto& w : catalogue) {
        const auto lw = w.log_w_level();
        if (std::all_of(ms.begin(), ms.end(), [&](const GeneralizedLevel& m) { return lw < m; })) return w;
    }
    auto tight = *std::min_element(ms.begin(), ms.end());
    throw NoSchemeFound("no catalogue scheme has log W below " + tight.str());
}

}  // namespace nilsampler
