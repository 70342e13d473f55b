#include <algorithm>
#include <numeric>

#include "nilsampler/normal_form.hpp"

namespace nilsampler {

namespace {

CharacteristicPair pair_of(const std::vector<HardyExpr>& fs) {
    CharacteristicPair cp;
    for (const auto& f : fs) cp.d = std::max(cp.d, degree(f));
    for (const auto& f : fs)
        if (degree(f) == cp.d) ++cp.e;
    return cp;
}

void record(NormalFormTrace* trace, CharacteristicPair parent, CharacteristicPair child) {
    if (!(child < parent))
        throw std::logic_error("normal form recursion did not decrease the characteristic pair");
    if (trace) trace->steps.emplace_back(parent, child);
}

// Fastest-growing entry; ties go to the smallest index, zero is slowest.
std::size_t fastest(const std::vector<HardyExpr>& hs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < hs.size(); ++i) {
        if (hs[i].is_zero()) continue;
        if (hs[best].is_zero() || hs[i].level() > hs[best].level()) best = i;
    }
    return best;
}

// lim h / top for h no faster than top.
Coeff ratio_limit(const HardyExpr& h, const HardyExpr& top) {
    if (h.is_zero() || h.level() < top.level()) return Coeff();
    return h.dominant().coeff / top.dominant().coeff;
}

HardyExpr t_pow_scaled(const Coeff& c, int d) { return HardyExpr::monomial(c, Rational(d), 0); }

NormalForm empty_form(std::size_t k) {
    NormalForm nf;
    nf.lambda.assign(k, {});
    nf.p.assign(k, HardyExpr());
    return nf;
}

NormalForm simple_rec(const std::vector<HardyExpr>& fs, NormalFormTrace* trace) {
    const std::size_t k = fs.size();
    NormalForm nf = empty_form(k);
    if (k == 0) return nf;

    const auto cp = pair_of(fs);
    if (cp.d == 0) {
        for (std::size_t i = 0; i < k; ++i) nf.p[i] = HardyExpr::constant(limit_at_infinity(fs[i]));
        return nf;
    }

    std::vector<Coeff> sigma(k);
    std::vector<HardyExpr> h(k);
    for (std::size_t i = 0; i < k; ++i) {
        sigma[i] = fs[i].coefficient_at({Rational(cp.d), 0});
        h[i] = fs[i] - t_pow_scaled(sigma[i], cp.d);
    }
    const auto cph = pair_of(h);

    if (cph != cp) {
        record(trace, cp, cph);
        nf = simple_rec(h, trace);
        for (std::size_t i = 0; i < k; ++i) nf.p[i] += t_pow_scaled(sigma[i], cp.d);
        return nf;
    }

    // some h still has degree d: peel off the fastest one as a basis element
    const std::size_t top = fastest(h);
    std::vector<Coeff> eta(k);
    std::vector<HardyExpr> reduced;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == top) continue;
        eta[i] = ratio_limit(h[i], h[top]);
        reduced.push_back(h[i] - eta[i] * h[top]);
    }
    record(trace, cp, pair_of(reduced));
    NormalForm sub = simple_rec(reduced, trace);

    auto [poly, g_new] = polynomial_part(h[top]);
    nf.g = sub.g;
    nf.g.push_back(g_new);
    const std::size_t m = nf.g.size();
    std::size_t j = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const HardyExpr lead = t_pow_scaled(sigma[i], cp.d);
        if (i == top) {
            nf.lambda[i].assign(m, Coeff());
            nf.lambda[i][m - 1] = Coeff(1);
            nf.p[i] = lead + poly;
            continue;
        }
        nf.lambda[i] = sub.lambda[j];
        nf.lambda[i].push_back(eta[i]);
        nf.p[i] = sub.p[j] + lead + eta[i] * poly;
        ++j;
    }
    return nf;
}

// Reorders columns so that g is increasing in growth; rejects ties.
void sort_basis(NormalForm& nf) {
    const std::size_t m = nf.g.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nf.g[a].level() < nf.g[b].level(); });
    for (std::size_t j = 1; j < m; ++j)
        if (nf.g[order[j]].level() == nf.g[order[j - 1]].level())
            throw std::logic_error("normal form basis elements share a growth level");
    std::vector<HardyExpr> g;
    for (auto j : order) g.push_back(nf.g[j]);
    nf.g = std::move(g);
    for (auto& row : nf.lambda) {
        std::vector<Coeff> r;
        for (auto j : order) r.push_back(row[j]);
        row = std::move(r);
    }
}

void finish(NormalForm& nf) {
    nf.ell.clear();
    for (const auto& g : nf.g) {
        if (g.is_zero() || is_bounded(g)) throw std::logic_error("normal form produced a bounded basis element");
        nf.ell.push_back(degree(g));
    }
}

HardyExpr row_residual(const NormalForm& nf, std::size_t i, const HardyExpr& f) {
    HardyExpr r = f - nf.p[i];
    for (std::size_t j = 0; j < nf.g.size(); ++j)
        if (!nf.lambda[i][j].is_zero()) r -= nf.lambda[i][j] * nf.g[j];
    return r;
}

// Integrating a vanishing remainder can leave a constant or an unbounded
// sublinear remainder (e.g. t^{-1/2} integrates to 2 t^{1/2}). Constants go into
// p; unbounded parts are expressed through existing degree-1 basis elements
// where the growth matches, otherwise they become new degree-1 elements.
void absorb_remainder(NormalForm& nf, std::size_t row, const HardyExpr& f, NormalFormTrace* trace) {
    for (int guard = 0; guard < 256; ++guard) {
        HardyExpr r = row_residual(nf, row, f);
        auto [poly, rest] = polynomial_part(r);
        nf.p[row] += poly;
        HardyExpr unbounded = rest.terms_above(GrowthLevel::one());
        if (unbounded.is_zero()) return;
        if (unbounded.level() >= GrowthLevel{Rational(1), 0})
            throw std::logic_error("integrated remainder is not sublinear: " + unbounded.str());
        if (trace) ++trace->repairs;
        bool matched = false;
        for (std::size_t j = 0; j < nf.g.size(); ++j) {
            if (nf.g[j].level() == unbounded.level()) {
                nf.lambda[row][j] += unbounded.dominant().coeff / nf.g[j].dominant().coeff;
                matched = true;
                break;
            }
        }
        if (!matched) {
            nf.g.push_back(unbounded);
            for (auto& lam : nf.lambda) lam.push_back(Coeff());
            nf.lambda[row].back() = Coeff(1);
        }
    }
    throw std::logic_error("remainder absorption did not terminate");
}

NormalForm closed_rec(const std::vector<HardyExpr>& fs, NormalFormTrace* trace) {
    const std::size_t k = fs.size();
    if (k == 0) return empty_form(0);
    const auto cp = pair_of(fs);
    if (cp.d <= 1) return simple_rec(fs, trace);

    const std::size_t top = fastest(fs);
    std::vector<Coeff> eta(k);
    std::vector<HardyExpr> next(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (i == top) {
            next[i] = differentiate(fs[i]);
        } else {
            eta[i] = ratio_limit(fs[i], fs[top]);
            next[i] = fs[i] - eta[i] * fs[top];
        }
    }
    record(trace, cp, pair_of(next));
    NormalForm sub = closed_rec(next, trace);

    NormalForm nf = empty_form(k);
    nf.g = sub.g;
    const std::size_t m_sub = sub.g.size();
    std::vector<std::size_t> anti(m_sub);
    for (std::size_t j = 0; j < m_sub; ++j) {
        std::size_t found = m_sub;
        for (std::size_t b = 0; b < m_sub; ++b)
            if (differentiate(sub.g[b]) == sub.g[j]) found = b;
        if (found == m_sub) {
            nf.g.push_back(antiderivative(sub.g[j]));
            found = nf.g.size() - 1;
        }
        anti[j] = found;
    }
    const std::size_t m = nf.g.size();
    nf.lambda[top].assign(m, Coeff());
    for (std::size_t j = 0; j < m_sub; ++j) nf.lambda[top][anti[j]] += sub.lambda[top][j];
    nf.p[top] = antiderivative(sub.p[top]);
    for (std::size_t i = 0; i < k; ++i)
        if (i != top) nf.lambda[i].assign(m, Coeff());
    absorb_remainder(nf, top, fs[top], trace);

    const std::size_t m_full = nf.g.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (i == top) continue;
        auto& row = nf.lambda[i];
        row.assign(m_full, Coeff());
        for (std::size_t j = 0; j < m_sub; ++j) row[j] = sub.lambda[i][j];
        for (std::size_t j = 0; j < m_full; ++j) row[j] += eta[i] * nf.lambda[top][j];
        nf.p[i] = sub.p[i] + eta[i] * nf.p[top];
    }
    sort_basis(nf);
    return nf;
}

}  // namespace

CharacteristicPair characteristic_pair(const std::vector<HardyExpr>& fs) {
    if (fs.empty()) throw EmptyInput("characteristic pair of an empty set");
    return pair_of(fs);
}

HardyExpr NormalForm::residual(std::size_t i, const HardyExpr& f) const { return row_residual(*this, i, f); }

NormalForm simple_normal_form(const std::vector<HardyExpr>& fs, NormalFormTrace* trace) {
    if (fs.empty()) throw EmptyInput("normal form of an empty set");
    NormalForm nf = simple_rec(fs, trace);
    finish(nf);
    return nf;
}

NormalForm normal_form(const std::vector<HardyExpr>& fs, NormalFormTrace* trace) {
    if (fs.empty()) throw EmptyInput("normal form of an empty set");
    NormalForm nf = closed_rec(fs, trace);
    finish(nf);
    return nf;
}

}  // namespace nilsampler
