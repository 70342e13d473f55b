#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilsampler/hardy.hpp"
#include "nilsampler/wscheme.hpp"

namespace nilsampler {

struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// (max degree d, number of functions of degree d).
struct CharacteristicPair {
    int d = 0;
    int e = 0;
    friend auto operator<=>(const CharacteristicPair&, const CharacteristicPair&) = default;
};

CharacteristicPair characteristic_pair(const std::vector<HardyExpr>& fs);

/// f_i ~ sum_j lambda[i][j] g[j] + p[i], with f_i - (...) -> 0.
struct NormalForm {
    std::vector<HardyExpr> g;                // strictly increasing growth, none zero
    std::vector<std::vector<Coeff>> lambda;  // k x m
    std::vector<HardyExpr> p;                // polynomials
    std::vector<int> ell;                    // t^{ell-1} < g_j < t^ell

    /// f_i - sum_j lambda_ij g_j - p_i.
    HardyExpr residual(std::size_t i, const HardyExpr& f) const;
};

/// Each recursive step of the construction, as (parent pair, child pair).
/// Empty child sets are recorded with e = 0.
struct NormalFormTrace {
    std::vector<std::pair<CharacteristicPair, CharacteristicPair>> steps;
    /// Sublinear remainders left by integration that had to be re-expanded.
    int repairs = 0;
};

/// Growth-separated basis without derivative closure.
NormalForm simple_normal_form(const std::vector<HardyExpr>& fs, NormalFormTrace* trace = nullptr);
/// Growth-separated basis in which g' is again a basis element whenever deg g >= 2.
NormalForm normal_form(const std::vector<HardyExpr>& fs, NormalFormTrace* trace = nullptr);

/// Outcome of a Property (P) / (P_W) decision.
struct PropertyWitness {
    std::vector<int> function;        // which f_i each entry refers to
    std::vector<Coeff> c;             // coefficients
    std::vector<int> n;               // derivative orders
    HardyExpr combination;            // sum c_i f_i^{(n_i)}
    HardyExpr offending;              // its non-polynomial part
    std::string classification;
};

struct PropertyReport {
    bool holds = true;
    std::string threshold;            // the growth the window is measured against
    std::optional<PropertyWitness> witness;
};

/// Decides (P): for all c, n and every polynomial p, |f - p| << 1 or |f - p| > log t,
/// where f = sum c_i f_i^{(n_i)} (one derivative order per function).
PropertyReport check_property_p(const std::vector<HardyExpr>& fs);
PropertyReport check_property_p_w(const std::vector<HardyExpr>& fs, const WScheme& w);

/// Same window test on the whole span of all derivatives of all f_i, which
/// may mix several derivative orders of the same function. Holding here
/// implies the single-order property; the converse can fail.
PropertyReport check_property_span(const std::vector<HardyExpr>& fs, const WScheme& w);

struct NoSchemeFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// First catalogue scheme W with log W < g_j / t^{ell_j - 1} for every basis element.
WScheme choose_w(const std::vector<HardyExpr>& fs);

}  // namespace nilsampler
