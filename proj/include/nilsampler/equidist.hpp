#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilsampler/normal_form.hpp"
#include "nilsampler/orbit.hpp"
#include "nilsampler/wscheme.hpp"

namespace nilsampler {

struct InsufficientLength : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Neumaier's compensated sum; merging adds the other sum's pieces in order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& o) {
        add(o.sum_);
        add(o.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct WeightTable {
    std::vector<double> w;  // w(n) for n = n_start .. n_end
    double normalizer = 0;  // sum of w, the telescoped W(n_end + 1) - W(n_start)
};

WeightTable w_weights(const WScheme& scheme, std::int64_t n_start, std::int64_t n_end);

using Frequency = std::vector<int>;

/// All k in Z^d with 0 < |k|_inf <= K, lexicographic from (-K, ..., -K).
std::vector<Frequency> frequencies(int d, int max_freq);

/// (1 / sum w) sum_n w_n e(k . x_n) over points stored row-major with `stride`
/// doubles each (the first k.size() are used). Empty weights mean w = 1.
std::complex<double> weyl_sum(const std::vector<double>& coords, int stride, const std::vector<double>& weights,
                              const Frequency& k);

/// Weyl sums for a whole frequency table, accumulated point by point.
class WeylAccumulator {
public:
    WeylAccumulator() = default;
    WeylAccumulator(int d, int max_freq);

    void add(const double* x, double w);
    /// Appends another accumulator's sums; merging in a fixed order is deterministic.
    void merge(const WeylAccumulator& o);

    const std::vector<Frequency>& frequencies() const { return freqs_; }
    std::complex<double> value(std::size_t i) const;
    double weight_sum() const { return wsum_.value(); }
    std::size_t count() const { return count_; }

private:
    int d_ = 0;
    int max_freq_ = 0;
    std::vector<Frequency> freqs_;
    std::vector<CompensatedSum> re_, im_;
    CompensatedSum wsum_;
    std::size_t count_ = 0;
    std::vector<std::complex<double>> powers_;  // scratch: e(j x_i), j = 0..K
};

/// Exact D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N) of points in [0, 1).
double star_discrepancy_1d(std::vector<double> points);
/// Weighted version: sup_x |sum_{x_i < x} w_i / sum w - x|.
double star_discrepancy_1d(const std::vector<double>& points, const std::vector<double>& weights);

struct L2Options {
    std::size_t exact_limit = 100'000;   // largest N for the O(N^2) formula
    std::size_t subsample = 20'000;      // points kept when d > 3 and N is too large
    std::size_t cell_budget = 1u << 21;  // total cells of the binned estimator
};

struct L2Result {
    double value = 0;
    std::string method;     // star, exact, binned, subsample
    double bias_bound = 0;  // bound on |estimate - exact| for the binned method
    std::size_t points_used = 0;
    int cells_per_axis = 0;
};

/// L2 star discrepancy of points in [0,1)^d, d <= 6, weighted when weights are given.
L2Result l2_discrepancy(const std::vector<double>& coords, int d, const std::vector<double>& weights = {},
                        const L2Options& opt = {});

struct CorrelationTable {
    std::vector<std::complex<double>> A;  // A(h), h = 1..H at index h - 1
    std::vector<double> p;                // weights p_n
    std::vector<double> P;                // cumulative P_n
    std::vector<double> tail;             // p_n / P_n at n = 2^j and at N
    std::complex<double> average;         // (1/P_N) sum p_n f(n)
    double lhs = 0;                       // |average|^2
    double rhs = 0;                       // (1/H) sum_{|h|<=H} (H-|h|)/H Re A(h)
    double slack = 0;                     // c (p_N/P_N + H/N)
    bool violated = false;                // lhs > rhs + slack + 1e-6
};

/// Finite-N correlations A(h) = (1/P_N) sum_{n <= N-h} p_n f(n+h) conj(f(n)) and the
/// van der Corput check. Empty weights mean p = 1.
CorrelationTable vdc_correlations(const std::vector<std::complex<double>>& values, const std::vector<double>& weights,
                                  int H, double c = 10.0);

struct Thresholds {
    double weyl = 0.02;
    double discrepancy = 0.02;
};

struct AnalysisOptions {
    int max_freq = 5;
    Thresholds thresholds;
    L2Options l2;
    GenerateOptions generate;
    std::int64_t max_n = kDefaultMaxN;
    /// Running |Weyl| values after every chunk, for plotting.
    bool series = false;
};

struct WeylEntry {
    Frequency k;
    std::complex<double> value;
};

struct SeriesRow {
    std::int64_t n_points = 0;
    std::int64_t last_n = 0;
    std::vector<double> abs_weyl;
};

struct EquidistReport {
    std::vector<WeylEntry> weyl;
    double max_weyl = 0;
    L2Result torus_discrepancy;
    L2Result full_discrepancy;
    bool torus_equidistributed = false;
    bool full_equidistributed = false;
    bool criterion_consistent = false;
    std::string scheme;
    std::int64_t N = 0;
    double weight_sum = 0;
    int max_freq = 0;
    Thresholds thresholds;
    std::vector<SeriesRow> series;
};

/// Runs the orbit and compares torus-projection and full-space statistics.
EquidistReport criterion_check(const OrbitSpec& spec, const AnalysisOptions& opt = {});

/// Discrepancy of points in [0,1)^d: star for d = 1, L2 otherwise.
L2Result discrepancy(const std::vector<double>& coords, int d, const std::vector<double>& weights = {},
                     const L2Options& opt = {});

}  // namespace nilsampler
