#include "nilsampler/equidist.hpp"

#include <algorithm>
#include <numbers>

namespace nilsampler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> e(double phase) {
    phase -= std::floor(phase);
    return {std::cos(kTwoPi * phase), std::sin(kTwoPi * phase)};
}

std::vector<double> normalized(const std::vector<double>& weights, std::size_t n) {
    if (weights.empty()) return std::vector<double>(n, 1.0 / double(n));
    if (weights.size() != n) throw std::invalid_argument("weights and points differ in length");
    CompensatedSum total;
    for (double w : weights) {
        if (!(w >= 0)) throw std::invalid_argument("weights must be nonnegative");
        total.add(w);
    }
    if (!(total.value() > 0)) throw std::invalid_argument("weights sum to zero");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = weights[i] / total.value();
    return out;
}

// Warnock: T^2 = 3^-d - 2^{1-d} sum_i w_i prod_k (1 - x_ik^2)
//               + sum_{i,j} w_i w_j prod_k (1 - max(x_ik, x_jk))
double warnock(const std::vector<double>& coords, int d, const std::vector<double>& w) {
    const std::size_t n = w.size();
    CompensatedSum single, pairs;
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = coords.data() + i * d;
        double prod = 1;
        for (int k = 0; k < d; ++k) prod *= 1 - x[k] * x[k];
        single.add(w[i] * prod);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = coords.data() + i * d;
        double diag = 1;
        for (int k = 0; k < d; ++k) diag *= 1 - x[k];
        double row = 0.5 * w[i] * diag;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* y = coords.data() + j * d;
            double prod = w[j];
            for (int k = 0; k < d; ++k) prod *= 1 - std::max(x[k], y[k]);
            row += prod;
        }
        pairs.add(2 * w[i] * row);
    }
    const double t2 = std::pow(3.0, -d) - std::ldexp(single.value(), 1 - d) + pairs.value();
    return std::sqrt(std::max(0.0, t2));
}

// One dimension in O(N log N): the pair sum collapses in sorted order.
double warnock_1d(const std::vector<double>& xs, const std::vector<double>& w) {
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    CompensatedSum single, pairs, before;
    for (auto i : order) {
        single.add(w[i] * (1 - xs[i] * xs[i]));
        pairs.add(w[i] * (1 - xs[i]) * (2 * before.value() + w[i]));
        before.add(w[i]);
    }
    const double t2 = 1.0 / 3.0 - single.value() + pairs.value();
    return std::sqrt(std::max(0.0, t2));
}

L2Result binned(const std::vector<double>& coords, int d, const std::vector<double>& w, std::size_t budget) {
    int m = 1;
    while (std::pow(double(m * 2), d) <= double(budget) && m < 1024) m *= 2;
    std::size_t cells = 1;
    for (int k = 0; k < d; ++k) cells *= std::size_t(m);
    std::vector<double> grid(cells, 0.0);
    std::vector<std::vector<double>> slab(d, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t idx = 0;
        for (int k = 0; k < d; ++k) {
            const int c = std::min(m - 1, int(coords[i * d + k] * m));
            slab[k][c] += w[i];
            idx = idx * m + c;
        }
        grid[idx] += w[i];
    }
    // prefix sums along every axis turn cell masses into F at upper corners
    std::size_t stride = 1;
    for (int k = d - 1; k >= 0; --k) {
        for (std::size_t i = 0; i < cells; ++i)
            if ((i / stride) % m != 0) grid[i] += grid[i - stride];
        stride *= m;
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i < cells; ++i) {
        double vol = 1;
        std::size_t rest = i;
        for (int k = 0; k < d; ++k) {
            vol *= double(rest % m + 1) / m;
            rest /= m;
        }
        const double diff = grid[i] - vol;
        acc.add(diff * diff);
    }
    double max_slab = 0;
    for (const auto& s : slab) max_slab = std::max(max_slab, *std::max_element(s.begin(), s.end()));
    L2Result r;
    r.value = std::sqrt(acc.value() / double(cells));
    r.method = "binned";
    r.bias_bound = d * (max_slab + 1.0 / m);
    r.points_used = w.size();
    r.cells_per_axis = m;
    return r;
}

}  // namespace

WeightTable w_weights(const WScheme& scheme, std::int64_t n_start, std::int64_t n_end) {
    if (n_start < 2 || n_end < n_start) throw RangeError("weights need 2 <= n_start <= n_end");
    WeightTable t;
    CompensatedSum total;
    t.w.reserve(std::size_t(n_end - n_start + 1));
    for (std::int64_t n = n_start; n <= n_end; ++n) {
        t.w.push_back(scheme.weight(n));
        total.add(t.w.back());
    }
    t.normalizer = total.value();
    return t;
}

std::vector<Frequency> frequencies(int d, int max_freq) {
    if (d < 1 || max_freq < 1) throw std::invalid_argument("frequencies need d >= 1 and K >= 1");
    std::vector<Frequency> out;
    Frequency k(d, -max_freq);
    while (true) {
        if (std::any_of(k.begin(), k.end(), [](int x) { return x != 0; })) out.push_back(k);
        int i = d - 1;
        while (i >= 0 && k[i] == max_freq) k[i--] = -max_freq;
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

std::complex<double> weyl_sum(const std::vector<double>& coords, int stride, const std::vector<double>& weights,
                              const Frequency& k) {
    if (stride < int(k.size()) || k.empty()) throw std::invalid_argument("frequency longer than the points");
    const std::size_t n = coords.size() / std::size_t(stride);
    if (n == 0) throw EmptyInput("Weyl sum of no points");
    if (!weights.empty() && weights.size() != n) throw std::invalid_argument("weights and points differ in length");
    CompensatedSum re, im, total;
    for (std::size_t i = 0; i < n; ++i) {
        double phase = 0;
        for (std::size_t c = 0; c < k.size(); ++c) phase += k[c] * coords[i * stride + c];
        const double w = weights.empty() ? 1.0 : weights[i];
        const auto z = e(phase);
        re.add(w * z.real());
        im.add(w * z.imag());
        total.add(w);
    }
    return {re.value() / total.value(), im.value() / total.value()};
}

WeylAccumulator::WeylAccumulator(int d, int max_freq)
    : d_(d), max_freq_(max_freq), freqs_(nilsampler::frequencies(d, max_freq)), re_(freqs_.size()),
      im_(freqs_.size()), powers_(std::size_t(d) * (max_freq + 1)) {}

void WeylAccumulator::add(const double* x, double w) {
    const int stride = max_freq_ + 1;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j <= max_freq_; ++j) powers_[i * stride + j] = e(j * x[i]);
    for (std::size_t f = 0; f < freqs_.size(); ++f) {
        std::complex<double> z(1.0, 0.0);
        for (int i = 0; i < d_; ++i) {
            const int k = freqs_[f][i];
            if (k > 0)
                z *= powers_[i * stride + k];
            else if (k < 0)
                z *= std::conj(powers_[i * stride - k]);
        }
        re_[f].add(w * z.real());
        im_[f].add(w * z.imag());
    }
    wsum_.add(w);
    ++count_;
}

void WeylAccumulator::merge(const WeylAccumulator& o) {
    if (freqs_.empty()) {
        *this = o;
        return;
    }
    if (o.d_ != d_ || o.max_freq_ != max_freq_) throw std::invalid_argument("merging different frequency tables");
    for (std::size_t f = 0; f < freqs_.size(); ++f) {
        re_[f].merge(o.re_[f]);
        im_[f].merge(o.im_[f]);
    }
    wsum_.merge(o.wsum_);
    count_ += o.count_;
}

std::complex<double> WeylAccumulator::value(std::size_t i) const {
    if (count_ == 0) throw EmptyInput("Weyl sum of no points");
    return {re_[i].value() / wsum_.value(), im_[i].value() / wsum_.value()};
}

double star_discrepancy_1d(std::vector<double> points) {
    if (points.empty()) throw EmptyInput("discrepancy of no points");
    std::sort(points.begin(), points.end());
    const double n = double(points.size());
    double worst = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        if (x < 0 || x >= 1) throw std::domain_error("points must lie in [0, 1)");
        worst = std::max({worst, double(i + 1) / n - x, x - double(i) / n});
    }
    return worst;
}

double star_discrepancy_1d(const std::vector<double>& points, const std::vector<double>& weights) {
    if (points.empty()) throw EmptyInput("discrepancy of no points");
    if (weights.empty()) return star_discrepancy_1d(points);
    const auto w = normalized(weights, points.size());
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    CompensatedSum below;
    double worst = 0;
    for (auto i : order) {
        const double x = points[i];
        if (x < 0 || x >= 1) throw std::domain_error("points must lie in [0, 1)");
        worst = std::max(worst, x - below.value());
        below.add(w[i]);
        worst = std::max(worst, below.value() - x);
    }
    return worst;
}

L2Result l2_discrepancy(const std::vector<double>& coords, int d, const std::vector<double>& weights,
                        const L2Options& opt) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (d > 6) throw DimensionTooLarge("L2 discrepancy supports d <= 6, got " + std::to_string(d));
    const std::size_t n = coords.size() / std::size_t(d);
    if (n == 0) throw EmptyInput("discrepancy of no points");
    const auto w = normalized(weights, n);
    L2Result r;
    r.points_used = n;
    if (d == 1) {
        r.value = warnock_1d(coords, w);
        r.method = "exact";
        return r;
    }
    if (n <= opt.exact_limit) {
        r.value = warnock(coords, d, w);
        r.method = "exact";
        return r;
    }
    if (d <= 3) return binned(coords, d, w, opt.cell_budget);

    const std::size_t step = (n + opt.subsample - 1) / opt.subsample;
    std::vector<double> sub;
    std::vector<double> sub_w;
    for (std::size_t i = 0; i < n; i += step) {
        sub.insert(sub.end(), coords.begin() + i * d, coords.begin() + (i + 1) * d);
        sub_w.push_back(w[i]);
    }
    r.value = warnock(sub, d, normalized(sub_w, sub_w.size()));
    r.method = "subsample";
    r.points_used = sub_w.size();
    return r;
}

L2Result discrepancy(const std::vector<double>& coords, int d, const std::vector<double>& weights,
                     const L2Options& opt) {
    if (d == 1) {
        L2Result r;
        r.value = star_discrepancy_1d(coords, weights);
        r.method = "star";
        r.points_used = coords.size();
        return r;
    }
    return l2_discrepancy(coords, d, weights, opt);
}

CorrelationTable vdc_correlations(const std::vector<std::complex<double>>& values, const std::vector<double>& weights,
                                  int H, double c) {
    if (H < 1) throw std::invalid_argument("H must be at least 1");
    const std::size_t n = values.size();
    if (n < 10 * std::size_t(H))
        throw InsufficientLength("need at least 10 H = " + std::to_string(10 * H) + " values, got " +
                                 std::to_string(n));
    CorrelationTable t;
    t.p = weights.empty() ? std::vector<double>(n, 1.0) : weights;
    if (t.p.size() != n) throw std::invalid_argument("weights and values differ in length");
    CompensatedSum cum;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t.p[i] > 0)) throw std::invalid_argument("weights must be positive");
        cum.add(t.p[i]);
        t.P.push_back(cum.value());
    }
    const double PN = t.P.back();
    for (std::size_t m = 1; m <= n; m *= 2) t.tail.push_back(t.p[m - 1] / t.P[m - 1]);
    t.tail.push_back(t.p.back() / PN);

    CompensatedSum ar, ai, a0;
    for (std::size_t i = 0; i < n; ++i) {
        ar.add(t.p[i] * values[i].real());
        ai.add(t.p[i] * values[i].imag());
        a0.add(t.p[i] * std::norm(values[i]));
    }
    t.average = {ar.value() / PN, ai.value() / PN};
    for (int h = 1; h <= H; ++h) {
        CompensatedSum re, im;
        for (std::size_t i = 0; i + h < n; ++i) {
            const auto z = t.p[i] * values[i + h] * std::conj(values[i]);
            re.add(z.real());
            im.add(z.imag());
        }
        t.A.emplace_back(re.value() / PN, im.value() / PN);
    }
    CompensatedSum rhs;
    rhs.add(a0.value() / PN);
    for (int h = 1; h <= H; ++h) rhs.add(2.0 * double(H - h) / H * t.A[h - 1].real());
    t.rhs = rhs.value() / H;
    t.lhs = std::norm(t.average);
    t.slack = c * (t.p.back() / PN + double(H) / double(n));
    t.violated = t.lhs > t.rhs + t.slack + 1e-6;
    return t;
}

EquidistReport criterion_check(const OrbitSpec& spec, const AnalysisOptions& opt) {
    const CompiledOrbit co = compile(spec, opt.max_n);
    const int dt = spec.dim - 1;
    const int df = coordinate_count(spec.dim);
    const bool weighted = !(spec.scheme == WScheme::identity());

    EquidistReport rep;
    rep.scheme = spec.scheme.name();
    rep.N = co.count();
    rep.max_freq = opt.max_freq;
    rep.thresholds = opt.thresholds;

    std::vector<double> coords, weights;
    coords.reserve(std::size_t(rep.N) * df);
    if (weighted) weights.reserve(std::size_t(rep.N));
    WeylAccumulator total(dt, opt.max_freq);
    std::int64_t seen = 0;

    for_each_chunk(
        co, opt.generate,
        [&](const OrbitChunk& ch) {
            WeylAccumulator acc(dt, opt.max_freq);
            for (std::size_t i = 0; i < ch.size(); ++i) acc.add(ch.point(i), ch.weights[i]);
            return acc;
        },
        [&](const OrbitChunk& ch, const WeylAccumulator& acc) {
            total.merge(acc);
            coords.insert(coords.end(), ch.coords.begin(), ch.coords.end());
            if (weighted) weights.insert(weights.end(), ch.weights.begin(), ch.weights.end());
            seen += std::int64_t(ch.size());
            if (opt.series && ch.size()) {
                SeriesRow row{seen, ch.n.back(), {}};
                for (std::size_t f = 0; f < total.frequencies().size(); ++f) row.abs_weyl.push_back(std::abs(total.value(f)));
                rep.series.push_back(std::move(row));
            }
        });

    for (std::size_t f = 0; f < total.frequencies().size(); ++f) {
        rep.weyl.push_back({total.frequencies()[f], total.value(f)});
        rep.max_weyl = std::max(rep.max_weyl, std::abs(rep.weyl.back().value));
    }
    rep.weight_sum = total.weight_sum();

    std::vector<double> torus;
    torus.reserve(std::size_t(rep.N) * dt);
    for (std::int64_t i = 0; i < rep.N; ++i)
        torus.insert(torus.end(), coords.begin() + i * df, coords.begin() + i * df + dt);
    rep.torus_discrepancy = discrepancy(torus, dt, weights, opt.l2);
    rep.full_discrepancy = df == dt ? rep.torus_discrepancy : discrepancy(coords, df, weights, opt.l2);

    rep.torus_equidistributed =
        rep.max_weyl < opt.thresholds.weyl && rep.torus_discrepancy.value < opt.thresholds.discrepancy;
    rep.full_equidistributed = rep.full_discrepancy.value < opt.thresholds.discrepancy;
    rep.criterion_consistent = rep.torus_equidistributed == rep.full_equidistributed;
    return rep;
}

}  // namespace nilsampler
