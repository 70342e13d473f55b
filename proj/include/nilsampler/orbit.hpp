#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nilsampler/hardy.hpp"
#include "nilsampler/nilgroup.hpp"
#include "nilsampler/wscheme.hpp"

namespace nilsampler {

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct NonCommuting : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
/// A scalar or matrix entry outgrew what double-double can reduce mod 1 reliably.
struct NumericBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultMaxN = 100'000'000;
inline constexpr double kMagnitudeBudget = 1e20;

struct OrbitGenerator {
    GroupElement<DoubleDouble> element;
    HardyExpr exponent;
};

/// v(n) = a_1^{f_1(n)} ... a_k^{f_k(n)} b_1^{p_1(n)} ... b_m^{p_m(n)} along n = r mod q.
struct OrbitSpec {
    int dim = 2;
    std::vector<OrbitGenerator> generators;  // Hardy exponents
    std::vector<OrbitGenerator> poly_parts;  // integer-valued polynomial exponents
    std::int64_t n_start = 2;
    std::int64_t n_end = 1000;
    std::int64_t q = 1;
    std::int64_t r = 0;
    WScheme scheme = WScheme::identity();
};

struct Diagnostic {
    std::string id;  // commuting, range, G1 .. G5, P
    bool ok = true;
    bool fatal = false;  // the engine refuses to run
    std::string detail;
};

/// Hypothesis checks; only commuting, range and polynomial-shape failures are fatal.
std::vector<Diagnostic> validate(const OrbitSpec& spec, std::int64_t max_n = kDefaultMaxN);

/// True iff p has exact rational coefficients and integer values on all integers.
bool integer_valued_polynomial(const HardyExpr& p);

/// Sum of coeff * prod_v s_v^{exps[v]}.
struct CompiledPolynomial {
    struct Monomial {
        DoubleDouble coeff;
        std::vector<int> exps;
    };
    std::vector<Monomial> terms;
};

struct CompiledOrbit {
    int dim = 2;
    std::vector<HardyExpr> scalars;           // f_1..f_k, p_1..p_m
    std::size_t poly_count = 0;               // m; those scalars are rounded to integers
    std::vector<CompiledPolynomial> entries;  // one per Mal'cev coordinate, same order
    int max_power = 0;
    std::int64_t n_start = 2, n_end = 2, q = 1, r = 0;
    WScheme scheme = WScheme::identity();

    std::int64_t count() const;
    std::int64_t index(std::int64_t i) const { return first() + i * q; }
    std::int64_t first() const;
};

/// Expands the product of one-parameter curves once, symbolically in the scalars.
/// RangeError unless 2 <= n_start <= n_end <= max_n and 0 <= r < q hits the range.
CompiledOrbit compile(const OrbitSpec& spec, std::int64_t max_n = kDefaultMaxN);

struct OrbitChunk {
    std::size_t chunk = 0;
    int coords_per_point = 0;
    std::vector<std::int64_t> n;
    std::vector<double> coords;  // coords_per_point per point, superdiagonal-major
    std::vector<double> weights;
    std::size_t size() const { return n.size(); }
    const double* point(std::size_t i) const { return coords.data() + i * coords_per_point; }
};

struct GenerateOptions {
    int threads = 1;
    std::size_t chunk_size = 16384;  // fixed, so the partition never depends on threads
    Precision precision = Precision::Extended;
};

/// Reduced Mal'cev coordinates of v(n) from the compiled form.
std::vector<DoubleDouble> evaluate_point(const CompiledOrbit& co, std::int64_t n,
                                         Precision precision = Precision::Extended);
/// Same point by multiplying the evaluated curves as matrices; the reference path.
std::vector<DoubleDouble> direct_point(const OrbitSpec& spec, std::int64_t n,
                                       Precision precision = Precision::Extended);
/// Unreduced matrix v(n) from the compiled form.
GroupElement<DoubleDouble> compiled_matrix(const CompiledOrbit& co, std::int64_t n,
                                           Precision precision = Precision::Extended);

OrbitChunk compute_chunk(const CompiledOrbit& co, std::size_t chunk, const GenerateOptions& opt);

inline std::size_t chunk_count(const CompiledOrbit& co, const GenerateOptions& opt) {
    const auto n = std::size_t(co.count());
    return (n + opt.chunk_size - 1) / opt.chunk_size;
}

/// Computes chunks on up to opt.threads workers, applies map there, and hands
/// (chunk, partial) to reduce strictly in chunk order on the calling thread.
template <class Map, class Reduce>
void for_each_chunk(const CompiledOrbit& co, const GenerateOptions& opt, Map map, Reduce reduce) {
    using Partial = decltype(map(std::declval<const OrbitChunk&>()));
    const std::size_t total = chunk_count(co, opt);
    const std::size_t workers = std::size_t(std::max(1, opt.threads));
    const std::size_t batch = workers * 2;
    for (std::size_t start = 0; start < total; start += batch) {
        const std::size_t end = std::min(total, start + batch);
        std::vector<OrbitChunk> chunks(end - start);
        std::vector<Partial> partials(end - start);
        std::exception_ptr failure;
        auto work = [&](std::size_t w) {
            try {
                for (std::size_t c = start + w; c < end; c += workers) {
                    chunks[c - start] = compute_chunk(co, c, opt);
                    partials[c - start] = map(chunks[c - start]);
                }
            } catch (...) {
                failure = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers && start + w < end; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);
        for (std::size_t c = start; c < end; ++c) reduce(chunks[c - start], partials[c - start]);
    }
}

/// Streams every chunk in order.
void generate(const CompiledOrbit& co, const GenerateOptions& opt, const std::function<void(const OrbitChunk&)>& sink);

}  // namespace nilsampler
