#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "nilsampler/double_double.hpp"
#include "nilsampler/eigen_dd.hpp"

namespace nilsampler {

struct DimMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace scalar_ops {

inline double floor_of(double x) { return std::floor(x); }
inline DoubleDouble floor_of(DoubleDouble x) { return floor(x); }
inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(DoubleDouble x) { return std::abs(x.hi()); }

/// x - floor(x), forced into [0, 1).
template <class Scalar>
Scalar frac_of(Scalar x) {
    Scalar f = x - floor_of(x);
    if (f < Scalar(0) || f >= Scalar(1)) return Scalar(0);
    return f;
}

}  // namespace scalar_ops

/// Upper unitriangular n x n matrix, an element of the group G of such matrices.
template <class Scalar = DoubleDouble>
class GroupElement {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    explicit GroupElement(int n = 2) : m_(Matrix::Identity(n, n)) {
        if (n < 2) throw std::invalid_argument("group dimension must be at least 2");
    }

    /// Throws unless m is square, unit diagonal, zero below the diagonal.
    static GroupElement from_matrix(const Matrix& m) {
        if (m.rows() != m.cols()) throw DimMismatch("group element must be square");
        GroupElement g(int(m.rows()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (i == j && m(i, j) != Scalar(1)) throw std::invalid_argument("diagonal entries must be 1");
                if (i > j && m(i, j) != Scalar(0)) throw std::invalid_argument("entries below the diagonal must be 0");
            }
        g.m_ = m;
        return g;
    }

    /// [[1, x, z], [0, 1, y], [0, 0, 1]]
    static GroupElement heisenberg(Scalar x, Scalar y, Scalar z) {
        GroupElement g(3);
        g.m_(0, 1) = x;
        g.m_(1, 2) = y;
        g.m_(0, 2) = z;
        return g;
    }

    int dim() const { return int(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    /// 0-based entry (i < j).
    Scalar operator()(int i, int j) const { return m_(i, j); }
    void set(int i, int j, Scalar v) {
        if (i >= j) throw std::out_of_range("only strictly upper entries can be set");
        m_(i, j) = v;
    }
    /// g - I, strictly upper triangular.
    Matrix nilpotent_part() const { return m_ - Matrix::Identity(dim(), dim()); }

private:
    Matrix m_;
};

/// Lattice elements are group elements with integer entries, stored in the same scalar.
template <class Scalar = DoubleDouble>
using LatticeElement = GroupElement<Scalar>;

template <class Scalar>
void require_same_dim(const GroupElement<Scalar>& a, const GroupElement<Scalar>& b) {
    if (a.dim() != b.dim())
        throw DimMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

template <class Scalar>
GroupElement<Scalar> mul(const GroupElement<Scalar>& a, const GroupElement<Scalar>& b) {
    require_same_dim(a, b);
    typename GroupElement<Scalar>::Matrix prod = a.matrix() * b.matrix();
    // the product of unitriangular matrices is unitriangular; pin the exact zeros and ones
    for (int i = 0; i < prod.rows(); ++i) {
        prod(i, i) = Scalar(1);
        for (int j = 0; j < i; ++j) prod(i, j) = Scalar(0);
    }
    return GroupElement<Scalar>::from_matrix(prod);
}

/// (I + N)^{-1} = sum_k (-N)^k, finite because N^n = 0.
template <class Scalar>
GroupElement<Scalar> inverse(const GroupElement<Scalar>& g) {
    using Matrix = typename GroupElement<Scalar>::Matrix;
    const int n = g.dim();
    const Matrix neg = -g.nilpotent_part();
    Matrix term = Matrix::Identity(n, n);
    Matrix acc = Matrix::Identity(n, n);
    for (int k = 1; k < n; ++k) {
        term = term * neg;
        acc += term;
    }
    return GroupElement<Scalar>::from_matrix(acc);
}

/// g h g^{-1} h^{-1}
template <class Scalar>
GroupElement<Scalar> commutator(const GroupElement<Scalar>& g, const GroupElement<Scalar>& h) {
    return mul(mul(g, h), mul(inverse(g), inverse(h)));
}

/// sum_{k>=1} (-1)^{k+1} (g - I)^k / k
template <class Scalar>
typename GroupElement<Scalar>::Matrix log_nilpotent(const GroupElement<Scalar>& g) {
    using Matrix = typename GroupElement<Scalar>::Matrix;
    const int n = g.dim();
    const Matrix x = g.nilpotent_part();
    Matrix power = x;
    Matrix acc = x;
    for (int k = 2; k < n; ++k) {
        power = power * x;
        const Scalar c = Scalar(k % 2 == 0 ? -1 : 1) / Scalar(k);
        acc += power * c;
    }
    return acc;
}

/// sum_{k>=0} M^k / k! for strictly upper triangular M.
template <class Scalar>
GroupElement<Scalar> exp_nilpotent(const typename GroupElement<Scalar>::Matrix& m) {
    using Matrix = typename GroupElement<Scalar>::Matrix;
    if (m.rows() != m.cols()) throw DimMismatch("exp of a non-square matrix");
    const int n = int(m.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (m(i, j) != Scalar(0)) throw std::invalid_argument("exp_nilpotent needs a strictly upper matrix");
    Matrix term = Matrix::Identity(n, n);
    Matrix acc = Matrix::Identity(n, n);
    for (int k = 1; k < n; ++k) {
        term = (term * m) / Scalar(k);
        acc += term;
    }
    for (int i = 0; i < n; ++i) acc(i, i) = Scalar(1);
    return GroupElement<Scalar>::from_matrix(acc);
}

/// s -> exp(s log a) as sum_k s^k C_k with C_k = (log a)^k / k!.
template <class Scalar = DoubleDouble>
class OneParameterCurve {
public:
    using Matrix = typename GroupElement<Scalar>::Matrix;

    explicit OneParameterCurve(const GroupElement<Scalar>& a) {
        const int n = a.dim();
        const Matrix l = log_nilpotent(a);
        Matrix term = Matrix::Identity(n, n);
        coeffs_.push_back(term);
        for (int k = 1; k < n; ++k) {
            term = (term * l) / Scalar(k);
            coeffs_.push_back(term);
        }
    }

    int dim() const { return int(coeffs_.front().rows()); }
    /// C_k; entry (i, j) of C_k is the s^k coefficient of that matrix position.
    const std::vector<Matrix>& coefficients() const { return coeffs_; }

    GroupElement<Scalar> operator()(Scalar s) const {
        const int n = dim();
        Matrix acc = coeffs_.back();
        for (int k = int(coeffs_.size()) - 2; k >= 0; --k) acc = acc * s + coeffs_[k];
        for (int i = 0; i < n; ++i) {
            acc(i, i) = Scalar(1);
            for (int j = 0; j < i; ++j) acc(i, j) = Scalar(0);
        }
        return GroupElement<Scalar>::from_matrix(acc);
    }

private:
    std::vector<Matrix> coeffs_;
};

/// Number of Mal'cev coordinates: n(n-1)/2.
inline int coordinate_count(int n) { return n * (n - 1) / 2; }

/// Matrix position of coordinate index c, ordered by superdiagonal, then row.
inline std::pair<int, int> coordinate_position(int n, int c) {
    for (int k = 1; k < n; ++k) {
        if (c < n - k) return {c, c + k};
        c -= n - k;
    }
    throw std::out_of_range("coordinate index out of range");
}

template <class Scalar = DoubleDouble>
struct Reduction {
    std::vector<Scalar> coords;  // each in [0, 1), superdiagonal-major order
    LatticeElement<Scalar> gamma;
};

/// Fundamental-domain representative of g Gamma: coordinates of g * gamma.
///
/// Sweeps superdiagonals upward. Right-multiplying by I + c e_{ij} adds c times
/// column i to column j, which touches (i, j) itself and only entries (r, j)
/// with r < i, all on higher superdiagonals.
template <class Scalar>
Reduction<Scalar> reduce_mod_lattice(const GroupElement<Scalar>& g) {
    using Matrix = typename GroupElement<Scalar>::Matrix;
    const int n = g.dim();
    Matrix m = g.matrix();
    Matrix gamma = Matrix::Identity(n, n);
    Reduction<Scalar> out{std::vector<Scalar>(coordinate_count(n)), GroupElement<Scalar>(n)};
    int c = 0;
    for (int k = 1; k < n; ++k) {
        for (int i = 0; i + k < n; ++i, ++c) {
            const int j = i + k;
            const Scalar shift = -scalar_ops::floor_of(m(i, j));
            if (shift != Scalar(0)) {
                for (int r = 0; r < i; ++r) m(r, j) += shift * m(r, i);
                for (int r = 0; r < i; ++r) gamma(r, j) += shift * gamma(r, i);
                gamma(i, j) += shift;
            }
            m(i, j) = scalar_ops::frac_of(m(i, j));
            out.coords[c] = m(i, j);
        }
    }
    out.gamma = GroupElement<Scalar>::from_matrix(gamma);
    return out;
}

/// Coordinates of the maximal factor torus: the first superdiagonal.
template <class Scalar>
std::vector<Scalar> torus_projection(const std::vector<Scalar>& coords, int n) {
    return std::vector<Scalar>(coords.begin(), coords.begin() + (n - 1));
}

template <class Scalar>
double max_entry_difference(const GroupElement<Scalar>& a, const GroupElement<Scalar>& b) {
    require_same_dim(a, b);
    double worst = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            worst = std::max(worst, scalar_ops::abs_of(Scalar(a(i, j) - b(i, j))));
    return worst;
}

/// All pairwise commutators equal the identity to 2^-80 (relative to entry size).
template <class Scalar>
bool check_commuting(const std::vector<GroupElement<Scalar>>& as) {
    for (std::size_t a = 0; a < as.size(); ++a)
        for (std::size_t b = a + 1; b < as.size(); ++b) {
            const auto& x = as[a];
            const auto& y = as[b];
            require_same_dim(x, y);
            double scale = 1.0;
            for (int i = 0; i < x.dim(); ++i)
                for (int j = i + 1; j < x.dim(); ++j)
                    scale = std::max({scale, scalar_ops::abs_of(x(i, j)), scalar_ops::abs_of(y(i, j))});
            const double tol = std::ldexp(1.0, -80) * scale * scale;
            if (max_entry_difference(commutator(x, y), GroupElement<Scalar>(x.dim())) > tol) return false;
        }
    return true;
}

inline int nilpotency_step(int n) {
    if (n < 2) throw std::invalid_argument("group dimension must be at least 2");
    return n - 1;
}

/// Upper bound r = (s + 1)(M + 1) on the degree of a polynomial-and-Hardy orbit.
inline int degree_upper_bound(int s, int m) {
    if (s < 1 || m < 1) throw std::invalid_argument("degree bound needs s >= 1 and M >= 1");
    return (s + 1) * (m + 1);
}

}  // namespace nilsampler
