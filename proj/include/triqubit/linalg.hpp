// linalg.hpp
// Dense complex linear algebra for matrices up to 8x8: Hermitian
// eigendecomposition (cyclic Jacobi), 2x2 SVD and PSD square root.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "triqubit/error.hpp"

namespace triqubit {

using complex = std::complex<double>;

class ComplexMatrix {
public:
    static constexpr std::size_t kMaxDim = 8;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) {
            throw Error(ErrorCode::WrongDimension,
                        "matrix dimensions " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " outside supported range 1..8");
        }
        data_.fill(complex{0.0, 0.0});
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows)
        : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::WrongDimension, "ragged matrix initializer");
            }
            std::size_t j = 0;
            for (const auto& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    // Row-major view of the entries.
    std::span<const complex> entries() const noexcept { return {data_.data(), rows_ * cols_}; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix r = *this;
        for (std::size_t k = 0; k < rows_ * cols_; ++k) r.data_[k] = std::conj(data_[k]);
        return r;
    }

    complex trace() const {
        complex t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double norm_frobenius() const {
        double s = 0.0;
        for (const auto& v : entries()) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : entries()) m = std::max(m, std::abs(v));
        return m;
    }

    // max_ij |a_ij - conj(a_ji)|
    double hermiticity_deviation() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return dev;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(complex s) {
        for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::WrongDimension, "matrix product shape mismatch");
        }
        ComplexMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const complex aik = a(i, k);
                if (aik == complex{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               std::equal(a.entries().begin(), a.entries().end(), b.entries().begin());
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorCode::WrongDimension, "matrix shape mismatch");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::array<complex, kMaxDim * kMaxDim> data_;
};

// Kronecker product; the result must still fit in 8x8.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

// max_ij |(u^dagger u - I)_ij|
inline double unitarity_deviation(const ComplexMatrix& u) {
    if (!u.is_square()) return INFINITY;
    const ComplexMatrix g = u.adjoint() * u;
    double dev = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            dev = std::max(dev, std::abs(g(i, j) - complex(i == j ? 1.0 : 0.0)));
    return dev;
}

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column i belongs to values[i]
};

namespace detail {

inline double offdiagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline void check_square(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, "expected a square matrix, got " + std::to_string(a.rows()) +
                                              "x" + std::to_string(a.cols()));
    }
}

// (a + a^dagger)/2 after checking the deviation against tol.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a, double tol) {
    check_square(a);
    const double dev = a.hermiticity_deviation();
    if (dev > tol) {
        throw Error(ErrorCode::NotHermitian,
                    "matrix deviates from Hermitian by " + format_number(dev) + " (tolerance " +
                        format_number(tol) + ")");
    }
    ComplexMatrix h = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

} // namespace detail

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiRelativeThreshold = 1e-14;

// Cyclic Jacobi for complex Hermitian matrices. Each rotation first removes the
// phase of a_pq with diag(1, e^{-i phi}), then applies the real symmetric
// Jacobi rotation to the now-real 2x2 block.
inline HermitianEigen eig_hermitian(const ComplexMatrix& input, double hermiticity_tol = 1e-10) {
    ComplexMatrix a = detail::hermitian_part(input, hermiticity_tol);
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = kJacobiRelativeThreshold * a.norm_frobenius();

    int sweep = 0;
    while (detail::offdiagonal_norm(a) > threshold) {
        if (sweep++ == kJacobiMaxSweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi eigensolver did not converge in " + std::to_string(kJacobiMaxSweeps) +
                            " sweeps (off-diagonal norm " + format_number(detail::offdiagonal_norm(a)) + ")");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const complex phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q)
                const complex gpp = c;
                const complex gpq = s;
                const complex gqp = -s * std::conj(phase);
                const complex gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const complex akp = a(k, p);
                    const complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complex apk = a(p, k);
                    const complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const complex vkp = v(k, p);
                    const complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = a(order[col], order[col]).real();
        for (std::size_t row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[col]);
    }
    return out;
}

struct Svd2x2 {
    ComplexMatrix u;
    std::array<double, 2> singulars;  // descending, nonnegative
    ComplexMatrix v;                  // m = u * diag(singulars) * v^dagger
};

// The right singular vectors come from the eigenbasis of m^dagger m; the left
// ones are rebuilt from m itself so that small singular values keep full
// absolute accuracy.
inline Svd2x2 svd_2x2(const ComplexMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw Error(ErrorCode::WrongDimension, "svd_2x2 expects a 2x2 matrix");
    }
    const HermitianEigen gram = eig_hermitian(m.adjoint() * m, INFINITY);
    ComplexMatrix v = gram.vectors;

    const complex mv1_0 = m(0, 0) * v(0, 0) + m(0, 1) * v(1, 0);
    const complex mv1_1 = m(1, 0) * v(0, 0) + m(1, 1) * v(1, 0);
    const double s1 = std::hypot(std::abs(mv1_0), std::abs(mv1_1));
    if (s1 == 0.0) {
        return {ComplexMatrix::identity(2), {0.0, 0.0}, ComplexMatrix::identity(2)};
    }

    ComplexMatrix u(2, 2);
    u(0, 0) = mv1_0 / s1;
    u(1, 0) = mv1_1 / s1;
    u(0, 1) = -std::conj(u(1, 0));
    u(1, 1) = std::conj(u(0, 0));

    const complex mv2_0 = m(0, 0) * v(0, 1) + m(0, 1) * v(1, 1);
    const complex mv2_1 = m(1, 0) * v(0, 1) + m(1, 1) * v(1, 1);
    const complex w = std::conj(u(0, 1)) * mv2_0 + std::conj(u(1, 1)) * mv2_1;
    const double s2 = std::abs(w);
    if (s2 > 0.0) {
        const complex ph = w / s2;
        u(0, 1) *= ph;
        u(1, 1) *= ph;
    }
    return {u, {s1, s2}, v};
}

inline constexpr double kPsdFloor = 1e-10;

inline ComplexMatrix sqrt_psd(const ComplexMatrix& a, double hermiticity_tol = 1e-10) {
    const HermitianEigen e = eig_hermitian(a, hermiticity_tol);
    const std::size_t n = a.rows();
    if (e.values.back() < -kPsdFloor) {
        throw Error(ErrorCode::NotPSD,
                    "matrix has eigenvalue " + format_number(e.values.back()) + " below -1e-10");
    }
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(e.values[k], 0.0));
        if (root == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += root * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return r;
}

} // namespace triqubit
