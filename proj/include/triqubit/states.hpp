// states.hpp
// Three-qubit pure and mixed states. Basis index of |ijk> is 4i + 2j + k,
// i.e. qubit A is the most significant bit.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "triqubit/error.hpp"
#include "triqubit/linalg.hpp"

namespace triqubit {

enum class Qubit : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Qubit, 3> kAllQubits{Qubit::A, Qubit::B, Qubit::C};

inline char to_char(Qubit q) { return static_cast<char>('A' + static_cast<int>(q)); }

// A reduced pair, named by its two qubits. complement() is the traced-out one.
enum class QubitPair : std::uint8_t { BC = 0, AC = 1, AB = 2 };

inline constexpr std::array<QubitPair, 3> kAllPairs{QubitPair::BC, QubitPair::AC, QubitPair::AB};

inline Qubit complement(QubitPair p) { return static_cast<Qubit>(static_cast<int>(p)); }
inline QubitPair pair_without(Qubit q) { return static_cast<QubitPair>(static_cast<int>(q)); }

inline std::string to_string(QubitPair p) {
    switch (p) {
        case QubitPair::BC: return "BC";
        case QubitPair::AC: return "AC";
        case QubitPair::AB: return "AB";
    }
    return "??";
}

// One qubit against the other two: A|BC, B|AC or C|AB.
struct Bipartition {
    Qubit single;

    std::string name() const {
        return std::string(1, to_char(single)) + "|" + to_string(pair_without(single));
    }
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

class PureState {
public:
    static constexpr std::size_t kDim = 8;
    static constexpr double kNormTolerance = 1e-10;
    using Amplitudes = std::array<complex, kDim>;

    explicit PureState(const Amplitudes& amplitudes) : amps_(amplitudes) {
        const double n = norm();
        if (!std::isfinite(n) || std::abs(n * n - 1.0) > kNormTolerance) {
            throw Error(ErrorCode::NotNormalized, "norm is " + format_number(n) + ", expected 1");
        }
    }

    static PureState normalized(Amplitudes amplitudes) {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        const double n = std::sqrt(s);
        if (n == 0.0 || !std::isfinite(n)) {
            throw Error(ErrorCode::NotNormalized, "norm is " + format_number(n) + ", expected 1");
        }
        for (auto& a : amplitudes) a /= n;
        return PureState(amplitudes);
    }

    static PureState basis(std::size_t index) {
        Amplitudes a{};
        a.at(index) = 1.0;
        return PureState(a);
    }

    const complex& operator[](std::size_t index) const { return amps_[index]; }
    complex amplitude(int i, int j, int k) const { return amps_[static_cast<std::size_t>(4 * i + 2 * j + k)]; }
    const Amplitudes& amplitudes() const noexcept { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

private:
    Amplitudes amps_;
};

namespace detail {
struct TrustedTag {};
} // namespace detail

class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-10;
    // Eigenvalues in [-kTolerance, -kNoiseFloor) are clamped and the trace
    // renormalized; those in [-kNoiseFloor, 0) are left alone.
    static constexpr double kNoiseFloor = 1e-14;

    DensityMatrix(const ComplexMatrix& matrix, std::vector<Qubit> layout)
        : m_(detail::hermitian_part(matrix, kTolerance)), layout_(std::move(layout)) {
        check_layout();
        const double tr = m_.trace().real();
        if (std::abs(tr - 1.0) > kTolerance) {
            throw Error(ErrorCode::NotNormalized, "trace is " + format_number(tr) + ", expected 1");
        }
        const HermitianEigen e = eig_hermitian(m_);
        const double min_eig = e.values.back();
        if (min_eig < -kTolerance) {
            throw Error(ErrorCode::NotPSD, "minimum eigenvalue is " + format_number(min_eig) +
                                               ", expected >= -1e-10");
        }
        if (min_eig < -kNoiseFloor) {
            ComplexMatrix r(dim(), dim());
            double total = 0.0;
            for (std::size_t k = 0; k < dim(); ++k) total += std::max(e.values[k], 0.0);
            for (std::size_t k = 0; k < dim(); ++k) {
                const double p = std::max(e.values[k], 0.0) / total;
                if (p == 0.0) continue;
                for (std::size_t i = 0; i < dim(); ++i)
                    for (std::size_t j = 0; j < dim(); ++j)
                        r(i, j) += p * e.vectors(i, k) * std::conj(e.vectors(j, k));
            }
            m_ = detail::hermitian_part(r, INFINITY);
        }
    }

    // Skips validation; only for results that are valid by construction.
    DensityMatrix(detail::TrustedTag, ComplexMatrix matrix, std::vector<Qubit> layout)
        : m_(std::move(matrix)), layout_(std::move(layout)) {}

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.rows(); }
    std::size_t num_qubits() const noexcept { return layout_.size(); }
    const std::vector<Qubit>& layout() const noexcept { return layout_; }

    std::optional<std::size_t> position(Qubit q) const {
        const auto it = std::find(layout_.begin(), layout_.end(), q);
        if (it == layout_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - layout_.begin());
    }

    double purity() const {
        double s = 0.0;
        for (const auto& v : m_.entries()) s += std::norm(v);
        return s;
    }

    std::string layout_name() const {
        std::string s;
        for (Qubit q : layout_) s += to_char(q);
        return s;
    }

private:
    void check_layout() const {
        const std::size_t n = layout_.size();
        if (n == 0 || n > 3 || m_.rows() != (std::size_t{1} << n)) {
            throw Error(ErrorCode::WrongDimension, "density matrix of dimension " + std::to_string(m_.rows()) +
                                                       " does not match a layout of " + std::to_string(n) +
                                                       " qubits");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (layout_[i] == layout_[j]) {
                    throw Error(ErrorCode::WrongDimension, "qubit layout repeats a label");
                }
    }

    ComplexMatrix m_;
    std::vector<Qubit> layout_;
};

namespace detail {

inline std::size_t insert_bit(std::size_t x, unsigned bit, std::size_t value) {
    const std::size_t low = x & ((std::size_t{1} << bit) - 1);
    const std::size_t high = x >> bit;
    return (high << (bit + 1)) | (value << bit) | low;
}

inline unsigned bit_of(const DensityMatrix& rho, Qubit q) {
    const auto pos = rho.position(q);
    if (!pos) {
        throw Error(ErrorCode::QubitNotPresent, std::string("qubit ") + to_char(q) +
                                                    " is not part of layout " + rho.layout_name());
    }
    return static_cast<unsigned>(rho.num_qubits() - 1 - *pos);
}

} // namespace detail

inline DensityMatrix to_density(const PureState& psi) {
    ComplexMatrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(detail::TrustedTag{}, m, {Qubit::A, Qubit::B, Qubit::C});
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, Qubit traced) {
    const unsigned bit = detail::bit_of(rho, traced);
    if (rho.num_qubits() == 1) {
        throw Error(ErrorCode::WrongDimension, "cannot trace out the only qubit of a single-qubit state");
    }
    const std::size_t half = rho.dim() / 2;
    ComplexMatrix r(half, half);
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j)
            for (std::size_t b = 0; b < 2; ++b)
                r(i, j) += rho.matrix()(detail::insert_bit(i, bit, b), detail::insert_bit(j, bit, b));
    std::vector<Qubit> layout;
    for (Qubit q : rho.layout())
        if (q != traced) layout.push_back(q);
    return DensityMatrix(detail::TrustedTag{}, r, std::move(layout));
}

// Reduced state on a single qubit.
inline DensityMatrix reduce_to(const DensityMatrix& rho, Qubit kept) {
    DensityMatrix r = rho;
    for (Qubit q : rho.layout())
        if (q != kept) r = partial_trace(r, q);
    return r;
}

inline DensityMatrix reduce_to(const DensityMatrix& rho, QubitPair kept) {
    return partial_trace(rho, complement(kept));
}

// <..i_side..|rho^T|..k_side..> = <..k_side..|rho|..i_side..>
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Qubit side) {
    const unsigned bit = detail::bit_of(rho, side);
    const std::size_t mask = std::size_t{1} << bit;
    const std::size_t n = rho.dim();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t src_row = (i & ~mask) | (j & mask);
            const std::size_t src_col = (j & ~mask) | (i & mask);
            r(i, j) = rho.matrix()(src_row, src_col);
        }
    return r;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Bipartition cut) {
    return partial_transpose(rho, cut.single);
}

inline constexpr double kUnitaryTolerance = 1e-10;

// (u_a (x) u_b (x) u_c) |psi>
inline PureState apply_local_unitary(const PureState& psi, const ComplexMatrix& u_a, const ComplexMatrix& u_b,
                                     const ComplexMatrix& u_c) {
    const std::array<const ComplexMatrix*, 3> us{&u_a, &u_b, &u_c};
    for (std::size_t q = 0; q < 3; ++q) {
        const ComplexMatrix& u = *us[q];
        if (u.rows() != 2 || u.cols() != 2) {
            throw Error(ErrorCode::WrongDimension, "local unitaries must be 2x2");
        }
        const double dev = unitarity_deviation(u);
        if (dev > kUnitaryTolerance) {
            throw Error(ErrorCode::NotUnitary, std::string("factor on qubit ") + to_char(static_cast<Qubit>(q)) +
                                                   " deviates from unitary by " + format_number(dev));
        }
    }
    PureState::Amplitudes out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                complex s{0.0, 0.0};
                for (int i2 = 0; i2 < 2; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2)
                        for (int k2 = 0; k2 < 2; ++k2)
                            s += u_a(i, i2) * u_b(j, j2) * u_c(k, k2) * psi.amplitude(i2, j2, k2);
                out[static_cast<std::size_t>(4 * i + 2 * j + k)] = s;
            }
    return PureState::normalized(out);
}

// Slot s of the result carries qubit order[s] of the input, e.g. {B, A, C}
// swaps the first two qubits.
inline PureState permute_qubits(const PureState& psi, std::array<Qubit, 3> order) {
    std::array<bool, 3> seen{};
    for (Qubit q : order) seen[static_cast<std::size_t>(q)] = true;
    if (!(seen[0] && seen[1] && seen[2])) {
        throw Error(ErrorCode::WrongDimension, "qubit order must be a permutation of A, B, C");
    }
    PureState::Amplitudes out{};
    for (std::size_t idx = 0; idx < 8; ++idx) {
        std::array<std::size_t, 3> bits{(idx >> 2) & 1U, (idx >> 1) & 1U, idx & 1U};
        std::array<std::size_t, 3> src{};
        for (std::size_t s = 0; s < 3; ++s) src[static_cast<std::size_t>(order[s])] = bits[s];
        out[idx] = psi[4 * src[0] + 2 * src[1] + src[2]];
    }
    return PureState(out);
}

// --------------------------- sampling ---------------------------------------

template <class Rng>
complex standard_complex_gaussian(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

template <class Rng>
PureState sample_haar_pure(Rng& rng) {
    PureState::Amplitudes a{};
    for (auto& v : a) v = standard_complex_gaussian(rng);
    return PureState::normalized(a);
}

inline PureState sample_haar_pure(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_haar_pure(rng);
}

// Gram-Schmidt of a complex Ginibre matrix with positive R diagonal is Haar.
template <class Rng>
ComplexMatrix sample_haar_unitary2(Rng& rng) {
    std::array<complex, 4> g{};
    for (auto& v : g) v = standard_complex_gaussian(rng);
    const double n1 = std::hypot(std::abs(g[0]), std::abs(g[2]));
    const complex u00 = g[0] / n1;
    const complex u10 = g[2] / n1;
    const complex proj = std::conj(u00) * g[1] + std::conj(u10) * g[3];
    complex w0 = g[1] - proj * u00;
    complex w1 = g[3] - proj * u10;
    const double n2 = std::hypot(std::abs(w0), std::abs(w1));
    w0 /= n2;
    w1 /= n2;
    return ComplexMatrix{{u00, w0}, {u10, w1}};
}

// Hilbert-Schmidt ensemble: G G^dagger / Tr with complex Gaussian G.
template <class Rng>
DensityMatrix sample_hilbert_schmidt(Rng& rng, std::size_t num_qubits = 3) {
    const std::size_t n = std::size_t{1} << num_qubits;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = standard_complex_gaussian(rng);
    ComplexMatrix m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    std::vector<Qubit> layout(kAllQubits.begin(), kAllQubits.begin() + static_cast<long>(num_qubits));
    return DensityMatrix(m, std::move(layout));
}

} // namespace triqubit
