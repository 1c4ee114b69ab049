// measures.hpp
// Entanglement measures of three-qubit states: bipartite and tripartite
// negativity, two-qubit concurrence, von Neumann entropy, 3-tangle and the
// geometric-mean measures Q and eta3.

#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "triqubit/linalg.hpp"
#include "triqubit/states.hpp"

namespace triqubit {

// Eigenvalues of magnitude below this are eigensolver noise.
inline constexpr double kSpectralNoiseFloor = 1e-14;

// N = -2 * (sum of negative eigenvalues of the partial transpose)
inline double negativity(const DensityMatrix& rho, Qubit side) {
    const HermitianEigen e = eig_hermitian(partial_transpose(rho, side));
    double neg = 0.0;
    for (double v : e.values)
        if (v < -kSpectralNoiseFloor) neg -= v;
    return 2.0 * neg;
}

inline double negativity(const DensityMatrix& rho, Bipartition cut) { return negativity(rho, cut.single); }

namespace detail {

inline void require_three_qubits(const DensityMatrix& rho) {
    if (rho.num_qubits() != 3) {
        throw Error(ErrorCode::WrongDimension,
                    "expected a three-qubit state, got layout " + rho.layout_name());
    }
}

inline double geometric_mean3(double x, double y, double z) {
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return 0.0;
    return std::cbrt(x * y * z);
}

} // namespace detail

inline double tripartite_negativity(const DensityMatrix& rho) {
    detail::require_three_qubits(rho);
    return detail::geometric_mean3(negativity(rho, Qubit::A), negativity(rho, Qubit::B),
                                   negativity(rho, Qubit::C));
}

// Wootters concurrence. sqrt(lambda_i) of rho * rho_tilde are the singular
// values of tau = W^T (sy x sy) W for any rho = W W^dagger; they are read off
// the spectrum of the Hermitian dilation [[0, tau], [tau^dagger, 0]].
inline double concurrence_2q(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) {
        throw Error(ErrorCode::WrongDimension,
                    "concurrence needs a two-qubit state, got layout " + rho.layout_name());
    }
    const HermitianEigen e = eig_hermitian(rho.matrix());
    ComplexMatrix w(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double root = std::sqrt(std::max(e.values[k], 0.0));
        for (std::size_t i = 0; i < 4; ++i) w(i, k) = root * e.vectors(i, k);
    }
    // sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis
    const ComplexMatrix flip{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    const ComplexMatrix tau = w.transpose() * flip * w;

    ComplexMatrix dilation(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            dilation(i, 4 + j) = tau(i, j);
            dilation(4 + j, i) = std::conj(tau(i, j));
        }
    const HermitianEigen s = eig_hermitian(dilation);
    const double s1 = std::max(s.values[0], 0.0);
    const double rest = std::max(s.values[1], 0.0) + std::max(s.values[2], 0.0) + std::max(s.values[3], 0.0);
    return std::clamp(s1 - rest, 0.0, 1.0);
}

// Base-2 von Neumann entropy of the spectrum renormalized to unit sum.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const HermitianEigen e = eig_hermitian(rho.matrix());
    double total = 0.0;
    for (double p : e.values)
        if (p > kSpectralNoiseFloor) total += p;
    double s = 0.0;
    for (double p : e.values) {
        if (p <= kSpectralNoiseFloor) continue;
        const double q = p / total;
        s -= q * std::log2(q);
    }
    return std::max(s, 0.0);
}

// ------------------------- pure-state measures ------------------------------

namespace detail {

inline double single_qubit_det(const DensityMatrix& rho1) {
    const ComplexMatrix& m = rho1.matrix();
    return m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
}

inline constexpr double kPurityTolerance = 1e-10;

// Dominant eigenvector of a rank-1 density matrix, or MixedStateUnsupported.
inline PureState require_pure(const DensityMatrix& rho, const char* what) {
    require_three_qubits(rho);
    const double purity = rho.purity();
    if (std::abs(purity - 1.0) > kPurityTolerance) {
        throw Error(ErrorCode::MixedStateUnsupported,
                    std::string(what) + " is defined for pure states only (purity " + format_number(purity) + ")");
    }
    const HermitianEigen e = eig_hermitian(rho.matrix());
    PureState::Amplitudes a{};
    for (std::size_t i = 0; i < 8; ++i) a[i] = e.vectors(i, 0);
    return PureState::normalized(a);
}

} // namespace detail

// Tangle of each one-vs-two cut, N_{I-JK}^2 (equal to C_{I-JK}^2 for pure states).
inline std::array<double, 3> bipartite_tangles(const PureState& psi) {
    const DensityMatrix rho = to_density(psi);
    std::array<double, 3> t{};
    for (Qubit q : kAllQubits) {
        const double n = negativity(rho, q);
        t[static_cast<std::size_t>(q)] = n * n;
    }
    return t;
}

inline double q_multiplicative(const PureState& psi) {
    const auto t = bipartite_tangles(psi);
    return detail::geometric_mean3(t[0], t[1], t[2]);
}

inline double q_multiplicative(const DensityMatrix& rho) {
    return q_multiplicative(detail::require_pure(rho, "Q"));
}

inline std::array<double, 3> single_qubit_entropies(const PureState& psi) {
    const DensityMatrix rho = to_density(psi);
    std::array<double, 3> s{};
    for (Qubit q : kAllQubits) s[static_cast<std::size_t>(q)] = von_neumann_entropy(reduce_to(rho, q));
    return s;
}

inline double eta3_multiplicative(const PureState& psi) {
    const auto s = single_qubit_entropies(psi);
    return detail::geometric_mean3(s[0], s[1], s[2]);
}

inline double eta3_multiplicative(const DensityMatrix& rho) {
    return eta3_multiplicative(detail::require_pure(rho, "eta3"));
}

inline constexpr double kTangleClamp = 1e-10;

// tau = C^2_{A-BC} - C^2(rho_AB) - C^2(rho_AC), with C^2_{A-BC} = 4 det(rho_A).
inline double three_tangle(const PureState& psi) {
    const DensityMatrix rho = to_density(psi);
    const double c_a_bc_sq = 4.0 * detail::single_qubit_det(reduce_to(rho, Qubit::A));
    const double c_ab = concurrence_2q(reduce_to(rho, QubitPair::AB));
    const double c_ac = concurrence_2q(reduce_to(rho, QubitPair::AC));
    const double tau = c_a_bc_sq - c_ab * c_ab - c_ac * c_ac;
    if (tau < 0.0 && tau >= -kTangleClamp) return 0.0;
    return tau;
}

inline double three_tangle(const DensityMatrix& rho) { return three_tangle(detail::require_pure(rho, "3-tangle")); }

enum class MeasureBase { Negativity, Tangle, Entropy };

// Arithmetic mean of the three one-vs-two values.
inline double additive_measure(const PureState& psi, MeasureBase base) {
    std::array<double, 3> v{};
    switch (base) {
        case MeasureBase::Negativity: {
            const DensityMatrix rho = to_density(psi);
            for (Qubit q : kAllQubits) v[static_cast<std::size_t>(q)] = negativity(rho, q);
            break;
        }
        case MeasureBase::Tangle: v = bipartite_tangles(psi); break;
        case MeasureBase::Entropy: v = single_qubit_entropies(psi); break;
    }
    return (v[0] + v[1] + v[2]) / 3.0;
}

inline double additive_measure(const DensityMatrix& rho, MeasureBase base) {
    return additive_measure(detail::require_pure(rho, "additive measure"), base);
}

// ------------------------------ MeasureSet ----------------------------------

struct MeasureSet {
    double n_a_bc = 0.0;
    double n_b_ac = 0.0;
    double n_c_ab = 0.0;
    double n_abc = 0.0;
    // Reduced two-qubit states, indexed by QubitPair (BC, AC, AB).
    std::array<double, 3> pair_negativity{};
    std::array<double, 3> pair_concurrence{};
    // Single-qubit entropies indexed by Qubit.
    std::array<double, 3> entropy{};
    // Pure states only.
    std::optional<double> q_mult;
    std::optional<double> eta_mult;
    std::optional<double> three_tangle;

    double one_vs_two(Qubit q) const {
        switch (q) {
            case Qubit::A: return n_a_bc;
            case Qubit::B: return n_b_ac;
            case Qubit::C: return n_c_ab;
        }
        return 0.0;
    }
    double n_pair(QubitPair p) const { return pair_negativity[static_cast<std::size_t>(p)]; }
    double c_pair(QubitPair p) const { return pair_concurrence[static_cast<std::size_t>(p)]; }
};

namespace detail {

inline MeasureSet mixed_measures(const DensityMatrix& rho) {
    require_three_qubits(rho);
    MeasureSet m;
    m.n_a_bc = negativity(rho, Qubit::A);
    m.n_b_ac = negativity(rho, Qubit::B);
    m.n_c_ab = negativity(rho, Qubit::C);
    m.n_abc = geometric_mean3(m.n_a_bc, m.n_b_ac, m.n_c_ab);
    for (QubitPair p : kAllPairs) {
        const DensityMatrix pair = reduce_to(rho, p);
        const auto k = static_cast<std::size_t>(p);
        // transpose on the first qubit of the pair; the spectrum does not depend on which
        m.pair_negativity[k] = negativity(pair, pair.layout().front());
        m.pair_concurrence[k] = concurrence_2q(pair);
    }
    for (Qubit q : kAllQubits) m.entropy[static_cast<std::size_t>(q)] = von_neumann_entropy(reduce_to(rho, q));
    return m;
}

} // namespace detail

inline MeasureSet measure_set(const PureState& psi) {
    MeasureSet m = detail::mixed_measures(to_density(psi));
    const std::array<double, 3> tangles{m.n_a_bc * m.n_a_bc, m.n_b_ac * m.n_b_ac, m.n_c_ab * m.n_c_ab};
    m.q_mult = detail::geometric_mean3(tangles[0], tangles[1], tangles[2]);
    m.eta_mult = detail::geometric_mean3(m.entropy[0], m.entropy[1], m.entropy[2]);
    m.three_tangle = three_tangle(psi);
    return m;
}

// Mixed input: the pure-only fields stay empty.
inline MeasureSet measure_set(const DensityMatrix& rho) { return detail::mixed_measures(rho); }

} // namespace triqubit
