// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "triqubit/triqubit.hpp"

namespace tq_test {

using namespace triqubit;

inline constexpr std::array<GsdPattern, 11> kAllPatterns{
    GsdPattern::Product, GsdPattern::B,  GsdPattern::BPrime,  GsdPattern::BDoublePrime, GsdPattern::Ghz,
    GsdPattern::IV,      GsdPattern::IVPrime, GsdPattern::IVDoublePrime, GsdPattern::S, GsdPattern::SPrime,
    GsdPattern::WLike};

// Canonical-form basis indices: alpha 0, beta 4, epsilon 5, delta 6, omega 7.
inline std::vector<std::size_t> pattern_support(GsdPattern p) {
    switch (p) {
        case GsdPattern::Product: return {0};
        case GsdPattern::B: return {4, 5, 6, 7};
        case GsdPattern::BPrime: return {0, 5};
        case GsdPattern::BDoublePrime: return {0, 6};
        case GsdPattern::Ghz: return {0, 7};
        case GsdPattern::IV: return {0, 4, 7};
        case GsdPattern::IVPrime: return {0, 5, 7};
        case GsdPattern::IVDoublePrime: return {0, 6, 7};
        case GsdPattern::S: return {0, 4, 5, 7};
        case GsdPattern::SPrime: return {0, 4, 6, 7};
        case GsdPattern::WLike: return {0, 4, 5, 6, 7};
    }
    return {};
}

inline SubtypeLabel expected_subtype(GsdPattern p) {
    switch (p) {
        case GsdPattern::Product: return {Subtype::FullySeparable, std::nullopt, std::nullopt};
        case GsdPattern::B: return {Subtype::SimplyBiseparable, Qubit::A, std::nullopt};
        case GsdPattern::BPrime: return {Subtype::SimplyBiseparable, Qubit::B, std::nullopt};
        case GsdPattern::BDoublePrime: return {Subtype::SimplyBiseparable, Qubit::C, std::nullopt};
        case GsdPattern::Ghz: return {Subtype::GhzLike, std::nullopt, std::nullopt};
        case GsdPattern::IV: return {Subtype::TwoOne, std::nullopt, QubitPair::BC};
        case GsdPattern::IVPrime: return {Subtype::TwoOne, std::nullopt, QubitPair::AC};
        case GsdPattern::IVDoublePrime: return {Subtype::TwoOne, std::nullopt, QubitPair::AB};
        case GsdPattern::S: return {Subtype::TwoTwo, std::nullopt, QubitPair::AB};
        case GsdPattern::SPrime: return {Subtype::TwoTwo, std::nullopt, QubitPair::AC};
        case GsdPattern::WLike: return {Subtype::WLike, std::nullopt, std::nullopt};
    }
    return {};
}

// Canonical coefficients on the pattern's support with moduli in [0.2, 1]
// and random phases, normalized.
inline PureState random_canonical(GsdPattern p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mod(0.2, 1.0), phase(-M_PI, M_PI);
    PureState::Amplitudes a{};
    for (std::size_t idx : pattern_support(p)) a[idx] = std::polar(mod(rng), phase(rng));
    return PureState::normalized(a);
}

inline PureState random_lu(const PureState& psi, std::mt19937_64& rng) {
    const ComplexMatrix ua = sample_haar_unitary2(rng);
    const ComplexMatrix ub = sample_haar_unitary2(rng);
    const ComplexMatrix uc = sample_haar_unitary2(rng);
    return apply_local_unitary(psi, ua, ub, uc);
}

// A state of known pattern hidden behind random local unitaries.
inline PureState random_pattern_state(GsdPattern p, std::mt19937_64& rng) {
    return random_lu(random_canonical(p, rng), rng);
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = standard_complex_gaussian(rng);
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

// Concurrence through the Hermitian matrix sqrt(rho) rho~ sqrt(rho); kept as an
// independent cross-check of the library route. Accurate to ~1e-7 on
// rank-deficient inputs because of the square root.
inline double concurrence_sqrt_route(const DensityMatrix& rho) {
    const ComplexMatrix flip{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    const ComplexMatrix tilde = flip * rho.matrix().conjugate() * flip;
    const ComplexMatrix root = sqrt_psd(rho.matrix());
    ComplexMatrix r = root * tilde * root;
    r = (r + r.adjoint());
    r *= 0.5;
    const HermitianEigen e = eig_hermitian(r);
    double l[4];
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(e.values[i], 0.0));
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double max_deviation(const MeasureSet& a, const MeasureSet& b) {
    double d = 0.0;
    auto upd = [&](double x, double y) { d = std::max(d, std::abs(x - y)); };
    upd(a.n_a_bc, b.n_a_bc);
    upd(a.n_b_ac, b.n_b_ac);
    upd(a.n_c_ab, b.n_c_ab);
    upd(a.n_abc, b.n_abc);
    for (std::size_t k = 0; k < 3; ++k) {
        upd(a.pair_negativity[k], b.pair_negativity[k]);
        upd(a.pair_concurrence[k], b.pair_concurrence[k]);
        upd(a.entropy[k], b.entropy[k]);
    }
    if (a.q_mult && b.q_mult) upd(*a.q_mult, *b.q_mult);
    if (a.eta_mult && b.eta_mult) upd(*a.eta_mult, *b.eta_mult);
    if (a.three_tangle && b.three_tangle) upd(*a.three_tangle, *b.three_tangle);
    return d;
}

// det of the one-qubit reduction of a pure state as a sum of squared 2x2
// minors of the 2x4 amplitude matrix (Cauchy-Binet), free of cancellation.
inline double reduced_det(const PureState& psi, Qubit q) {
    const int bit = 2 - static_cast<int>(q);
    std::array<std::array<complex, 4>, 2> m{};
    for (int i = 0; i < 8; ++i) {
        const int row = (i >> bit) & 1;
        const int col = ((i >> (bit + 1)) << bit) | (i & ((1 << bit) - 1));
        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = psi[static_cast<std::size_t>(i)];
    }
    double det = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = j + 1; k < 4; ++k) det += std::norm(m[0][j] * m[1][k] - m[0][k] * m[1][j]);
    return det;
}

} // namespace tq_test
