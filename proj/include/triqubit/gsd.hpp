// gsd.hpp
// Generalized Schmidt decomposition of three-qubit pure states:
//   |psi> -> alpha|000> + beta|100> + delta|110> + epsilon|101> + omega|111>
// by local unitaries, plus the catalog that maps the zero pattern of the five
// coefficients to an entanglement subtype.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "triqubit/linalg.hpp"
#include "triqubit/states.hpp"

namespace triqubit {

enum class PhaseMode { Raw, Normal };

struct GsdForm {
    complex alpha;    // |000>
    complex beta;     // |100>
    complex delta;    // |110>
    complex epsilon;  // |101>
    complex omega;    // |111>
    PhaseMode mode = PhaseMode::Raw;
    // (u_a x u_b x u_c)|input> equals coefficient_vector()
    ComplexMatrix u_a = ComplexMatrix::identity(2);
    ComplexMatrix u_b = ComplexMatrix::identity(2);
    ComplexMatrix u_c = ComplexMatrix::identity(2);
    // Largest |coefficient| left on |001>, |010>, |011> by the transformation.
    double residual = 0.0;

    PureState::Amplitudes coefficient_vector() const {
        PureState::Amplitudes a{};
        a[0] = alpha;
        a[4] = beta;
        a[5] = epsilon;
        a[6] = delta;
        a[7] = omega;
        return a;
    }

    PureState canonical_state() const { return PureState::normalized(coefficient_vector()); }
};

namespace detail {

using Mat2 = std::array<std::array<complex, 2>, 2>;

inline complex det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// First row (x0, x1) of the qubit-A unitary, together with the nonzero
// singular value lambda0 of x0 T0 + x1 T1 that it produces.
struct RootCandidate {
    complex x0;
    complex x1;
    double lambda0;
};

inline RootCandidate make_candidate(complex x0, complex x1, const Mat2& t0, const Mat2& t1) {
    const double n = std::hypot(std::abs(x0), std::abs(x1));
    x0 /= n;
    x1 /= n;
    double s = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) s += std::norm(x0 * t0[j][k] + x1 * t1[j][k]);
    return {x0, x1, std::sqrt(s)};
}

inline constexpr double kGsdDegenerateCoefficients = 1e-13;
inline constexpr double kGsdTieTolerance = 1e-12;
inline constexpr double kGsdResidualLimit = 1e-10;
inline constexpr double kGsdNullRow = 1e-12;

// Projective roots of a x1^2 + c x0 x1 + d x0^2 = 0, i.e. det(x0 T0 + x1 T1) = 0
// with a = det T1, d = det T0. Solved in the better-scaled affine chart with
// the cancellation-free quadratic formula.
inline std::vector<std::array<complex, 2>> projective_roots(complex a, complex c, complex d) {
    const bool z_chart = std::abs(a) >= std::abs(d);
    // In the z = x1/x0 chart the leading coefficient is a; in w = x0/x1 it is d.
    const complex lead = z_chart ? a : d;
    const complex tail = z_chart ? d : a;
    const complex sq = std::sqrt(c * c - 4.0 * lead * tail);
    const complex q = -0.5 * (std::abs(c + sq) >= std::abs(c - sq) ? c + sq : c - sq);

    // roots of lead*u^2 + c*u + tail: u1 = q/lead, u2 = tail/q, as projective pairs
    std::vector<std::array<complex, 2>> chart_roots;
    if (lead != complex{} || q != complex{}) chart_roots.push_back({lead, q});  // u = q / lead
    if (q != complex{} || tail != complex{}) chart_roots.push_back({q, tail});  // u = tail / q
    if (chart_roots.size() == 1) chart_roots.push_back(chart_roots.front());

    std::vector<std::array<complex, 2>> roots;
    for (const auto& r : chart_roots) {
        // (den, num) represents u = num/den
        if (z_chart)
            roots.push_back({r[0], r[1]});  // x0 = den, x1 = num
        else
            roots.push_back({r[1], r[0]});  // x0/x1 = num/den
    }
    return roots;
}

inline complex cross_det(const Mat2& m, const Mat2& n) {
    return m[0][0] * n[1][1] + m[1][1] * n[0][0] - m[0][1] * n[1][0] - m[1][0] * n[0][1];
}

// Re-solve det(M + t N) = 0 around the candidate, with M the candidate's own
// combination and N the orthogonal one. M is small near a double root, so the
// local coefficients are accurate where c^2 - 4ad is not.
inline RootCandidate polish(RootCandidate cand, const Mat2& t0, const Mat2& t1) {
    for (int it = 0; it < 3; ++it) {
        const complex y0 = -std::conj(cand.x1);
        const complex y1 = std::conj(cand.x0);
        Mat2 m{}, n{};
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                m[j][k] = cand.x0 * t0[j][k] + cand.x1 * t1[j][k];
                n[j][k] = y0 * t0[j][k] + y1 * t1[j][k];
            }
        const complex qa = det2(n);
        const complex qb = cross_det(m, n);
        const complex qc = det2(m);
        if (qc == complex{}) break;
        const complex sq = std::sqrt(qb * qb - 4.0 * qa * qc);
        const complex q = -0.5 * (std::abs(qb + sq) >= std::abs(qb - sq) ? qb + sq : qb - sq);
        if (q == complex{}) break;
        // smaller root of qa t^2 + qb t + qc
        complex t = qc / q;
        if (qa != complex{} && std::abs(q / qa) < std::abs(t)) t = q / qa;
        if (!(std::abs(t) < 0.5)) break;
        cand = make_candidate(cand.x0 + t * y0, cand.x1 + t * y1, t0, t1);
    }
    return cand;
}

inline Mat2 row_combination(complex y0, complex y1, const Mat2& t0, const Mat2& t1) {
    Mat2 r{};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) r[j][k] = y0 * t0[j][k] + y1 * t1[j][k];
    return r;
}

inline RootCandidate choose_first_row(const Mat2& t0, const Mat2& t1, complex a, complex c, complex d) {
    const double scale = std::max({std::abs(a), std::abs(c), std::abs(d)});
    if (scale <= kGsdDegenerateCoefficients) {
        // Every combination is singular: take the one with the largest norm,
        // i.e. the top eigenvector of the Gram matrix G_{i'i} = <T_i', T_i>.
        ComplexMatrix gram(2, 2);
        const std::array<const Mat2*, 2> ts{&t0, &t1};
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) gram(r, s) += std::conj((*ts[r])[j][k]) * (*ts[s])[j][k];
        const HermitianEigen e = eig_hermitian(gram, INFINITY);
        if (e.values[0] - e.values[1] <= kGsdTieTolerance * std::max(e.values[0], 1.0)) {
            return make_candidate(1.0, 0.0, t0, t1);
        }
        return make_candidate(e.vectors(0, 0), e.vectors(1, 0), t0, t1);
    }

    std::optional<RootCandidate> best;
    for (const auto& r : projective_roots(a, c, d)) {
        const RootCandidate cand = polish(make_candidate(r[0], r[1], t0, t1), t0, t1);
        if (!best) {
            best = cand;
            continue;
        }
        if (cand.lambda0 > best->lambda0 + kGsdTieTolerance) {
            best = cand;
        } else if (std::abs(cand.lambda0 - best->lambda0) <= kGsdTieTolerance &&
                   std::abs(cand.x0) > std::abs(best->x0) + kGsdTieTolerance) {
            // tie: prefer the smaller |z| = |x1/x0|
            best = cand;
        }
    }
    return *best;
}

inline ComplexMatrix phase_diag(double phase) {
    return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, phase)}};
}

inline constexpr double kPhaseZero = 1e-14;

} // namespace detail

// Reduce psi to the five-coefficient canonical form.
//  1. T_i = psi_{i..} as 2x2 matrices.
//  2. Pick (x0, x1) with det(x0 T0 + x1 T1) = 0.
//  3. u_a has first row (x0, x1).
//  4. SVD of the new T0 = U diag(lambda, 0) V^dagger; u_b = U^dagger, u_c = V^T.
//  5. Read the surviving coefficients.
//  6. Normal mode: diagonal phases so that alpha, delta, epsilon, omega >= 0.
inline GsdForm gsd(const PureState& psi, PhaseMode mode = PhaseMode::Raw) {
    detail::Mat2 t0{}, t1{};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            t0[j][k] = psi.amplitude(0, j, k);
            t1[j][k] = psi.amplitude(1, j, k);
        }
    const complex a = detail::det2(t1);
    const complex d = detail::det2(t0);
    const complex c = detail::cross_det(t0, t1);

    const detail::RootCandidate row = detail::choose_first_row(t0, t1, a, c, d);
    const ComplexMatrix u_a{{row.x0, row.x1}, {-std::conj(row.x1), std::conj(row.x0)}};

    const detail::Mat2 new_t0 = detail::row_combination(row.x0, row.x1, t0, t1);
    // Qubit A factors out and the first row vanishes: the B, C frames are then
    // free, so take them from the Schmidt basis of the second row.
    const bool null_row = row.lambda0 <= detail::kGsdNullRow;
    const detail::Mat2 basis_rows =
        null_row ? detail::row_combination(-std::conj(row.x1), std::conj(row.x0), t0, t1) : new_t0;
    const ComplexMatrix m0{{basis_rows[0][0], basis_rows[0][1]}, {basis_rows[1][0], basis_rows[1][1]}};
    const Svd2x2 svd = svd_2x2(m0);

    GsdForm form;
    form.mode = mode;
    form.u_a = u_a;
    form.u_b = svd.u.adjoint();
    form.u_c = svd.v.transpose();

    PureState out = apply_local_unitary(psi, form.u_a, form.u_b, form.u_c);

    if (mode == PhaseMode::Normal) {
        // Phases g (global), pa, pb, pc (diag(1, e^{i p}) on each qubit) act as
        //   alpha: g   delta: g+pa+pb   epsilon: g+pa+pc   omega: g+pa+pb+pc
        // and beta picks up g+pa.
        auto target = [](complex v) { return std::abs(v) > detail::kPhaseZero ? -std::arg(v) : 0.0; };
        const double t_alpha = target(out[0]);
        const double t_delta = target(out[6]);
        const double t_epsilon = target(out[5]);
        const double t_omega = target(out[7]);
        const double g = t_alpha;
        const double pc = t_omega - t_delta;
        const double pb = t_omega - t_epsilon;
        const double pa = t_delta - g - pb;
        form.u_a = std::polar(1.0, g) * (detail::phase_diag(pa) * form.u_a);
        form.u_b = detail::phase_diag(pb) * form.u_b;
        form.u_c = detail::phase_diag(pc) * form.u_c;
        out = apply_local_unitary(psi, form.u_a, form.u_b, form.u_c);
    }

    form.alpha = out[0];
    form.beta = out[4];
    form.epsilon = out[5];
    form.delta = out[6];
    form.omega = out[7];
    form.residual = std::max({std::abs(out[1]), std::abs(out[2]), std::abs(out[3])});
    if (mode == PhaseMode::Normal) {
        form.alpha = std::abs(form.alpha);
        form.delta = std::abs(form.delta);
        form.epsilon = std::abs(form.epsilon);
        form.omega = std::abs(form.omega);
    }

    if (!(form.residual <= detail::kGsdResidualLimit)) {
        throw Error(ErrorCode::NumericalDegeneracy,
                    "GSD left weight " + format_number(form.residual) + " on |001>,|010>,|011> (det T1 = " +
                        format_number(std::abs(a)) + ", cross = " + format_number(std::abs(c)) +
                        ", det T0 = " + format_number(std::abs(d)) + ", lambda0 = " + format_number(row.lambda0) +
                        ")");
    }
    return form;
}

// ------------------------------ pattern catalog -----------------------------

enum class GsdPattern {
    Product,          // 0-0
    B,                // beta, delta, epsilon, omega with beta*omega != delta*epsilon
    BPrime,           // alpha, epsilon (+ beta)
    BDoublePrime,     // alpha, delta (+ beta)
    Ghz,              // alpha, omega
    IV,               // alpha, beta, omega
    IVPrime,          // alpha, epsilon, omega
    IVDoublePrime,    // alpha, delta, omega
    S,                // alpha, beta, epsilon, omega
    SPrime,           // alpha, beta, delta, omega
    WLike,            // alpha, delta, epsilon nonzero
};

inline std::string to_string(GsdPattern p) {
    switch (p) {
        case GsdPattern::Product: return "product";
        case GsdPattern::B: return "B";
        case GsdPattern::BPrime: return "B'";
        case GsdPattern::BDoublePrime: return "B''";
        case GsdPattern::Ghz: return "Psi_GHZ";
        case GsdPattern::IV: return "IV";
        case GsdPattern::IVPrime: return "IV'";
        case GsdPattern::IVDoublePrime: return "IV''";
        case GsdPattern::S: return "S";
        case GsdPattern::SPrime: return "S'";
        case GsdPattern::WLike: return "W-like";
    }
    return "?";
}

enum class Subtype { FullySeparable, SimplyBiseparable, GhzLike, TwoOne, TwoTwo, WLike };

// Subtype plus the qubit/pair that distinguishes members of the same subtype:
// the separable qubit for 1^1-1, the entangled pair for 2-1 and the separable
// pair for 2-2.
struct SubtypeLabel {
    Subtype kind = Subtype::FullySeparable;
    std::optional<Qubit> separable_qubit;
    std::optional<QubitPair> pair;

    std::string code() const {
        switch (kind) {
            case Subtype::FullySeparable: return "0-0";
            case Subtype::SimplyBiseparable: return "1^1-1";
            case Subtype::GhzLike: return "2-0";
            case Subtype::TwoOne: return "2-1";
            case Subtype::TwoTwo: return "2-2";
            case Subtype::WLike: return "2-3";
        }
        return "?";
    }

    std::string describe() const {
        switch (kind) {
            case Subtype::FullySeparable: return "0-0 (fully separable)";
            case Subtype::SimplyBiseparable:
                return "1^1-1 (simply biseparable, qubit " + std::string(1, to_char(*separable_qubit)) +
                       " separable)";
            case Subtype::GhzLike: return "2-0 (GHZ-like)";
            case Subtype::TwoOne: return "2-1 (entangled pair " + to_string(*pair) + ")";
            case Subtype::TwoTwo: return "2-2 (star-shaped, separable pair " + to_string(*pair) + ")";
            case Subtype::WLike: return "2-3 (W-like)";
        }
        return "?";
    }

    friend bool operator==(const SubtypeLabel&, const SubtypeLabel&) = default;
};

struct PatternMatch {
    GsdPattern pattern = GsdPattern::Product;
    SubtypeLabel subtype;
    bool ambiguous = false;
    // The smallest ratio max(v/tol, tol/v) over the tested magnitudes; values
    // under 10 flag the match as ambiguous.
    double closest_ratio = INFINITY;
};

inline constexpr double kDefaultZeroTol = 1e-8;

namespace detail {

// How many factors of tol the value sits away from the threshold (>= 1).
inline double threshold_ratio(double value, double tol) {
    if (value <= 0.0) return INFINITY;
    return value >= tol ? value / tol : tol / value;
}

} // namespace detail

inline PatternMatch classify_gsd_pattern(const GsdForm& form, double zero_tol = kDefaultZeroTol) {
    PatternMatch m;
    auto nz = [&](complex v) {
        m.closest_ratio = std::min(m.closest_ratio, detail::threshold_ratio(std::abs(v), zero_tol));
        return std::abs(v) > zero_tol;
    };
    const bool al = nz(form.alpha);
    const bool be = nz(form.beta);
    const bool de = nz(form.delta);
    const bool ep = nz(form.epsilon);
    const bool om = nz(form.omega);

    auto set = [&](GsdPattern p, SubtypeLabel s) {
        m.pattern = p;
        m.subtype = s;
    };
    const SubtypeLabel product{Subtype::FullySeparable, std::nullopt, std::nullopt};

    if (!al) {
        const double minor = std::abs(form.beta * form.omega - form.delta * form.epsilon);
        m.closest_ratio = std::min(m.closest_ratio, detail::threshold_ratio(minor, zero_tol));
        if (minor > zero_tol)
            set(GsdPattern::B, {Subtype::SimplyBiseparable, Qubit::A, std::nullopt});
        else
            set(GsdPattern::Product, product);
    } else if (de && ep) {
        set(GsdPattern::WLike, {Subtype::WLike, std::nullopt, std::nullopt});
    } else if (!om) {
        if (ep)
            set(GsdPattern::BPrime, {Subtype::SimplyBiseparable, Qubit::B, std::nullopt});
        else if (de)
            set(GsdPattern::BDoublePrime, {Subtype::SimplyBiseparable, Qubit::C, std::nullopt});
        else
            set(GsdPattern::Product, product);
    } else if (!de && !ep) {
        if (be)
            set(GsdPattern::IV, {Subtype::TwoOne, std::nullopt, QubitPair::BC});
        else
            set(GsdPattern::Ghz, {Subtype::GhzLike, std::nullopt, std::nullopt});
    } else if (ep) {
        if (be)
            set(GsdPattern::S, {Subtype::TwoTwo, std::nullopt, QubitPair::AB});
        else
            set(GsdPattern::IVPrime, {Subtype::TwoOne, std::nullopt, QubitPair::AC});
    } else {
        if (be)
            set(GsdPattern::SPrime, {Subtype::TwoTwo, std::nullopt, QubitPair::AC});
        else
            set(GsdPattern::IVDoublePrime, {Subtype::TwoOne, std::nullopt, QubitPair::AB});
    }
    m.ambiguous = m.closest_ratio < 10.0;
    return m;
}

} // namespace triqubit
