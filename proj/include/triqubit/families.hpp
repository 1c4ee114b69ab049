// families.hpp
// Named states and one-parameter families, their closed-form oracle values,
// and an order-preserving parallel sweep engine.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "triqubit/classify.hpp"
#include "triqubit/error.hpp"
#include "triqubit/measures.hpp"
#include "triqubit/states.hpp"

namespace triqubit {

enum class FamilyId {
    GhzLike,     // alpha|000> + sqrt(1-alpha^2)|111>
    WCanonical,  // alpha|000> + eps|101> + delta|110>
    GhzWMix,     // p GHZ + (1-p) W'
    GhzNoise,    // p GHZ + (1-p)/8 identity
    SigmaB,      // 2x4 bound-entangled family read as three qubits
    RhoEpsilon,  // Bell mixture with a classical flag on A
    Ghz,
    W,
    WPrime,
    RhoZero,
};

inline constexpr std::array<FamilyId, 10> kAllFamilies{
    FamilyId::GhzLike, FamilyId::WCanonical, FamilyId::GhzWMix, FamilyId::GhzNoise, FamilyId::SigmaB,
    FamilyId::RhoEpsilon, FamilyId::Ghz, FamilyId::W, FamilyId::WPrime, FamilyId::RhoZero};

inline std::string_view to_string(FamilyId f) {
    switch (f) {
        case FamilyId::GhzLike: return "ghz_like";
        case FamilyId::WCanonical: return "w_canonical";
        case FamilyId::GhzWMix: return "ghz_w_mix";
        case FamilyId::GhzNoise: return "ghz_noise";
        case FamilyId::SigmaB: return "sigma_b";
        case FamilyId::RhoEpsilon: return "rho_epsilon";
        case FamilyId::Ghz: return "ghz";
        case FamilyId::W: return "w";
        case FamilyId::WPrime: return "w_prime";
        case FamilyId::RhoZero: return "rho_zero";
    }
    return "?";
}

inline FamilyId parse_family(std::string_view name) {
    for (FamilyId f : kAllFamilies)
        if (to_string(f) == name) return f;
    std::string known;
    for (FamilyId f : kAllFamilies) {
        if (!known.empty()) known += ", ";
        known += to_string(f);
    }
    throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(name) + "' (known: " + known + ")");
}

inline std::size_t arity(FamilyId f) {
    switch (f) {
        case FamilyId::WCanonical: return 3;
        case FamilyId::GhzLike:
        case FamilyId::GhzWMix:
        case FamilyId::GhzNoise:
        case FamilyId::SigmaB:
        case FamilyId::RhoEpsilon: return 1;
        default: return 0;
    }
}

inline bool is_mixed(FamilyId f) {
    switch (f) {
        case FamilyId::GhzWMix:
        case FamilyId::GhzNoise:
        case FamilyId::SigmaB:
        case FamilyId::RhoEpsilon:
        case FamilyId::RhoZero: return true;
        default: return false;
    }
}

using AnyState = std::variant<PureState, DensityMatrix>;

namespace detail {

inline const std::vector<Qubit> kLayoutABC{Qubit::A, Qubit::B, Qubit::C};

inline PureState sparse_state(std::initializer_list<std::pair<std::size_t, double>> terms) {
    PureState::Amplitudes a{};
    for (const auto& [index, value] : terms) a[index] = value;
    return PureState::normalized(a);
}

inline std::string describe_params(FamilyId f, const std::vector<double>& params) {
    std::string s(to_string(f));
    s += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ", ";
        s += format_number(params[i]);
    }
    return s + ')';
}

inline void require_in(bool ok, FamilyId f, const std::vector<double>& params, const char* domain) {
    if (!ok) {
        throw Error(ErrorCode::ParamOutOfDomain,
                    describe_params(f, params) + ": parameter outside domain " + domain);
    }
}

inline ComplexMatrix projector(const PureState& psi) { return to_density(psi).matrix(); }

} // namespace detail

// (|000> + |111>)/sqrt(2), phase 0 in every mixture.
inline PureState ghz_state() { return detail::sparse_state({{0, 1.0}, {7, 1.0}}); }

// alpha = eps = delta = 1/sqrt(3) in the canonical W form.
inline PureState w_state() { return detail::sparse_state({{0, 1.0}, {5, 1.0}, {6, 1.0}}); }

// (|001> + |010> + |100>)/sqrt(3)
inline PureState w_prime_state() { return detail::sparse_state({{1, 1.0}, {2, 1.0}, {4, 1.0}}); }

inline AnyState make_state(FamilyId f, const std::vector<double>& params) {
    if (params.size() != arity(f)) {
        throw Error(ErrorCode::ParamOutOfDomain, std::string(to_string(f)) + " takes " + std::to_string(arity(f)) +
                                                     " parameter(s), got " + std::to_string(params.size()));
    }
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    switch (f) {
        case FamilyId::GhzLike: {
            const double alpha = params[0];
            detail::require_in(in_unit(alpha), f, params, "alpha in [0, 1]");
            PureState::Amplitudes a{};
            a[0] = alpha;
            a[7] = std::sqrt(1.0 - alpha * alpha);
            return PureState(a);
        }
        case FamilyId::WCanonical: {
            const double alpha = params[0], eps = params[1], delta = params[2];
            const double norm2 = alpha * alpha + eps * eps + delta * delta;
            detail::require_in(std::abs(norm2 - 1.0) <= PureState::kNormTolerance, f, params,
                               "alpha^2 + eps^2 + delta^2 = 1");
            PureState::Amplitudes a{};
            a[0] = alpha;
            a[5] = eps;
            a[6] = delta;
            return PureState::normalized(a);
        }
        case FamilyId::GhzWMix: {
            const double p = params[0];
            detail::require_in(in_unit(p), f, params, "p in [0, 1]");
            ComplexMatrix m = detail::projector(ghz_state());
            m *= p;
            ComplexMatrix w = detail::projector(w_prime_state());
            w *= 1.0 - p;
            return DensityMatrix(m + w, detail::kLayoutABC);
        }
        case FamilyId::GhzNoise: {
            const double p = params[0];
            detail::require_in(in_unit(p), f, params, "p in [0, 1]");
            ComplexMatrix m = detail::projector(ghz_state());
            m *= p;
            ComplexMatrix noise = ComplexMatrix::identity(8);
            noise *= (1.0 - p) / 8.0;
            return DensityMatrix(m + noise, detail::kLayoutABC);
        }
        case FamilyId::SigmaB: {
            const double b = params[0];
            detail::require_in(b > 0.0 && b < 1.0, f, params, "b in (0, 1)");
            const double d = (1.0 + b) / 2.0;
            const double o = std::sqrt(1.0 - b * b) / 2.0;
            // rows indexed 4a + e with |e_1..e_4> = |00>,|01>,|10>,|11> on BC
            ComplexMatrix m(8, 8);
            for (std::size_t i = 0; i < 3; ++i) {
                m(i, i) = b;
                m(i, i + 5) = b;
                m(i + 5, i) = b;
                m(i + 5, i + 5) = b;
            }
            m(3, 3) = b;
            m(4, 4) = d;
            m(7, 7) = d;
            m(4, 7) = o;
            m(7, 4) = o;
            m *= 1.0 / (7.0 * b + 1.0);
            return DensityMatrix(m, detail::kLayoutABC);
        }
        case FamilyId::RhoEpsilon: {
            const double eps = params[0];
            detail::require_in(eps >= -1.0 && eps <= 1.0, f, params, "|eps| <= 1");
            // Psi_pm = (|10> +- |01>)/sqrt(2) on BC
            const PureState plus = detail::sparse_state({{6, 1.0}, {5, 1.0}});   // |1>_A Psi_+
            const PureState minus = detail::sparse_state({{2, 1.0}, {1, -1.0}});  // |0>_A Psi_-
            ComplexMatrix m = detail::projector(plus);
            m *= (1.0 + eps) / 2.0;
            ComplexMatrix n = detail::projector(minus);
            n *= (1.0 - eps) / 2.0;
            return DensityMatrix(m + n, detail::kLayoutABC);
        }
        case FamilyId::Ghz: return ghz_state();
        case FamilyId::W: return w_state();
        case FamilyId::WPrime: return w_prime_state();
        case FamilyId::RhoZero: return make_state(FamilyId::RhoEpsilon, {0.0});
    }
    throw Error(ErrorCode::UnknownFamily, "unhandled family");
}

// ------------------------------- oracles ------------------------------------

enum class Quantity { NABc, NBAc, NCAb, NAbc, QMult, EtaMult, NBC, NAC, NAB };

inline constexpr std::array<Quantity, 9> kAllQuantities{Quantity::NABc, Quantity::NBAc, Quantity::NCAb,
                                                        Quantity::NAbc, Quantity::QMult, Quantity::EtaMult,
                                                        Quantity::NBC,  Quantity::NAC,   Quantity::NAB};

inline std::string_view column_name(Quantity q) {
    switch (q) {
        case Quantity::NABc: return "n_a_bc";
        case Quantity::NBAc: return "n_b_ac";
        case Quantity::NCAb: return "n_c_ab";
        case Quantity::NAbc: return "n_abc";
        case Quantity::QMult: return "q_mult";
        case Quantity::EtaMult: return "eta_mult";
        case Quantity::NBC: return "n_bc";
        case Quantity::NAC: return "n_ac";
        case Quantity::NAB: return "n_ab";
    }
    return "?";
}

using QuantityValues = std::array<std::optional<double>, 9>;

inline std::optional<double> value_of(const MeasureSet& m, Quantity q) {
    switch (q) {
        case Quantity::NABc: return m.n_a_bc;
        case Quantity::NBAc: return m.n_b_ac;
        case Quantity::NCAb: return m.n_c_ab;
        case Quantity::NAbc: return m.n_abc;
        case Quantity::QMult: return m.q_mult;
        case Quantity::EtaMult: return m.eta_mult;
        case Quantity::NBC: return m.n_pair(QubitPair::BC);
        case Quantity::NAC: return m.n_pair(QubitPair::AC);
        case Quantity::NAB: return m.n_pair(QubitPair::AB);
    }
    return std::nullopt;
}

inline QuantityValues values_of(const MeasureSet& m) {
    QuantityValues v;
    for (Quantity q : kAllQuantities) v[static_cast<std::size_t>(q)] = value_of(m, q);
    return v;
}

namespace detail {

inline double binary_entropy(double x) {
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

inline void set(QuantityValues& v, Quantity q, double x) { v[static_cast<std::size_t>(q)] = x; }

inline void set_cuts(QuantityValues& v, double na, double nb, double nc) {
    set(v, Quantity::NABc, na);
    set(v, Quantity::NBAc, nb);
    set(v, Quantity::NCAb, nc);
    set(v, Quantity::NAbc, geometric_mean3(na, nb, nc));
}

inline void set_pairs(QuantityValues& v, double bc, double ac, double ab) {
    set(v, Quantity::NBC, bc);
    set(v, Quantity::NAC, ac);
    set(v, Quantity::NAB, ab);
}

// Canonical W form alpha|000> + eps|101> + delta|110>.
inline QuantityValues w_canonical_oracle(double alpha, double eps, double delta) {
    const double a2 = alpha * alpha, e2 = eps * eps, d2 = delta * delta;
    const double a = std::abs(alpha), e = std::abs(eps), d = std::abs(delta);
    QuantityValues v;
    // pure-state cut negativity 2 sqrt(l1 l2) from each single-qubit spectrum
    const double na = 2.0 * a * std::sqrt(e2 + d2);
    const double nb = 2.0 * d * std::sqrt(a2 + e2);
    const double nc = 2.0 * e * std::sqrt(a2 + d2);
    set_cuts(v, na, nb, nc);
    set(v, Quantity::QMult, geometric_mean3(na * na, nb * nb, nc * nc));
    set(v, Quantity::EtaMult, geometric_mean3(binary_entropy(a2), binary_entropy(d2), binary_entropy(e2)));
    set_pairs(v, std::sqrt(a2 * a2 + 4.0 * e2 * d2) - a2, std::sqrt(d2 * d2 + 4.0 * e2 * a2) - d2,
              std::sqrt(e2 * e2 + 4.0 * a2 * d2) - e2);
    return v;
}

inline QuantityValues ghz_like_oracle(double alpha) {
    const double a2 = alpha * alpha;
    const double n = 2.0 * alpha * std::sqrt(1.0 - a2);
    QuantityValues v;
    set_cuts(v, n, n, n);
    set(v, Quantity::NAbc, n);
    set(v, Quantity::QMult, n * n);
    set(v, Quantity::EtaMult, binary_entropy(a2));
    set_pairs(v, 0.0, 0.0, 0.0);
    return v;
}

} // namespace detail

inline double ghz_w_mix_formula(double p) {
    return (std::sqrt(41.0 * p * p - 64.0 * p + 32.0) + 2.0 * std::sqrt(10.0 * p * p - 2.0 * p + 1.0) - p - 2.0) / 6.0;
}

inline double ghz_noise_formula(double p) { return p <= 0.2 ? 0.0 : (5.0 * p - 1.0) / 4.0; }

inline double sigma_b_formula(double b) { return (std::sqrt(3.0 * b * b + 1.0) - 2.0 * b) / (7.0 * b + 1.0); }

// Every closed form available for the family at these parameters; absent
// entries have no oracle.
inline QuantityValues oracle_values(FamilyId f, const std::vector<double>& params) {
    make_state(f, params);  // domain check
    QuantityValues v;
    switch (f) {
        case FamilyId::GhzLike: return detail::ghz_like_oracle(params[0]);
        case FamilyId::WCanonical: return detail::w_canonical_oracle(params[0], params[1], params[2]);
        case FamilyId::GhzWMix: {
            const double n = ghz_w_mix_formula(params[0]);
            detail::set_cuts(v, n, n, n);
            detail::set(v, Quantity::NAbc, n);
            break;
        }
        case FamilyId::GhzNoise: {
            const double n = ghz_noise_formula(params[0]);
            detail::set_cuts(v, n, n, n);
            detail::set(v, Quantity::NAbc, n);
            // reduced pairs are diagonal
            detail::set_pairs(v, 0.0, 0.0, 0.0);
            break;
        }
        case FamilyId::SigmaB: {
            const double n = sigma_b_formula(params[0]);
            detail::set_cuts(v, 0.0, n, n);
            break;
        }
        case FamilyId::RhoEpsilon:
        case FamilyId::RhoZero: {
            const double eps = f == FamilyId::RhoZero ? 0.0 : params[0];
            detail::set(v, Quantity::NBC, std::abs(eps));
            // qubit A is a classical flag
            detail::set(v, Quantity::NABc, 0.0);
            detail::set(v, Quantity::NAbc, 0.0);
            break;
        }
        case FamilyId::Ghz: return detail::ghz_like_oracle(1.0 / std::sqrt(2.0));
        case FamilyId::W:
        case FamilyId::WPrime: {
            const double s = 1.0 / std::sqrt(3.0);
            return detail::w_canonical_oracle(s, s, s);
        }
    }
    return v;
}

inline double oracle(FamilyId f, const std::vector<double>& params, Quantity q) {
    const auto v = oracle_values(f, params)[static_cast<std::size_t>(q)];
    if (!v) {
        throw Error(ErrorCode::NoOracle, "no closed form for " + std::string(column_name(q)) + " in family " +
                                             std::string(to_string(f)));
    }
    return *v;
}

// ------------------------------- grids --------------------------------------

inline constexpr std::size_t kDefaultGridPoints = 101;

// n uniform points over each family's domain; named states have one point.
inline std::vector<std::vector<double>> default_grid(FamilyId f, std::size_t n = kDefaultGridPoints) {
    if (arity(f) == 0) return {{}};
    if (n == 0) throw Error(ErrorCode::ParamOutOfDomain, "grid needs at least one point");
    const auto t = [n](std::size_t i) { return n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1); };
    std::vector<std::vector<double>> grid;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (f) {
            case FamilyId::GhzLike: grid.push_back({t(i) / std::sqrt(2.0)}); break;
            case FamilyId::WCanonical: {
                // the eps = delta slice, passing through W at alpha = 1/sqrt(3)
                const double alpha = t(i);
                const double side = std::sqrt(std::max(0.0, (1.0 - alpha * alpha) / 2.0));
                grid.push_back({alpha, side, side});
                break;
            }
            case FamilyId::GhzWMix:
            case FamilyId::GhzNoise: grid.push_back({t(i)}); break;
            case FamilyId::SigmaB:
                grid.push_back({static_cast<double>(i + 1) / static_cast<double>(n + 1)});
                break;
            case FamilyId::RhoEpsilon: grid.push_back({-1.0 + 2.0 * t(i)}); break;
            default: break;
        }
    }
    return grid;
}

// ------------------------------- sweep --------------------------------------

struct SweepRow {
    FamilyId family;
    std::vector<double> params;
    MeasureSet measures;
    std::string label;  // subtype code for pure states, certificate summary for mixed
    bool ambiguous = false;
    QuantityValues computed;
    QuantityValues oracle;
    QuantityValues deviation;
};

// Pure-state label with the qualifying qubit or pair, e.g. "1^1-1[A]".
inline std::string label_token(const SubtypeLabel& label) {
    std::string s = label.code();
    if (label.separable_qubit) s += std::string("[") + to_char(*label.separable_qubit) + "]";
    if (label.pair) s += "[" + to_string(*label.pair) + "]";
    return s;
}

inline SweepRow evaluate_row(FamilyId f, const std::vector<double>& params, double zero_tol = kDefaultZeroTol) {
    SweepRow row{f, params, {}, {}, false, {}, {}, {}};
    const AnyState state = make_state(f, params);
    if (const auto* psi = std::get_if<PureState>(&state)) {
        const PureClassification c = classify_pure(*psi, zero_tol);
        row.measures = c.measures;
        row.label = label_token(c.label);
        row.ambiguous = c.ambiguous;
    } else {
        const MixedVerdict v = classify_mixed(std::get<DensityMatrix>(state), zero_tol);
        row.measures = v.measures;
        row.label = v.summary();
        row.ambiguous = v.ambiguous;
    }
    row.computed = values_of(row.measures);
    row.oracle = oracle_values(f, params);
    for (std::size_t k = 0; k < row.oracle.size(); ++k)
        if (row.oracle[k] && row.computed[k]) row.deviation[k] = std::abs(*row.computed[k] - *row.oracle[k]);
    return row;
}

namespace detail {

// Runs fn(i) for i in [0, n) on a pool of threads. Results must be written to
// slot i by fn; the first failure by index is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace detail

inline std::vector<SweepRow> sweep(FamilyId f, const std::vector<std::vector<double>>& grid,
                                   double zero_tol = kDefaultZeroTol, unsigned threads = 0) {
    if (grid.empty()) throw Error(ErrorCode::ParamOutOfDomain, "empty parameter grid");
    std::vector<std::optional<SweepRow>> slots(grid.size());
    detail::parallel_for(
        grid.size(),
        [&](std::size_t i) {
            try {
                slots[i] = evaluate_row(f, grid[i], zero_tol);
            } catch (const Error& e) {
                throw Error(e.code(), "at " + detail::describe_params(f, grid[i]) + ": " + e.what());
            }
        },
        threads);
    std::vector<SweepRow> rows;
    rows.reserve(slots.size());
    for (auto& s : slots) rows.push_back(std::move(*s));
    return rows;
}

inline std::vector<SweepRow> sweep(FamilyId f, std::size_t points = kDefaultGridPoints) {
    return sweep(f, default_grid(f, points));
}

} // namespace triqubit
