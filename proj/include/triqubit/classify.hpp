// classify.hpp
// Subtype labels for pure states and certified partial verdicts for mixed ones.

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "triqubit/gsd.hpp"
#include "triqubit/measures.hpp"
#include "triqubit/states.hpp"

namespace triqubit {

// One thresholded comparison: value is compared against threshold.
struct Margin {
    std::string quantity;
    double value = 0.0;
    double threshold = 0.0;
    bool above = false;

    double margin() const { return value - threshold; }
    // Within a factor 10 of the threshold.
    bool near_threshold() const { return detail::threshold_ratio(value, threshold) < 10.0; }
};

struct PureClassification {
    SubtypeLabel label;
    MeasureSet measures;
    std::array<double, 3> single_purity{};  // Tr(rho_I^2), indexed by Qubit
    std::vector<Margin> margins;
    bool ambiguous = false;
};

namespace detail {

inline Margin compare(std::string quantity, double value, double tol) {
    return {std::move(quantity), value, tol, value > tol};
}

} // namespace detail

// A qubit factorizes iff the complementary pair is pure. With exactly one
// factorizable qubit the state is 1^1-1 unless the pair itself is a product.
// Otherwise the number of entangled reduced pairs picks the type-2 subtype.
inline PureClassification classify_pure(const PureState& psi, double zero_tol = kDefaultZeroTol) {
    PureClassification out;
    out.measures = measure_set(psi);
    const DensityMatrix rho = to_density(psi);

    std::array<bool, 3> factorizable{};
    std::array<Margin, 3> impurity_checks;
    for (Qubit q : kAllQubits) {
        const auto i = static_cast<std::size_t>(q);
        const double pair_purity = reduce_to(rho, pair_without(q)).purity();
        out.single_purity[i] = reduce_to(rho, q).purity();
        // factorizable <=> 1 - purity < tol, so "above" means entangled with the rest
        impurity_checks[i] = detail::compare("impurity(" + to_string(pair_without(q)) + ")", 1.0 - pair_purity, zero_tol);
        factorizable[i] = !impurity_checks[i].above;
    }
    out.margins.assign(impurity_checks.begin(), impurity_checks.end());

    const auto n_factorizable = std::count(factorizable.begin(), factorizable.end(), true);
    if (n_factorizable == 3) {
        out.label = {Subtype::FullySeparable, std::nullopt, std::nullopt};
    } else if (n_factorizable == 2) {
        // Analytically impossible; rounding near a product state.
        const bool all_close = std::all_of(out.single_purity.begin(), out.single_purity.end(),
                                           [&](double p) { return 1.0 - p < 10.0 * zero_tol; });
        out.label = {Subtype::FullySeparable, std::nullopt, std::nullopt};
        if (!all_close) out.ambiguous = true;
    } else if (n_factorizable == 1) {
        const auto q = static_cast<Qubit>(std::find(factorizable.begin(), factorizable.end(), true) -
                                          factorizable.begin());
        bool pair_is_product = true;
        for (Qubit other : kAllQubits) {
            if (other == q) continue;
            const Margin m = detail::compare(std::string("impurity(") + to_char(other) + ")",
                                             1.0 - out.single_purity[static_cast<std::size_t>(other)], zero_tol);
            pair_is_product = pair_is_product && !m.above;
            out.margins.push_back(m);
        }
        if (pair_is_product)
            out.label = {Subtype::FullySeparable, std::nullopt, std::nullopt};
        else
            out.label = {Subtype::SimplyBiseparable, q, std::nullopt};
    } else {
        std::vector<QubitPair> entangled, separable;
        for (QubitPair p : kAllPairs) {
            const Margin m = detail::compare("N(" + to_string(p) + ")", out.measures.n_pair(p), zero_tol);
            (m.above ? entangled : separable).push_back(p);
            out.margins.push_back(m);
        }
        switch (entangled.size()) {
            case 0: out.label = {Subtype::GhzLike, std::nullopt, std::nullopt}; break;
            case 1: out.label = {Subtype::TwoOne, std::nullopt, entangled.front()}; break;
            case 2: out.label = {Subtype::TwoTwo, std::nullopt, separable.front()}; break;
            default: out.label = {Subtype::WLike, std::nullopt, std::nullopt}; break;
        }
    }
    out.ambiguous = out.ambiguous || std::any_of(out.margins.begin(), out.margins.end(),
                                                 [](const Margin& m) { return m.near_threshold(); });
    return out;
}

// ------------------------------- mixed states -------------------------------

enum class Claim {
    NotFullySeparable,
    NotSimplyBiseparable,  // with respect to `qubit`
    GhzDistillable,
    ReducedPairEntangled,  // `pair`
    Undetermined,
};

struct Certificate {
    Claim claim;
    std::optional<Qubit> qubit;
    std::optional<QubitPair> pair;
    std::string witness_name;
    double witness = 0.0;

    std::string describe() const {
        switch (claim) {
            case Claim::NotFullySeparable: return "not fully separable";
            case Claim::NotSimplyBiseparable:
                return std::string("not simply biseparable w.r.t. qubit ") + to_char(*qubit);
            case Claim::GhzDistillable: return "GHZ-distillable";
            case Claim::ReducedPairEntangled: return "reduced pair " + to_string(*pair) + " entangled";
            case Claim::Undetermined: return "undetermined: generalized biseparable or fully inseparable";
        }
        return "?";
    }

    // Compact token for CSV cells.
    std::string token() const {
        switch (claim) {
            case Claim::NotFullySeparable: return "not_fully_separable";
            case Claim::NotSimplyBiseparable: return std::string("not_simply_biseparable_") + to_char(*qubit);
            case Claim::GhzDistillable: return "ghz_distillable";
            case Claim::ReducedPairEntangled: return "pair_entangled_" + to_string(*pair);
            case Claim::Undetermined: return "undetermined";
        }
        return "?";
    }
};

struct MixedVerdict {
    std::vector<Certificate> certificates;
    MeasureSet measures;
    std::vector<Margin> margins;
    bool ambiguous = false;

    bool has(Claim c) const {
        return std::any_of(certificates.begin(), certificates.end(), [&](const Certificate& x) { return x.claim == c; });
    }
    bool has(Claim c, Qubit q) const {
        return std::any_of(certificates.begin(), certificates.end(),
                           [&](const Certificate& x) { return x.claim == c && x.qubit == q; });
    }
    bool has(Claim c, QubitPair p) const {
        return std::any_of(certificates.begin(), certificates.end(),
                           [&](const Certificate& x) { return x.claim == c && x.pair == p; });
    }

    std::string summary() const {
        std::string s;
        for (const auto& c : certificates) {
            if (!s.empty()) s += ';';
            s += c.token();
        }
        return s;
    }
};

// Only exclusions are certified. A positive negativity across I|JK rules out
// simple biseparability with I separable; any positive negativity rules out
// full separability; N_ABC > 0 is sufficient for GHZ distillability. Nothing
// here can separate generalized biseparable from fully inseparable states.
inline MixedVerdict classify_mixed(const DensityMatrix& rho, double zero_tol = kDefaultZeroTol) {
    MixedVerdict v;
    v.measures = measure_set(rho);
    const MeasureSet& m = v.measures;

    for (QubitPair p : kAllPairs) {
        const Margin mg = detail::compare("N(" + to_string(p) + ")", m.n_pair(p), zero_tol);
        v.margins.push_back(mg);
        if (mg.above) v.certificates.push_back({Claim::ReducedPairEntangled, std::nullopt, p, mg.quantity, mg.value});
    }

    std::optional<Certificate> strongest_cut;
    for (Qubit q : kAllQubits) {
        const std::string name = "N(" + Bipartition{q}.name() + ")";
        const Margin mg = detail::compare(name, m.one_vs_two(q), zero_tol);
        v.margins.push_back(mg);
        if (mg.above) {
            v.certificates.push_back({Claim::NotSimplyBiseparable, q, std::nullopt, name, mg.value});
            if (!strongest_cut || mg.value > strongest_cut->witness) {
                strongest_cut = Certificate{Claim::NotFullySeparable, std::nullopt, std::nullopt, name, mg.value};
            }
        }
    }
    if (!strongest_cut) {
        // a reduced pair that is entangled also excludes full separability
        for (const auto& c : v.certificates)
            if (c.claim == Claim::ReducedPairEntangled && (!strongest_cut || c.witness > strongest_cut->witness))
                strongest_cut = Certificate{Claim::NotFullySeparable, std::nullopt, std::nullopt, c.witness_name, c.witness};
    }
    if (strongest_cut) v.certificates.insert(v.certificates.begin(), *strongest_cut);

    const Margin tri = detail::compare("N_ABC", m.n_abc, zero_tol);
    v.margins.push_back(tri);
    if (tri.above) v.certificates.push_back({Claim::GhzDistillable, std::nullopt, std::nullopt, "N_ABC", m.n_abc});

    v.certificates.push_back({Claim::Undetermined, std::nullopt, std::nullopt, "N_ABC", m.n_abc});
    v.ambiguous = std::any_of(v.margins.begin(), v.margins.end(), [](const Margin& x) { return x.near_threshold(); });
    return v;
}

} // namespace triqubit
