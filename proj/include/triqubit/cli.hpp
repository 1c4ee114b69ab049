// cli.hpp
// Subcommand implementations behind tools/triqubit. Each command writes its
// report to `out`, diagnostics to `err`, and returns the process exit status.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "triqubit/classify.hpp"
#include "triqubit/families.hpp"
#include "triqubit/gsd.hpp"
#include "triqubit/io.hpp"
#include "triqubit/measures.hpp"

namespace triqubit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalidState = 2,
    kExitAmbiguous = 3,
};

struct ClassifyOptions {
    std::string path;
    double tol = kDefaultZeroTol;
    bool json = false;
};

struct MeasureOptions {
    std::string path;
    bool json = false;
};

struct GsdOptions {
    std::string path;
    PhaseMode mode = PhaseMode::Raw;
    double tol = kDefaultZeroTol;
    bool json = false;
};

struct SweepOptions {
    std::string family;
    std::size_t points = kDefaultGridPoints;
    std::string out;  // empty: stdout
    double tol = kDefaultZeroTol;
};

struct RandomOptions {
    std::size_t count = 1;
    std::uint64_t seed = 0;
    std::string out;  // empty: stdout
    double tol = kDefaultZeroTol;
};

namespace detail {

inline std::string num(double v) { return csv_number(v); }

inline json measures_json(const MeasureSet& m) {
    json j;
    j["n_a_bc"] = m.n_a_bc;
    j["n_b_ac"] = m.n_b_ac;
    j["n_c_ab"] = m.n_c_ab;
    j["n_abc"] = m.n_abc;
    for (QubitPair p : kAllPairs) {
        j["pair_negativity"][to_string(p)] = m.n_pair(p);
        j["pair_concurrence"][to_string(p)] = m.c_pair(p);
    }
    for (Qubit q : kAllQubits) j["entropy"][std::string(1, to_char(q))] = m.entropy[static_cast<std::size_t>(q)];
    if (m.q_mult) j["q_mult"] = *m.q_mult;
    if (m.eta_mult) j["eta_mult"] = *m.eta_mult;
    if (m.three_tangle) j["three_tangle"] = *m.three_tangle;
    return j;
}

inline void print_measures(std::ostream& out, const MeasureSet& m) {
    out << "N_A-BC = " << num(m.n_a_bc) << '\n'
        << "N_B-AC = " << num(m.n_b_ac) << '\n'
        << "N_C-AB = " << num(m.n_c_ab) << '\n'
        << "N_ABC = " << num(m.n_abc) << '\n';
    if (m.q_mult) out << "Q = " << num(*m.q_mult) << '\n';
    if (m.eta_mult) out << "eta3 = " << num(*m.eta_mult) << '\n';
    if (m.three_tangle) out << "3-tangle = " << num(*m.three_tangle) << '\n';
    for (QubitPair p : kAllPairs)
        out << "N(" << to_string(p) << ") = " << num(m.n_pair(p)) << "  C(" << to_string(p)
            << ") = " << num(m.c_pair(p)) << '\n';
    for (Qubit q : kAllQubits) out << "S(" << to_char(q) << ") = " << num(m.entropy[static_cast<std::size_t>(q)]) << '\n';
}

inline json margins_json(const std::vector<Margin>& margins) {
    json a = json::array();
    for (const Margin& m : margins)
        a.push_back({{"quantity", m.quantity}, {"value", m.value}, {"threshold", m.threshold}, {"above", m.above}});
    return a;
}

inline void print_margins(std::ostream& out, const std::vector<Margin>& margins) {
    out << "margins:\n";
    for (const Margin& m : margins)
        out << "  " << m.quantity << " = " << num(m.value) << (m.above ? " > " : " <= ") << num(m.threshold)
            << (m.near_threshold() ? "  (near threshold)" : "") << '\n';
}

inline json label_json(const SubtypeLabel& l) {
    json j{{"code", l.code()}, {"description", l.describe()}};
    if (l.separable_qubit) j["separable_qubit"] = std::string(1, to_char(*l.separable_qubit));
    if (l.pair) j["pair"] = to_string(*l.pair);
    return j;
}

inline json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string complex_text(complex z) {
    std::string s = num(z.real());
    s += z.imag() < 0.0 ? " - " : " + ";
    s += num(std::abs(z.imag())) + "i";
    return s;
}

// Loads a state file, mapping every parse or validation failure to exit 2.
inline std::optional<AnyState> load(const std::string& path, std::ostream& err) {
    try {
        return read_state_file(path);
    } catch (const Error& e) {
        err << "invalid state file: " << e.what() << '\n';
        return std::nullopt;
    }
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitFailure;
}

// Opens `path` for writing, or uses `fallback` when path is empty.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }
    void finish(const std::string& path) {
        stream_->flush();
        if (!*stream_) throw Error(ErrorCode::Io, "write to '" + (path.empty() ? std::string("stdout") : path) + "' failed");
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

} // namespace detail

inline int cmd_classify(const ClassifyOptions& opt, std::ostream& out, std::ostream& err) {
    const auto state = detail::load(opt.path, err);
    if (!state) return kExitInvalidState;
    return detail::guarded(err, [&] {
        bool ambiguous = false;
        if (const auto* psi = std::get_if<PureState>(&*state)) {
            const PureClassification c = classify_pure(*psi, opt.tol);
            ambiguous = c.ambiguous;
            if (opt.json) {
                json j{{"kind", "pure"},
                       {"label", detail::label_json(c.label)},
                       {"ambiguous", c.ambiguous},
                       {"tolerance", opt.tol},
                       {"measures", detail::measures_json(c.measures)},
                       {"margins", detail::margins_json(c.margins)}};
                out << j.dump(2) << '\n';
            } else {
                out << "kind: pure\n"
                    << "subtype: " << c.label.describe() << '\n'
                    << "ambiguous: " << (c.ambiguous ? "yes" : "no") << '\n';
                detail::print_measures(out, c.measures);
                detail::print_margins(out, c.margins);
            }
        } else {
            const MixedVerdict v = classify_mixed(std::get<DensityMatrix>(*state), opt.tol);
            ambiguous = v.ambiguous;
            if (opt.json) {
                json certs = json::array();
                for (const Certificate& c : v.certificates)
                    certs.push_back({{"claim", c.token()}, {"description", c.describe()},
                                     {"witness", c.witness_name}, {"value", c.witness}});
                json j{{"kind", "mixed"},
                       {"certificates", certs},
                       {"ambiguous", v.ambiguous},
                       {"tolerance", opt.tol},
                       {"measures", detail::measures_json(v.measures)},
                       {"margins", detail::margins_json(v.margins)}};
                out << j.dump(2) << '\n';
            } else {
                out << "kind: mixed\nverdict:\n";
                for (const Certificate& c : v.certificates)
                    out << "  " << c.describe() << "  [" << c.witness_name << " = " << detail::num(c.witness) << "]\n";
                out << "ambiguous: " << (v.ambiguous ? "yes" : "no") << '\n';
                detail::print_measures(out, v.measures);
                detail::print_margins(out, v.margins);
            }
        }
        return ambiguous ? kExitAmbiguous : kExitOk;
    });
}

inline int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream& err) {
    const auto state = detail::load(opt.path, err);
    if (!state) return kExitInvalidState;
    return detail::guarded(err, [&] {
        const MeasureSet m = std::visit([](const auto& s) { return measure_set(s); }, *state);
        if (opt.json)
            out << detail::measures_json(m).dump(2) << '\n';
        else
            detail::print_measures(out, m);
        return kExitOk;
    });
}

inline int cmd_gsd(const GsdOptions& opt, std::ostream& out, std::ostream& err) {
    const auto state = detail::load(opt.path, err);
    if (!state) return kExitInvalidState;
    return detail::guarded(err, [&] {
        const auto* psi = std::get_if<PureState>(&*state);
        if (!psi) throw Error(ErrorCode::MixedStateUnsupported, "the GSD is defined for pure states only");
        const GsdForm form = gsd(*psi, opt.mode);
        const PatternMatch match = classify_gsd_pattern(form, opt.tol);
        const std::array<std::pair<const char*, complex>, 5> coeffs{
            {{"alpha", form.alpha}, {"beta", form.beta}, {"delta", form.delta}, {"epsilon", form.epsilon},
             {"omega", form.omega}}};
        if (opt.json) {
            json c;
            for (const auto& [name, z] : coeffs) c[name] = json::array({z.real(), z.imag()});
            json j{{"mode", opt.mode == PhaseMode::Raw ? "raw" : "normal"},
                   {"coefficients", c},
                   {"pattern", to_string(match.pattern)},
                   {"subtype", detail::label_json(match.subtype)},
                   {"ambiguous", match.ambiguous},
                   {"residual", form.residual},
                   {"u_a", detail::matrix_json(form.u_a)},
                   {"u_b", detail::matrix_json(form.u_b)},
                   {"u_c", detail::matrix_json(form.u_c)}};
            out << j.dump(2) << '\n';
        } else {
            out << "mode: " << (opt.mode == PhaseMode::Raw ? "raw" : "normal") << '\n';
            for (const auto& [name, z] : coeffs)
                out << name << " = " << detail::complex_text(z) << "  |" << name << "| = " << detail::num(std::abs(z))
                    << '\n';
            out << "pattern: " << to_string(match.pattern) << '\n'
                << "subtype: " << match.subtype.describe() << '\n'
                << "ambiguous: " << (match.ambiguous ? "yes" : "no") << '\n'
                << "residual: " << detail::num(form.residual) << '\n';
            for (const auto& [name, u] : {std::pair{"U_A", form.u_a}, std::pair{"U_B", form.u_b}, std::pair{"U_C", form.u_c}}) {
                out << name << ":\n";
                for (std::size_t r = 0; r < 2; ++r)
                    out << "  [" << detail::complex_text(u(r, 0)) << ", " << detail::complex_text(u(r, 1)) << "]\n";
            }
        }
        return match.ambiguous ? kExitAmbiguous : kExitOk;
    });
}

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const FamilyId f = parse_family(opt.family);
        const std::vector<SweepRow> rows = sweep(f, default_grid(f, opt.points), opt.tol);
        detail::OutputTarget target(opt.out, out);
        write_sweep_csv(target.stream(), rows);
        target.finish(opt.out);
        return kExitOk;
    });
}

inline std::string random_csv_header() {
    return "index,label,ambiguous,n_a_bc,n_b_ac,n_c_ab,n_abc,q_mult,eta_mult,n_bc,n_ac,n_ab,three_tangle";
}

// Haar-random pure states from a seeded generator, classified in parallel;
// rows come out in generation order so the output depends only on the seed.
inline int cmd_random(const RandomOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (opt.count == 0) throw Error(ErrorCode::ParamOutOfDomain, "--count must be at least 1");
        std::mt19937_64 rng(opt.seed);
        std::vector<PureState> states;
        states.reserve(opt.count);
        for (std::size_t i = 0; i < opt.count; ++i) states.push_back(sample_haar_pure(rng));

        std::vector<std::optional<PureClassification>> results(opt.count);
        triqubit::detail::parallel_for(opt.count, [&](std::size_t i) { results[i] = classify_pure(states[i], opt.tol); });

        std::map<std::string, std::size_t> histogram;
        std::size_t ambiguous = 0;
        detail::OutputTarget target(opt.out, out);
        std::ostream& csv = target.stream();
        csv << random_csv_header() << '\n';
        for (std::size_t i = 0; i < opt.count; ++i) {
            const PureClassification& c = *results[i];
            const MeasureSet& m = c.measures;
            ++histogram[c.label.code()];
            ambiguous += c.ambiguous ? 1 : 0;
            csv << i << ',' << label_token(c.label) << ',' << (c.ambiguous ? 1 : 0);
            for (const auto& v : values_of(m)) csv << ',' << csv_cell(v);
            csv << ',' << csv_cell(m.three_tangle) << '\n';
        }
        target.finish(opt.out);

        // with the CSV on stdout the histogram is appended as comment lines
        const char* prefix = opt.out.empty() ? "# " : "";
        out << prefix << "subtype histogram (" << opt.count << " states, seed " << opt.seed << ")\n";
        for (const auto& [code, n] : histogram) out << prefix << code << ": " << n << '\n';
        out << prefix << "ambiguous: " << ambiguous << '\n';
        return kExitOk;
    });
}

} // namespace triqubit::cli
