// io.hpp
// JSON state files and CSV emission.
//
// State file layout:
//   {"kind": "pure",  "amplitudes": [[re, im], ... 8 entries, index 4i+2j+k]}
//   {"kind": "mixed", "matrix": [[[re, im], ... 8], ... 8 rows]}
// Doubles are written in shortest round-trip form, so write/read is bit-exact.

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "triqubit/error.hpp"
#include "triqubit/families.hpp"
#include "triqubit/states.hpp"

namespace triqubit {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad_file(const std::string& what) { throw Error(ErrorCode::InvalidStateFile, what); }

inline complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad_file(where + ": expected [real, imaginary]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_to_json(complex z) { return json::array({z.real(), z.imag()}); }

} // namespace detail

inline AnyState state_from_json(const json& j) {
    if (!j.is_object()) detail::bad_file("state file must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) detail::bad_file("missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "pure") {
        if (!j.contains("amplitudes")) detail::bad_file("missing field 'amplitudes'");
        const json& a = j["amplitudes"];
        if (!a.is_array() || a.size() != 8) detail::bad_file("'amplitudes' must hold 8 [real, imaginary] pairs");
        PureState::Amplitudes amps{};
        for (std::size_t i = 0; i < 8; ++i) amps[i] = detail::parse_complex(a[i], "amplitudes[" + std::to_string(i) + "]");
        return PureState(amps);
    }
    if (kind == "mixed") {
        if (!j.contains("matrix")) detail::bad_file("missing field 'matrix'");
        const json& m = j["matrix"];
        if (!m.is_array() || m.size() != 8) detail::bad_file("'matrix' must have 8 rows");
        ComplexMatrix rho(8, 8);
        for (std::size_t r = 0; r < 8; ++r) {
            if (!m[r].is_array() || m[r].size() != 8)
                detail::bad_file("matrix row " + std::to_string(r) + " must have 8 entries");
            for (std::size_t c = 0; c < 8; ++c)
                rho(r, c) = detail::parse_complex(m[r][c], "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
        return DensityMatrix(rho, {Qubit::A, Qubit::B, Qubit::C});
    }
    detail::bad_file("unknown kind '" + kind + "', expected \"pure\" or \"mixed\"");
}

inline json state_to_json(const AnyState& state) {
    json j;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        j["kind"] = "pure";
        json a = json::array();
        for (complex z : psi->amplitudes()) a.push_back(detail::complex_to_json(z));
        j["amplitudes"] = std::move(a);
    } else {
        const DensityMatrix& rho = std::get<DensityMatrix>(state);
        if (rho.num_qubits() != 3) throw Error(ErrorCode::WrongDimension, "state files hold three-qubit states");
        j["kind"] = "mixed";
        json m = json::array();
        for (std::size_t r = 0; r < 8; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < 8; ++c) row.push_back(detail::complex_to_json(rho.matrix()(r, c)));
            m.push_back(std::move(row));
        }
        j["matrix"] = std::move(m);
    }
    return j;
}

inline AnyState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidStateFile, "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidStateFile, "'" + path + "' is not valid JSON: " + e.what());
    }
    return state_from_json(j);
}

inline void write_state_file(const std::string& path, const AnyState& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << state_to_json(state).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

// --------------------------------- CSV --------------------------------------

// 12 significant digits.
inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_cell(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

inline constexpr std::size_t kMaxFamilyParams = 3;

inline std::string sweep_csv_header() {
    std::string h = "family,param1,param2,param3";
    for (Quantity q : kAllQuantities) h += "," + std::string(column_name(q));
    h += ",label";
    for (Quantity q : kAllQuantities) h += ",oracle_" + std::string(column_name(q));
    for (Quantity q : kAllQuantities) h += ",dev_" + std::string(column_name(q));
    return h;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << sweep_csv_header() << '\n';
    for (const SweepRow& row : rows) {
        out << to_string(row.family);
        for (std::size_t i = 0; i < kMaxFamilyParams; ++i)
            out << ',' << (i < row.params.size() ? csv_number(row.params[i]) : std::string());
        for (const auto& v : row.computed) out << ',' << csv_cell(v);
        out << ',' << row.label << (row.ambiguous ? ";ambiguous" : "");
        for (const auto& v : row.oracle) out << ',' << csv_cell(v);
        for (const auto& v : row.deviation) out << ',' << csv_cell(v);
        out << '\n';
    }
}

} // namespace triqubit
