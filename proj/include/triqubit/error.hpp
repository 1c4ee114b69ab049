#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace triqubit {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    NoConvergence,
    NotPSD,
    NotNormalized,
    NotUnitary,
    QubitNotPresent,
    WrongDimension,
    MixedStateUnsupported,
    NumericalDegeneracy,
    ParamOutOfDomain,
    NoOracle,
    UnknownFamily,
    InvalidStateFile,
    Io,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::QubitNotPresent: return "QubitNotPresent";
        case ErrorCode::WrongDimension: return "WrongDimension";
        case ErrorCode::MixedStateUnsupported: return "MixedStateUnsupported";
        case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorCode::ParamOutOfDomain: return "ParamOutOfDomain";
        case ErrorCode::NoOracle: return "NoOracle";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
        case ErrorCode::InvalidStateFile: return "InvalidStateFile";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

// Short %g rendering for diagnostics.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Every failure in the library surfaces as this type; code() is stable,
// what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace triqubit
