#pragma once

#include <stdexcept>
#include <string>

namespace schubert {

enum class ErrorKind {
    length_mismatch,
    dimension_mismatch,
    invalid_argument,
    zero_vector,
    singular_input,
    not_in_fiber,
    not_unitary,
    not_symmetric,
    not_skew_symmetric,
    odd_dimension,
    convergence_failure,
    precondition_violated,
    not_in_model,
    real_axis_extraction_failure,
    structure_violation,
    invalid_symbol,
    unsupported_coefficients,
    unsupported_class,
    not_disjoint,
    ring_mismatch,
    parse_error,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::length_mismatch: return "LengthMismatch";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::invalid_argument: return "InvalidArgument";
        case ErrorKind::zero_vector: return "ZeroVector";
        case ErrorKind::singular_input: return "SingularInput";
        case ErrorKind::not_in_fiber: return "NotInFiber";
        case ErrorKind::not_unitary: return "NotUnitary";
        case ErrorKind::not_symmetric: return "NotSymmetric";
        case ErrorKind::not_skew_symmetric: return "NotSkewSymmetric";
        case ErrorKind::odd_dimension: return "OddDimension";
        case ErrorKind::convergence_failure: return "ConvergenceFailure";
        case ErrorKind::precondition_violated: return "PreconditionViolated";
        case ErrorKind::not_in_model: return "NotInModel";
        case ErrorKind::real_axis_extraction_failure: return "RealAxisExtractionFailure";
        case ErrorKind::structure_violation: return "StructureViolation";
        case ErrorKind::invalid_symbol: return "InvalidSymbol";
        case ErrorKind::unsupported_coefficients: return "UnsupportedCoefficients";
        case ErrorKind::unsupported_class: return "UnsupportedClass";
        case ErrorKind::not_disjoint: return "NotDisjoint";
        case ErrorKind::ring_mismatch: return "RingMismatch";
        case ErrorKind::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace schubert
