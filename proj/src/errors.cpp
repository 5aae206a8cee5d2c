#include "smf/errors.hpp"

#include <utility>

namespace smf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::GeneratorMismatch: return "generator_mismatch";
        case ErrorKind::NotInvertible: return "not_invertible";
        case ErrorKind::MixedParity: return "mixed_parity";
        case ErrorKind::LayoutMismatch: return "layout_mismatch";
        case ErrorKind::NotSquare: return "not_square";
        case ErrorKind::ParityViolation: return "parity_violation";
        case ErrorKind::SingularOddBlock: return "singular_odd_block";
        case ErrorKind::BodyRankDeficient: return "body_rank_deficient";
        case ErrorKind::WrongWeight: return "wrong_weight";
        case ErrorKind::NonInvertibleLeading: return "non_invertible_leading";
        case ErrorKind::TruncationExceeded: return "truncation_exceeded";
        case ErrorKind::NotSuperconformal: return "not_superconformal";
        case ErrorKind::NotRamondSuperconformal: return "not_ramond_superconformal";
        case ErrorKind::PreconditionViolated: return "precondition_violated";
        case ErrorKind::DimensionMismatch: return "dimension_mismatch";
        case ErrorKind::NonInvertibleNormalization: return "non_invertible_normalization";
        case ErrorKind::MalformedInput: return "malformed_input";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, std::string location, const std::string& message)
    : std::runtime_error(message), kind_(kind), location_(std::move(location)) {}

void fail(ErrorKind kind, const std::string& location, const std::string& message) {
    throw Error(kind, location, message);
}

}  // namespace smf
