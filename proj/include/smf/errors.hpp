#pragma once

#include <stdexcept>
#include <string>

namespace smf {

// Every failure the library can report, in one flat enum so the CLI can map
// them to machine-readable error_kind strings.
enum class ErrorKind {
    GeneratorMismatch,
    NotInvertible,
    MixedParity,
    LayoutMismatch,
    NotSquare,
    ParityViolation,
    SingularOddBlock,
    BodyRankDeficient,
    WrongWeight,
    NonInvertibleLeading,
    TruncationExceeded,
    NotSuperconformal,
    NotRamondSuperconformal,
    PreconditionViolated,
    DimensionMismatch,
    NonInvertibleNormalization,
    MalformedInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string location, const std::string& message);

    ErrorKind kind() const { return kind_; }

    // Where the failure happened, e.g. "q_1", "M_0", "berezinian".
    const std::string& location() const { return location_; }

private:
    ErrorKind kind_;
    std::string location_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& location,
                       const std::string& message);

}  // namespace smf
