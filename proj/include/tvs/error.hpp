#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvs {

enum class ErrorKind {
    InvalidArgument,
    InputNotFound,
    Io,
    Parse,
    InsufficientData,
    InvalidSplit,
    WindowOutOfRange,
    LagTooLarge,
    EmptySegment,
    SimulationDiverged,
    SingularWindow,
    AllCandidatesInfeasible,
    UnstableTangent,
    SingularAveragedMatrix,
    CorollaryInapplicable,
};

/// Machine-readable kebab-case name, e.g. "input-not-found".
std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit status associated with an error kind:
/// 2 for I/O, 3 for violated preconditions, 4 for numerical failures.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace tvs
