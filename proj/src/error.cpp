#include "tvs/error.hpp"

namespace tvs {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InputNotFound: return "input-not-found";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::InvalidSplit: return "invalid-split";
    case ErrorKind::WindowOutOfRange: return "window-out-of-range";
    case ErrorKind::LagTooLarge: return "k-too-large";
    case ErrorKind::EmptySegment: return "empty-segment";
    case ErrorKind::SimulationDiverged: return "simulation-diverged";
    case ErrorKind::SingularWindow: return "singular-window";
    case ErrorKind::AllCandidatesInfeasible: return "all-candidates-infeasible";
    case ErrorKind::UnstableTangent: return "unstable-tangent";
    case ErrorKind::SingularAveragedMatrix: return "singular-averaged-matrix";
    case ErrorKind::CorollaryInapplicable: return "corollary-inapplicable";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InputNotFound:
    case ErrorKind::Io:
    case ErrorKind::Parse:
        return 2;
    case ErrorKind::InvalidArgument:
    case ErrorKind::InsufficientData:
    case ErrorKind::InvalidSplit:
    case ErrorKind::WindowOutOfRange:
    case ErrorKind::LagTooLarge:
    case ErrorKind::EmptySegment:
        return 3;
    default:
        return 4;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind)
{
}

} // namespace tvs
