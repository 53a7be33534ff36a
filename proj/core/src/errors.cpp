#include "conlift/errors.hpp"

namespace conlift {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::NonFiniteInput: return "NonFiniteInput";
        case ErrorKind::SingularityDetected: return "SingularityDetected";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::StepRejected: return "StepRejected";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace conlift
