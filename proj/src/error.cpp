#include "blip/error.hpp"

namespace blip {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::fixture: return "fixture error";
    case ErrorKind::undefined_centroid: return "undefined centroid";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::divergence: return "divergence error";
    case ErrorKind::support_guard: return "support-guard error";
    case ErrorKind::not_asymptotic: return "not-asymptotic error";
    case ErrorKind::interpolation_accuracy: return "interpolation-accuracy error";
    case ErrorKind::domain_exit: return "domain-exit error";
    case ErrorKind::undefined_conditional: return "undefined conditional";
    case ErrorKind::consistency: return "consistency error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace blip
