#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blip {

enum class ErrorKind {
  configuration,
  fixture,
  undefined_centroid,
  domain,
  divergence,
  support_guard,
  not_asymptotic,
  interpolation_accuracy,
  domain_exit,
  undefined_conditional,
  consistency,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace blip
