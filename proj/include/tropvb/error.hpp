#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tropvb {

/// Domain error with a stable machine-readable code.
/// The CLI surfaces codes verbatim in its error envelope.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace tropvb
