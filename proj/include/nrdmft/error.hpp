#pragma once

#include <stdexcept>
#include <string>

namespace nrdmft {

// Every failure carries a "module.Diagnostic" name so that the CLI can
// report which precondition or numerical guard tripped.
class Error : public std::runtime_error {
 public:
  enum class Kind { Input, Numerical };

  Error(std::string diagnostic, const std::string& message, Kind kind = Kind::Input)
      : std::runtime_error(diagnostic + ": " + message),
        diagnostic_(std::move(diagnostic)),
        kind_(kind) {}

  const std::string& diagnostic() const noexcept { return diagnostic_; }
  Kind kind() const noexcept { return kind_; }

 private:
  std::string diagnostic_;
  Kind kind_;
};

inline Error input_error(std::string diagnostic, const std::string& message) {
  return Error(std::move(diagnostic), message, Error::Kind::Input);
}

inline Error numerical_error(std::string diagnostic, const std::string& message) {
  return Error(std::move(diagnostic), message, Error::Kind::Numerical);
}

}  // namespace nrdmft
