#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace annulus {

// Guard violations (aliasing guards, undersampled quadratures, ...) carry the
// guard's name so the CLI can exit with code 3 and report which check fired.
class guard_error : public std::runtime_error {
public:
  guard_error(std::string guard, const std::string& what)
      : std::runtime_error(guard + ": " + what), guard_(std::move(guard)) {}
  const std::string& guard_name() const { return guard_; }

private:
  std::string guard_;
};

// Invalid user-facing configuration (bad parameters, malformed config files).
// The CLI maps these to exit code 2.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace annulus
