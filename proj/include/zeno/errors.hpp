#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// A numerical method could not deliver the requested accuracy (Krylov
/// non-convergence, degenerate perturbation theory, ...). Maps to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace zeno
