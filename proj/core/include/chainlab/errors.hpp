#pragma once

#include <stdexcept>
#include <string>

namespace chainlab {

/// Invalid or unsatisfiable experiment configuration (bad file, bad value,
/// violated stability gate).  `line` is 0 when the error is not tied to a
/// config-file line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : std::move(message)),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace chainlab
