#pragma once

#include <stdexcept>
#include <string>

namespace elda {

// Bad static configuration (sketch shapes, scenario files, topology specs).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a threshold is requested before enough epochs were observed.
class InsufficientHistory : public std::runtime_error {
 public:
  explicit InsufficientHistory(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace elda
