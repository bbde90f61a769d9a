#pragma once

#include <stdexcept>
#include <string>

namespace msaft {

// Bad or missing input data (files, boxes, rasters). CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration (unknown mode, unparseable value). CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace msaft
