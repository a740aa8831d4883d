#pragma once

#include <stdexcept>
#include <string>

namespace wpfp {

// Invalid grids, parameters, config files, shape mismatches.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values, overflow, divergence detected mid-computation.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace wpfp
