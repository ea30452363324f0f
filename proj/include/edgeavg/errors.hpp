#pragma once

#include <stdexcept>
#include <string>

namespace edgeavg {

// Configuration problems: bad keys, bad values, violated invariants.
// The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime failures: unwritable outputs, internal invariant breaches.
// The CLI maps these to exit code 2.
struct SimulationError : std::runtime_error {
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace edgeavg
