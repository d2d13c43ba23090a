#pragma once

#include <stdexcept>
#include <string>

namespace advsim {

// Thrown when a documented invariant of an algorithm or data structure is
// violated at runtime. The message names the invariant; the CLI maps this
// to exit code 1.
class invariant_error : public std::runtime_error {
 public:
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& invariant) {
  if (!condition) throw invariant_error(invariant);
}

}  // namespace advsim
