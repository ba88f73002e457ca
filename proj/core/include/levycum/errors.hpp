#pragma once

#include <stdexcept>
#include <string>

namespace levycum {

/// Thrown when a requested total order exceeds the configured cap.
/// Enumeration and evaluation refuse to truncate silently.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace levycum
