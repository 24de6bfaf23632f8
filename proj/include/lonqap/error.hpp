#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lonqap {

/// Precondition of an operation was not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data. Carries the byte offset where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Request refused because it exceeds a hard resource limit (e.g. n! too large).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Modularity of a graph without edges.
class UndefinedModularity : public std::domain_error {
 public:
  UndefinedModularity() : std::domain_error("undefined modularity: graph has no edges") {}
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace lonqap
