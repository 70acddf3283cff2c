#pragma once

#include <stdexcept>
#include <string>

namespace satotate {

// Bad input: invalid family, out-of-range index, precondition violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested enumeration is larger than the configured bound.
class BoundExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// Failures that are not the caller's fault.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheCorruption : public InternalError {
 public:
  CacheCorruption(const std::string& path, std::size_t offset, const std::string& what)
      : InternalError(path + ": malformed cache line at byte offset " + std::to_string(offset) +
                      ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// LaurentPoly growth guard.
class ResourceLimit : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace satotate
