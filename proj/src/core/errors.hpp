#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chronosynth {

// Base for every error raised by the core. The C API maps each subclass to a
// status code; nothing else should escape the library boundary.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (unknown letter, negative time,
// malformed alphabet, missing sample point, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

// A configurable cap was exceeded. `progress` records how far the computation
// got (signature count, strategy count, ...).
class ResourceError : public Error {
public:
  ResourceError(const std::string& what, std::size_t progress)
      : Error(what), progress_(progress) {}
  std::size_t progress() const noexcept { return progress_; }

private:
  std::size_t progress_;
};

class IllegalMoveError : public Error {
public:
  using Error::Error;
};

class UndecidedError : public Error {
public:
  using Error::Error;
};

} // namespace chronosynth
