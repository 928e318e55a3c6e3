#pragma once

#include <stdexcept>
#include <string>

namespace alfem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A fitted construction was requested for geometry the mesh does not resolve.
class GeometryMismatch : public Error {
 public:
  using Error::Error;
};

/// The level set vanishes on a whole element.
class DegenerateCut : public Error {
 public:
  using Error::Error;
};

class DegenerateElement : public Error {
 public:
  using Error::Error;
};

/// Factorization hit a zero pivot. `pivot()` is the (reduced) column index.
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, long pivot)
      : Error(what), pivot_(pivot) {}
  long pivot() const noexcept { return pivot_; }

 private:
  long pivot_;
};

}  // namespace alfem
