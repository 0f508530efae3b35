#pragma once

#include <stdexcept>
#include <string>

namespace qdeco {

// Base of every error raised by the library. Each subclass names the kind of
// contract that was violated so callers (the CLI in particular) can map it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state or coefficient set that should have unit norm does not.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Layout/size mismatches and dimension bounds (including enumeration overflow).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Factor, site, link or branch index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Matrix-level invariants: Hermiticity, unit trace, positivity.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Physically meaningless input: negative volume, zero field, t <= 0, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdeco
