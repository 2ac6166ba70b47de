#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace horo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed family parameters (empty cycle lists, degrees below 2, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Textual or JSON input that does not follow the documented grammar.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An address that is not canonical under the governing TreeSpec.
class AddressError : public Error {
 public:
  using Error::Error;
};

/// A decision procedure was asked about a spec given only as a degree callback.
class UndecidableError : public Error {
 public:
  using Error::Error;
};

/// Sequence family whose generated terms are not valid vertices.
class FamilyError : public Error {
 public:
  using Error::Error;
};

class HeightMismatch : public Error {
 public:
  HeightMismatch(std::int64_t h1, std::int64_t h2)
      : Error("height mismatch: h1=" + std::to_string(h1) + " h2=" + std::to_string(h2)),
        h1_(h1),
        h2_(h2) {}

  std::int64_t h1() const noexcept { return h1_; }
  std::int64_t h2() const noexcept { return h2_; }

 private:
  std::int64_t h1_;
  std::int64_t h2_;
};

}  // namespace horo
