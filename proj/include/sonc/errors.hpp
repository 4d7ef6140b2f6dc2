// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <stdexcept>
#include <string>

namespace sonc {

/// Malformed polynomial text; `position` is the byte offset of the failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Analysis operations reject the zero polynomial with a distinct error.
class ZeroPolynomialError : public std::invalid_argument {
 public:
  ZeroPolynomialError() : std::invalid_argument("zero polynomial") {}
};

class DimensionMismatchError : public std::invalid_argument {
 public:
  explicit DimensionMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Requested point has no witness in the mediated set; scaling the trellis
/// by k >= n always provides one.
class NoMediatedWitnessError : public std::runtime_error {
 public:
  explicit NoMediatedWitnessError(const std::string& what)
      : std::runtime_error(what) {}
};

class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what)
      : std::runtime_error(what) {}
};

class DeskScaleLimitError : public std::runtime_error {
 public:
  explicit DeskScaleLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace sonc
