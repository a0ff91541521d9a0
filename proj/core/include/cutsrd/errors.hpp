#pragma once

#include <stdexcept>
#include <string>

namespace cutsrd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The geometry crosses a cell edge more than once; the mesh must be refined.
class MultipleCrossings : public Error {
 public:
  MultipleCrossings(int i, int j, const std::string& what)
      : Error(what), i(i), j(j) {}
  int i;
  int j;
};

/// Least-squares system too badly conditioned; the caller should enlarge the stencil.
class IllConditioned : public Error {
 public:
  explicit IllConditioned(const std::string& what, int cell = -1)
      : Error(what), cell(cell) {}
  int cell;
};

/// Density or pressure non-positive where a physical state is required.
class NonPhysicalState : public Error {
 public:
  explicit NonPhysicalState(const std::string& what, int cell = -1)
      : Error(what), cell(cell) {}
  int cell;
};

class NeighborhoodTooSmall : public Error {
 public:
  NeighborhoodTooSmall(const std::string& what, int cell)
      : Error(what), cell(cell) {}
  int cell;
};

class StencilExhausted : public Error {
 public:
  StencilExhausted(const std::string& what, int cell)
      : Error(what), cell(cell) {}
  int cell;
};

class UnknownBC : public Error {
 public:
  using Error::Error;
};

class OriginSingular : public Error {
 public:
  using Error::Error;
};

class DivideByZero : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what) : Error(what), line(line) {}
  int line;
};

/// Configuration value out of range, missing, or unknown.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& what)
      : Error(what), key(std::move(key)) {}
  std::string key;
};

}  // namespace cutsrd
