// Error taxonomy shared by the library and the CLI.
//
// Each class maps to one CLI exit code (see tools/main.cpp):
//   ParseError       -> 2   malformed input file
//   DimensionError   -> 3   operands with incompatible dimensions
//   ValidationError  -> 4   structurally valid input violating a contract
//                           (non-orthogonal set, bad measurement, ...)
//   ParamDomainError -> 5   parameters outside the admissible domain
//                           (vanishing UPB angles, non-positive tolerance)

#pragma once

#include <stdexcept>
#include <string>

namespace locc {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ParamDomainError : public std::runtime_error {
 public:
  explicit ParamDomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace locc
