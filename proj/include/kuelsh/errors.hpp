#pragma once

#include <stdexcept>
#include <string>

namespace kuelsh {

enum class Errc {
  DivisionByZero,
  FieldMismatch,
  DegreeBound,
  BadElementSyntax,
  AmbientMismatch,
  SpecMismatch,
  NonAdmissible,
  SaturationFailure,
  FormAsymmetric,
  Degenerate,
  NoConsistentScaling,
  NotAnIdeal,
  InvalidParams,
  Uncovered,
  BadInput,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace kuelsh
