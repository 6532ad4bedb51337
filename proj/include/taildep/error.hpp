#pragma once

#include <stdexcept>
#include <string>

namespace taildep {

enum class ErrorKind {
  Domain,      // argument outside the mathematical domain
  Parameter,   // invalid family / measure parameter
  Data,        // malformed or inconsistent input data
  Config,      // inconsistent estimator / pipeline configuration
  Validation,  // a grid failed TDF validation
  Infeasible,  // empty constraint polytope
  Alignment,   // cross-sectional date mismatch
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace taildep
