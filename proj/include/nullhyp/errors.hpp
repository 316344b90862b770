/**
 * @file errors.hpp
 * @brief Typed error hierarchy shared by the whole library.
 *
 * Every precondition failure raises an Error with a machine-readable code so
 * the CLI can map library failures onto its exit-code contract
 * (0 = pass, 1 = computation/check failure, 2 = usage or schema error).
 */
#pragma once

#include <stdexcept>
#include <string>

namespace nullhyp {

enum class ErrorCode {
  kSchema,          ///< malformed input file / JSON that violates a schema
  kPrecondition,    ///< argument outside an operation's documented domain
  kNonConvergence,  ///< iterative solver exhausted its iteration budget
  kDiverged,        ///< iterative solver detected divergence (unstable input)
  kDegenerate,      ///< degenerate configuration (e.g. coincident chart pivots)
  kDomain           ///< evaluation point outside the function's domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace nullhyp
