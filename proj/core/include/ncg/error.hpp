#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

enum class errc {
  division_by_zero,
  pole_at_evaluation_point,
  syntax_error,
  grade_mismatch,
  star_inconsistent,
  unknown_generator,
  non_terminating,
  not_right_linear,
  not_invertible,
  singular_metric,
  integral_undefined,
  unresolved_parameters,
  parameter_not_representable,
  constraint_violated,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ncg
