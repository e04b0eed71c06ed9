#pragma once

#include <stdexcept>
#include <string>

namespace ipsforge {

enum class ErrorCode {
  zero_inverse,
  level_mismatch,
  degenerate_tower,
  invalid_field,
  arity_mismatch,
  zero_polynomial,
  out_of_range,
  field_too_small,
  not_symmetric,
  beta_in_subfield,
  not_linear,
  satisfiable_instance,
  satisfiable_system,
  no_certificate_at_degree,
  zero_denominator,
  budget_exceeded,
  parse_error,
  field_mismatch,
  usage,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::zero_inverse: return "zero_inverse";
    case ErrorCode::level_mismatch: return "level_mismatch";
    case ErrorCode::degenerate_tower: return "degenerate_tower";
    case ErrorCode::invalid_field: return "invalid_field";
    case ErrorCode::arity_mismatch: return "arity_mismatch";
    case ErrorCode::zero_polynomial: return "zero_polynomial";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::field_too_small: return "field_too_small";
    case ErrorCode::not_symmetric: return "not_symmetric";
    case ErrorCode::beta_in_subfield: return "beta_in_subfield";
    case ErrorCode::not_linear: return "not_linear";
    case ErrorCode::satisfiable_instance: return "satisfiable_instance";
    case ErrorCode::satisfiable_system: return "satisfiable_system";
    case ErrorCode::no_certificate_at_degree: return "no_certificate_at_degree";
    case ErrorCode::zero_denominator: return "zero_denominator";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::field_mismatch: return "field_mismatch";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ipsforge
