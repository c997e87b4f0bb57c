#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sherman {

/// Reason codes carried by DomainError.
enum class Errc {
  empty_points,
  missing_derivative,
  invalid_argument,
  length_mismatch,
  dimension_mismatch,
  not_stochastic,
  not_majorized,
  weights_not_normalized,
  point_out_of_interval,
  degenerate_interval,
  majorization_not_verified,
  out_of_interval,
  kernel_condition_indefinite,
  ratio_out_of_domain,
  modulus_not_certified,
  not_a_probability_vector,
  zero_aggregate_weight,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of a mathematical operation was violated by its inputs.
class DomainError : public Error {
 public:
  DomainError(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(double estimated_error, int subdivisions);

  double estimated_error() const noexcept { return estimated_error_; }
  int subdivisions() const noexcept { return subdivisions_; }

 private:
  double estimated_error_;
  int subdivisions_;
};

}  // namespace sherman
