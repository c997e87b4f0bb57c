#include "sherman/errors.hpp"

#include <cstdio>

namespace sherman {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty_points: return "EmptyPoints";
    case Errc::missing_derivative: return "MissingDerivative";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_stochastic: return "NotStochastic";
    case Errc::not_majorized: return "NotMajorized";
    case Errc::weights_not_normalized: return "WeightsNotNormalized";
    case Errc::point_out_of_interval: return "PointOutOfInterval";
    case Errc::degenerate_interval: return "DegenerateInterval";
    case Errc::majorization_not_verified: return "MajorizationNotVerified";
    case Errc::out_of_interval: return "OutOfInterval";
    case Errc::kernel_condition_indefinite: return "KernelConditionIndefinite";
    case Errc::ratio_out_of_domain: return "RatioOutOfDomain";
    case Errc::modulus_not_certified: return "ModulusNotCertified";
    case Errc::not_a_probability_vector: return "NotAProbabilityVector";
    case Errc::zero_aggregate_weight: return "ZeroAggregateWeight";
  }
  return "Unknown";
}

DomainError::DomainError(Errc code, const std::string& detail)
    : Error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {
std::string quadrature_message(double err, int subdivisions) {
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "QuadratureFailure: error estimate %.3e after %d subdivisions",
                err, subdivisions);
  return buf;
}
}  // namespace

QuadratureFailure::QuadratureFailure(double estimated_error, int subdivisions)
    : Error(quadrature_message(estimated_error, subdivisions)),
      estimated_error_(estimated_error),
      subdivisions_(subdivisions) {}

}  // namespace sherman
