#pragma once

#include <functional>
#include <span>

namespace sherman {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;

  /// Throws DomainError(invalid_argument) unless tolerances are > 0 and
  /// max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over
/// [breakpoints.front(), breakpoints.back()]. Every interior breakpoint
/// starts a fresh panel, so jumps of f there cost nothing. Stops once the
/// summed error estimate is below max(abs_tol, rel_tol * |value|); throws
/// QuadratureFailure if that needs more than max_subdivisions bisections.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const QuadratureConfig& config);

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureConfig& config);

}  // namespace sherman
