#pragma once

// Fink's representation of f(x) through a mean integral, endpoint derivative
// terms and a kernel integral of f^(n), and its application to the Sherman
// difference sum_j a_j f(x_j) - sum_i b_i f(y_i).

#include <string_view>

#include "sherman/convexity.hpp"
#include "sherman/majorization.hpp"
#include "sherman/quadrature.hpp"

namespace sherman {

enum class KernelSign { nonnegative, nonpositive, indefinite };

std::string_view to_string(KernelSign s) noexcept;

inline constexpr int kDefaultKernelGrid = 2001;
inline constexpr double kKernelSignTol = 1e-12;

/// k(t, x) = t - lo for t <= x, t - hi for t > x. Throws OutOfInterval.
double fink_kernel(double t, double x, const Interval& dom);

/// Terms of the identity evaluated at a single point.
struct FinkPointCheck {
  double x = 0.0;
  double value = 0.0;          ///< f(x)
  double mean_term = 0.0;      ///< n/(hi-lo) * integral of f
  double boundary_term = 0.0;  ///< minus the w = 1..n-1 endpoint sum
  double kernel_term = 0.0;    ///< scaled kernel integral of f^(n)
  double residual = 0.0;       ///< value - (mean + boundary + kernel)
};

/// Evaluates both sides of Fink's identity at x for order n >= 1.
FinkPointCheck fink_identity_check(const FunctionSpec& f, double x, int n,
                                   const QuadratureConfig& quad = {});

struct FinkReport {
  int order = 0;
  /// sum_j a_j f(x_j) - sum_i b_i f(y_i)
  double lhs = 0.0;
  /// The two endpoint sums over w = 2..n-1.
  double boundary_terms = 0.0;
  double integral_term = 0.0;
  /// lhs - boundary_terms - integral_term
  double residual = 0.0;
  double quadrature_error = 0.0;
  KernelSign kernel_condition = KernelSign::indefinite;
};

/// Sherman difference written through Fink's identity. Requires equal total
/// weights and equal weighted sums (consequences of (y, b) ≺ (x, a)); throws
/// MajorizationNotVerified otherwise.
FinkReport sherman_difference_identity(const WeightedVector& x,
                                       const WeightedVector& y,
                                       const FunctionSpec& f, int n,
                                       const QuadratureConfig& quad = {});

/// G(t) = sum_j a_j (x_j - t)^{n-1} k(t, x_j) - sum_i b_i (y_i - t)^{n-1}
/// k(t, y_i)
double sherman_kernel(double t, const WeightedVector& x, const WeightedVector& y,
                      int n, const Interval& dom);

/// Sign pattern of G on a uniform grid plus every x_j and y_i, with
/// |G| <= 1e-12 treated as zero.
KernelSign check_kernel_condition(const WeightedVector& x,
                                  const WeightedVector& y, int n,
                                  const Interval& dom,
                                  int t_grid_size = kDefaultKernelGrid);

struct HigherOrderBound {
  int order = 0;
  /// sum a f(x) - sum b f(y) - c (sum a x^n - sum b y^n)
  double lhs_with_correction = 0.0;
  /// Endpoint sums of the identity evaluated for g(t) = f(t) - c t^n.
  double rhs_boundary = 0.0;
  /// The dropped integral term (for g) and the identity residual.
  double integral_term = 0.0;
  double residual = 0.0;
  KernelSign kernel_condition = KernelSign::indefinite;
  /// lhs >= rhs - 1e-9 (reversed when the kernel is nonpositive).
  bool holds = false;
};

/// Lower bound on the corrected Sherman difference for an n-strongly convex
/// f. The modulus must have order n. Throws KernelConditionIndefinite when G
/// changes sign.
HigherOrderBound higher_order_sherman_bound(const WeightedVector& x,
                                            const WeightedVector& y,
                                            const FunctionSpec& f, int n,
                                            const Modulus& c,
                                            const QuadratureConfig& quad = {});

}  // namespace sherman
