#pragma once

// Csiszár-type divergences sum_i p_i f(q_i / p_i) for positive (not
// necessarily normalized) vectors, and two-sided bounds for strongly convex
// generators.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sherman/bounds.hpp"
#include "sherman/convexity.hpp"
#include "sherman/majorization.hpp"

namespace sherman {

enum class ConvexityClass { strongly_convex, convex_only, nonconvex };

std::string_view to_string(ConvexityClass c) noexcept;

/// A named generator f together with its classification on an interval of
/// ratios.
struct DivergenceKernel {
  std::string name;
  FunctionSpec generator;
  bool normalized = false;
  ConvexityClass convexity = ConvexityClass::nonconvex;
  /// Order-2 certificate on generator.interval().
  ModulusCertificate certificate;

  /// Certified modulus; 0 unless strongly_convex.
  double modulus() const noexcept {
    return convexity == ConvexityClass::strongly_convex ? certificate.modulus : 0.0;
  }
};

inline constexpr double kDefaultRenyiAlpha = 2.0;

/// Kernel names: kl, hellinger, variational, harmonic, bhattacharya,
/// triangular, chi-square, renyi. `interval` must satisfy lo > 0; the
/// convexity class and modulus are computed on it.
DivergenceKernel make_kernel(std::string_view name, Interval interval,
                             double renyi_alpha = kDefaultRenyiAlpha);

/// All eight kernels on the same interval.
std::vector<DivergenceKernel> catalog(Interval interval,
                                      double renyi_alpha = kDefaultRenyiAlpha);

std::vector<std::string> kernel_names();

/// Strictly positive vectors p and q of equal length.
class DistributionPair {
 public:
  /// Throws LengthMismatch or InvalidArgument.
  DistributionPair(std::vector<double> p, std::vector<double> q);

  const std::vector<double>& p() const noexcept { return p_; }
  const std::vector<double>& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return p_.size(); }
  /// q_i / p_i
  std::vector<double> ratios() const;

  /// [min ratio, max ratio] widened by 1e-9 (kept positive).
  Interval ratio_interval() const;

 private:
  std::vector<double> p_;
  std::vector<double> q_;
};

/// sum_i p_i f(q_i / p_i). Throws RatioOutOfDomain when f is not finite at
/// some ratio.
double csiszar_divergence(const DistributionPair& pair,
                          const DivergenceKernel& kernel);

/// sum_i p_i ln(1/p_i) for a strictly positive p summing to 1 (to 1e-12).
double shannon_entropy(const std::vector<double>& p);

/// sum_i q_i ln(q_i / p_i)
double kl_divergence(const DistributionPair& pair);

struct DivergenceSandwich {
  double lower_ck = 0.0;
  double lower_strong = 0.0;
  double value = 0.0;
  double upper_converse = 0.0;
  /// c * (sum_j p_j x_j^2 - sum_i b_i y_i^2) with x_j = q_j / p_j.
  double correction_quadratic = 0.0;
  /// c * sum_j p_j (hi - x_j)(x_j - lo)
  double correction_converse = 0.0;
  double modulus = 0.0;
  Interval interval{0.0, 1.0};

  /// lower_ck <= lower_strong <= value <= upper_converse within slack.
  bool holds(double slack = kChainSlack) const noexcept;
};

/// Single-block bounds (R = row of ones). Throws RatioOutOfDomain when a
/// ratio leaves the kernel interval and ModulusNotCertified when the kernel
/// is not strongly convex or c exceeds its certified modulus.
DivergenceSandwich divergence_bounds(const DistributionPair& pair,
                                     const DivergenceKernel& kernel,
                                     const Modulus& c);
DivergenceSandwich divergence_bounds(const DistributionPair& pair,
                                     const DivergenceKernel& kernel);

/// Bounds for the aggregated divergence defined by an m x l column-stochastic
/// R: lower_ck is sum_i <p,r_i> f(<q,r_i>/<p,r_i>). Throws
/// ZeroAggregateWeight if some <p,r_i> <= 0.
DivergenceSandwich aggregated_divergence_bounds(const DistributionPair& pair,
                                                const StochasticMatrix& R,
                                                const DivergenceKernel& kernel,
                                                const Modulus& c);
DivergenceSandwich aggregated_divergence_bounds(const DistributionPair& pair,
                                                const StochasticMatrix& R,
                                                const DivergenceKernel& kernel);

}  // namespace sherman
