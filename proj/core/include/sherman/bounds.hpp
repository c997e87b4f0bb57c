#pragma once

// Strong Jensen, strong Lah-Ribarič, strong Sherman and converse Sherman
// bounds for a function with modulus of strong convexity c.

#include <string>
#include <string_view>
#include <vector>

#include "sherman/convexity.hpp"
#include "sherman/majorization.hpp"

namespace sherman {

/// Absolute slack allowed when checking an inequality chain.
inline constexpr double kChainSlack = 1e-9;
/// Tolerance used by full_chain when verifying a = bA and y = xA^T.
inline constexpr double kWeightedTol = 1e-10;

enum class Specialization {
  general,
  /// m = 1, b = (1): Jensen / converse Jensen.
  jensen,
  /// m = l, unit weights: classical majorization inequality.
  majorization,
  /// m = l, all weights equal: Fuchs' inequality.
  fuchs,
};

std::string_view to_string(Specialization s) noexcept;

struct BoundChain {
  /// sum_i b_i f(y_i)
  double lhs = 0.0;
  /// plain_bound - correction_quadratic
  double strong_bound = 0.0;
  /// sum_j a_j f(x_j)
  double plain_bound = 0.0;
  /// Chord bound at the interval endpoints minus correction_converse.
  double converse_bound = 0.0;
  /// c (sum_j a_j x_j^2 - sum_i b_i y_i^2)
  double correction_quadratic = 0.0;
  /// c sum_j a_j (beta - x_j)(x_j - alpha)
  double correction_converse = 0.0;
  double modulus = 0.0;

  Specialization specialization = Specialization::general;
  std::vector<std::string> warnings;

  /// lhs <= strong_bound <= plain_bound <= converse_bound within slack.
  bool monotone(double slack = kChainSlack) const noexcept;
};

struct JensenTerms {
  double lhs = 0.0;  ///< f(x̄)
  double rhs = 0.0;  ///< sum a_i f(x_i) - c sum a_i (x_i - x̄)^2
  double variance_term = 0.0;  ///< c sum a_i (x_i - x̄)^2
};

struct LahRibaricTerms {
  double lhs = 0.0;  ///< sum a_j f(x_j)
  double rhs = 0.0;
};

/// Tag for callers that take responsibility for (y, b) ≺ (x, a).
struct UncheckedPair {};
inline constexpr UncheckedPair unchecked_pair{};

/// Requires weights summing to 1 (to 1e-12) and points in f's interval.
JensenTerms jensen_strong(const WeightedVector& x, const FunctionSpec& f,
                          const Modulus& c);

LahRibaricTerms lah_ribaric_strong(const WeightedVector& x,
                                   const FunctionSpec& f, const Modulus& c);

/// Fills lhs, plain_bound, strong_bound and correction_quadratic. Throws
/// MajorizationNotVerified when `check` did not pass.
BoundChain sherman_strong(const WeightedVector& x, const WeightedVector& y,
                          const FunctionSpec& f, const Modulus& c,
                          const WeightedCheck& check);
BoundChain sherman_strong(const WeightedVector& x, const WeightedVector& y,
                          const FunctionSpec& f, const Modulus& c,
                          UncheckedPair);

/// Right-hand side of the converse Sherman inequality for total y-weight
/// total_b = sum_i b_i > 0.
double converse_sherman_strong(const WeightedVector& x, double total_b,
                               const FunctionSpec& f, const Modulus& c);

/// Verifies (y, b) ≺ (x, a) through A and evaluates every term of the chain.
/// Throws MajorizationNotVerified if the verification fails.
BoundChain full_chain(const WeightedVector& x, const WeightedVector& y,
                      const StochasticMatrix& A, const FunctionSpec& f,
                      const Modulus& c);

}  // namespace sherman
