#pragma once

// Real functions on closed intervals, divided differences (with coincident
// nodes), and grid/sampling based checks of n-convexity and n-strong
// convexity.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sherman {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);

  double width() const noexcept { return hi - lo; }
  bool contains(double t, double slack = 0.0) const noexcept {
    return t >= lo - slack && t <= hi + slack;
  }
};

/// A real function on an interval together with its first few derivatives.
///
/// derivative(0, t) is the function itself; derivative(k, t) for
/// 1 <= k <= max_order() evaluates f^(k). Instances are immutable and safe
/// to evaluate concurrently as long as the wrapped callables are.
class FunctionSpec {
 public:
  using Fn = std::function<double(double)>;
  /// (k, t) -> f^(k)(t)
  using Family = std::function<double(int, double)>;

  FunctionSpec(std::string name, Interval interval, Fn f,
               std::vector<Fn> derivatives);

  /// Builds a FunctionSpec from a closed-form derivative family valid for
  /// 0 <= k <= max_order.
  static FunctionSpec from_family(std::string name, Interval interval,
                                  int max_order, Family family);

  double operator()(double t) const { return f_(t); }
  double derivative(int k, double t) const;

  int max_order() const noexcept {
    return static_cast<int>(derivatives_.size());
  }
  const Interval& interval() const noexcept { return interval_; }
  const std::string& name() const noexcept { return name_; }

  /// Same function and derivatives, different domain.
  FunctionSpec restricted_to(Interval interval) const;

 private:
  std::string name_;
  Interval interval_;
  Fn f_;
  std::vector<Fn> derivatives_;
};

enum class CertVerdict { certified, failed, indeterminate };

std::string_view to_string(CertVerdict v) noexcept;

struct ModulusCertificate {
  int order = 2;
  /// max(0, min over grid of f^(n)(t) / n!)
  double modulus = 0.0;
  int grid_size = 0;
  CertVerdict verdict = CertVerdict::indeterminate;
  /// Raw grid minimum of f^(n)(t) / n! (may be negative) and where it occurs.
  double grid_minimum = 0.0;
  double argmin = 0.0;
};

/// Modulus of strong convexity handed to the bound routines.
///
/// A certified modulus comes from a ModulusCertificate and may only be
/// lowered. Anything else has to be requested explicitly via unchecked().
class Modulus {
 public:
  enum class Provenance { certified, lowered, unchecked };

  static Modulus from_certificate(const ModulusCertificate& cert);
  static Modulus unchecked(double c, int order = 2);

  /// Same provenance chain, smaller value. Throws ModulusNotCertified when
  /// c exceeds the current value.
  Modulus lowered_to(double c) const;

  double value() const noexcept { return value_; }
  int order() const noexcept { return order_; }
  Provenance provenance() const noexcept { return provenance_; }
  bool is_checked() const noexcept {
    return provenance_ != Provenance::unchecked;
  }

 private:
  Modulus(double value, int order, Provenance p)
      : value_(value), order_(order), provenance_(p) {}

  double value_;
  int order_;
  Provenance provenance_;
};

std::string_view to_string(Modulus::Provenance p) noexcept;

/// Result of a randomized falsification run. passed means no counterexample
/// was found among the sampled tuples; it is not a proof.
struct SamplingVerdict {
  bool passed = true;
  int samples_tested = 0;
  /// Sorted node tuple of the first violation, empty when passed.
  std::vector<double> witness;
  double witness_value = 0.0;
};

struct DerivativeCheck {
  bool passed = true;
  int failing_order = 0;
  double at = 0.0;
  double worst_error = 0.0;
};

/// Absolute tolerance used for comparing divided differences.
inline constexpr double kDividedDifferenceTol = 1e-10;
inline constexpr int kDefaultModulusGrid = 10001;

/// [z_0, ..., z_n; f]. Repeated nodes use f^(j-1)(z)/(j-1)! for a run of j
/// equal values. The result does not depend on the order of `points`.
double divided_difference(std::span<const double> points,
                          const FunctionSpec& f);

/// c = max(0, min_t f^(n)(t)/n!) over a uniform grid on the interval
/// (endpoints included).
ModulusCertificate estimate_strong_modulus(const FunctionSpec& f, int n,
                                           int grid_size = kDefaultModulusGrid);

/// Samples random tuples of n+1 distinct nodes and looks for a negative
/// n-th divided difference.
SamplingVerdict is_n_convex(const FunctionSpec& f, int n, int sample_count,
                            std::uint64_t seed);

/// As is_n_convex, testing [z_0..z_n; f] >= c.
SamplingVerdict is_n_strongly_convex(const FunctionSpec& f, int n, double c,
                                     int sample_count, std::uint64_t seed);

/// g(x) = f(x) - c x^n, with derivatives adjusted accordingly.
FunctionSpec shift_to_convex(const FunctionSpec& f, int n, double c);

/// Compares each derivative against central differences of the one below it
/// at interior grid points; tolerance is relative to max(1, |f^(k)|).
DerivativeCheck check_derivative_consistency(const FunctionSpec& f,
                                             int grid_size = 101,
                                             double rel_tol = 1e-5);

}  // namespace sherman
