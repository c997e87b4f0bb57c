#include "sherman/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// n!/(n-k)!
double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

void require_order(const FunctionSpec& f, int k) {
  if (k > f.max_order()) {
    throw DomainError(Errc::missing_derivative,
                      "'" + f.name() + "' needs derivative of order " +
                          std::to_string(k) + ", has " +
                          std::to_string(f.max_order()));
  }
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError(Errc::invalid_argument,
                      "interval requires finite lo < hi, got [" +
                          std::to_string(lo) + ", " + std::to_string(hi) +
                          "]");
  }
}

FunctionSpec::FunctionSpec(std::string name, Interval interval, Fn f,
                           std::vector<Fn> derivatives)
    : name_(std::move(name)),
      interval_(interval),
      f_(std::move(f)),
      derivatives_(std::move(derivatives)) {
  if (!f_) throw DomainError(Errc::invalid_argument, "empty evaluator");
  for (const auto& d : derivatives_) {
    if (!d) throw DomainError(Errc::invalid_argument, "empty derivative");
  }
}

FunctionSpec FunctionSpec::from_family(std::string name, Interval interval,
                                       int max_order, Family family) {
  std::vector<Fn> derivs;
  derivs.reserve(static_cast<std::size_t>(std::max(0, max_order)));
  for (int k = 1; k <= max_order; ++k) {
    derivs.emplace_back([family, k](double t) { return family(k, t); });
  }
  return FunctionSpec(std::move(name), interval,
                      [family](double t) { return family(0, t); },
                      std::move(derivs));
}

double FunctionSpec::derivative(int k, double t) const {
  if (k < 0) throw DomainError(Errc::invalid_argument, "negative order");
  if (k == 0) return f_(t);
  require_order(*this, k);
  return derivatives_[static_cast<std::size_t>(k - 1)](t);
}

FunctionSpec FunctionSpec::restricted_to(Interval interval) const {
  FunctionSpec copy = *this;
  copy.interval_ = interval;
  return copy;
}

std::string_view to_string(CertVerdict v) noexcept {
  switch (v) {
    case CertVerdict::certified: return "certified";
    case CertVerdict::failed: return "failed";
    case CertVerdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Modulus Modulus::from_certificate(const ModulusCertificate& cert) {
  if (cert.verdict != CertVerdict::certified) {
    throw DomainError(Errc::modulus_not_certified,
                      "certificate verdict is " +
                          std::string(to_string(cert.verdict)));
  }
  return Modulus(cert.modulus, cert.order, Provenance::certified);
}

Modulus Modulus::unchecked(double c, int order) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError(Errc::invalid_argument, "modulus must be finite and >= 0");
  }
  return Modulus(c, order, Provenance::unchecked);
}

Modulus Modulus::lowered_to(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError(Errc::invalid_argument, "modulus must be finite and >= 0");
  }
  if (c > value_) {
    throw DomainError(Errc::modulus_not_certified,
                      "requested modulus " + std::to_string(c) +
                          " exceeds certified " + std::to_string(value_));
  }
  if (provenance_ == Provenance::unchecked) return Modulus(c, order_, provenance_);
  return Modulus(c, order_, c == value_ ? provenance_ : Provenance::lowered);
}

std::string_view to_string(Modulus::Provenance p) noexcept {
  switch (p) {
    case Modulus::Provenance::certified: return "certified";
    case Modulus::Provenance::lowered: return "lowered";
    case Modulus::Provenance::unchecked: return "unchecked";
  }
  return "unchecked";
}

double divided_difference(std::span<const double> points,
                          const FunctionSpec& f) {
  if (points.empty()) {
    throw DomainError(Errc::empty_points, "divided difference of no points");
  }
  std::vector<double> z(points.begin(), points.end());
  std::sort(z.begin(), z.end());

  const Interval& dom = f.interval();
  for (double t : z) {
    if (!dom.contains(t)) {
      throw DomainError(Errc::point_out_of_interval,
                        "node " + std::to_string(t) + " outside domain of '" +
                            f.name() + "'");
    }
  }

  std::size_t longest_run = 1;
  for (std::size_t i = 1, run = 1; i < z.size(); ++i) {
    run = (z[i] == z[i - 1]) ? run + 1 : 1;
    longest_run = std::max(longest_run, run);
  }
  require_order(f, static_cast<int>(longest_run) - 1);

  // Newton table, one column at a time; column k holds [z_i..z_{i+k}; f].
  std::vector<double> col(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) col[i] = f(z[i]);
  for (std::size_t k = 1; k < z.size(); ++k) {
    for (std::size_t i = 0; i + k < z.size(); ++i) {
      if (z[i + k] == z[i]) {
        const int order = static_cast<int>(k);
        col[i] = f.derivative(order, z[i]) / factorial(order);
      } else {
        col[i] = (col[i + 1] - col[i]) / (z[i + k] - z[i]);
      }
    }
  }
  return col[0];
}

ModulusCertificate estimate_strong_modulus(const FunctionSpec& f, int n,
                                           int grid_size) {
  if (n < 1) throw DomainError(Errc::invalid_argument, "order must be >= 1");
  if (grid_size < 2) {
    throw DomainError(Errc::invalid_argument, "grid_size must be >= 2");
  }
  require_order(f, n);

  const Interval& dom = f.interval();
  const double scale = factorial(n);
  ModulusCertificate cert;
  cert.order = n;
  cert.grid_size = grid_size;
  cert.grid_minimum = std::numeric_limits<double>::infinity();
  cert.argmin = dom.lo;

  bool finite = true;
  for (int i = 0; i < grid_size; ++i) {
    const double t = (i == grid_size - 1)
                         ? dom.hi
                         : dom.lo + dom.width() * i / (grid_size - 1);
    const double v = f.derivative(n, t) / scale;
    if (!std::isfinite(v)) {
      finite = false;
      continue;
    }
    if (v < cert.grid_minimum) {
      cert.grid_minimum = v;
      cert.argmin = t;
    }
  }

  if (!finite) {
    cert.verdict = CertVerdict::indeterminate;
    cert.modulus = 0.0;
    return cert;
  }
  cert.modulus = std::max(0.0, cert.grid_minimum);
  cert.verdict = cert.grid_minimum >= 0.0 ? CertVerdict::certified
                                          : CertVerdict::failed;
  return cert;
}

SamplingVerdict is_n_strongly_convex(const FunctionSpec& f, int n, double c,
                                     int sample_count, std::uint64_t seed) {
  if (n < 1) throw DomainError(Errc::invalid_argument, "order must be >= 1");

  // Nodes are kept at least `gap` apart: n-th differences of nearly
  // coincident nodes are dominated by rounding.
  const Interval& dom = f.interval();
  const double gap = dom.width() * 1e-2 / n;
  const double span = dom.width() - n * gap;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, span);

  SamplingVerdict verdict;
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s < sample_count; ++s) {
    for (double& v : z) v = unif(rng);
    std::sort(z.begin(), z.end());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = std::min(dom.hi, dom.lo + z[i] + static_cast<double>(i) * gap);
    }
    const double dd = divided_difference(z, f);
    ++verdict.samples_tested;
    if (!(dd >= c - kDividedDifferenceTol)) {
      verdict.passed = false;
      verdict.witness = z;
      verdict.witness_value = dd;
      return verdict;
    }
  }
  return verdict;
}

SamplingVerdict is_n_convex(const FunctionSpec& f, int n, int sample_count,
                            std::uint64_t seed) {
  return is_n_strongly_convex(f, n, 0.0, sample_count, seed);
}

FunctionSpec shift_to_convex(const FunctionSpec& f, int n, double c) {
  if (!(c >= 0.0)) throw DomainError(Errc::invalid_argument, "c must be >= 0");
  if (n < 1) throw DomainError(Errc::invalid_argument, "order must be >= 1");

  std::vector<FunctionSpec::Fn> derivs;
  for (int k = 1; k <= f.max_order(); ++k) {
    if (k <= n) {
      const double coef = c * falling_factorial(n, k);
      derivs.emplace_back([f, k, n, coef](double t) {
        return f.derivative(k, t) - coef * std::pow(t, n - k);
      });
    } else {
      derivs.emplace_back([f, k](double t) { return f.derivative(k, t); });
    }
  }
  return FunctionSpec(
      f.name() + "-shift", f.interval(),
      [f, n, c](double t) { return f(t) - c * std::pow(t, n); },
      std::move(derivs));
}

DerivativeCheck check_derivative_consistency(const FunctionSpec& f,
                                             int grid_size, double rel_tol) {
  const Interval& dom = f.interval();
  const double h = dom.width() * 1e-5;
  DerivativeCheck out;
  for (int k = 1; k <= f.max_order(); ++k) {
    for (int i = 1; i < grid_size - 1; ++i) {
      const double t = dom.lo + dom.width() * i / (grid_size - 1);
      if (t - h < dom.lo || t + h > dom.hi) continue;
      const double fd =
          (f.derivative(k - 1, t + h) - f.derivative(k - 1, t - h)) / (2 * h);
      const double exact = f.derivative(k, t);
      const double err = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
      if (err > out.worst_error) out.worst_error = err;
      if (err > rel_tol && out.passed) {
        out.passed = false;
        out.failing_order = k;
        out.at = t;
      }
    }
  }
  return out;
}

}  // namespace sherman
