#include "sherman/fink.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_order(const FunctionSpec& f, int n) {
  if (n < 1) throw DomainError(Errc::invalid_argument, "order must be >= 1");
  if (f.max_order() < n) {
    throw DomainError(Errc::missing_derivative,
                      "'" + f.name() + "' needs derivative of order " +
                          std::to_string(n));
  }
}

void require_inside(double v, const Interval& dom, const char* what) {
  if (!dom.contains(v, 1e-12 * std::max({1.0, std::abs(dom.lo), std::abs(dom.hi)}))) {
    throw DomainError(Errc::out_of_interval,
                      std::string(what) + " = " + std::to_string(v) +
                          " outside [" + std::to_string(dom.lo) + ", " +
                          std::to_string(dom.hi) + "]");
  }
}

// sum_j a_j (x_j - z)^w - sum_i b_i (y_i - z)^w
double power_moment_gap(const WeightedVector& x, const WeightedVector& y,
                        double z, int w) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x.weight(j) * ipow(x.point(j) - z, w);
  for (std::size_t i = 0; i < y.size(); ++i) s -= y.weight(i) * ipow(y.point(i) - z, w);
  return s;
}

double weighted_f(const WeightedVector& v, const FunctionSpec& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v.weight(i) * f(v.point(i));
  return s;
}

// Equal total weights and equal first moments; together these make the
// mean-integral and w = 1 terms of the identity cancel.
void require_balanced(const WeightedVector& x, const WeightedVector& y) {
  const double ta = x.total_weight();
  const double tb = y.total_weight();
  const double ma = x.weighted_sum();
  const double mb = y.weighted_sum();
  const double tol = 1e-10 * std::max({1.0, std::abs(ta), std::abs(ma)});
  if (std::abs(ta - tb) > tol || std::abs(ma - mb) > tol) {
    throw DomainError(Errc::majorization_not_verified,
                      "weights or first moments of x and y differ");
  }
}

}  // namespace

std::string_view to_string(KernelSign s) noexcept {
  switch (s) {
    case KernelSign::nonnegative: return "nonnegative";
    case KernelSign::nonpositive: return "nonpositive";
    case KernelSign::indefinite: return "indefinite";
  }
  return "indefinite";
}

double fink_kernel(double t, double x, const Interval& dom) {
  require_inside(t, dom, "t");
  require_inside(x, dom, "x");
  return t <= x ? t - dom.lo : t - dom.hi;
}

FinkPointCheck fink_identity_check(const FunctionSpec& f, double x, int n,
                                   const QuadratureConfig& quad) {
  require_order(f, n);
  const Interval& dom = f.interval();
  require_inside(x, dom, "x");
  const double width = dom.width();

  FinkPointCheck out;
  out.x = x;
  out.value = f(x);

  const auto area = integrate([&](double t) { return f(t); }, dom.lo, dom.hi, quad);
  out.mean_term = n / width * area.value;

  double endpoint_sum = 0.0;
  for (int w = 1; w <= n - 1; ++w) {
    endpoint_sum += (n - w) / factorial(w) *
                    (f.derivative(w - 1, dom.lo) * ipow(x - dom.lo, w) -
                     f.derivative(w - 1, dom.hi) * ipow(x - dom.hi, w));
  }
  out.boundary_term = -endpoint_sum / width;

  const double cuts[] = {dom.lo, x, dom.hi};
  const auto kernel = integrate(
      [&](double t) {
        const double k = t <= x ? t - dom.lo : t - dom.hi;
        return ipow(x - t, n - 1) * k * f.derivative(n, t);
      },
      cuts, quad);
  out.kernel_term = kernel.value / (factorial(n - 1) * width);

  out.residual = out.value - (out.mean_term + out.boundary_term + out.kernel_term);
  return out;
}

double sherman_kernel(double t, const WeightedVector& x, const WeightedVector& y,
                      int n, const Interval& dom) {
  double g = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x.point(j);
    const double k = t <= xj ? t - dom.lo : t - dom.hi;
    g += x.weight(j) * ipow(xj - t, n - 1) * k;
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double yi = y.point(i);
    const double k = t <= yi ? t - dom.lo : t - dom.hi;
    g -= y.weight(i) * ipow(yi - t, n - 1) * k;
  }
  return g;
}

KernelSign check_kernel_condition(const WeightedVector& x,
                                  const WeightedVector& y, int n,
                                  const Interval& dom, int t_grid_size) {
  if (n < 1) throw DomainError(Errc::invalid_argument, "order must be >= 1");
  if (t_grid_size < 2) {
    throw DomainError(Errc::invalid_argument, "t_grid_size must be >= 2");
  }
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(t_grid_size) + x.size() + y.size());
  for (int i = 0; i < t_grid_size; ++i) {
    ts.push_back(i == t_grid_size - 1 ? dom.hi
                                      : dom.lo + dom.width() * i / (t_grid_size - 1));
  }
  for (double v : x.points()) ts.push_back(std::clamp(v, dom.lo, dom.hi));
  for (double v : y.points()) ts.push_back(std::clamp(v, dom.lo, dom.hi));

  bool positive = false;
  bool negative = false;
  for (double t : ts) {
    const double g = sherman_kernel(t, x, y, n, dom);
    if (g > kKernelSignTol) positive = true;
    if (g < -kKernelSignTol) negative = true;
  }
  if (positive && negative) return KernelSign::indefinite;
  return negative ? KernelSign::nonpositive : KernelSign::nonnegative;
}

FinkReport sherman_difference_identity(const WeightedVector& x,
                                       const WeightedVector& y,
                                       const FunctionSpec& f, int n,
                                       const QuadratureConfig& quad) {
  require_order(f, n);
  require_balanced(x, y);
  const Interval& dom = f.interval();
  for (double v : x.points()) require_inside(v, dom, "x");
  for (double v : y.points()) require_inside(v, dom, "y");
  const double width = dom.width();

  FinkReport report;
  report.order = n;
  report.lhs = weighted_f(x, f) - weighted_f(y, f);

  double boundary = 0.0;
  for (int w = 2; w <= n - 1; ++w) {
    const double coef = (n - w) / factorial(w);
    boundary += coef * (f.derivative(w - 1, dom.hi) * power_moment_gap(x, y, dom.hi, w) -
                        f.derivative(w - 1, dom.lo) * power_moment_gap(x, y, dom.lo, w));
  }
  report.boundary_terms = boundary / width;

  std::vector<double> cuts{dom.lo, dom.hi};
  for (double v : x.points()) cuts.push_back(std::clamp(v, dom.lo, dom.hi));
  for (double v : y.points()) cuts.push_back(std::clamp(v, dom.lo, dom.hi));
  const auto integral = integrate(
      [&](double t) { return sherman_kernel(t, x, y, n, dom) * f.derivative(n, t); },
      cuts, quad);
  report.integral_term = integral.value / (factorial(n - 1) * width);
  report.quadrature_error = integral.error_estimate / (factorial(n - 1) * width);

  report.residual = report.lhs - report.boundary_terms - report.integral_term;
  report.kernel_condition = check_kernel_condition(x, y, n, dom);
  return report;
}

HigherOrderBound higher_order_sherman_bound(const WeightedVector& x,
                                            const WeightedVector& y,
                                            const FunctionSpec& f, int n,
                                            const Modulus& c,
                                            const QuadratureConfig& quad) {
  if (c.order() != n) {
    throw DomainError(Errc::invalid_argument,
                      "modulus of order " + std::to_string(c.order()) +
                          " supplied for order " + std::to_string(n));
  }
  const FunctionSpec g = shift_to_convex(f, n, c.value());
  const FinkReport identity = sherman_difference_identity(x, y, g, n, quad);
  if (identity.kernel_condition == KernelSign::indefinite) {
    throw DomainError(Errc::kernel_condition_indefinite,
                      "kernel changes sign; the bound does not apply");
  }

  double power_gap = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) power_gap += x.weight(j) * std::pow(x.point(j), n);
  for (std::size_t i = 0; i < y.size(); ++i) power_gap -= y.weight(i) * std::pow(y.point(i), n);

  HigherOrderBound out;
  out.order = n;
  out.lhs_with_correction = weighted_f(x, f) - weighted_f(y, f) - c.value() * power_gap;
  out.rhs_boundary = identity.boundary_terms;
  out.integral_term = identity.integral_term;
  out.residual = identity.residual;
  out.kernel_condition = identity.kernel_condition;
  constexpr double slack = 1e-9;
  out.holds = out.kernel_condition == KernelSign::nonnegative
                  ? out.lhs_with_correction >= out.rhs_boundary - slack
                  : out.lhs_with_correction <= out.rhs_boundary + slack;
  return out;
}

}  // namespace sherman
