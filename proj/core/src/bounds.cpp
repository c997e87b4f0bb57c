#include "sherman/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

constexpr double kNormalizationTol = 1e-12;
constexpr double kDegenerateWidth = 1e-14;

double domain_slack(const Interval& dom) {
  return 1e-12 * std::max({1.0, std::abs(dom.lo), std::abs(dom.hi)});
}

void require_in_domain(const WeightedVector& v, const FunctionSpec& f,
                       const char* which) {
  const Interval& dom = f.interval();
  const double slack = domain_slack(dom);
  for (double t : v.points()) {
    if (!dom.contains(t, slack)) {
      throw DomainError(Errc::point_out_of_interval,
                        std::string(which) + " point " + std::to_string(t) +
                            " outside [" + std::to_string(dom.lo) + ", " +
                            std::to_string(dom.hi) + "]");
    }
  }
}

void require_normalized(const WeightedVector& x) {
  const double s = x.total_weight();
  if (std::abs(s - 1.0) > kNormalizationTol) {
    throw DomainError(Errc::weights_not_normalized,
                      "weights sum to " + std::to_string(s));
  }
}

void require_order_two(const Modulus& c) {
  if (c.order() != 2) {
    throw DomainError(Errc::invalid_argument,
                      "strong convexity bounds need an order-2 modulus");
  }
}

double width_checked(const FunctionSpec& f) {
  const double w = f.interval().width();
  if (w < kDegenerateWidth) {
    throw DomainError(Errc::degenerate_interval,
                      "interval width " + std::to_string(w));
  }
  return w;
}

double weighted_f(const WeightedVector& v, const FunctionSpec& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v.weight(i) * f(v.point(i));
  return s;
}

double weighted_square(const WeightedVector& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += v.weight(i) * v.point(i) * v.point(i);
  }
  return s;
}

// c sum a_j (beta - x_j)(x_j - alpha)
double endpoint_correction(const WeightedVector& x, const Interval& dom,
                           double c) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    s += x.weight(j) * (dom.hi - x.point(j)) * (x.point(j) - dom.lo);
  }
  return c * s;
}

double converse_value(const WeightedVector& x, double total_b,
                      const FunctionSpec& f, double c) {
  const Interval& dom = f.interval();
  const double w = width_checked(f);
  const double sx = x.weighted_sum();
  return (total_b * dom.hi - sx) / w * f(dom.lo) +
         (sx - total_b * dom.lo) / w * f(dom.hi) -
         endpoint_correction(x, dom, c);
}

bool all_equal(const std::vector<double>& v, double value) {
  return std::all_of(v.begin(), v.end(), [&](double w) { return w == value; });
}

Specialization classify(const WeightedVector& x, const WeightedVector& y) {
  if (y.size() == 1 && y.weight(0) == 1.0) return Specialization::jensen;
  if (x.size() == y.size() && x.size() > 0) {
    const double w = y.weight(0);
    if (all_equal(x.weights(), w) && all_equal(y.weights(), w)) {
      return w == 1.0 ? Specialization::majorization : Specialization::fuchs;
    }
  }
  return Specialization::general;
}

BoundChain sherman_terms(const WeightedVector& x, const WeightedVector& y,
                         const FunctionSpec& f, const Modulus& c) {
  require_order_two(c);
  require_in_domain(x, f, "x");
  require_in_domain(y, f, "y");

  BoundChain chain;
  chain.modulus = c.value();
  chain.lhs = weighted_f(y, f);
  chain.plain_bound = weighted_f(x, f);
  chain.correction_quadratic =
      c.value() * (weighted_square(x) - weighted_square(y));
  chain.strong_bound = chain.plain_bound - chain.correction_quadratic;
  chain.specialization = classify(x, y);
  if (std::all_of(y.weights().begin(), y.weights().end(),
                  [](double b) { return b == 0.0; })) {
    chain.warnings.emplace_back(
        "all y-weights are zero; the inequalities are vacuous");
  }
  return chain;
}

}  // namespace

std::string_view to_string(Specialization s) noexcept {
  switch (s) {
    case Specialization::general: return "general";
    case Specialization::jensen: return "jensen";
    case Specialization::majorization: return "majorization";
    case Specialization::fuchs: return "fuchs";
  }
  return "general";
}

bool BoundChain::monotone(double slack) const noexcept {
  return strong_bound - lhs >= -slack && plain_bound - strong_bound >= -slack &&
         converse_bound - plain_bound >= -slack;
}

JensenTerms jensen_strong(const WeightedVector& x, const FunctionSpec& f,
                          const Modulus& c) {
  require_order_two(c);
  require_normalized(x);
  require_in_domain(x, f, "x");

  const double mean = x.weighted_sum();
  double spread = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x.point(i) - mean;
    spread += x.weight(i) * d * d;
  }
  JensenTerms out;
  out.lhs = f(mean);
  out.variance_term = c.value() * spread;
  out.rhs = weighted_f(x, f) - out.variance_term;
  return out;
}

LahRibaricTerms lah_ribaric_strong(const WeightedVector& x,
                                   const FunctionSpec& f, const Modulus& c) {
  require_order_two(c);
  require_normalized(x);
  require_in_domain(x, f, "x");
  const Interval& dom = f.interval();
  const double w = width_checked(f);
  const double mean = x.weighted_sum();

  LahRibaricTerms out;
  out.lhs = weighted_f(x, f);
  out.rhs = (dom.hi - mean) / w * f(dom.lo) + (mean - dom.lo) / w * f(dom.hi) -
            endpoint_correction(x, dom, c.value());
  return out;
}

BoundChain sherman_strong(const WeightedVector& x, const WeightedVector& y,
                          const FunctionSpec& f, const Modulus& c,
                          const WeightedCheck& check) {
  if (!check.passed) {
    throw DomainError(Errc::majorization_not_verified,
                      "weighted majorization residuals " +
                          std::to_string(check.weight_residual) + ", " +
                          std::to_string(check.point_residual));
  }
  return sherman_terms(x, y, f, c);
}

BoundChain sherman_strong(const WeightedVector& x, const WeightedVector& y,
                          const FunctionSpec& f, const Modulus& c,
                          UncheckedPair) {
  return sherman_terms(x, y, f, c);
}

double converse_sherman_strong(const WeightedVector& x, double total_b,
                               const FunctionSpec& f, const Modulus& c) {
  require_order_two(c);
  if (!(total_b > 0.0)) {
    throw DomainError(Errc::invalid_argument, "total y-weight must be > 0");
  }
  require_in_domain(x, f, "x");
  return converse_value(x, total_b, f, c.value());
}

BoundChain full_chain(const WeightedVector& x, const WeightedVector& y,
                      const StochasticMatrix& A, const FunctionSpec& f,
                      const Modulus& c) {
  const WeightedCheck check = verify_weighted_majorization(x, y, A, kWeightedTol);
  BoundChain chain = sherman_strong(x, y, f, c, check);
  chain.correction_converse = endpoint_correction(x, f.interval(), c.value());
  chain.converse_bound = converse_value(x, y.total_weight(), f, c.value());
  if (chain.correction_quadratic < -kChainSlack) {
    chain.warnings.emplace_back("negative quadratic correction");
  }
  return chain;
}

}  // namespace sherman
