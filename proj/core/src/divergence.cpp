#include "sherman/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

constexpr int kKernelMaxOrder = 10;

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

double power_derivative(double p, int k, double t) {
  double coef = 1.0;
  for (int i = 0; i < k; ++i) coef *= p - i;
  if (coef == 0.0) return 0.0;
  return coef * std::pow(t, p - k);
}

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

FunctionSpec generator_for(std::string_view name, Interval dom, double alpha) {
  const std::string id(name);
  if (name == "kl") {
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      if (k == 0) return t * std::log(t);
      if (k == 1) return std::log(t) + 1.0;
      return sign_pow(k) * factorial(k - 2) * std::pow(t, 1 - k);
    });
  }
  if (name == "hellinger") {
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      if (k == 0) {
        const double r = std::sqrt(t) - 1.0;
        return 0.5 * r * r;
      }
      // 0.5 t - sqrt(t) + 0.5
      return (k == 1 ? 0.5 : 0.0) - power_derivative(0.5, k, t);
    });
  }
  if (name == "variational") {
    return FunctionSpec::from_family(id, dom, 2, [](int k, double t) {
      if (k == 0) return std::abs(t - 1.0);
      if (k == 1) return t > 1.0 ? 1.0 : (t < 1.0 ? -1.0 : 0.0);
      return 0.0;
    });
  }
  if (name == "harmonic") {
    // 2 - 2/(1+t)
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      if (k == 0) return 2.0 * t / (1.0 + t);
      return 2.0 * sign_pow(k + 1) * factorial(k) / std::pow(1.0 + t, k + 1);
    });
  }
  if (name == "bhattacharya") {
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      return -power_derivative(0.5, k, t);
    });
  }
  if (name == "triangular") {
    // t - 3 + 4/(t+1)
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      if (k == 0) return (t - 1.0) * (t - 1.0) / (t + 1.0);
      const double tail = 4.0 * sign_pow(k) * factorial(k) / std::pow(t + 1.0, k + 1);
      return (k == 1 ? 1.0 : 0.0) + tail;
    });
  }
  if (name == "chi-square") {
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [](int k, double t) {
      if (k == 0) return (t - 1.0) * (t - 1.0);
      if (k == 1) return 2.0 * (t - 1.0);
      return k == 2 ? 2.0 : 0.0;
    });
  }
  if (name == "renyi") {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
      throw DomainError(Errc::invalid_argument, "renyi needs alpha > 1");
    }
    return FunctionSpec::from_family(id, dom, kKernelMaxOrder, [alpha](int k, double t) {
      return power_derivative(alpha, k, t);
    });
  }
  throw DomainError(Errc::invalid_argument, "unknown kernel '" + id + "'");
}

void require_in_interval(const std::vector<double>& ratios, const Interval& dom) {
  const double slack = 1e-12 * std::max(1.0, dom.hi);
  for (double r : ratios) {
    if (!dom.contains(r, slack)) {
      throw DomainError(Errc::ratio_out_of_domain,
                        "ratio " + std::to_string(r) + " outside [" +
                            std::to_string(dom.lo) + ", " +
                            std::to_string(dom.hi) + "]");
    }
  }
}

void require_certified(const DivergenceKernel& kernel, const Modulus& c) {
  if (kernel.convexity != ConvexityClass::strongly_convex) {
    throw DomainError(Errc::modulus_not_certified,
                      "kernel '" + kernel.name + "' is " +
                          std::string(to_string(kernel.convexity)));
  }
  if (c.order() != 2) {
    throw DomainError(Errc::invalid_argument, "divergence bounds need an order-2 modulus");
  }
  if (c.is_checked() && c.value() > kernel.modulus()) {
    throw DomainError(Errc::modulus_not_certified,
                      "modulus " + std::to_string(c.value()) +
                          " exceeds certified " + std::to_string(kernel.modulus()));
  }
}

}  // namespace

std::string_view to_string(ConvexityClass c) noexcept {
  switch (c) {
    case ConvexityClass::strongly_convex: return "strongly_convex";
    case ConvexityClass::convex_only: return "convex_only";
    case ConvexityClass::nonconvex: return "nonconvex";
  }
  return "nonconvex";
}

DivergenceKernel make_kernel(std::string_view name, Interval interval,
                             double renyi_alpha) {
  if (interval.lo <= 0.0) {
    throw DomainError(Errc::invalid_argument, "ratio interval needs lo > 0");
  }
  FunctionSpec gen = generator_for(name, interval, renyi_alpha);
  const ModulusCertificate cert = estimate_strong_modulus(gen, 2);
  ConvexityClass cls = ConvexityClass::nonconvex;
  if (cert.verdict == CertVerdict::certified) {
    cls = cert.modulus > 0.0 ? ConvexityClass::strongly_convex
                             : ConvexityClass::convex_only;
  }
  const bool normalized = std::abs(gen(1.0)) <= 1e-14;
  std::string label(name);
  if (name == "renyi") label += ":" + std::to_string(renyi_alpha);
  return DivergenceKernel{std::move(label), std::move(gen), normalized, cls, cert};
}

std::vector<std::string> kernel_names() {
  return {"kl",         "hellinger",  "variational", "harmonic",
          "bhattacharya", "triangular", "chi-square",  "renyi"};
}

std::vector<DivergenceKernel> catalog(Interval interval, double renyi_alpha) {
  std::vector<DivergenceKernel> out;
  for (const auto& name : kernel_names()) {
    out.push_back(make_kernel(name, interval, renyi_alpha));
  }
  return out;
}

DistributionPair::DistributionPair(std::vector<double> p, std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size() || p_.empty()) {
    throw DomainError(Errc::length_mismatch,
                      "p and q need equal nonzero lengths, got " +
                          std::to_string(p_.size()) + " and " +
                          std::to_string(q_.size()));
  }
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] > 0.0) || !(q_[i] > 0.0) || !std::isfinite(p_[i]) ||
        !std::isfinite(q_[i])) {
      throw DomainError(Errc::invalid_argument,
                        "entries must be finite and > 0 (index " +
                            std::to_string(i) + ")");
    }
  }
}

std::vector<double> DistributionPair::ratios() const {
  std::vector<double> r(p_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = q_[i] / p_[i];
  return r;
}

Interval DistributionPair::ratio_interval() const {
  const auto r = ratios();
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  return Interval(std::max(*lo - 1e-9, *lo * 0.5), *hi + 1e-9);
}

double csiszar_divergence(const DistributionPair& pair,
                          const DivergenceKernel& kernel) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double ratio = pair.q()[i] / pair.p()[i];
    const double v = kernel.generator(ratio);
    if (!std::isfinite(v)) {
      throw DomainError(Errc::ratio_out_of_domain,
                        "generator '" + kernel.name + "' not finite at " +
                            std::to_string(ratio));
    }
    s += pair.p()[i] * v;
  }
  return s;
}

double shannon_entropy(const std::vector<double>& p) {
  if (p.empty()) throw DomainError(Errc::not_a_probability_vector, "empty vector");
  double total = 0.0;
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(Errc::not_a_probability_vector, "entries must be > 0");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError(Errc::not_a_probability_vector,
                      "entries sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double v : p) h += v * std::log(1.0 / v);
  return h;
}

double kl_divergence(const DistributionPair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double q = pair.q()[i];
    s += q * std::log(q / pair.p()[i]);
  }
  return s;
}

bool DivergenceSandwich::holds(double slack) const noexcept {
  return lower_strong - lower_ck >= -slack && value - lower_strong >= -slack &&
         upper_converse - value >= -slack;
}

DivergenceSandwich divergence_bounds(const DistributionPair& pair,
                                     const DivergenceKernel& kernel,
                                     const Modulus& c) {
  require_certified(kernel, c);
  const auto x = pair.ratios();
  const Interval& dom = kernel.generator.interval();
  require_in_interval(x, dom);
  const auto& f = kernel.generator;
  const auto& p = pair.p();

  const double total_p = std::accumulate(p.begin(), p.end(), 0.0);
  const double total_q = std::accumulate(pair.q().begin(), pair.q().end(), 0.0);

  double value = 0.0;
  double second_moment = 0.0;
  double endpoint = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    value += p[j] * f(x[j]);
    second_moment += p[j] * x[j] * x[j];
    endpoint += p[j] * (dom.hi - x[j]) * (x[j] - dom.lo);
  }
  const double mean = total_q / total_p;

  DivergenceSandwich out;
  out.interval = dom;
  out.modulus = c.value();
  out.value = value;
  out.lower_ck = total_p * f(mean);
  out.correction_quadratic = c.value() * (second_moment - total_q * total_q / total_p);
  out.lower_strong = out.lower_ck + out.correction_quadratic;
  out.correction_converse = c.value() * endpoint;
  const double width = dom.width();
  out.upper_converse = (total_p * dom.hi - total_q) / width * f(dom.lo) +
                       (total_q - total_p * dom.lo) / width * f(dom.hi) -
                       out.correction_converse;
  return out;
}

DivergenceSandwich divergence_bounds(const DistributionPair& pair,
                                     const DivergenceKernel& kernel) {
  require_certified(kernel, Modulus::unchecked(0.0));
  return divergence_bounds(pair, kernel, Modulus::from_certificate(kernel.certificate));
}

DivergenceSandwich aggregated_divergence_bounds(const DistributionPair& pair,
                                                const StochasticMatrix& R,
                                                const DivergenceKernel& kernel,
                                                const Modulus& c) {
  require_certified(kernel, c);
  if (R.cols() != pair.size()) {
    throw DomainError(Errc::dimension_mismatch,
                      "R has " + std::to_string(R.cols()) + " columns, pair has " +
                          std::to_string(pair.size()) + " entries");
  }
  if (!R.is_column_stochastic()) {
    throw DomainError(Errc::not_stochastic, "R must be column stochastic");
  }
  const auto x = pair.ratios();
  require_in_interval(x, kernel.generator.interval());

  const auto& p = pair.p();
  const auto& q = pair.q();
  const std::size_t m = R.rows();
  const std::size_t l = R.cols();
  std::vector<double> b(m, 0.0);
  std::vector<double> y(m, 0.0);
  Matrix a(m, l);
  for (std::size_t i = 0; i < m; ++i) {
    double pr = 0.0;
    double qr = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
      pr += p[j] * R(i, j);
      qr += q[j] * R(i, j);
    }
    if (!(pr > 0.0)) {
      throw DomainError(Errc::zero_aggregate_weight,
                        "<p, r_" + std::to_string(i) + "> = " + std::to_string(pr));
    }
    b[i] = pr;
    y[i] = qr / pr;
    for (std::size_t j = 0; j < l; ++j) a(i, j) = p[j] * R(i, j) / pr;
  }

  const StochasticMatrix A(std::move(a), StochasticKind::row);
  const WeightedVector xw(x, p);
  const WeightedVector yw(std::move(y), std::move(b));
  const BoundChain chain = full_chain(xw, yw, A, kernel.generator, c);

  DivergenceSandwich out;
  out.interval = kernel.generator.interval();
  out.modulus = c.value();
  out.lower_ck = chain.lhs;
  out.correction_quadratic = chain.correction_quadratic;
  out.lower_strong = chain.lhs + chain.correction_quadratic;
  out.value = chain.plain_bound;
  out.correction_converse = chain.correction_converse;
  out.upper_converse = chain.converse_bound;
  return out;
}

DivergenceSandwich aggregated_divergence_bounds(const DistributionPair& pair,
                                                const StochasticMatrix& R,
                                                const DivergenceKernel& kernel) {
  require_certified(kernel, Modulus::unchecked(0.0));
  return aggregated_divergence_bounds(pair, R, kernel,
                                      Modulus::from_certificate(kernel.certificate));
}

}  // namespace sherman
