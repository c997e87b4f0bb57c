// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "random_instances.hpp"
#include "sherman/sherman.hpp"

namespace {

using namespace sherman;
using sherman::testing::Rng;

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// 1. lhs <= strong <= plain <= converse for random instances and kernels.
Outcome chain_property() {
  struct Kernel {
    const char* name;
    Interval dom;
  };
  const Kernel kernels[] = {{"square", {0.5, 1.0}},
                            {"pow:4", {0.5, 1.0}},
                            {"exp", {0.0, 1.0}},
                            {"xlogx", {0.1, 3.0}}};
  const auto start = Clock::now();
  Outcome out;
  double worst = INFINITY;
  int chains = 0;
  for (const auto& k : kernels) {
    const FunctionSpec f = make_function(k.name, k.dom);
    const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 2));
    Rng rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto inst = testing::weighted_instance(rng, 8, k.dom);
      const BoundChain chain = full_chain(inst.x, inst.y, inst.A, f, c);
      worst = std::min({worst, chain.strong_bound - chain.lhs,
                        chain.plain_bound - chain.strong_bound,
                        chain.converse_bound - chain.plain_bound});
      out.passed = out.passed && chain.monotone(kChainSlack);
      ++chains;
    }
  }
  const double elapsed = seconds_since(start);
  out.passed = out.passed && worst >= -1e-9 && elapsed < 10.0;
  out.detail = std::to_string(chains) + " chains, " +
               fmt("min gap %.3g, %.2f s", worst, elapsed);
  return out;
}

// 2. Strong Sherman is an identity for t^2 with c = 1.
Outcome equality_oracle() {
  const Interval dom(-2.0, 3.0);
  const FunctionSpec f = make_function("square", dom);
  const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 2));
  Outcome out;
  out.passed = c.value() == 1.0;
  double worst = 0.0;
  Rng rng(2002);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = testing::weighted_instance(rng, 8, dom);
    const BoundChain chain = full_chain(inst.x, inst.y, inst.A, f, c);
    worst = std::max(worst, std::abs(chain.lhs - chain.strong_bound));
  }
  out.passed = out.passed && worst <= 1e-12;
  out.detail = fmt("certified c = %.17g, max |lhs - strong| = %.3g", c.value(), worst);
  return out;
}

// 3. c = 0 reproduces classical Sherman and Lah-Ribaric, checked against
// direct summation from the raw (x, b, A).
Outcome classical_reduction() {
  struct Kernel {
    const char* name;
    Interval dom;
  };
  const Kernel kernels[] = {{"square", {-1.0, 2.0}}, {"exp", {0.0, 1.0}}, {"xlogx", {0.1, 3.0}}};
  Outcome out;
  double worst = 0.0;
  auto compare = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
  };
  for (const auto& k : kernels) {
    const FunctionSpec f = make_function(k.name, k.dom);
    const Modulus zero = Modulus::from_certificate(estimate_strong_modulus(f, 2)).lowered_to(0.0);
    Rng rng(3003);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t l = static_cast<std::size_t>(rng.integer(1, 8));
      const std::size_t m = static_cast<std::size_t>(rng.integer(1, 8));
      const auto x = rng.vector(l, k.dom.lo, k.dom.hi);
      const auto b = rng.vector(m, 0.1, 2.0);
      const StochasticMatrix A(testing::row_stochastic(rng, m, l), StochasticKind::row);

      std::vector<double> a(l, 0.0), y(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
          a[j] += b[i] * A.entries()(i, j);
          y[i] += A.entries()(i, j) * x[j];
        }
      }
      double lhs = 0.0, plain = 0.0, total = 0.0, moment = 0.0;
      for (std::size_t i = 0; i < m; ++i) lhs += b[i] * f(y[i]);
      for (std::size_t j = 0; j < l; ++j) {
        plain += a[j] * f(x[j]);
        total += a[j];
        moment += a[j] * x[j];
      }
      const double w = k.dom.hi - k.dom.lo;
      const double chord = (total * k.dom.hi - moment) / w * f(k.dom.lo) +
                           (moment - total * k.dom.lo) / w * f(k.dom.hi);

      const BoundChain chain =
          full_chain(WeightedVector(x, a), WeightedVector(y, b), A, f, zero);
      compare(chain.lhs, lhs);
      compare(chain.strong_bound, plain);
      compare(chain.plain_bound, plain);
      compare(chain.converse_bound, chord);
      out.passed = out.passed && chain.correction_quadratic == 0.0 &&
                   chain.correction_converse == 0.0 && lhs <= plain + 1e-12 &&
                   plain <= chord + 1e-12;

      std::vector<double> an(a);
      for (auto& v : an) v /= total;
      const LahRibaricTerms lr = lah_ribaric_strong(WeightedVector(x, an), f, zero);
      compare(lr.lhs, plain / total);
      compare(lr.rhs, chord / total);
    }
  }
  out.passed = out.passed && worst <= 1e-12;
  out.detail = fmt("max relative deviation %.3g", worst);
  return out;
}

// 4. Pointwise Fink identity for e^t on [0, 1].
Outcome fink_identity() {
  const FunctionSpec f = make_function("exp", {0.0, 1.0});
  QuadratureConfig quad;
  quad.abs_tol = 1e-9;
  const auto start = Clock::now();
  double worst = 0.0;
  Rng rng(4004);
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 50; ++i) {
      const FinkPointCheck chk = fink_identity_check(f, rng.uniform(0.0, 1.0), n, quad);
      worst = std::max(worst, std::abs(chk.residual));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-7 && elapsed < 5.0, fmt("max |residual| %.3g, %.2f s", worst, elapsed)};
}

// 5. Sherman-difference identity on verified instances.
Outcome sherman_difference() {
  const Interval dom(0.0, 1.0);
  Outcome out;
  double worst_exp = 0.0;
  double worst_poly = 0.0;
  int verified = 0;
  Rng rng(5005);
  const FunctionSpec e = make_function("exp", dom);
  while (verified < 100) {
    const auto inst = testing::weighted_instance(rng, 8, dom);
    if (!verify_weighted_majorization(inst.x, inst.y, inst.A, kWeightedTol).passed) continue;
    ++verified;
    worst_exp = std::max(worst_exp, std::abs(sherman_difference_identity(inst.x, inst.y, e, 3).residual));
  }
  struct Poly {
    const char* name;
    int n;
  };
  for (const Poly p : {Poly{"linear", 2}, Poly{"square", 3}, Poly{"cube", 4}, Poly{"square", 4}}) {
    const FunctionSpec f = make_function(p.name, dom);
    for (int trial = 0; trial < 100; ++trial) {
      const auto inst = testing::weighted_instance(rng, 8, dom);
      worst_poly = std::max(
          worst_poly, std::abs(sherman_difference_identity(inst.x, inst.y, f, p.n).residual));
    }
  }
  out.passed = worst_exp <= 1e-7 && worst_poly <= 1e-10;
  out.detail = fmt("e^t n=3 max |residual| %.3g, polynomial max |residual| %.3g", worst_exp,
                   worst_poly);
  return out;
}

// 6. Kernel sign for even n, and the n = 2 bound against strong Sherman.
Outcome even_kernel() {
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 2));
  Outcome out;
  double worst = 0.0;
  int nonnegative = 0;
  Rng rng(6006);
  for (int n : {2, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto inst = testing::weighted_instance(rng, 8, dom);
      if (check_kernel_condition(inst.x, inst.y, n, dom) == KernelSign::nonnegative) {
        ++nonnegative;
      } else {
        out.passed = false;
      }
      if (n == 2) {
        const HigherOrderBound hb = higher_order_sherman_bound(inst.x, inst.y, f, 2, c);
        const BoundChain chain = full_chain(inst.x, inst.y, inst.A, f, c);
        worst = std::max(worst,
                         std::abs(hb.lhs_with_correction - (chain.strong_bound - chain.lhs)));
        out.passed = out.passed && hb.holds && hb.rhs_boundary == 0.0;
      }
    }
  }
  out.passed = out.passed && worst <= 1e-10;
  out.detail = std::to_string(nonnegative) + "/200 nonnegative, " +
               fmt("n=2 max deviation from strong Sherman %.3g", worst);
  return out;
}

// 7. T-transform construction recovers a doubly stochastic witness.
Outcome majorization_construction() {
  Outcome out;
  double worst_residual = 0.0;
  Rng rng(7007);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 10));
    const auto x = rng.vector(n, -5.0, 5.0);
    const StochasticMatrix D(testing::doubly_stochastic(rng, n), StochasticKind::doubly);
    const auto y = apply_transpose(D, x);
    const StochasticMatrix A = construct_doubly_stochastic(x, y);
    const auto back = apply_transpose(A, x);
    for (std::size_t i = 0; i < n; ++i) {
      worst_residual = std::max(worst_residual, std::abs(back[i] - y[i]));
    }
    double min_entry = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) min_entry = std::min(min_entry, A.entries()(i, j));
    }
    out.passed = out.passed && A.is_row_stochastic(1e-12) && A.is_column_stochastic(1e-12) &&
                 min_entry >= 0.0;
  }
  out.passed = out.passed && worst_residual <= 1e-10;
  out.detail = fmt("max ||y - xA^T||_inf %.3g", worst_residual);
  return out;
}

// 8. Divergence sandwich for random positive pairs.
Outcome divergence_sandwich() {
  Outcome out;
  double worst_gap = INFINITY;
  double worst_chi = 0.0;
  Rng rng(8008);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 10));
    std::vector<double> p = rng.vector(n, 0.05, 1.0);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * rng.uniform(0.1, 10.0);
    const DistributionPair pair(p, q);
    for (const char* name : {"kl", "chi-square", "renyi", "triangular"}) {
      const DivergenceKernel k = make_kernel(name, pair.ratio_interval(), 2.0);
      const DivergenceSandwich s = divergence_bounds(pair, k);
      worst_gap = std::min({worst_gap, s.lower_strong - s.lower_ck, s.value - s.lower_strong,
                            s.upper_converse - s.value});
      out.passed = out.passed && s.holds(1e-9);
      if (std::string(name) == "chi-square") {
        worst_chi = std::max(worst_chi, std::abs(s.value - s.lower_strong));
      }
    }
  }
  out.passed = out.passed && worst_gap >= -1e-9 && worst_chi <= 1e-12;
  out.detail = fmt("min gap %.3g, chi-square max |value - lower_strong| %.3g", worst_gap,
                   worst_chi);
  return out;
}

// 9. Entropy range and KL nonnegativity.
Outcome entropy_bounds() {
  Outcome out;
  double worst_uniform = 0.0;
  double worst_range = 0.0;
  double min_kl = INFINITY;
  for (int n = 2; n <= 64; ++n) {
    const std::vector<double> u(static_cast<std::size_t>(n), 1.0 / n);
    worst_uniform = std::max(worst_uniform, std::abs(shannon_entropy(u) - std::log(n)));
  }
  Rng rng(9009);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 64));
    const auto p = testing::simplex_point(rng, n);
    const double h = shannon_entropy(p);
    worst_range = std::max({worst_range, -h, h - std::log(static_cast<double>(n))});
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 64));
    const auto p = testing::simplex_point(rng, n);
    const auto q = testing::simplex_point(rng, n);
    min_kl = std::min({min_kl, kl_divergence(DistributionPair(p, q)),
                       kl_divergence(DistributionPair(q, p))});
  }
  out.passed = worst_uniform <= 1e-12 && worst_range <= 1e-12 && min_kl >= -1e-12;
  out.detail = fmt("max |H(u_n) - ln n| %.3g, range excess %.3g, min KL %.3g", worst_uniform,
                   worst_range, min_kl);
  return out;
}

// 10. Divided differences: symmetry and the coincident-node limit.
Outcome divided_differences() {
  const FunctionSpec f = make_function("exp", {-0.01, 1.01});
  Outcome out;
  double worst_perm = 0.0;
  double worst_limit = 0.0;
  Rng rng(10010);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 6));
    std::vector<double> pts = rng.vector(k, 0.0, 1.0);
    if (k > 1 && rng.integer(0, 3) == 0) pts[1] = pts[0];
    const double ref = divided_difference(pts, f);
    std::vector<double> shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    worst_perm = std::max(worst_perm,
                          std::abs(divided_difference(shuffled, f) - ref) / std::abs(ref));
  }
  // Nodes z + (i - k/2) h, centred on the coincident point.
  const double h = 1e-4;
  for (int trial = 0; trial < 1000; ++trial) {
    const double z = rng.uniform(0.0, 1.0);
    for (int k : {1, 2}) {
      std::vector<double> same(static_cast<std::size_t>(k + 1), z);
      std::vector<double> apart;
      for (int i = 0; i <= k; ++i) apart.push_back(z + (i - 0.5 * k) * h);
      worst_limit = std::max(worst_limit, std::abs(divided_difference(same, f) -
                                                   divided_difference(apart, f)));
    }
  }
  out.passed = worst_perm <= 1e-12 && worst_limit <= 1e-4;
  out.detail = fmt("max relative permutation change %.3g, max |coincident - distinct| %.3g",
                   worst_perm, worst_limit);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"chain property", chain_property},
      {"equality oracle", equality_oracle},
      {"classical reduction", classical_reduction},
      {"fink identity", fink_identity},
      {"sherman-difference identity", sherman_difference},
      {"even-n kernel condition", even_kernel},
      {"majorization construction", majorization_construction},
      {"divergence sandwich", divergence_sandwich},
      {"entropy bounds", entropy_bounds},
      {"divided differences", divided_differences},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.passed ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    if (!o.passed) ++failures;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
