#include <cmath>

#include <gtest/gtest.h>

#include "expect_errc.hpp"
#include "random_instances.hpp"
#include "sherman/divergence.hpp"

namespace sherman {
namespace {

DistributionPair half_pair(double q0) { return DistributionPair({0.5, 0.5}, {q0, 1.0 - q0}); }

TEST(Csiszar, ChiSquareValue) {
  const DistributionPair pair = half_pair(0.8);
  const DivergenceKernel k = make_kernel("chi-square", pair.ratio_interval());
  EXPECT_NEAR(csiszar_divergence(pair, k), 0.36, 1e-15);
}

TEST(Csiszar, KlValue) {
  const DistributionPair pair = half_pair(0.9);
  const double want = 0.9 * std::log(1.8) + 0.1 * std::log(0.2);
  EXPECT_NEAR(csiszar_divergence(pair, make_kernel("kl", pair.ratio_interval())), want, 1e-15);
  EXPECT_NEAR(kl_divergence(pair), want, 1e-15);
}

TEST(Csiszar, HellingerAndTriangular) {
  const DistributionPair pair = half_pair(0.8);
  const Interval dom = pair.ratio_interval();
  // sum (sqrt q - sqrt p)^2
  const double hel = 0.5 * (std::pow(std::sqrt(0.8) - std::sqrt(0.5), 2) +
                            std::pow(std::sqrt(0.2) - std::sqrt(0.5), 2));
  EXPECT_NEAR(csiszar_divergence(pair, make_kernel("hellinger", dom)), hel, 1e-15);
  // sum (q - p)^2 / (q + p)
  const double tri = 0.09 / 1.3 + 0.09 / 0.7;
  EXPECT_NEAR(csiszar_divergence(pair, make_kernel("triangular", dom)), tri, 1e-15);
  EXPECT_NEAR(csiszar_divergence(pair, make_kernel("variational", dom)), 0.6, 1e-15);
}

TEST(Csiszar, CatalogMatchesExplicitSums) {
  testing::Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 10));
    const auto p = rng.vector(n, 0.05, 1.0);
    const auto q = rng.vector(n, 0.05, 1.0);
    const DistributionPair pair(p, q);
    const Interval dom = pair.ratio_interval();
    double kl = 0, hel = 0, var = 0, har = 0, bha = 0, tri = 0, chi = 0, ren = 0;
    for (std::size_t i = 0; i < n; ++i) {
      kl += q[i] * std::log(q[i] / p[i]);
      hel += 0.5 * std::pow(std::sqrt(p[i]) - std::sqrt(q[i]), 2);
      var += std::abs(q[i] - p[i]);
      har += 2 * p[i] * q[i] / (p[i] + q[i]);
      bha -= std::sqrt(p[i] * q[i]);
      tri += (q[i] - p[i]) * (q[i] - p[i]) / (q[i] + p[i]);
      chi += (q[i] - p[i]) * (q[i] - p[i]) / p[i];
      ren += std::pow(q[i], 3.0) * std::pow(p[i], -2.0);
    }
    const std::pair<const char*, double> want[] = {
        {"kl", kl},  {"hellinger", hel},  {"variational", var}, {"harmonic", har},
        {"bhattacharya", bha}, {"triangular", tri}, {"chi-square", chi}, {"renyi", ren}};
    for (const auto& [name, value] : want) {
      const double got = csiszar_divergence(pair, make_kernel(name, dom, 3.0));
      EXPECT_NEAR(got, value, 1e-12 * std::max(1.0, std::abs(value))) << name;
    }
  }
}

TEST(Entropy, KnownValue) {
  EXPECT_NEAR(shannon_entropy({0.25, 0.75}), 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0),
              1e-15);
  EXPECT_ERRC(shannon_entropy({0.5, 0.6}), Errc::not_a_probability_vector);
  EXPECT_ERRC(shannon_entropy({1.0, 0.0}), Errc::not_a_probability_vector);
}

TEST(Kernels, ConvexityClasses) {
  const Interval dom(0.1, 10.0);
  EXPECT_EQ(make_kernel("kl", dom).convexity, ConvexityClass::strongly_convex);
  EXPECT_EQ(make_kernel("chi-square", dom).convexity, ConvexityClass::strongly_convex);
  EXPECT_EQ(make_kernel("variational", dom).convexity, ConvexityClass::convex_only);
  EXPECT_EQ(make_kernel("harmonic", dom).convexity, ConvexityClass::nonconvex);
  for (const auto& k : catalog(dom)) {
    const bool unit_at_one =
        k.name == "harmonic" || k.name == "bhattacharya" || k.name.starts_with("renyi");
    EXPECT_EQ(k.normalized, !unit_at_one) << k.name;
  }
  EXPECT_EQ(make_kernel("renyi", dom, 2.0).generator(2.0), 4.0);
  EXPECT_EQ(make_kernel("hellinger", dom).generator(1.0), 0.0);
  EXPECT_ERRC(make_kernel("renyi", dom, 1.0), Errc::invalid_argument);
  EXPECT_ERRC(make_kernel("kl", Interval(0.0, 1.0)), Errc::invalid_argument);
  EXPECT_ERRC(make_kernel("nope", dom), Errc::invalid_argument);
}

TEST(Pair, Validation) {
  EXPECT_ERRC(DistributionPair({0.5}, {0.5, 0.5}), Errc::length_mismatch);
  EXPECT_ERRC(DistributionPair({0.5, 0.0}, {0.5, 0.5}), Errc::invalid_argument);
  const DistributionPair pair({1.0, 2.0}, {3.0, 1.0});
  EXPECT_EQ(pair.ratios(), (std::vector<double>{3.0, 0.5}));
}

TEST(Sandwich, EqualDistributionsCollapse) {
  const DistributionPair pair({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5});
  const DivergenceSandwich s = divergence_bounds(pair, make_kernel("kl", pair.ratio_interval()));
  EXPECT_NEAR(s.value, 0.0, 1e-15);
  EXPECT_NEAR(s.lower_ck, 0.0, 1e-15);
  EXPECT_NEAR(s.upper_converse, 0.0, 1e-9);
  EXPECT_TRUE(s.holds());
}

TEST(Sandwich, ChiSquareLowerBoundIsTight) {
  const DistributionPair pair({0.2, 0.3, 0.5}, {0.5, 0.1, 0.4});
  const DivergenceSandwich s =
      divergence_bounds(pair, make_kernel("chi-square", pair.ratio_interval()));
  EXPECT_EQ(s.modulus, 1.0);
  EXPECT_NEAR(s.value, s.lower_strong, 1e-15);
  EXPECT_TRUE(s.holds());
}

TEST(Sandwich, RandomPairs) {
  testing::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 8));
    const auto p = rng.vector(n, 0.1, 1.0);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * rng.uniform(0.2, 5.0);
    const DistributionPair pair(p, q);
    for (const char* name : {"kl", "hellinger", "triangular", "renyi"}) {
      const DivergenceSandwich s =
          divergence_bounds(pair, make_kernel(name, pair.ratio_interval()));
      EXPECT_TRUE(s.holds()) << name;
    }
  }
}

TEST(Sandwich, ModulusChecks) {
  const DistributionPair pair = half_pair(0.8);
  const DivergenceKernel kl = make_kernel("kl", pair.ratio_interval());
  EXPECT_ERRC(divergence_bounds(pair, make_kernel("variational", pair.ratio_interval())),
              Errc::modulus_not_certified);
  EXPECT_ERRC(divergence_bounds(pair, kl, Modulus::unchecked(0.1, 3)), Errc::invalid_argument);
  // Ratios 1.6 and 0.4 fall outside [1, 2].
  EXPECT_ERRC(divergence_bounds(pair, make_kernel("kl", Interval(1.0, 2.0))),
              Errc::ratio_out_of_domain);
}

TEST(Aggregated, IdentityRMatchesDirectUpperBound) {
  const DistributionPair pair({0.2, 0.3, 0.5}, {0.5, 0.1, 0.4});
  const DivergenceKernel k = make_kernel("kl", pair.ratio_interval());
  const StochasticMatrix R(Matrix::identity(3), StochasticKind::column);
  const DivergenceSandwich agg = aggregated_divergence_bounds(pair, R, k);
  const DivergenceSandwich direct = divergence_bounds(pair, k);
  EXPECT_NEAR(agg.value, direct.value, 1e-15);
  EXPECT_NEAR(agg.upper_converse, direct.upper_converse, 1e-14);
  EXPECT_NEAR(agg.lower_ck, agg.value, 1e-15);
  EXPECT_TRUE(agg.holds());
}

TEST(Aggregated, SingleRowIsCsiszarKorner) {
  const DistributionPair pair({0.2, 0.3, 0.5}, {0.5, 0.1, 0.4});
  const DivergenceKernel k = make_kernel("kl", pair.ratio_interval());
  const StochasticMatrix R(Matrix::from_rows({{1.0, 1.0, 1.0}}), StochasticKind::column);
  const DivergenceSandwich agg = aggregated_divergence_bounds(pair, R, k);
  const DivergenceSandwich direct = divergence_bounds(pair, k);
  EXPECT_NEAR(agg.lower_ck, direct.lower_ck, 1e-15);
  EXPECT_NEAR(agg.lower_strong, direct.lower_strong, 1e-14);
}

TEST(Aggregated, RandomPartitions) {
  testing::Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 8));
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 4));
    const auto p = rng.vector(n, 0.1, 1.0);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * rng.uniform(0.2, 5.0);
    const DistributionPair pair(p, q);
    Matrix cols = testing::row_stochastic(rng, n, m);
    Matrix R(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) R(i, j) = cols(j, i);
    }
    const DivergenceKernel k = make_kernel("kl", pair.ratio_interval());
    try {
      const DivergenceSandwich s =
          aggregated_divergence_bounds(pair, StochasticMatrix(R, StochasticKind::column), k);
      EXPECT_TRUE(s.holds());
    } catch (const DomainError& e) {
      EXPECT_EQ(e.code(), Errc::zero_aggregate_weight);
    }
  }
}

TEST(Aggregated, EmptyRowRejected) {
  const DistributionPair pair({0.5, 0.5}, {0.9, 0.1});
  const StochasticMatrix R(Matrix::from_rows({{1.0, 1.0}, {0.0, 0.0}}), StochasticKind::column);
  EXPECT_ERRC(aggregated_divergence_bounds(pair, R, make_kernel("kl", pair.ratio_interval())),
              Errc::zero_aggregate_weight);
}

}  // namespace
}  // namespace sherman
