#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "expect_errc.hpp"
#include "random_instances.hpp"
#include "sherman/bounds.hpp"
#include "sherman/fink.hpp"
#include "sherman/function_catalog.hpp"
#include "sherman/quadrature.hpp"

namespace sherman {
namespace {

TEST(Quadrature, SmoothIntegrand) {
  const QuadratureResult r = integrate([](double t) { return std::exp(t); }, 0.0, 1.0, {});
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
  EXPECT_LE(r.error_estimate, 1e-9);
}

TEST(Quadrature, KinkAtBreakpoint) {
  const double cuts[] = {0.0, 0.3, 1.0};
  const QuadratureResult r = integrate([](double t) { return std::abs(t - 0.3); }, cuts, {});
  EXPECT_NEAR(r.value, 0.29, 1e-15);
}

TEST(Quadrature, JumpWithoutBreakpointStillConverges) {
  const QuadratureResult r =
      integrate([](double t) { return t < 1.0 / 3.0 ? 1.0 : 0.0; }, 0.0, 1.0, {});
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-9);
}

TEST(Quadrature, BudgetExhaustionThrows) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 3;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-14;
  EXPECT_THROW(integrate([](double t) { return 1.0 / std::sqrt(std::abs(t - 0.123)); }, 0.0,
                         1.0, cfg),
               QuadratureFailure);
}

TEST(Quadrature, InvalidConfig) {
  QuadratureConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_ERRC(integrate([](double) { return 1.0; }, 0.0, 1.0, cfg), Errc::invalid_argument);
}

TEST(FinkKernel, PiecewiseDefinition) {
  const Interval dom(0.0, 1.0);
  EXPECT_DOUBLE_EQ(fink_kernel(0.2, 0.5, dom), 0.2);
  EXPECT_DOUBLE_EQ(fink_kernel(0.5, 0.5, dom), 0.5);
  EXPECT_DOUBLE_EQ(fink_kernel(0.7, 0.5, dom), -0.3);
  EXPECT_ERRC(fink_kernel(0.2, 1.5, dom), Errc::out_of_interval);
}

TEST(FinkIdentity, OrderOneHandWorked) {
  // f = t^2 on [0, 1], x = 1/2: mean 1/3, kernel integral -1/12.
  const FinkPointCheck chk = fink_identity_check(make_function("square", {0.0, 1.0}), 0.5, 1);
  EXPECT_NEAR(chk.mean_term, 1.0 / 3.0, 1e-14);
  EXPECT_EQ(chk.boundary_term, 0.0);
  EXPECT_NEAR(chk.kernel_term, -1.0 / 12.0, 1e-12);
  EXPECT_NEAR(chk.residual, 0.0, 1e-12);
}

TEST(FinkIdentity, EndpointsAndHigherOrders) {
  const FunctionSpec f = make_function("xlogx", {0.5, 2.0});
  for (int n = 1; n <= 5; ++n) {
    for (double x : {0.5, 1.0, 1.7, 2.0}) {
      EXPECT_NEAR(fink_identity_check(f, x, n).residual, 0.0, 1e-9) << n << " " << x;
    }
  }
}

TEST(FinkIdentity, MissingDerivative) {
  const FunctionSpec f("f", {0.0, 1.0}, [](double t) { return t; },
                       {[](double) { return 1.0; }});
  EXPECT_ERRC(fink_identity_check(f, 0.5, 2), Errc::missing_derivative);
}

TEST(ShermanDifference, OrderTwoIsPureIntegral) {
  const FunctionSpec f = make_function("square", {0.0, 1.0});
  const WeightedVector x({0.0, 1.0}, {0.5, 0.5});
  const WeightedVector y({0.5}, {1.0});
  const FinkReport r = sherman_difference_identity(x, y, f, 2);
  EXPECT_DOUBLE_EQ(r.lhs, 0.25);
  EXPECT_EQ(r.boundary_terms, 0.0);
  EXPECT_NEAR(r.integral_term, 0.25, 1e-14);
  EXPECT_EQ(r.kernel_condition, KernelSign::nonnegative);
}

TEST(ShermanDifference, RequiresBalancedPair) {
  const FunctionSpec f = make_function("exp", {0.0, 1.0});
  const WeightedVector x({0.0, 1.0}, {0.5, 0.5});
  EXPECT_ERRC(sherman_difference_identity(x, WeightedVector({0.6}, {1.0}), f, 3),
              Errc::majorization_not_verified);
  EXPECT_ERRC(sherman_difference_identity(x, WeightedVector({0.5}, {2.0}), f, 3),
              Errc::majorization_not_verified);
}

TEST(ShermanDifference, RandomInstances) {
  testing::Rng rng(29);
  const Interval dom(0.2, 2.5);
  const FunctionSpec f = make_function("neglog", dom);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto inst = testing::weighted_instance(rng, 6, dom);
      EXPECT_NEAR(sherman_difference_identity(inst.x, inst.y, f, n).residual, 0.0, 1e-8);
    }
  }
}

TEST(KernelCondition, EvenOrdersNonnegative) {
  testing::Rng rng(31);
  const Interval dom(0.0, 1.0);
  for (int n : {2, 4, 6}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto inst = testing::weighted_instance(rng, 6, dom);
      EXPECT_EQ(check_kernel_condition(inst.x, inst.y, n, dom), KernelSign::nonnegative);
    }
  }
}

TEST(KernelCondition, OddOrderCanChangeSign) {
  const Interval dom(0.0, 1.0);
  const WeightedVector x({0.1, 0.9}, {0.5, 0.5});
  const WeightedVector y({0.5}, {1.0});
  EXPECT_EQ(check_kernel_condition(x, y, 3, dom), KernelSign::indefinite);
}

TEST(HigherOrderBound, OrderTwoAgreesWithStrongSherman) {
  testing::Rng rng(37);
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 2));
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::weighted_instance(rng, 6, dom);
    const HigherOrderBound hb = higher_order_sherman_bound(inst.x, inst.y, f, 2, c);
    const BoundChain chain = full_chain(inst.x, inst.y, inst.A, f, c);
    EXPECT_NEAR(hb.lhs_with_correction, chain.strong_bound - chain.lhs, 1e-10);
    EXPECT_TRUE(hb.holds);
  }
}

TEST(HigherOrderBound, OrderFour) {
  testing::Rng rng(41);
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  const Modulus c = Modulus::from_certificate(estimate_strong_modulus(f, 4));
  EXPECT_NEAR(c.value(), 1.0 / 24.0, 1e-15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::weighted_instance(rng, 6, dom);
    const HigherOrderBound hb = higher_order_sherman_bound(inst.x, inst.y, f, 4, c);
    EXPECT_TRUE(hb.holds);
    EXPECT_GE(hb.integral_term, -1e-12);
    EXPECT_NEAR(hb.residual, 0.0, 1e-9);
  }
}

TEST(HigherOrderBound, Errors) {
  const Interval dom(0.0, 1.0);
  const FunctionSpec f = make_function("exp", dom);
  const WeightedVector x({0.1, 0.9}, {0.5, 0.5});
  const WeightedVector y({0.5}, {1.0});
  const Modulus c2 = Modulus::from_certificate(estimate_strong_modulus(f, 2));
  EXPECT_ERRC(higher_order_sherman_bound(x, y, f, 3, c2), Errc::invalid_argument);
  const Modulus c3 = Modulus::from_certificate(estimate_strong_modulus(f, 3));
  EXPECT_ERRC(higher_order_sherman_bound(x, y, f, 3, c3), Errc::kernel_condition_indefinite);
}

}  // namespace
}  // namespace sherman
