#include "sherman/function_catalog.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// d^k/dt^k t^p
double power_derivative(double p, int k, double t) {
  double coef = 1.0;
  for (int i = 0; i < k; ++i) coef *= p - i;
  if (coef == 0.0) return 0.0;
  return coef * std::pow(t, p - k);
}

void require_positive(std::string_view name, const Interval& dom) {
  if (dom.lo <= 0.0) {
    throw DomainError(Errc::invalid_argument,
                      std::string(name) + " needs an interval with lo > 0");
  }
}

}  // namespace

FunctionSpec make_function(std::string_view name, Interval dom) {
  const std::string id(name);
  if (name == "square" || name == "cube" || name == "linear") {
    const double p = name == "square" ? 2.0 : name == "cube" ? 3.0 : 1.0;
    return FunctionSpec::from_family(id, dom, kCatalogMaxOrder,
                                     [p](int k, double t) {
                                       return power_derivative(p, k, t);
                                     });
  }
  if (name == "negsquare") {
    return FunctionSpec::from_family(id, dom, kCatalogMaxOrder,
                                     [](int k, double t) {
                                       return -power_derivative(2.0, k, t);
                                     });
  }
  if (name == "exp") {
    return FunctionSpec::from_family(
        id, dom, kCatalogMaxOrder,
        [](int, double t) { return std::exp(t); });
  }
  if (name == "xlogx") {
    require_positive(name, dom);
    return FunctionSpec::from_family(
        id, dom, kCatalogMaxOrder, [](int k, double t) {
          if (k == 0) return t * std::log(t);
          if (k == 1) return std::log(t) + 1.0;
          // (-1)^k (k-2)! t^{1-k}
          const double sign = (k % 2 == 0) ? 1.0 : -1.0;
          return sign * factorial(k - 2) * std::pow(t, 1 - k);
        });
  }
  if (name == "neglog") {
    require_positive(name, dom);
    return FunctionSpec::from_family(
        id, dom, kCatalogMaxOrder, [](int k, double t) {
          if (k == 0) return -std::log(t);
          // (-1)^k (k-1)! t^{-k}
          const double sign = (k % 2 == 0) ? 1.0 : -1.0;
          return sign * factorial(k - 1) * std::pow(t, -k);
        });
  }
  if (name.starts_with("pow:")) {
    const std::string_view arg = name.substr(4);
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || !std::isfinite(p)) {
      throw DomainError(Errc::invalid_argument,
                        "bad exponent in '" + id + "'");
    }
    if (p != std::floor(p) || p < 0.0) require_positive(name, dom);
    return FunctionSpec::from_family(id, dom, kCatalogMaxOrder,
                                     [p](int k, double t) {
                                       return power_derivative(p, k, t);
                                     });
  }
  throw DomainError(Errc::invalid_argument, "unknown function '" + id + "'");
}

std::vector<std::string> function_names() {
  return {"square", "cube", "linear", "negsquare",
          "exp",    "xlogx", "neglog", "pow:<alpha>"};
}

}  // namespace sherman
