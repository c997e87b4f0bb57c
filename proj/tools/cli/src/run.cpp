#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <string>
#include <thread>

#include "sherman/bounds.hpp"
#include "sherman/cli/cli.hpp"
#include "sherman/divergence.hpp"
#include "sherman/fink.hpp"
#include "sherman/function_catalog.hpp"

namespace sherman::cli {

namespace {

using nlohmann::json;

constexpr int kSamplingChecks = 1000;
// Allowed |residual| for identity checks, in units of the quadrature abs_tol.
constexpr double kReportResidualFactor = 10.0;
constexpr double kPointResidualFactor = 100.0;

struct Outcome {
  json result = json::object();
  std::vector<std::string> warnings;
  bool violated = false;
};

json interval_json(const Interval& dom) { return json::array({dom.lo, dom.hi}); }

json certificate_json(const ModulusCertificate& cert) {
  return {{"order", cert.order},
          {"modulus", cert.modulus},
          {"grid_size", cert.grid_size},
          {"verdict", std::string(to_string(cert.verdict))},
          {"grid_minimum", cert.grid_minimum},
          {"argmin", cert.argmin}};
}

json modulus_json(const Modulus& c) {
  return {{"value", c.value()},
          {"order", c.order()},
          {"provenance", std::string(to_string(c.provenance()))}};
}

Interval hull(std::initializer_list<const std::vector<double>*> sets) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto* s : sets) {
    for (double v : *s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < hi)) {
    const double pad = 1e-9 * std::max(1.0, std::abs(lo));
    return Interval(lo - pad, hi + pad);
  }
  return Interval(lo, hi);
}

// Explicit moduli may lower the certified value; raising it needs
// --unchecked-modulus.
Modulus resolve_modulus(const ModulusCertificate& cert, const RunConfig& config) {
  if (config.modulus && config.unchecked_modulus) {
    return Modulus::unchecked(*config.modulus, cert.order);
  }
  const Modulus certified = Modulus::from_certificate(cert);
  return config.modulus ? certified.lowered_to(*config.modulus) : certified;
}

json chain_json(const BoundChain& chain) {
  return {{"lhs", chain.lhs},
          {"strong_bound", chain.strong_bound},
          {"plain_bound", chain.plain_bound},
          {"converse_bound", chain.converse_bound},
          {"correction_quadratic", chain.correction_quadratic},
          {"correction_converse", chain.correction_converse},
          {"modulus", chain.modulus},
          {"specialization", std::string(to_string(chain.specialization))},
          {"monotone", chain.monotone()}};
}

json sandwich_json(const DivergenceSandwich& s) {
  return {{"lower_ck", s.lower_ck},
          {"lower_strong", s.lower_strong},
          {"value", s.value},
          {"upper_converse", s.upper_converse},
          {"correction_quadratic", s.correction_quadratic},
          {"correction_converse", s.correction_converse},
          {"modulus", s.modulus},
          {"interval", interval_json(s.interval)},
          {"holds", s.holds()}};
}

json fink_report_json(const FinkReport& r) {
  return {{"order", r.order},
          {"lhs", r.lhs},
          {"boundary_terms", r.boundary_terms},
          {"integral_term", r.integral_term},
          {"residual", r.residual},
          {"quadrature_error", r.quadrature_error},
          {"kernel_condition", std::string(to_string(r.kernel_condition))}};
}

struct WeightedInstance {
  WeightedVector x;
  WeightedVector y;
  StochasticMatrix A;
};

WeightedInstance weighted_instance(const ChainInput& in, json& result) {
  WeightedInstance w{WeightedVector(in.x, in.a), WeightedVector(in.y, in.b),
                     StochasticMatrix(in.A, StochasticKind::row)};
  const WeightedCheck check = verify_weighted_majorization(w.x, w.y, w.A, kWeightedTol);
  result["verification"] = {{"passed", check.passed},
                            {"weight_residual", check.weight_residual},
                            {"point_residual", check.point_residual},
                            {"tolerance", kWeightedTol}};
  if (!check.passed) {
    throw DomainError(Errc::majorization_not_verified,
                      "a = bA or y = xA^T fails beyond tolerance");
  }
  return w;
}

Outcome run_chain(const ChainInput& in, const RunConfig& config) {
  Outcome out;
  const Interval dom = config.interval ? *config.interval
                       : in.interval  ? *in.interval
                                      : hull({&in.x, &in.y});
  const std::string name = config.kernel_name.value_or("square");
  const FunctionSpec f = make_function(name, dom);

  const WeightedInstance w = weighted_instance(in, out.result);
  const ModulusCertificate cert = estimate_strong_modulus(f, 2, config.grid_size);
  out.result["certificate"] = certificate_json(cert);
  const Modulus c = resolve_modulus(cert, config);
  out.result["modulus"] = modulus_json(c);

  const BoundChain chain = full_chain(w.x, w.y, w.A, f, c);
  json cj = chain_json(chain);
  cj["function"] = name;
  cj["interval"] = interval_json(dom);
  cj["l"] = w.x.size();
  cj["m"] = w.y.size();
  out.result["chain"] = cj;
  out.warnings = chain.warnings;

  if (c.value() > 0.0) {
    const SamplingVerdict s =
        is_n_strongly_convex(f, 2, c.value(), kSamplingChecks, config.seed);
    out.result["sampling_check"] = {{"passed", s.passed},
                                    {"samples", s.samples_tested},
                                    {"witness", s.witness},
                                    {"witness_value", s.witness_value}};
    if (!s.passed) {
      out.warnings.push_back("sampled divided difference below the modulus");
    }
  }
  out.violated = !chain.monotone() || chain.correction_quadratic < -kChainSlack;
  return out;
}

Outcome run_divergence(const DivergenceInput& in, const RunConfig& config) {
  Outcome out;
  const DistributionPair pair(in.p, in.q);
  const Interval dom = config.interval.value_or(pair.ratio_interval());
  const DivergenceKernel kernel = make_kernel(config.kernel_name.value_or("kl"), dom,
                                              config.alpha.value_or(kDefaultRenyiAlpha));
  out.result["kernel"] = {{"name", kernel.name},
                          {"normalized", kernel.normalized},
                          {"convexity", std::string(to_string(kernel.convexity))},
                          {"interval", interval_json(dom)}};
  out.result["certificate"] = certificate_json(kernel.certificate);
  out.result["value"] = csiszar_divergence(pair, kernel);

  auto is_probability = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e;
    return std::abs(s - 1.0) <= 1e-12;
  };
  if (is_probability(in.p) && is_probability(in.q)) {
    out.result["shannon_entropy_p"] = shannon_entropy(in.p);
    out.result["shannon_entropy_q"] = shannon_entropy(in.q);
    out.result["kl_divergence"] = kl_divergence(pair);
  }

  if (kernel.convexity != ConvexityClass::strongly_convex) {
    out.result["sandwich"] = nullptr;
    out.warnings.push_back("kernel '" + kernel.name + "' is " +
                           std::string(to_string(kernel.convexity)) +
                           " on the ratio interval; bounds need strong convexity");
    return out;
  }
  const Modulus c = resolve_modulus(kernel.certificate, config);
  out.result["modulus"] = modulus_json(c);
  const DivergenceSandwich s =
      in.R ? aggregated_divergence_bounds(pair, StochasticMatrix(*in.R, StochasticKind::column),
                                          kernel, c)
           : divergence_bounds(pair, kernel, c);
  json sj = sandwich_json(s);
  sj["aggregated"] = in.R.has_value();
  sj["m"] = in.R ? in.R->rows() : std::size_t{1};
  out.result["sandwich"] = sj;
  out.violated = !s.holds();
  return out;
}

Outcome run_majorize(const MajorizeInput& in, const RunConfig&) {
  Outcome out;
  const MajorizationCert cert = certify_majorization(in.x, in.y);
  out.result["relation"] = cert.holds() ? "holds" : "fails";
  out.result["witness_k"] = cert.witness_k ? json(*cert.witness_k) : json(nullptr);
  out.result["tolerance"] = kMajorizationTol;
  if (cert.matrix) {
    const auto yy = apply_transpose(*cert.matrix, in.x);
    double residual = 0.0;
    for (std::size_t i = 0; i < yy.size(); ++i) {
      residual = std::max(residual, std::abs(yy[i] - in.y[i]));
    }
    out.result["matrix"] = cert.matrix->entries().to_rows();
    out.result["residual"] = residual;
  } else {
    out.result["matrix"] = nullptr;
  }
  return out;
}

Outcome run_identity(const IdentityInput& in, const RunConfig& config) {
  Outcome out;
  std::vector<double> all_points = in.points;
  if (in.instance) {
    all_points.insert(all_points.end(), in.instance->x.begin(), in.instance->x.end());
    all_points.insert(all_points.end(), in.instance->y.begin(), in.instance->y.end());
  }
  const Interval dom = config.interval ? *config.interval
                       : in.interval  ? *in.interval
                                      : hull({&all_points});
  const std::string name = config.kernel_name.value_or("exp");
  const FunctionSpec f = make_function(name, dom);
  const int n = config.order_n;
  QuadratureConfig quad;
  quad.abs_tol = config.quad_abs_tol;
  quad.max_subdivisions = config.quad_max_subdivisions;
  out.result["function"] = name;
  out.result["interval"] = interval_json(dom);
  out.result["order"] = n;

  if (in.instance) {
    const WeightedInstance w = weighted_instance(*in.instance, out.result);
    const FinkReport report = sherman_difference_identity(w.x, w.y, f, n, quad);
    out.result["report"] = fink_report_json(report);
    if (std::abs(report.residual) > kReportResidualFactor * quad.abs_tol) {
      out.violated = true;
    }

    const ModulusCertificate cert = estimate_strong_modulus(f, n, config.grid_size);
    out.result["certificate"] = certificate_json(cert);
    if (cert.verdict != CertVerdict::certified && !(config.modulus && config.unchecked_modulus)) {
      out.result["higher_order_bound"] = nullptr;
      out.warnings.push_back("f^(n) is not nonnegative on the grid; no higher-order bound");
    } else if (report.kernel_condition == KernelSign::indefinite) {
      out.result["higher_order_bound"] = nullptr;
      out.warnings.push_back("kernel changes sign; no higher-order bound");
    } else {
      const Modulus c = resolve_modulus(cert, config);
      out.result["modulus"] = modulus_json(c);
      const HigherOrderBound bound = higher_order_sherman_bound(w.x, w.y, f, n, c, quad);
      out.result["higher_order_bound"] = {{"lhs_with_correction", bound.lhs_with_correction},
                                          {"rhs_boundary", bound.rhs_boundary},
                                          {"integral_term", bound.integral_term},
                                          {"kernel_condition",
                                           std::string(to_string(bound.kernel_condition))},
                                          {"holds", bound.holds}};
      out.violated = out.violated || !bound.holds;
    }
  }

  json points = json::array();
  for (double x : in.points) {
    const FinkPointCheck chk = fink_identity_check(f, x, n, quad);
    points.push_back({{"x", chk.x},
                      {"value", chk.value},
                      {"mean_term", chk.mean_term},
                      {"boundary_term", chk.boundary_term},
                      {"kernel_term", chk.kernel_term},
                      {"residual", chk.residual}});
    if (std::abs(chk.residual) > kPointResidualFactor * quad.abs_tol) out.violated = true;
  }
  out.result["points"] = points;
  return out;
}

Outcome run_instance(const Instance& instance, const RunConfig& config) {
  return std::visit(
      [&](const auto& in) -> Outcome {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, ChainInput>) return run_chain(in, config);
        if constexpr (std::is_same_v<T, DivergenceInput>) return run_divergence(in, config);
        if constexpr (std::is_same_v<T, MajorizeInput>) return run_majorize(in, config);
        if constexpr (std::is_same_v<T, IdentityInput>) return run_identity(in, config);
      },
      instance);
}

json config_json(const RunConfig& c) {
  const QuadratureConfig quad;
  json j;
  j["input"] = c.input_path.string();
  j["output"] = c.output_path ? json(c.output_path->string()) : json(nullptr);
  j["kernel"] = c.kernel_name ? json(*c.kernel_name) : json(nullptr);
  j["alpha"] = c.alpha ? json(*c.alpha) : json(nullptr);
  j["interval"] = c.interval ? interval_json(*c.interval) : json(nullptr);
  j["modulus"] = c.modulus ? json(*c.modulus) : json("auto");
  j["unchecked_modulus"] = c.unchecked_modulus;
  j["order"] = c.order_n;
  j["grid"] = c.grid_size;
  j["seed"] = c.seed;
  j["quadrature"] = {{"abs_tol", c.quad_abs_tol},
                     {"rel_tol", quad.rel_tol},
                     {"max_subdivisions", c.quad_max_subdivisions}};
  j["tolerances"] = {{"chain_slack", kChainSlack},
                     {"weighted_majorization", kWeightedTol},
                     {"majorization", kMajorizationTol},
                     {"divided_difference", kDividedDifferenceTol},
                     {"kernel_sign", kKernelSignTol},
                     {"stochastic_sum", StochasticMatrix::kSumTol},
                     {"identity_residual_factor", kReportResidualFactor},
                     {"point_residual_factor", kPointResidualFactor}};
  j["sampling_checks"] = kSamplingChecks;
  return j;
}

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

Failure classify(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const ParseError& err) {
    return {kExitParse, "ParseError", err.what()};
  } catch (const ValidationError& err) {
    return {kExitParse, "ValidationError", err.what()};
  } catch (const QuadratureFailure& err) {
    return {kExitQuadrature, "QuadratureFailure", err.what()};
  } catch (const DomainError& err) {
    return {kExitDomain, std::string(to_string(err.code())), err.what()};
  } catch (const std::exception& err) {
    return {kExitDomain, "Error", err.what()};
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::chain: return "chain";
    case Command::divergence: return "divergence";
    case Command::majorize: return "majorize";
    case Command::verify_identity: return "verify-identity";
  }
  return "chain";
}

Command command_from_string(std::string_view name) {
  if (name == "chain") return Command::chain;
  if (name == "divergence") return Command::divergence;
  if (name == "majorize") return Command::majorize;
  if (name == "verify-identity") return Command::verify_identity;
  throw ValidationError("unknown command '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (order_n < 1) throw ValidationError("order_n >= 1");
  if (!(quad_abs_tol > 0.0)) throw ValidationError("quad_abs_tol > 0");
  if (quad_max_subdivisions < 1) throw ValidationError("quad_max_subdivisions >= 1");
  if (grid_size < 2) throw ValidationError("grid_size >= 2");
  if (modulus && !(*modulus >= 0.0 && std::isfinite(*modulus))) {
    throw ValidationError("modulus >= 0");
  }
  if (alpha && !(*alpha > 1.0)) throw ValidationError("alpha > 1");
}

Report run(const RunConfig& config) {
  Report report;
  report.command = config.command;
  report.config = config_json(config);

  auto fail = [&](const Failure& f) {
    report.status = ExitStatus::error;
    report.code = f.code;
    report.error_kind = f.kind;
    report.error_message = f.message;
  };

  ParsedInput input;
  try {
    config.validate();
    input = parse_input(config.input_path, config.command);
  } catch (...) {
    fail(classify(std::current_exception()));
    return report;
  }
  report.config["input_format"] = input.format;
  report.config["batch"] = input.batch;

  // Instances share nothing, so they run concurrently; results keep input
  // order.
  const std::size_t n = input.instances.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<Outcome> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  for (std::size_t start = 0; start < n; start += workers) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = start; i < std::min(n, start + workers); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] {
        try {
          outcomes[i] = run_instance(input.instances[i], config);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }));
    }
    for (auto& job : jobs) job.get();
  }

  bool violated = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string tag = input.batch ? "[" + std::to_string(i) + "] " : "";
    json entry = outcomes[i].result;
    if (errors[i]) {
      const Failure f = classify(errors[i]);
      entry["error"] = {{"kind", f.kind}, {"message", f.message}};
      if (report.status != ExitStatus::error) fail(f);
    }
    entry["violated"] = outcomes[i].violated;
    violated = violated || outcomes[i].violated;
    for (const auto& w : outcomes[i].warnings) report.warnings.push_back(tag + w);
    report.results.push_back(std::move(entry));
  }
  if (report.status != ExitStatus::error && violated) {
    report.status = ExitStatus::violated;
    report.code = kExitViolated;
  }
  return report;
}

}  // namespace sherman::cli
