#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sherman/cli/cli.hpp"

namespace {

using sherman::cli::Command;
using sherman::cli::RunConfig;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("sherman-bounds");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("SHERMAN_BOUNDS_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

std::optional<sherman::Interval> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw sherman::cli::ValidationError("--interval expects a,b");
  }
  try {
    return sherman::Interval(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw sherman::cli::ValidationError("--interval expects two numbers a,b");
  } catch (const sherman::DomainError&) {
    throw sherman::cli::ValidationError("interval lo < hi (--interval)");
  }
}

std::optional<double> parse_modulus(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double c = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return c;
  } catch (const std::logic_error&) {
    throw sherman::cli::ValidationError("--modulus expects 'auto' or a number");
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Certified strong Sherman bounds, Fink identities and f-divergence sandwiches"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string kernel;
  std::string interval;
  std::string modulus = "auto";
  double alpha = 0.0;
  bool unchecked = false;
  RunConfig config;

  for (const auto* name : {"chain", "divergence", "majorize", "verify-identity"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", input, "JSON input (CSV p,q for divergence)")->required();
    sub->add_option("--output", output, "Write the report here instead of stdout");
    sub->add_option("--kernel", kernel, "Function or divergence kernel name");
    sub->add_option("--alpha", alpha, "Renyi order");
    sub->add_option("--interval", interval, "Domain a,b");
    sub->add_option("--modulus", modulus, "auto or an explicit c")->capture_default_str();
    sub->add_option("--order", config.order_n, "Order n")->capture_default_str();
    sub->add_option("--quad-tol", config.quad_abs_tol, "Quadrature abs tolerance")
        ->capture_default_str();
    sub->add_option("--quad-max-subdivisions", config.quad_max_subdivisions,
                    "Quadrature bisection budget")
        ->capture_default_str();
    sub->add_option("--grid", config.grid_size, "Modulus grid size")->capture_default_str();
    sub->add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
    sub->add_flag("--unchecked-modulus", unchecked,
                  "Accept an explicit modulus above the certified one");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sherman::cli::kExitParse;
  }

  sherman::cli::Report report;
  try {
    config.command = sherman::cli::command_from_string(app.get_subcommands().front()->get_name());
    config.input_path = input;
    if (!output.empty()) config.output_path = output;
    if (!kernel.empty()) config.kernel_name = kernel;
    if (alpha != 0.0) config.alpha = alpha;
    if (!interval.empty()) config.interval = parse_interval(interval);
    config.modulus = parse_modulus(modulus);
    config.unchecked_modulus = unchecked;
  } catch (const sherman::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sherman::cli::kExitParse;
  }

  spdlog::info("running {} on {}", to_string(config.command), input);
  report = sherman::cli::run(config);
  if (report.status == sherman::cli::ExitStatus::error) {
    spdlog::error("{}: {}", report.error_kind, report.error_message);
  }
  for (const auto& w : report.warnings) spdlog::warn("{}", w);

  const std::string text = report.dump();
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return sherman::cli::kExitParse;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return report.code;
}
