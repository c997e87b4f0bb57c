#pragma once

// Command-line front end: input parsing, dispatch and JSON reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sherman/convexity.hpp"
#include "sherman/errors.hpp"
#include "sherman/majorization.hpp"

namespace sherman::cli {

inline constexpr int kSchemaVersion = 1;

enum class Command { chain, divergence, majorize, verify_identity };

std::string_view to_string(Command c) noexcept;
/// Throws ValidationError for unknown names.
Command command_from_string(std::string_view name);

struct RunConfig {
  Command command = Command::chain;
  std::filesystem::path input_path;
  std::optional<std::string> kernel_name;
  /// Rényi order for the `renyi` divergence kernel.
  std::optional<double> alpha;
  std::optional<Interval> interval;
  /// nullopt means "auto": use the certified modulus.
  std::optional<double> modulus;
  /// Allow an explicit modulus above the certified one.
  bool unchecked_modulus = false;
  int order_n = 2;
  double quad_abs_tol = 1e-9;
  int quad_max_subdivisions = 2000;
  int grid_size = kDefaultModulusGrid;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output_path;

  /// Throws ValidationError when an invariant does not hold.
  void validate() const;
};

/// Malformed input; message carries the line or field location.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a module invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct ChainInput {
  std::vector<double> x;
  std::vector<double> a;
  std::vector<double> y;
  std::vector<double> b;
  Matrix A;
  std::optional<Interval> interval;
};

struct DivergenceInput {
  std::vector<double> p;
  std::vector<double> q;
  std::optional<Matrix> R;
};

struct MajorizeInput {
  std::vector<double> x;
  std::vector<double> y;
};

struct IdentityInput {
  std::optional<ChainInput> instance;
  /// Evaluation points for the single-point identity.
  std::vector<double> points;
  std::optional<Interval> interval;
};

using Instance = std::variant<ChainInput, DivergenceInput, MajorizeInput, IdentityInput>;

struct ParsedInput {
  std::vector<Instance> instances;
  /// Top-level JSON array.
  bool batch = false;
  std::string format;  ///< "json" or "csv"
};

/// JSON objects with keys x, a, y, b, A (chain / verify-identity; a and y
/// default to bA and xA^T), p, q, R (divergence), x, y (majorize); a
/// top-level array is a batch. Two-column CSV (p,q) is accepted for
/// divergence only.
ParsedInput parse_input(const std::filesystem::path& path, Command command);
ParsedInput parse_input_text(std::string_view text, std::string_view format,
                             Command command);

enum class ExitStatus { ok, violated, error };

std::string_view to_string(ExitStatus s) noexcept;

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolated = 1,
  kExitParse = 2,
  kExitDomain = 3,
  kExitQuadrature = 4,
};

struct Report {
  Command command = Command::chain;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> warnings;
  ExitStatus status = ExitStatus::ok;
  /// Set when status == error.
  std::string error_kind;
  std::string error_message;
  int code = kExitOk;

  nlohmann::json to_json() const;
  /// Canonical text: sorted keys, doubles with 17 significant digits.
  std::string dump() const;
};

/// Parses the input and dispatches to the selected command. Never throws for
/// input or domain problems; those become an error report.
Report run(const RunConfig& config);

/// Canonical serialization used for reports.
std::string canonical_dump(const nlohmann::json& value, int indent = 2);

}  // namespace sherman::cli
