#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "sherman/cli/cli.hpp"
#include "sherman/divergence.hpp"

namespace sherman::cli {

namespace {

using nlohmann::json;

std::string field(std::string_view prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

std::vector<double> read_vector(const json& node, const std::string& where) {
  if (!node.is_array()) throw ParseError("field '" + where + "': expected array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ParseError("field '" + where + "[" + std::to_string(i) + "]': expected number");
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

std::optional<std::vector<double>> optional_vector(const json& obj, std::string_view prefix,
                                                   const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return read_vector(obj.at(key), field(prefix, key));
}

std::vector<double> required_vector(const json& obj, std::string_view prefix,
                                    const char* key) {
  if (!obj.contains(key)) throw ParseError("field '" + field(prefix, key) + "': missing");
  return read_vector(obj.at(key), field(prefix, key));
}

Matrix read_matrix(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) {
    throw ParseError("field '" + where + "': expected array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < node.size(); ++i) {
    rows.push_back(read_vector(node[i], where + "[" + std::to_string(i) + "]"));
  }
  try {
    return Matrix::from_rows(rows);
  } catch (const DomainError& e) {
    throw ParseError("field '" + where + "': " + e.what());
  }
}

std::optional<Interval> read_interval(const json& obj, std::string_view prefix) {
  if (!obj.contains("interval")) return std::nullopt;
  const auto v = read_vector(obj.at("interval"), field(prefix, "interval"));
  if (v.size() != 2) {
    throw ParseError("field '" + field(prefix, "interval") + "': expected [lo, hi]");
  }
  try {
    return Interval(v[0], v[1]);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("interval lo < hi (field '") +
                          field(prefix, "interval") + "')");
  }
}

// Runs `check` and rewrites domain errors as validation errors.
template <typename F>
void validate_with(const std::string& where, F&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    std::string what = e.what();
    if (e.code() == Errc::invalid_argument) {
      // "InvalidArgument: weights nonnegative" -> "weights nonnegative"
      what = what.substr(what.find(": ") + 2);
    }
    throw ValidationError(what + " (" + where + ")");
  }
}

ChainInput parse_chain(const json& obj, std::string_view prefix) {
  if (!obj.is_object()) throw ParseError("instance '" + std::string(prefix) + "': expected object");
  ChainInput in;
  in.x = required_vector(obj, prefix, "x");
  in.b = required_vector(obj, prefix, "b");
  if (!obj.contains("A")) throw ParseError("field '" + field(prefix, "A") + "': missing");
  in.A = read_matrix(obj.at("A"), field(prefix, "A"));
  in.interval = read_interval(obj, prefix);
  auto a = optional_vector(obj, prefix, "a");
  auto y = optional_vector(obj, prefix, "y");

  validate_with("field '" + field(prefix, "b") + "'",
                [&] { WeightedVector check(std::vector<double>(in.b.size(), 0.0), in.b); });
  std::optional<StochasticMatrix> A;
  validate_with("field '" + field(prefix, "A") + "'", [&] {
    if (in.A.rows() != in.b.size() || in.A.cols() != in.x.size()) {
      throw DomainError(Errc::dimension_mismatch,
                        "A must be " + std::to_string(in.b.size()) + "x" +
                            std::to_string(in.x.size()));
    }
    A.emplace(in.A, StochasticKind::row);
  });
  const auto [xw, yw] = generate_weighted_pair(in.x, in.b, *A);
  in.a = a ? std::move(*a) : xw.weights();
  in.y = y ? std::move(*y) : yw.points();
  validate_with("field '" + field(prefix, "a") + "'",
                [&] { WeightedVector check(in.x, in.a); });
  validate_with("field '" + field(prefix, "y") + "'",
                [&] { WeightedVector check(in.y, in.b); });
  return in;
}

DivergenceInput parse_divergence(const json& obj, std::string_view prefix) {
  if (!obj.is_object()) throw ParseError("instance '" + std::string(prefix) + "': expected object");
  DivergenceInput in;
  in.p = required_vector(obj, prefix, "p");
  in.q = required_vector(obj, prefix, "q");
  if (obj.contains("R")) in.R = read_matrix(obj.at("R"), field(prefix, "R"));
  validate_with("fields '" + field(prefix, "p") + "', '" + field(prefix, "q") + "'",
                [&] { DistributionPair check(in.p, in.q); });
  if (in.R) {
    validate_with("field '" + field(prefix, "R") + "'", [&] {
      if (in.R->cols() != in.p.size()) {
        throw DomainError(Errc::dimension_mismatch,
                          "R needs " + std::to_string(in.p.size()) + " columns");
      }
      StochasticMatrix check(*in.R, StochasticKind::column);
    });
  }
  return in;
}

MajorizeInput parse_majorize(const json& obj, std::string_view prefix) {
  if (!obj.is_object()) throw ParseError("instance '" + std::string(prefix) + "': expected object");
  MajorizeInput in;
  in.x = required_vector(obj, prefix, "x");
  in.y = required_vector(obj, prefix, "y");
  if (in.x.size() != in.y.size() || in.x.empty()) {
    throw ValidationError("x and y need equal nonzero lengths (" + std::string(prefix.empty() ? "input" : prefix) + ")");
  }
  return in;
}

IdentityInput parse_identity(const json& obj, std::string_view prefix) {
  if (!obj.is_object()) throw ParseError("instance '" + std::string(prefix) + "': expected object");
  IdentityInput in;
  if (obj.contains("x")) in.instance = parse_chain(obj, prefix);
  if (auto pts = optional_vector(obj, prefix, "points")) in.points = std::move(*pts);
  in.interval = read_interval(obj, prefix);
  if (!in.instance && in.points.empty()) {
    throw ParseError("instance '" + std::string(prefix) +
                     "': needs a weighted instance (x, b, A) or 'points'");
  }
  return in;
}

Instance parse_instance(const json& obj, std::string_view prefix, Command command) {
  switch (command) {
    case Command::chain: return parse_chain(obj, prefix);
    case Command::divergence: return parse_divergence(obj, prefix);
    case Command::majorize: return parse_majorize(obj, prefix);
    case Command::verify_identity: return parse_identity(obj, prefix);
  }
  throw ParseError("unknown command");
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

ParsedInput parse_csv(std::string_view text, Command command) {
  if (command != Command::divergence) {
    throw ParseError("CSV input is only accepted for the divergence command");
  }
  DivergenceInput in;
  std::size_t line_no = 0;
  bool first = true;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 2 columns (p,q), got " +
                       std::to_string(cols.size()));
    }
    const auto p = to_number(cols[0]);
    const auto q = to_number(cols[1]);
    if (!p || !q) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw ParseError("line " + std::to_string(line_no) + ": expected two numbers");
    }
    first = false;
    in.p.push_back(*p);
    in.q.push_back(*q);
    if (end == text.size()) break;
  }
  if (in.p.empty()) throw ParseError("CSV input has no data rows");
  validate_with("CSV columns p,q", [&] { DistributionPair check(in.p, in.q); });
  ParsedInput out;
  out.format = "csv";
  out.instances.emplace_back(std::move(in));
  return out;
}

}  // namespace

ParsedInput parse_input_text(std::string_view text, std::string_view format,
                             Command command) {
  if (format == "csv") return parse_csv(text, command);

  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON at " + location(text, e.byte) + ": " + e.what());
  }
  ParsedInput out;
  out.format = "json";
  if (doc.is_array()) {
    out.batch = true;
    if (doc.empty()) throw ParseError("batch input is an empty array");
    for (std::size_t i = 0; i < doc.size(); ++i) {
      out.instances.push_back(parse_instance(doc[i], "[" + std::to_string(i) + "]", command));
    }
  } else {
    out.instances.push_back(parse_instance(doc, "", command));
  }
  return out;
}

ParsedInput parse_input(const std::filesystem::path& path, Command command) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return parse_input_text(buf.str(), ext == ".csv" ? "csv" : "json", command);
}

}  // namespace sherman::cli
