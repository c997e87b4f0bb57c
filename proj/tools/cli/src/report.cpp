#include <cmath>
#include <cstdio>
#include <string>

#include "sherman/cli/cli.hpp"

namespace sherman::cli {

namespace {

using nlohmann::json;

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Flat numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && e.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && indent > 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      write_number(out, v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

std::string_view to_string(ExitStatus s) noexcept {
  switch (s) {
    case ExitStatus::ok: return "ok";
    case ExitStatus::violated: return "violated";
    case ExitStatus::error: return "error";
  }
  return "error";
}

nlohmann::json Report::to_json() const {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = std::string(cli::to_string(command));
  j["config"] = config;
  j["results"] = results;
  j["warnings"] = warnings;
  j["exit_status"] = std::string(cli::to_string(status));
  if (status == ExitStatus::error) {
    j["error"] = {{"kind", error_kind}, {"message", error_message}, {"exit_code", code}};
  }
  return j;
}

std::string Report::dump() const { return canonical_dump(to_json()) + "\n"; }

}  // namespace sherman::cli
