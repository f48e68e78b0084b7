#include "relac/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "relac/rng.hpp"

namespace relac {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_value(const json& j, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << json(it.key()).dump() << ": ";
        write_value(it.value(), os, indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in;
        write_value(v, os, indent, depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        os << "\"nan\"";
      } else if (std::isinf(v)) {
        os << (v > 0 ? "\"inf\"" : "\"-inf\"");
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
      }
      return;
    }
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

void write_json(const json& j, std::ostream& os, int indent) {
  write_value(j, os, indent, 0);
  os << "\n";
}

std::string json_to_string(const json& j, int indent) {
  std::ostringstream os;
  write_json(j, os, indent);
  return os.str();
}

json meta_block(const std::string& command, const json& effective_config) {
  json m;
  m["tool"] = "relac";
  m["version"] = kVersion;
  m["command"] = command;
  m["rng"] = RngStream::name();
  m["modules"] = json{{"distributions", kVersion}, {"lcd", kVersion},
                      {"estimators", kVersion},    {"bounds", kVersion},
                      {"logconcave", kVersion},    {"sodin", kVersion},
                      {"stress", kVersion},        {"cli", kVersion}};
  m["config"] = effective_config;
  return m;
}

}  // namespace relac
