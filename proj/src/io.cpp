#include "meander/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace meander {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  row += '\n';
  return row;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

nlohmann::json report_to_json(const TestReport& rep) {
  nlohmann::json j;
  j["name"] = rep.name;
  j["statistic"] = rep.statistic;
  j["p_value"] = rep.p_value;
  j["threshold"] = rep.threshold;
  j["pass"] = rep.pass;
  j["n_a"] = rep.n_a;
  j["n_b"] = rep.n_b;
  j["details"] = rep.details;
  j["provenance"] = rep.provenance;
  return j;
}

nlohmann::json audit_to_json(const BoundAuditReport& rep, bool include_runtime) {
  nlohmann::json j;
  j["bound"] = rep.bound_name;
  j["grid"] = rep.grid_spec;
  j["worst_ratio"] = rep.worst_ratio;
  j["implied_constant"] = rep.implied_constant;
  j["points"] = rep.points;
  if (include_runtime) j["runtime_ms"] = rep.runtime_ms;
  return j;
}

}  // namespace meander
