#ifndef MEANDER_IO_HPP
#define MEANDER_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "meander/discrete.hpp"
#include "meander/stats.hpp"

namespace meander {

// %.17g rendering; round-trips doubles and is stable across runs
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

// one CSV row; '.' decimal separator, '\n' line endings, header mandatory
std::string csv_row(const std::vector<std::string>& fields);

// plain-text `key = value` config lines, '#' comments; unknown keys are the
// caller's problem (the CLI rejects them)
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

nlohmann::json report_to_json(const TestReport& rep);
nlohmann::json audit_to_json(const BoundAuditReport& rep, bool include_runtime = true);

}  // namespace meander

#endif  // MEANDER_IO_HPP
