#include "runner/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace mtc::runner {

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string();
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

adjust::PValueBatch read_pvalue_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> p;
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split_csv_line(content);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "test_id" || fields[1] != "p_value") {
        throw InputError(where + "expected header 'test_id,p_value'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw InputError(where + "expected 2 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw InputError(where + "empty test_id");
    const auto value = parse_real(fields[1]);
    if (!value) throw InputError(where + "p_value '" + fields[1] + "' is not a number");
    if (*value < 0.0 || *value > 1.0) {
      throw InputError(where + "p_value " + fields[1] + " outside [0, 1]");
    }
    if (!seen.insert(fields[0]).second) {
      throw InputError(where + "duplicate test_id '" + fields[0] + "'");
    }
    ids.push_back(fields[0]);
    p.push_back(*value);
  }
  if (!header_seen) throw InputError("line 1: expected header 'test_id,p_value'");
  if (p.empty()) throw InputError("no tests found");
  return adjust::PValueBatch(std::move(p), std::move(ids));
}

void write_adjustment_csv(std::ostream& out, const adjust::PValueBatch& batch,
                          const adjust::AdjustmentOutcome& outcome) {
  out << "test_id,p_value,adjusted_p,rejected,method,effective_alpha\n";
  const auto method = adjust::to_string(outcome.method);
  const auto alpha = format_real(outcome.effective_alpha);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out << batch.test_ids()[i] << ',' << format_real(batch[i]) << ',';
    if (outcome.adjusted_p) out << format_real((*outcome.adjusted_p)[i]);
    out << ',' << (outcome.rejected[i] ? "true" : "false") << ',' << method << ',' << alpha
        << '\n';
  }
}

}  // namespace mtc::runner
