#include "runner/study_io.hpp"

#include <istream>
#include <ostream>

#include "runner/csv_io.hpp"

namespace mtc::runner {
namespace {

std::vector<std::string> header_fields(const char* columns) {
  return split_csv_line(columns);
}

// Reads the header (skipping comments) and returns data lines with numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_table(std::istream& in, const char* expected_columns) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  const auto expected = header_fields(expected_columns);
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto fields = split_csv_line(content);
    if (t.header.empty()) {
      if (fields != expected) {
        throw InputError("line " + std::to_string(line_no) + ": unexpected header");
      }
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(t.header.size()) + " fields");
    }
    t.rows.emplace_back(line_no, std::move(fields));
  }
  if (t.header.empty()) throw InputError("missing header");
  return t;
}

std::size_t need_count(const std::string& s, std::size_t line) {
  const auto v = parse_count(s);
  if (!v) throw InputError("line " + std::to_string(line) + ": bad count '" + s + "'");
  return *v;
}

double need_real(const std::string& s, std::size_t line) {
  const auto v = parse_real(s);
  if (!v) throw InputError("line " + std::to_string(line) + ": bad number '" + s + "'");
  return *v;
}

std::optional<double> maybe_real(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return need_real(s, line);
}

}  // namespace

void write_replicates_csv(std::ostream& out, const std::string& manifest_hash,
                          const std::vector<metrics::ReplicateRecord>& records) {
  out << "# manifest " << manifest_hash << '\n' << kReplicateColumns << '\n';
  for (const auto& r : records) {
    out << adjust::to_string(r.method) << ',' << r.cell.sample_size << ',' << r.cell.m_biomarkers
        << ',' << format_real(r.cell.positive_rate) << ',' << r.replicate << ',' << r.counts.tp
        << ',' << r.counts.fp << ',' << r.counts.tn << ',' << r.counts.fn << ','
        << format_optional(r.sensitivity) << ',' << format_optional(r.specificity) << ','
        << format_real(r.power) << ',' << format_real(r.effective_alpha) << ','
        << format_optional(r.m2) << ',' << r.n_significant << ',' << r.warnings << '\n';
  }
}

std::vector<metrics::ReplicateRecord> read_replicates_csv(std::istream& in) {
  const auto table = read_table(in, kReplicateColumns);
  std::vector<metrics::ReplicateRecord> records;
  records.reserve(table.rows.size());
  for (const auto& [line, f] : table.rows) {
    metrics::ReplicateRecord r;
    const auto method = adjust::parse_method(f[0]);
    if (!method) throw InputError("line " + std::to_string(line) + ": unknown method '" + f[0] + "'");
    r.method = *method;
    r.cell = {need_count(f[1], line), need_count(f[2], line), need_real(f[3], line)};
    r.replicate = need_count(f[4], line);
    r.counts = {need_count(f[5], line), need_count(f[6], line), need_count(f[7], line),
                need_count(f[8], line)};
    r.sensitivity = maybe_real(f[9], line);
    r.specificity = maybe_real(f[10], line);
    r.power = need_real(f[11], line);
    r.effective_alpha = need_real(f[12], line);
    r.m2 = maybe_real(f[13], line);
    r.n_significant = need_count(f[14], line);
    r.warnings = need_count(f[15], line);
    records.push_back(r);
  }
  return records;
}

void write_summary_csv(std::ostream& out, const std::string& manifest_hash,
                       const metrics::StudySummary& summary) {
  out << "# manifest " << manifest_hash << '\n' << kSummaryColumns << '\n';
  for (const auto& row : summary.rows) {
    out << adjust::to_string(row.method) << ',' << row.cell.sample_size << ','
        << row.cell.m_biomarkers << ',' << format_real(row.cell.positive_rate) << ',';
    if (row.missing) {
      out << ",,,,,,,,0,0\n";
      continue;
    }
    auto sd = [](const metrics::MetricSummary& s) {
      return s.mean ? format_real(s.sd) : std::string();
    };
    out << format_optional(row.sensitivity.mean) << ',' << sd(row.sensitivity) << ','
        << format_optional(row.specificity.mean) << ',' << sd(row.specificity) << ','
        << format_optional(row.power.mean) << ',' << sd(row.power) << ','
        << format_optional(row.mean_effective_alpha) << ',' << format_optional(row.mean_m2)
        << ',' << row.replicates_used << ',' << row.warnings << '\n';
  }
}

std::vector<SummaryCsvRow> read_summary_csv(std::istream& in) {
  const auto table = read_table(in, kSummaryColumns);
  std::vector<SummaryCsvRow> rows;
  for (const auto& [line, f] : table.rows) {
    SummaryCsvRow row;
    for (std::size_t i = 0; i < f.size(); ++i) row.fields[table.header[i]] = f[i];
    row.method = f[0];
    if (!adjust::parse_method(row.method)) {
      throw InputError("line " + std::to_string(line) + ": unknown method '" + f[0] + "'");
    }
    row.cell = {need_count(f[1], line), need_count(f[2], line), need_real(f[3], line)};
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mtc::runner
