#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mtcorr/metrics.hpp"

namespace mtc::runner {

inline constexpr const char* kReplicateColumns =
    "method,sample_size,m_biomarkers,positive_rate,replicate,tp,fp,tn,fn,"
    "sensitivity,specificity,power,effective_alpha,m2,n_significant,warnings";

inline constexpr const char* kSummaryColumns =
    "method,sample_size,m_biomarkers,positive_rate,mean_sensitivity,sd_sensitivity,"
    "mean_specificity,sd_specificity,mean_power,sd_power,mean_effective_alpha,mean_m2,"
    "replicates_used,warnings";

// Both files open with "# manifest <hash>". Undefined values are empty.
void write_replicates_csv(std::ostream& out, const std::string& manifest_hash,
                          const std::vector<metrics::ReplicateRecord>& records);
std::vector<metrics::ReplicateRecord> read_replicates_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const std::string& manifest_hash,
                       const metrics::StudySummary& summary);

// One summary.csv row with every field kept verbatim.
struct SummaryCsvRow {
  std::map<std::string, std::string> fields;
  metrics::CellKey cell;
  std::string method;

  const std::string& at(const std::string& column) const { return fields.at(column); }
};

std::vector<SummaryCsvRow> read_summary_csv(std::istream& in);

}  // namespace mtc::runner
