#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace mtc::runner {

// Stable exit-status contract of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitQualityFailure = 3;

struct AdjustArgs {
  std::filesystem::path input;
  std::string method = "bh";
  double alpha = 0.05;
  double beta = 0.8;
  std::string cap = "cap-at-alpha";
  std::optional<std::filesystem::path> output;  // stdout when unset
};

int cli_adjust(const AdjustArgs& args, std::ostream& out, std::ostream& err);

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path out_dir;
  // Value of MT_SEED when set; replaces the config's master_seed.
  std::optional<std::string> seed_override;
  unsigned threads = 0;
  bool quiet = false;
};

/// Writes replicates.csv, summary.csv and manifest.json into out_dir.
int cli_simulate(const SimulateArgs& args, std::ostream& err);

struct ReportArgs {
  std::filesystem::path summary;
  // Inline JSON object, or a path to a file holding one.
  std::string figure;
  std::filesystem::path output;
};

int cli_report(const ReportArgs& args, std::ostream& err);

}  // namespace mtc::runner
