#include "runner/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "mtcorr/adjust.hpp"
#include "mtcorr/errors.hpp"
#include "mtcorr/metrics.hpp"
#include "mtcorr/study.hpp"
#include "runner/csv_io.hpp"
#include "runner/grid_config.hpp"
#include "runner/report.hpp"
#include "runner/study_io.hpp"

namespace mtc::runner {
namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool write_file(const std::filesystem::path& path, const std::string& content,
                std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    err << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

std::string cell_name(const metrics::CellKey& c) {
  return "sample_size=" + std::to_string(c.sample_size) +
         " m_biomarkers=" + std::to_string(c.m_biomarkers) +
         " positive_rate=" + format_real(c.positive_rate);
}

}  // namespace

int cli_adjust(const AdjustArgs& args, std::ostream& out, std::ostream& err) {
  const auto method = adjust::parse_method(args.method);
  if (!method) {
    err << "error: unknown method '" << args.method << "' (bonferroni, holm, bh, bea)\n";
    return kExitInputError;
  }
  const auto cap = adjust::parse_cap_policy(args.cap);
  if (!cap) {
    err << "error: unknown cap policy '" << args.cap << "' (cap-at-alpha, uncapped)\n";
    return kExitInputError;
  }
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) {
    err << "error: alpha must lie in (0, 1)\n";
    return kExitInputError;
  }
  if (!(args.beta >= 0.0 && args.beta < 1.0)) {
    err << "error: beta must lie in [0, 1)\n";
    return kExitInputError;
  }

  std::ifstream in(args.input);
  if (!in) {
    err << "error: cannot open " << args.input.string() << '\n';
    return kExitInputError;
  }
  try {
    const auto batch = read_pvalue_csv(in);
    const auto outcome = adjust::apply(*method, batch, {args.alpha, args.beta, *cap});
    std::ostringstream text;
    write_adjustment_csv(text, batch, outcome);
    if (args.output) {
      if (!write_file(*args.output, text.str(), err)) return kExitInputError;
    } else {
      out << text.str();
    }
  } catch (const InputError& e) {
    err << "error: " << args.input.string() << ": " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

int cli_simulate(const SimulateArgs& args, std::ostream& err) {
  const auto started = utc_timestamp();
  GridConfig config;
  try {
    std::ifstream in(args.config);
    if (!in) {
      err << "error: cannot open " << args.config.string() << '\n';
      return kExitInputError;
    }
    const auto doc = nlohmann::json::parse(in);
    config = parse_grid_config(doc);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << args.config.string() << ": invalid JSON: " << e.what() << '\n';
    return kExitInputError;
  }
  if (args.seed_override) {
    const auto seed = parse_count(*args.seed_override);
    if (!seed) {
      err << "error: MT_SEED '" << *args.seed_override << "' is not a non-negative integer\n";
      return kExitInputError;
    }
    config.master_seed = *seed;
  }

  const auto hash = manifest_hash(config);
  const auto cells = config.cells();

  std::vector<metrics::ReplicateRecord> records;
  nlohmann::json cell_log = nlohmann::json::array();
  std::vector<std::string> failures;
  std::size_t warning_total = 0;
  std::size_t replicate_errors = 0;

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    if (!args.quiet) {
      err << "[" << (i + 1) << "/" << cells.size() << "] " << cell_name(cell) << '\n';
    }
    nlohmann::json entry;
    entry["cell"] = cell_name(cell);
    try {
      auto result = simulate::run_study(config.study_for(cell), args.threads);
      if (result.calibration) {
        const auto& c = *result.calibration;
        entry["calibration"] = {{"associated_fraction", c.associated_fraction},
                                {"effect_size", c.effect_size},
                                {"analytic_power", c.analytic_power},
                                {"pilot_rate", c.pilot_rate},
                                {"effect_steps", c.effect_steps}};
      }
      entry["replicate_errors"] = result.errors.size();
      replicate_errors += result.errors.size();
      std::size_t first_method_warnings = 0;
      for (const auto& r : result.records) {
        if (r.method == config.methods.front()) first_method_warnings += r.warnings;
      }
      entry["warnings"] = first_method_warnings;
      warning_total += first_method_warnings;
      records.insert(records.end(), result.records.begin(), result.records.end());
    } catch (const SimulationQualityError& e) {
      failures.push_back(cell_name(cell) + ": " + e.what());
    } catch (const ContractError& e) {
      err << "error: " << cell_name(cell) << ": " << e.what() << '\n';
      return kExitInputError;
    }
    cell_log.push_back(entry);
  }

  if (!failures.empty()) {
    for (const auto& f : failures) err << "error: simulation quality failure in " << f << '\n';
    return kExitQualityFailure;
  }

  std::ostringstream replicate_text;
  write_replicates_csv(replicate_text, hash, records);
  // Aggregate what was serialized so that summary.csv is reproducible from
  // replicates.csv alone.
  std::istringstream reread(replicate_text.str());
  const auto parsed = read_replicates_csv(reread);
  const auto summary = metrics::aggregate(parsed, cells, config.methods);
  std::ostringstream summary_text;
  write_summary_csv(summary_text, hash, summary);

  nlohmann::json manifest;
  manifest["tool"] = "mtcorr";
  manifest["version"] = MTCORR_VERSION;
  manifest["manifest_hash"] = hash;
  manifest["config"] = to_json(config);
  manifest["master_seed"] = config.master_seed;
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_timestamp();
  manifest["warning_totals"] = {{"fit_fallbacks", warning_total},
                                {"replicate_errors", replicate_errors}};
  manifest["cells"] = cell_log;

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << args.out_dir.string() << ": " << ec.message() << '\n';
    return kExitInputError;
  }
  if (!write_file(args.out_dir / "replicates.csv", replicate_text.str(), err) ||
      !write_file(args.out_dir / "summary.csv", summary_text.str(), err) ||
      !write_file(args.out_dir / "manifest.json", manifest.dump(2) + "\n", err)) {
    return kExitInputError;
  }
  if (!args.quiet) err << "wrote " << records.size() << " replicate rows, manifest " << hash << '\n';
  return kExitOk;
}

int cli_report(const ReportArgs& args, std::ostream& err) {
  std::ifstream in(args.summary);
  if (!in) {
    err << "error: cannot open " << args.summary.string() << '\n';
    return kExitInputError;
  }
  std::string first_line;
  std::getline(in, first_line);
  std::string hash;
  if (first_line.rfind("# manifest ", 0) == 0) hash = std::string(trim(first_line.substr(11)));
  in.seekg(0);

  try {
    const auto rows = read_summary_csv(in);
    nlohmann::json figure_doc;
    if (const auto figure = trim(args.figure); !figure.empty() && figure.front() == '{') {
      figure_doc = nlohmann::json::parse(figure);
    } else {
      std::ifstream spec_in{std::string(figure)};
      if (!spec_in) {
        err << "error: cannot open figure spec " << args.figure << '\n';
        return kExitInputError;
      }
      figure_doc = nlohmann::json::parse(spec_in);
    }
    const auto spec = parse_figure_spec(figure_doc);
    const auto result = render_figure(rows, spec, hash);
    if (!result.missing_cells.empty()) {
      err << "error: cells missing from " << args.summary.string() << ":\n";
      for (const auto& c : result.missing_cells) err << "  " << c << '\n';
      return kExitInputError;
    }
    if (!write_file(args.output, result.svg, err)) return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << args.summary.string() << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConfigError& e) {
    err << "error: figure spec: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: figure spec: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace mtc::runner
