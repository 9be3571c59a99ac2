#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "runner/study_io.hpp"

namespace mtc::runner {

enum class FigureAxis { biomarker_counts, positive_rates };

// Which slice of summary.csv to chart. Fixed coordinates left unset are
// filled from the summary: an unset sample_size gives one panel per
// sample size, unset x_values take every x present for the slice.
struct FigureSpec {
  std::string metric = "sensitivity";  // sensitivity | specificity | power
  FigureAxis x_axis = FigureAxis::biomarker_counts;
  std::optional<double> rate;           // required for x = biomarker_counts
  std::optional<std::size_t> m;         // required for x = positive_rates
  std::optional<std::size_t> sample_size;
  std::vector<double> x_values;
  std::vector<std::string> methods;     // empty = all, legend order fixed
};

// Accepts keys y, x, rate, m, sample_size, x_values, methods.
FigureSpec parse_figure_spec(const nlohmann::json& doc);

struct RenderResult {
  std::string svg;
  std::vector<std::string> missing_cells;  // non-empty means nothing was rendered
};

RenderResult render_figure(const std::vector<SummaryCsvRow>& summary, const FigureSpec& spec,
                           const std::string& manifest_hash = {});

}  // namespace mtc::runner
