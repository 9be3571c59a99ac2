#include "runner/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "mtcorr/adjust.hpp"
#include "runner/csv_io.hpp"
#include "runner/grid_config.hpp"

namespace mtc::runner {
namespace {

constexpr double kPanelWidth = 460.0;
constexpr double kPanelHeight = 320.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
constexpr double kLegendHeight = 30.0;

const char* color_of(std::string_view method) {
  if (method == "bonferroni") return "#1f77b4";
  if (method == "holm") return "#ff7f0e";
  if (method == "bh") return "#2ca02c";
  return "#d62728";
}

bool same_rate(double a, double b) { return std::fabs(a - b) <= 1e-9; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string describe(std::size_t n, std::size_t m, double rate) {
  return "sample_size=" + std::to_string(n) + " m_biomarkers=" + std::to_string(m) +
         " positive_rate=" + format_real(rate);
}

struct Point {
  double x;
  double y;
  std::string value;
};

}  // namespace

FigureSpec parse_figure_spec(const nlohmann::json& doc) {
  static const std::set<std::string> known = {"y", "x", "rate", "m", "sample_size", "x_values",
                                              "methods"};
  if (!doc.is_object()) throw ConfigError("<figure>", "expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown figure key");
  }
  FigureSpec spec;
  if (doc.contains("y")) {
    spec.metric = doc.at("y").get<std::string>();
    if (spec.metric != "sensitivity" && spec.metric != "specificity" && spec.metric != "power") {
      throw ConfigError("y", "expected sensitivity, specificity or power");
    }
  }
  if (doc.contains("x")) {
    const auto x = doc.at("x").get<std::string>();
    if (x == "biomarker_counts") {
      spec.x_axis = FigureAxis::biomarker_counts;
    } else if (x == "positive_rates") {
      spec.x_axis = FigureAxis::positive_rates;
    } else {
      throw ConfigError("x", "expected biomarker_counts or positive_rates");
    }
  }
  if (doc.contains("rate")) spec.rate = doc.at("rate").get<double>();
  if (doc.contains("m")) spec.m = doc.at("m").get<std::size_t>();
  if (doc.contains("sample_size")) spec.sample_size = doc.at("sample_size").get<std::size_t>();
  if (doc.contains("x_values")) spec.x_values = doc.at("x_values").get<std::vector<double>>();
  if (doc.contains("methods")) {
    for (const auto& m : doc.at("methods")) {
      const auto name = m.get<std::string>();
      if (!adjust::parse_method(name)) throw ConfigError("methods", "unknown method '" + name + "'");
      spec.methods.push_back(name);
    }
  }
  if (spec.x_axis == FigureAxis::biomarker_counts && !spec.rate) {
    throw ConfigError("rate", "required when x is biomarker_counts");
  }
  if (spec.x_axis == FigureAxis::positive_rates && !spec.m) {
    throw ConfigError("m", "required when x is positive_rates");
  }
  return spec;
}

RenderResult render_figure(const std::vector<SummaryCsvRow>& summary, const FigureSpec& spec,
                           const std::string& manifest_hash) {
  RenderResult result;
  const bool by_m = spec.x_axis == FigureAxis::biomarker_counts;
  const std::string column = "mean_" + spec.metric;

  auto in_slice = [&](const SummaryCsvRow& row) {
    if (spec.sample_size && row.cell.sample_size != *spec.sample_size) return false;
    return by_m ? same_rate(row.cell.positive_rate, *spec.rate)
                : row.cell.m_biomarkers == *spec.m;
  };

  std::set<std::size_t> sizes;
  if (spec.sample_size) {
    sizes.insert(*spec.sample_size);
  } else {
    for (const auto& row : summary) {
      if (in_slice(row)) sizes.insert(row.cell.sample_size);
    }
  }
  std::vector<double> xs = spec.x_values;
  if (xs.empty()) {
    std::set<double> seen;
    for (const auto& row : summary) {
      if (in_slice(row)) {
        seen.insert(by_m ? static_cast<double>(row.cell.m_biomarkers) : row.cell.positive_rate);
      }
    }
    xs.assign(seen.begin(), seen.end());
  }
  std::sort(xs.begin(), xs.end());

  std::vector<std::string> methods;
  for (auto m : adjust::kAllMethods) {
    const std::string name(adjust::to_string(m));
    if (spec.methods.empty() ||
        std::find(spec.methods.begin(), spec.methods.end(), name) != spec.methods.end()) {
      methods.push_back(name);
    }
  }

  if (sizes.empty() || xs.empty()) {
    result.missing_cells.push_back(
        by_m ? "no cells with positive_rate=" + format_real(*spec.rate) +
                   (spec.sample_size ? " sample_size=" + std::to_string(*spec.sample_size) : "")
             : "no cells with m_biomarkers=" + std::to_string(*spec.m) +
                   (spec.sample_size ? " sample_size=" + std::to_string(*spec.sample_size) : ""));
    return result;
  }

  // panel -> method -> points
  std::vector<std::vector<std::vector<Point>>> panels;
  for (auto n : sizes) {
    std::vector<std::vector<Point>> series(methods.size());
    for (double x : xs) {
      const std::size_t m = by_m ? static_cast<std::size_t>(std::llround(x)) : *spec.m;
      const double rate = by_m ? *spec.rate : x;
      for (std::size_t k = 0; k < methods.size(); ++k) {
        const auto it = std::find_if(summary.begin(), summary.end(), [&](const SummaryCsvRow& r) {
          return r.method == methods[k] && r.cell.sample_size == n && r.cell.m_biomarkers == m &&
                 same_rate(r.cell.positive_rate, rate);
        });
        const std::string* value = it == summary.end() ? nullptr : &it->at(column);
        const auto parsed = value ? parse_real(*value) : std::nullopt;
        if (!parsed) {
          result.missing_cells.push_back(methods[k] + " " + describe(n, m, rate));
          continue;
        }
        series[k].push_back({x, *parsed, *value});
      }
    }
    panels.push_back(std::move(series));
  }
  if (!result.missing_cells.empty()) return result;

  const double width = kPanelWidth * static_cast<double>(panels.size());
  const double height = kPanelHeight + kLegendHeight;
  const double x_lo = xs.front(), x_hi = xs.back();
  const double plot_w = kPanelWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  auto sx = [&](double x, double origin) {
    const double t = x_hi > x_lo ? (x - x_lo) / (x_hi - x_lo) : 0.5;
    return origin + kLeft + t * plot_w;
  };
  auto sy = [&](double y) { return kTop + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };
  auto x_label = [&](double x) {
    return by_m ? std::to_string(static_cast<long long>(std::llround(x))) : format_real(x);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!manifest_hash.empty()) svg << "<!-- manifest " << manifest_hash << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::size_t panel_index = 0;
  for (auto n : sizes) {
    const double origin = kPanelWidth * static_cast<double>(panel_index);
    const auto& series = panels[panel_index++];
    std::string title = spec.metric + " vs " + (by_m ? "biomarker count" : "positive rate") +
                        " (n = " + std::to_string(n) +
                        (by_m ? ", rate = " + format_real(*spec.rate)
                              : ", m = " + std::to_string(*spec.m)) +
                        ")";
    svg << "<g class=\"panel\" data-sample-size=\"" << n << "\">\n";
    svg << "<text x=\"" << fmt(origin + kPanelWidth / 2) << "\" y=\"20\" text-anchor=\"middle\">"
        << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << fmt(origin + kLeft) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\""
        << fmt(origin + kLeft + plot_w) << "\" y2=\"" << fmt(kTop + plot_h)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(origin + kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\""
        << fmt(origin + kLeft) << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
      const double y = t / 5.0;
      svg << "<text x=\"" << fmt(origin + kLeft - 6) << "\" y=\"" << fmt(sy(y) + 4)
          << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
    }
    for (double x : xs) {
      svg << "<text x=\"" << fmt(sx(x, origin)) << "\" y=\"" << fmt(kTop + plot_h + 18)
          << "\" text-anchor=\"middle\">" << x_label(x) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(origin + kLeft + plot_w / 2) << "\" y=\""
        << fmt(kTop + plot_h + 38) << "\" text-anchor=\"middle\">"
        << (by_m ? "number of biomarkers" : "positive rate") << "</text>\n";

    for (std::size_t k = 0; k < methods.size(); ++k) {
      svg << "<g class=\"series\" data-method=\"" << methods[k] << "\">\n";
      svg << "<polyline fill=\"none\" stroke=\"" << color_of(methods[k])
          << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < series[k].size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(sx(series[k][i].x, origin)) << ',' << fmt(sy(series[k][i].y));
      }
      svg << "\"/>\n";
      for (const auto& pt : series[k]) {
        svg << "<circle cx=\"" << fmt(sx(pt.x, origin)) << "\" cy=\"" << fmt(sy(pt.y))
            << "\" r=\"3\" fill=\"" << color_of(methods[k]) << "\" data-x=\"" << x_label(pt.x)
            << "\" data-value=\"" << pt.value << "\"/>\n";
      }
      svg << "</g>\n";
    }
    svg << "</g>\n";
  }

  double lx = kLeft;
  for (const auto& m : methods) {
    svg << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(kPanelHeight + 8)
        << "\" width=\"14\" height=\"4\" fill=\"" << color_of(m) << "\"/>\n";
    svg << "<text x=\"" << fmt(lx + 20) << "\" y=\"" << fmt(kPanelHeight + 14) << "\">" << m
        << "</text>\n";
    lx += 110.0;
  }
  svg << "</svg>\n";
  result.svg = svg.str();
  return result;
}

}  // namespace mtc::runner
