#include "runner/grid_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "mtcorr/random.hpp"

namespace mtc::runner {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "sample_sizes",      "biomarker_counts", "positive_rates", "alpha",
    "bea_beta",          "baseline_power",   "replicates",     "generator_mode",
    "label_probability", "cap_policy",       "methods",        "master_seed",
    "prevalence",        "effect_size",      "direct_p_shape"};

double get_real(const json& doc, const std::string& key, double lo, double hi,
                bool lo_open, bool hi_open) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  const bool ok = std::isfinite(x) && (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  if (!ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "value %g outside %c%g, %g%c", x, lo_open ? '(' : '[', lo, hi,
                  hi_open ? ')' : ']');
    throw ConfigError(key, buf);
  }
  return x;
}

std::size_t get_count(const json& v, const std::string& key, std::size_t minimum) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  const auto x = v.get<std::size_t>();
  if (x < minimum) throw ConfigError(key, "value must be at least " + std::to_string(minimum));
  return x;
}

const json& get_list(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ConfigError(key, "required key missing");
  const auto& v = doc.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(key, "expected a non-empty list");
  return v;
}

std::string get_string(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::vector<metrics::CellKey> GridConfig::cells() const {
  std::vector<metrics::CellKey> out;
  for (auto n : sample_sizes)
    for (auto m : biomarker_counts)
      for (auto r : positive_rates) out.push_back({n, m, r});
  return out;
}

simulate::StudyConfig GridConfig::study_for(const metrics::CellKey& cell) const {
  simulate::StudyConfig s;
  s.cohort.n_patients = cell.sample_size;
  s.cohort.m_biomarkers = cell.m_biomarkers;
  s.cohort.target_positive_rate = cell.positive_rate;
  s.cohort.prevalence = prevalence;
  s.cohort.effect_size = effect_size;
  s.cohort.generator_mode = generator_mode;
  s.cohort.direct_p_shape = direct_p_shape;
  s.cohort.master_seed = simulate::cell_seed(master_seed, cell);
  s.alpha = alpha;
  s.bea_beta = bea_beta;
  s.replicates = replicates;
  s.methods = methods;
  s.cap_policy = cap_policy;
  s.label_probability = label_probability;
  s.baseline_power = baseline_power;
  return s;
}

GridConfig parse_grid_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
  }

  GridConfig c;
  for (const auto& v : get_list(doc, "sample_sizes")) {
    c.sample_sizes.push_back(get_count(v, "sample_sizes", 20));
  }
  for (const auto& v : get_list(doc, "biomarker_counts")) {
    c.biomarker_counts.push_back(get_count(v, "biomarker_counts", 1));
  }
  for (const auto& v : get_list(doc, "positive_rates")) {
    if (!v.is_number()) throw ConfigError("positive_rates", "expected numbers");
    const double r = v.get<double>();
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("positive_rates", "rates must lie in (0, 1)");
    c.positive_rates.push_back(r);
  }

  if (doc.contains("alpha")) c.alpha = get_real(doc, "alpha", 0.0, 1.0, true, true);
  if (doc.contains("bea_beta")) c.bea_beta = get_real(doc, "bea_beta", 0.0, 1.0, false, true);
  if (doc.contains("baseline_power")) {
    c.baseline_power = get_real(doc, "baseline_power", 0.0, 1.0, true, true);
  }
  if (doc.contains("replicates")) c.replicates = get_count(doc.at("replicates"), "replicates", 1);
  if (doc.contains("generator_mode")) {
    const auto mode = get_string(doc, "generator_mode");
    if (mode == "data-driven") {
      c.generator_mode = simulate::GeneratorMode::data_driven;
    } else if (mode == "direct-p") {
      c.generator_mode = simulate::GeneratorMode::direct_p;
    } else {
      throw ConfigError("generator_mode", "expected 'data-driven' or 'direct-p'");
    }
  }
  if (doc.contains("label_probability")) {
    c.label_probability = get_real(doc, "label_probability", 0.0, 1.0, true, false);
  }
  if (doc.contains("cap_policy")) {
    const auto cap = adjust::parse_cap_policy(get_string(doc, "cap_policy"));
    if (!cap) throw ConfigError("cap_policy", "expected 'cap-at-alpha' or 'uncapped'");
    c.cap_policy = *cap;
  }
  if (doc.contains("methods")) {
    c.methods.clear();
    for (const auto& v : get_list(doc, "methods")) {
      if (!v.is_string()) throw ConfigError("methods", "expected method names");
      const auto m = adjust::parse_method(v.get<std::string>());
      if (!m) throw ConfigError("methods", "unknown method '" + v.get<std::string>() + "'");
      if (std::find(c.methods.begin(), c.methods.end(), *m) == c.methods.end()) {
        c.methods.push_back(*m);
      }
    }
    // Output order is fixed regardless of the order listed.
    std::vector<adjust::Method> ordered;
    for (auto m : adjust::kAllMethods) {
      if (std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end()) ordered.push_back(m);
    }
    c.methods = std::move(ordered);
  }
  if (doc.contains("master_seed")) {
    const auto& v = doc.at("master_seed");
    if (!v.is_number_unsigned()) {
      throw ConfigError("master_seed", "expected a non-negative integer");
    }
    c.master_seed = v.get<std::uint64_t>();
  }
  if (doc.contains("prevalence")) c.prevalence = get_real(doc, "prevalence", 0.0, 1.0, true, true);
  if (doc.contains("effect_size") && !doc.at("effect_size").is_null()) {
    c.effect_size = get_real(doc, "effect_size", -1e6, 1e6, false, false);
  }
  if (doc.contains("direct_p_shape")) {
    c.direct_p_shape = get_real(doc, "direct_p_shape", 0.0, 1e6, true, false);
  }
  return c;
}

json to_json(const GridConfig& c) {
  json j;
  j["sample_sizes"] = c.sample_sizes;
  j["biomarker_counts"] = c.biomarker_counts;
  j["positive_rates"] = c.positive_rates;
  j["alpha"] = c.alpha;
  j["bea_beta"] = c.bea_beta;
  j["baseline_power"] = c.baseline_power;
  j["replicates"] = c.replicates;
  j["generator_mode"] = simulate::to_string(c.generator_mode);
  j["label_probability"] = c.label_probability;
  j["cap_policy"] = std::string(adjust::to_string(c.cap_policy));
  json methods = json::array();
  for (auto m : c.methods) methods.push_back(std::string(adjust::to_string(m)));
  j["methods"] = methods;
  j["master_seed"] = c.master_seed;
  j["prevalence"] = c.prevalence;
  j["effect_size"] = c.effect_size ? json(*c.effect_size) : json(nullptr);
  j["direct_p_shape"] = c.direct_p_shape;
  return j;
}

std::string manifest_hash(const GridConfig& config) {
  const std::string canonical = std::string("mtcorr ") + MTCORR_VERSION + "\n" + to_json(config).dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(numerics::fnv1a64(canonical)));
  return buf;
}

}  // namespace mtc::runner
