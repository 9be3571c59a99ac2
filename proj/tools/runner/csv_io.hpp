#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtcorr/adjust.hpp"

namespace mtc::runner {

// Bad user input: malformed file, value out of range, unknown tag.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ten significant digits, "%.10g".
std::string format_real(double value);
std::string format_optional(const std::optional<double>& value);

std::optional<double> parse_real(std::string_view text);
std::optional<std::size_t> parse_count(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);
std::string_view trim(std::string_view text);

/// Reads `test_id,p_value` rows. Blank lines and lines starting with '#'
/// are skipped. Diagnostics carry the 1-based line number.
adjust::PValueBatch read_pvalue_csv(std::istream& in);

/// test_id,p_value,adjusted_p,rejected,method,effective_alpha
void write_adjustment_csv(std::ostream& out, const adjust::PValueBatch& batch,
                          const adjust::AdjustmentOutcome& outcome);

}  // namespace mtc::runner
