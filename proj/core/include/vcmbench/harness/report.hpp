#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcmbench/metrics/bdrate.hpp"

namespace vcmbench {

// "x.xx%" with two decimals; a result that rounds to zero prints "0.00%".
std::string format_bd_cell(double percent);

struct BdRow {
  std::string anchor;
  std::string label;
  std::optional<BdRateResult> result;
  std::string reason;  // "overlap", "monotonicity", "points" when no result

  std::string cell() const;
};

std::vector<BdRow> bd_table(const RateAccuracyCurve& anchor,
                            const std::vector<RateAccuracyCurve>& tests);

// "anchor,label,bd_rate,low,high"; the interval is empty for N/A rows.
std::string write_bd_csv(const std::vector<BdRow>& rows);

// Rate on a log10 x axis, accuracy on y, one polyline per curve and a
// legend entry per label.
std::string render_rate_accuracy_svg(const std::vector<RateAccuracyCurve>& curves,
                                     std::string_view rate_unit);

// Curves of a run directory (its curve.csv) and its rate unit (run.json).
std::vector<RateAccuracyCurve> read_run_curves(const std::filesystem::path& run_dir);
std::string read_run_rate_unit(const std::filesystem::path& run_dir);

// Writes curves.csv and report.svg to `out_dir`, plus bd.csv when an anchor
// is given.
void emit_report(const std::vector<RateAccuracyCurve>& curves,
                 const std::optional<RateAccuracyCurve>& anchor, std::string_view rate_unit,
                 const std::filesystem::path& out_dir);

}  // namespace vcmbench
