#pragma once

#include "ccshuffle/exact_dist.hpp"
#include "ccshuffle/montecarlo.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace ccshuffle {

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

/// A rectangular result with its configuration echoed. Cells hold strings,
/// integers or doubles.
struct Table {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
  /// Footer values; CSV writes them as "# key,value" lines after the rows.
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// CSV: header row, comma separated, LF endings. JSON: one object with
/// "config" and "rows" (plus "summary" when non-empty).
void write_table(std::ostream& os, const Table& table, Format format);

/// Columns permutation, numerator, denominator, float.
Table distribution_rows(const DistributionTable& table);

/// Columns outcome, count, fraction, stderr.
Table histogram_rows(const Histogram& h);

/// Shortest round-trip text for a double.
std::string format_double(double v);

}  // namespace ccshuffle
