#include "ccshuffle/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ccshuffle {

namespace {

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["config"] = table.config;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = row.at(c);
      rows.push_back(std::move(obj));
    }
    if (!table.summary.empty()) doc["summary"] = table.summary;
    os << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
  for (const auto& [key, value] : table.summary.items()) os << "# " << key << "," << csv_cell(value) << '\n';
}

Table distribution_rows(const DistributionTable& table) {
  Table t;
  t.config["n"] = table.n;
  t.columns = {"permutation", "numerator", "denominator", "float"};
  for (const auto& e : table.entries) {
    t.rows.push_back({format_permutation(e.perm), to_string(e.prob.numerator), to_string(e.prob.denominator),
                      e.prob.value()});
  }
  return t;
}

Table histogram_rows(const Histogram& h) {
  Table t;
  t.config["n"] = h.n;
  t.config["reps"] = h.reps;
  t.config["seed"] = h.seed;
  t.config["label"] = h.label;
  t.columns = {"outcome", "count", "fraction", "stderr"};
  for (int k = 1; k <= h.n; ++k) t.rows.push_back({k, h.count(k), h.fraction(k), h.stderr_of(k)});
  return t;
}

}  // namespace ccshuffle
