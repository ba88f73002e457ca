#include "levycum/scan_output.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace levycum {

std::string format_significant(double value, int max_digits) {
  char buffer[64];
  for (int digits = 1; digits <= max_digits; ++digits) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    if (std::strtod(buffer, nullptr) == value) return buffer;
  }
  std::snprintf(buffer, sizeof(buffer), "%.*g", max_digits, value);
  return buffer;
}

std::vector<ScanRow> scan_rows(ScanParameter parameter, const std::vector<ScanPoint>& points) {
  std::vector<ScanRow> rows;
  const std::string name = to_string(parameter);
  for (const auto& point : points) {
    for (const auto& entry : point.table.entries) {
      if (entry.index.dimension() != 2)
        throw std::invalid_argument("scan_rows: the (i,j) schema needs a bivariate index");
      ScanRow row;
      row.param_name = name;
      row.param_value = point.value;
      row.t = entry.t;
      row.i = entry.index[0];
      row.j = entry.index[1];
      row.raw = entry.raw;
      row.normalized = entry.normalized.value_or(0.0);
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return std::tie(a.param_value, a.t, a.i, a.j) < std::tie(b.param_value, b.t, b.i, b.j);
  });
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "param_name,param_value,t,i,j,raw,normalized\n";
  for (const auto& r : rows) {
    os << r.param_name << ',' << format_significant(r.param_value) << ','
       << format_significant(r.t) << ',' << r.i << ',' << r.j << ','
       << format_significant(r.raw) << ',' << format_significant(r.normalized) << '\n';
  }
}

void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "[\n";
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    os << "  {\"param_name\": \"" << r.param_name << "\", \"param_value\": "
       << format_significant(r.param_value) << ", \"t\": " << format_significant(r.t)
       << ", \"i\": " << r.i << ", \"j\": " << r.j << ", \"raw\": " << format_significant(r.raw)
       << ", \"normalized\": " << format_significant(r.normalized) << '}';
    if (k + 1 < rows.size()) os << ',';
    os << '\n';
  }
  os << "]\n";
}

}  // namespace levycum
