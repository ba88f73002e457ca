#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levycum/rho_alpha.hpp"

namespace levycum {

/// One output line of a scan: long format, bivariate index (i, j).
struct ScanRow {
  std::string param_name;
  double param_value = 0.0;
  double t = 0.0;
  int i = 0;
  int j = 0;
  double raw = 0.0;
  double normalized = 0.0;
};

/// Shortest decimal representation that parses back to the value,
/// capped at max_digits significant digits (then the cap wins).
std::string format_significant(double value, int max_digits = 12);

/// Flattens scan points to rows sorted by (param_value, t, i, j).
std::vector<ScanRow> scan_rows(ScanParameter parameter, const std::vector<ScanPoint>& points);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace levycum
