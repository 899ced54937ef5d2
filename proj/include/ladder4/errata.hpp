#pragma once

#include <string>
#include <vector>

namespace ladder4 {

// One measured discrepancy between a printed closed form and the direct
// solution of its defining equations (or between a quoted scaling and the
// exact formula). Residuals are recomputed at canonical parameter points on
// every call; nothing here is hand-entered.
struct ErratumEntry {
  std::string id;
  std::string summary;
  double residual = 0.0;  // relative measure of the discrepancy
  std::string detail;     // parameter point and measured values
};

std::vector<ErratumEntry> compute_errata();

std::string format_errata(const std::vector<ErratumEntry>& entries);

}  // namespace ladder4
