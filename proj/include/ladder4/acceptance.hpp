#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ladder4 {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the verification criteria (all ten, or a single one), printing one
// pass/fail line per criterion to `log` as each completes. `work_dir` holds
// the figure outputs of the regression criterion.
std::vector<CriterionResult> run_acceptance(std::optional<int> only,
                                            const std::filesystem::path& work_dir,
                                            std::ostream& log);

}  // namespace ladder4
