#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ladder4/sweep.hpp"

namespace ladder4 {

// One curve or grid of a figure: a named sweep.
struct CurveSpec {
  std::string name;  // file suffix ("a", "Ab", ...); empty for single grids
  SweepSpec sweep;
};

// Transcribed sweep definitions for figures 2..12. Axis ranges that the
// source plots leave implicit are reconstructed defaults (deltas on
// [-60, 60], Rabi frequencies on [0, 40]) and recorded in each recipe.
struct FigureRecipe {
  int id = 0;
  std::string description;
  std::vector<CurveSpec> curves;

  static FigureRecipe get(int id);
};

struct FigureResult {
  int id = 0;
  std::vector<std::filesystem::path> files;
  std::filesystem::path summary_file;
  nlohmann::json summary;
};

// Writes one CSV per curve plus a JSON summary of extracted features (peak
// counts, dip locations, widths). Features are recomputed from the written
// CSVs, not from in-memory state.
FigureResult reproduce_figure(int id, const std::filesystem::path& out_dir);

}  // namespace ladder4
