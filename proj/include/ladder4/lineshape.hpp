#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ladder4/params.hpp"

namespace ladder4 {

// A sampled observable against one swept parameter. Grid strictly
// increasing, values finite.
struct AbsorptionProfile {
  std::string sweep_variable;  // "delta1", "delta3", "omega3", ...
  std::vector<double> grid;
  std::vector<double> values;
  std::string provenance;  // "exact-numeric", "eq4".."eq7", "perturbative"

  AbsorptionProfile() = default;
  AbsorptionProfile(std::string var, std::vector<double> g,
                    std::vector<double> v, std::string prov);
};

struct Peak {
  double location = 0.0;
  double height = 0.0;
  // Full width at half maximum above the local-window baseline; empty when
  // a half-maximum crossing is missing on either side (unbounded).
  std::optional<double> fwhm;
  bool interpolated = false;
};

struct PeakReport {
  std::vector<Peak> peaks;
  int count = 0;
};

// Autler-Townes doublet of the strong middle coupling with the uppermost
// drive off: rational function of delta1 (delta2 held at zero by the
// formula's domain; omega3 is ignored).
AbsorptionProfile doublet_eq5(const SystemParams& p,
                              std::span<const double> delta1_grid);

// Three-peak absorption with both upper detunings zero.
AbsorptionProfile three_peak_eq6(const SystemParams& p,
                                 std::span<const double> delta1_grid);

// Line-center Lorentzian against delta3 (delta1 = delta2 = 0).
AbsorptionProfile lorentzian_eq7(const SystemParams& p,
                                 std::span<const double> delta3_grid);

// Imaginary part of the first-order weak-probe coherence against one
// detuning, the other two taken from p. Specializes to eq5/eq6/eq7 on their
// domains.
AbsorptionProfile eq4_profile(const SystemParams& p, const std::string& var,
                              std::span<const double> grid);

struct EitWidthResult {
  double width = 0.0;     // sqrt(|radicand|)
  double radicand = 0.0;  // as printed; dimensionally suspect
  bool imaginary = false; // radicand < 0
};

// Width scale of the EIT window. The printed radicand mixes fourth- and
// second-power terms; squared_variant replaces the trailing term by its
// dimensionally consistent square for comparison.
EitWidthResult eit_window_width(const SystemParams& p,
                                bool squared_variant = false);

// Discrete local maxima (plateaus report their leftmost sample), refined by
// three-point parabolic interpolation. FWHM is measured relative to the
// profile's minimum within the window between adjacent local minima, with
// linearly interpolated half-maximum crossings.
PeakReport find_peaks(const AbsorptionProfile& profile);

}  // namespace ladder4
