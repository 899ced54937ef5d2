#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ladder4/lineshape.hpp"
#include "ladder4/params.hpp"
#include "ladder4/steady.hpp"

namespace ladder4 {

inline constexpr const char* kToolVersion = "ladder4 0.1.0";

// Shortest decimal representation that round-trips binary64.
std::string format_double(double x);
double parse_double(const std::string& s);

// One swept parameter: label in {omega1..3, delta1..3} over
// [start, start+step, ...] up to stop. start+step > stop degenerates to a
// single sample.
struct VaryAxis {
  std::string label;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> grid() const;
};

struct SweepSpec {
  SystemParams base;
  std::vector<VaryAxis> axes;  // one or two
  std::string observable;      // rho11..rho44, im_rho21/32/43, re/im_rhoIJ
  std::string method = "exact";  // exact | perturbative-order-{0,1,2}
                                 //       | analytic-eq{4,5,6,7}
};

struct SweepSample {
  double value = 0.0;
  bool ok = false;
  std::string error;  // error code for holes
};

// Samples in grid order (first axis outer, second inner), regardless of the
// execution order of the workers.
struct SweepResult {
  SweepSpec spec;
  std::vector<std::vector<double>> axis_grids;
  std::vector<SweepSample> samples;

  size_t index(size_t i, size_t j = 0) const {
    return axis_grids.size() == 1 ? i : i * axis_grids[1].size() + j;
  }
  bool all_ok() const;
  size_t hole_count() const;

  // 1D sweep as a profile; requires every point to have evaluated.
  AbsorptionProfile to_profile() const;
};

// Evaluates the observable at every grid point; point-level failures are
// recorded as holes, never propagated.
SweepResult run_sweep(const SweepSpec& spec);

// Observable extraction. The absorption labels im_rho21, im_rho32 and
// im_rho43 report the transition absorption with the sign that makes
// steady-state absorption positive (the imaginary part of rho12, rho23,
// rho34 respectively; the literal lower-triangle imaginary parts carry the
// opposite sign). Literal element access uses the upper-triangle labels
// re_rhoIJ / im_rhoIJ with I < J.
double evaluate_observable(const std::string& label, const DensityMatrix& rho);
bool observable_is_valid(const std::string& label);

// CSV with '#'-prefixed header comments carrying the tool version and the
// full parameter set; value fields use the round-trip representation.
void write_csv(const SweepResult& r, std::ostream& os);
void write_csv_file(const SweepResult& r, const std::filesystem::path& file);

struct CsvData {
  std::vector<std::string> header;            // column names
  std::vector<std::vector<double>> columns;   // numeric columns
  std::vector<bool> ok;                       // status column
};
CsvData read_csv_file(const std::filesystem::path& file);

// Worker cap: LADDER4_THREADS when set (>= 1), hardware concurrency
// otherwise.
unsigned sweep_thread_count();
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace ladder4
