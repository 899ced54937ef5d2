#include "ladder4/figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "ladder4/errors.hpp"

namespace ladder4 {

namespace {

SystemParams base(double w1, double w2, double w3, double d1 = 0, double d2 = 0,
                  double d3 = 0) {
  SystemParams p;
  p.with_omega(w1, w2, w3).with_delta(d1, d2, d3).with_gamma(6, 1, 1);
  return p;
}

SweepSpec sweep1d(SystemParams b, const std::string& vary, double start,
                  double stop, double step, const std::string& obs) {
  SweepSpec s;
  s.base = b;
  s.axes = {{vary, start, stop, step}};
  s.observable = obs;
  s.method = "exact";
  return s;
}

SweepSpec grid_w1_w3(const std::string& obs, double w2) {
  SweepSpec s;
  s.base = base(0, w2, 0);
  s.axes = {{"omega1", 0, 40, 0.5}, {"omega3", 0, 40, 0.5}};
  s.observable = obs;
  s.method = "exact";
  return s;
}

SweepSpec grid_w3_d3(const std::string& obs) {
  SweepSpec s;
  s.base = base(4, 20, 0);
  s.axes = {{"omega3", 0, 40, 0.5}, {"delta3", -20, 20, 0.1}};
  s.observable = obs;
  s.method = "exact";
  return s;
}

// The four drive-strength curves shared by figures 6-8: the swept drive
// against the fixed partner at 20, for weak (2) and strong (8) middle
// coupling.
std::vector<CurveSpec> strength_curves(const std::string& obs) {
  return {
      {"a", sweep1d(base(20, 2, 0), "omega3", 0, 40, 0.5, obs)},
      {"b", sweep1d(base(0, 2, 20), "omega1", 0, 40, 0.5, obs)},
      {"c", sweep1d(base(20, 8, 0), "omega3", 0, 40, 0.5, obs)},
      {"d", sweep1d(base(0, 8, 20), "omega1", 0, 40, 0.5, obs)},
  };
}

std::vector<CurveSpec> detuning_panels() {
  const SystemParams weak = base(20, 2, 20);
  const SystemParams strong = base(4, 20, 4);
  std::vector<CurveSpec> c;
  const struct {
    const char* panel;
    const char* obs;
    const char* vary;
    double step;
  } panels[] = {
      {"A", "im_rho21", "delta1", 0.05}, {"B", "im_rho21", "delta3", 0.02},
      {"C", "im_rho32", "delta1", 0.05}, {"D", "im_rho32", "delta3", 0.02},
      {"E", "im_rho43", "delta1", 0.05}, {"F", "im_rho43", "delta3", 0.02},
  };
  for (const auto& pl : panels)
    for (const auto& [case_name, params] :
         {std::pair<const char*, SystemParams>{"a", weak}, {"b", strong}})
      c.push_back({std::string(pl.panel) + case_name,
                   sweep1d(params, pl.vary, -60, 60, pl.step, pl.obs)});
  return c;
}

}  // namespace

FigureRecipe FigureRecipe::get(int id) {
  FigureRecipe r;
  r.id = id;
  switch (id) {
    case 2:
      r.description =
          "ground-state absorption vs probe detuning for one, two and three "
          "active drives";
      r.curves = {
          {"a", sweep1d(base(20, 0, 0), "delta1", -60, 60, 0.05, "im_rho21")},
          {"b", sweep1d(base(20, 2, 0), "delta1", -60, 60, 0.05, "im_rho21")},
          {"c", sweep1d(base(20, 2, 20), "delta1", -60, 60, 0.05, "im_rho21")},
      };
      break;
    case 3:
      r.description = "level-2 population over the probe/upper drive plane";
      r.curves = {{"", grid_w1_w3("rho22", 2)}};
      break;
    case 4:
      r.description = "level-3 population over the probe/upper drive plane";
      r.curves = {{"", grid_w1_w3("rho33", 2)}};
      break;
    case 5:
      r.description = "level-4 population over the probe/upper drive plane";
      r.curves = {{"", grid_w1_w3("rho44", 2)}};
      break;
    case 6:
      r.description = "level-2 population against one drive strength";
      r.curves = strength_curves("rho22");
      break;
    case 7:
      r.description = "level-3 population against one drive strength";
      r.curves = strength_curves("rho33");
      break;
    case 8:
      r.description = "level-4 population against one drive strength";
      r.curves = strength_curves("rho44");
      break;
    case 9:
      r.description =
          "transition absorptions vs probe and uppermost detunings for weak "
          "and strong middle coupling";
      r.curves = detuning_panels();
      break;
    case 10:
      r.description = "ground-state absorption over the upper drive/detuning plane";
      r.curves = {{"", grid_w3_d3("im_rho21")}};
      break;
    case 11:
      r.description = "middle-transition absorption over the upper drive/detuning plane";
      r.curves = {{"", grid_w3_d3("im_rho32")}};
      break;
    case 12:
      r.description = "upper-transition absorption over the upper drive/detuning plane";
      r.curves = {{"", grid_w3_d3("im_rho43")}};
      break;
    default:
      throw PreconditionError("figure id must be in 2..12");
  }
  return r;
}

namespace {

std::string curve_file_name(int id, const std::string& curve) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "fig%02d", id);
  return curve.empty() ? std::string(buf) + ".csv"
                       : std::string(buf) + "_" + curve + ".csv";
}

struct Loaded1D {
  AbsorptionProfile profile;
};

Loaded1D load_1d(const std::filesystem::path& file, const std::string& var) {
  CsvData d = read_csv_file(file);
  for (bool ok : d.ok)
    if (!ok) throw Error("IoError", "holes in " + file.string());
  return {AbsorptionProfile(var, d.columns[0], d.columns[1], "exact-numeric")};
}

struct Loaded2D {
  std::vector<double> axis0, axis1;
  std::vector<std::vector<double>> values;  // [i0][i1]
};

Loaded2D load_2d(const std::filesystem::path& file) {
  CsvData d = read_csv_file(file);
  Loaded2D g;
  const auto& a0 = d.columns[0];
  const auto& a1 = d.columns[1];
  const auto& v = d.columns[2];
  size_t n1 = 0;
  while (n1 < a0.size() && a0[n1] == a0[0]) ++n1;
  const size_t n0 = a0.size() / n1;
  if (n0 * n1 != a0.size())
    throw Error("IoError", "ragged grid in " + file.string());
  g.axis0.assign(n0, 0.0);
  g.axis1.assign(a1.begin(), a1.begin() + n1);
  g.values.assign(n0, std::vector<double>(n1));
  for (size_t i = 0; i < n0; ++i) {
    g.axis0[i] = a0[i * n1];
    for (size_t j = 0; j < n1; ++j) g.values[i][j] = v[i * n1 + j];
  }
  return g;
}

double value_at(const AbsorptionProfile& p, double x) {
  size_t best = 0;
  for (size_t i = 1; i < p.grid.size(); ++i)
    if (std::abs(p.grid[i] - x) < std::abs(p.grid[best] - x)) best = i;
  return p.values[best];
}

nlohmann::json peak_json(const PeakReport& r) {
  nlohmann::json j;
  j["peak_count"] = r.count;
  nlohmann::json peaks = nlohmann::json::array();
  for (const Peak& p : r.peaks) {
    nlohmann::json pj = {{"location", p.location}, {"height", p.height}};
    if (p.fwhm)
      pj["fwhm"] = *p.fwhm;
    else
      pj["fwhm"] = nullptr;
    peaks.push_back(pj);
  }
  j["peaks"] = peaks;
  if (r.count > 0) {
    const Peak* main = &r.peaks[0];
    for (const Peak& p : r.peaks)
      if (p.height > main->height) main = &p;
    j["main_peak"] = {{"location", main->location}, {"height", main->height}};
    if (main->fwhm)
      j["main_peak"]["fwhm"] = *main->fwhm;
    else
      j["main_peak"]["fwhm"] = nullptr;
  }
  return j;
}

// Depth of the localized feature at the resonance point x0, measured
// against the linear background across [x0-5, x0+5].
nlohmann::json local_dip_json(const AbsorptionProfile& p, double x0) {
  const double shoulder = 0.5 * (value_at(p, x0 - 5.0) + value_at(p, x0 + 5.0));
  double lowest = shoulder;
  double where = x0;
  for (size_t i = 0; i < p.grid.size(); ++i)
    if (p.grid[i] >= x0 - 5.0 && p.grid[i] <= x0 + 5.0 &&
        p.values[i] < lowest) {
      lowest = p.values[i];
      where = p.grid[i];
    }
  nlohmann::json j;
  j["min_location"] = where;
  j["local_depth_rel"] = shoulder > 0.0 ? (shoulder - lowest) / shoulder : 0.0;
  return j;
}

nlohmann::json slice_extrema_json(const Loaded2D& g, bool maxima) {
  nlohmann::json arr = nlohmann::json::array();
  double at20 = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < g.axis0.size(); ++i) {
    size_t best = 0;
    for (size_t j = 1; j < g.axis1.size(); ++j) {
      const bool better = maxima ? g.values[i][j] > g.values[i][best]
                                 : g.values[i][j] < g.values[i][best];
      if (better) best = j;
    }
    arr.push_back({{"omega1", g.axis0[i]}, {"omega3", g.axis1[best]}});
    if (g.axis0[i] == 20.0) at20 = g.axis1[best];
  }
  nlohmann::json j;
  j[maxima ? "slice_argmax" : "slice_argmin"] = arr;
  j[maxima ? "argmax_at_omega1_20" : "argmin_at_omega1_20"] = at20;
  return j;
}

}  // namespace

FigureResult reproduce_figure(int id, const std::filesystem::path& out_dir) {
  const FigureRecipe recipe = FigureRecipe::get(id);
  std::filesystem::create_directories(out_dir);

  FigureResult out;
  out.id = id;
  for (const CurveSpec& c : recipe.curves) {
    SweepResult r = run_sweep(c.sweep);
    const std::filesystem::path file = out_dir / curve_file_name(id, c.name);
    write_csv_file(r, file);
    out.files.push_back(file);
  }

  // Features are recomputed from the files just written.
  nlohmann::json s;
  s["figure"] = id;
  s["description"] = recipe.description;

  auto curve_path = [&](const std::string& name) {
    return out_dir / curve_file_name(id, name);
  };

  switch (id) {
    case 2: {
      nlohmann::json curves;
      std::map<std::string, double> center;
      for (const char* name : {"a", "b", "c"}) {
        Loaded1D l = load_1d(curve_path(name), "delta1");
        nlohmann::json cj = peak_json(find_peaks(l.profile));
        center[name] = value_at(l.profile, 0.0);
        cj["center_value"] = center[name];
        curves[name] = cj;
      }
      s["curves"] = curves;
      s["line_center_dip_b_minus_c"] = center["b"] - center["c"];
      break;
    }
    case 3:
      s.update(slice_extrema_json(load_2d(curve_path("")), false));
      break;
    case 4:
    case 5:
      s.update(slice_extrema_json(load_2d(curve_path("")), true));
      break;
    case 6: {
      nlohmann::json curves;
      std::map<std::string, double> depth;
      for (const char* name : {"a", "b", "c", "d"}) {
        Loaded1D l = load_1d(curve_path(name), "omega");
        nlohmann::json cj = local_dip_json(l.profile, 20.0);
        depth[name] = cj["local_depth_rel"].get<double>();
        curves[name] = cj;
      }
      s["curves"] = curves;
      s["sharper_dip_at_weak_middle_coupling"] =
          depth["a"] > depth["c"] && depth["b"] > depth["d"];
      break;
    }
    case 7:
    case 8: {
      nlohmann::json curves;
      for (const char* name : {"a", "b", "c", "d"}) {
        Loaded1D l = load_1d(curve_path(name), "omega");
        size_t best = 0;
        for (size_t i = 1; i < l.profile.values.size(); ++i)
          if (l.profile.values[i] > l.profile.values[best]) best = i;
        curves[name] = {{"max_location", l.profile.grid[best]},
                        {"max_value", l.profile.values[best]}};
      }
      s["curves"] = curves;
      break;
    }
    case 9: {
      nlohmann::json panels;
      for (const char* panel : {"A", "B", "C", "D", "E", "F"})
        for (const char* cs : {"a", "b"}) {
          std::string name = std::string(panel) + cs;
          Loaded1D l = load_1d(curve_path(name),
                               (panel[0] - 'A') % 2 == 0 ? "delta1" : "delta3");
          panels[name] = peak_json(find_peaks(l.profile));
        }
      s["panels"] = panels;
      break;
    }
    case 10:
    case 11:
    case 12: {
      Loaded2D g = load_2d(curve_path(""));
      // Absorption concentrates at delta3 = 0; record where each slice
      // peaks and how the line-center value moves with the drive.
      size_t centered = 0;
      const size_t j0 =
          std::find(g.axis1.begin(), g.axis1.end(), 0.0) - g.axis1.begin();
      std::vector<double> center_line;
      for (size_t i = 0; i < g.axis0.size(); ++i) {
        size_t best = 0;
        for (size_t j = 1; j < g.axis1.size(); ++j)
          if (g.values[i][j] > g.values[i][best]) best = j;
        if (std::abs(g.axis1[best]) <= 0.1 + 1e-12) ++centered;
        center_line.push_back(g.values[i][j0]);
      }
      s["slices_peaking_at_line_center_fraction"] =
          static_cast<double>(centered) / g.axis0.size();
      size_t peak_i = std::max_element(center_line.begin(), center_line.end()) -
                      center_line.begin();
      s["center_line"] = {{"omega3_at_max", g.axis0[peak_i]},
                          {"max", center_line[peak_i]},
                          {"first", center_line.front()},
                          {"last", center_line.back()}};
      break;
    }
    default:
      break;
  }

  char buf[32];
  std::snprintf(buf, sizeof(buf), "fig%02d_summary.json", id);
  out.summary_file = out_dir / buf;
  std::ofstream os(out.summary_file, std::ios::binary);
  os << s.dump(2) << "\n";
  out.summary = s;
  return out;
}

}  // namespace ladder4
