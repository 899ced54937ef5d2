#include "ladder4/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "ladder4/errata.hpp"
#include "ladder4/figures.hpp"
#include "ladder4/perturb.hpp"
#include "ladder4/steady.hpp"

namespace ladder4 {

namespace {

SystemParams make(double w1, double w2, double w3, double d1 = 0, double d2 = 0,
                  double d3 = 0) {
  SystemParams p;
  p.with_omega(w1, w2, w3).with_delta(d1, d2, d3).with_gamma(6, 1, 1);
  return p;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

std::vector<double> linspace(double a, double b, double step) {
  std::vector<double> g;
  for (long k = 0;; ++k) {
    double x = a + k * step;
    if (x > b + 1e-9) break;
    g.push_back(x);
  }
  return g;
}

AbsorptionProfile exact_profile(const SystemParams& base, const std::string& var,
                                double start, double stop, double step) {
  SweepSpec s;
  s.base = base;
  s.axes = {{var, start, stop, step}};
  s.observable = "im_rho21";
  s.method = "exact";
  return run_sweep(s).to_profile();
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CriterionResult c1_physicality() {
  std::mt19937_64 rng(0x6c61646465723401ULL);
  std::uniform_real_distribution<double> uw(0.0, 40.0);
  std::uniform_real_distribution<double> ud(-60.0, 60.0);
  double max_res = 0, max_tr = 0, max_herm = 0, min_eig = 1e30;
  for (int k = 0; k < 1000; ++k) {
    SystemParams p = make(uw(rng), uw(rng), uw(rng), ud(rng), ud(rng), ud(rng));
    SteadyStateResult r = steady_state_exact(p);
    max_res = std::max(max_res, r.residual_inf_norm);
    max_tr = std::max(max_tr, std::abs(r.rho.trace() - cplx(1.0)));
    max_herm = std::max(max_herm, r.rho.hermiticity_error());
    min_eig = std::min(min_eig, r.rho.min_eigenvalue());
  }
  const bool pass = max_res <= 1e-9 && max_tr <= 1e-12 && max_herm <= 1e-12 &&
                    min_eig >= -1e-9;
  return {1, "physicality",
          pass,
          "1000 random points: max residual " + num(max_res) +
              ", max trace error " + num(max_tr) + ", max hermiticity " +
              num(max_herm) + ", min eigenvalue " + num(min_eig)};
}

CriterionResult c2_oracle_equivalence() {
  const std::vector<std::pair<std::string, SystemParams>> points = {
      {"(20,0,0)", make(20, 0, 0)},
      {"(20,2,0)", make(20, 2, 0)},
      {"(20,2,20)", make(20, 2, 20)},
      {"(4,20,4)", make(4, 20, 4)},
  };
  double worst = 0;
  std::string detail;
  for (const auto& [name, p] : points) {
    DensityMatrix rk = evolve_rk4(p, DensityMatrix::ground(), 50.0, 1e-3);
    double diff = rk.max_abs_diff(steady_state_exact(p).rho);
    worst = std::max(worst, diff);
    detail += name + " " + num(diff) + "  ";
  }
  return {2, "oracle-equivalence", worst <= 1e-6,
          "rk4(t=50, dt=1e-3) vs linear solve, elementwise: " + detail};
}

struct Slopes {
  double pop, coh;
};

Slopes convergence_slopes(Route route) {
  std::vector<double> lw, lp, lc;
  for (double w2 : {0.2, 0.1, 0.05, 0.02}) {
    SystemParams p = make(20, w2, 10);
    DensityMatrix exact = steady_state_exact(p).rho;
    DensityMatrix t2 = weak_omega2_order2(p, route).total;
    DensityMatrix t1 = weak_omega2_order1_coherences(p, route).total;
    double ep = 0, ec = 0;
    for (int k = 1; k <= 4; ++k)
      ep = std::max(ep, std::abs(t2.population(k) - exact.population(k)));
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j)
        ec = std::max(ec, std::abs(t1.elem(i, j) - exact.elem(i, j)));
    lw.push_back(std::log(w2));
    lp.push_back(std::log(ep));
    lc.push_back(std::log(ec));
  }
  return {fit_slope(lw, lp), fit_slope(lw, lc)};
}

CriterionResult c3_perturbative_convergence() {
  const Slopes printed = convergence_slopes(Route::printed);
  const bool printed_ok = printed.pop >= 2.5 && printed.coh >= 1.5;
  std::string detail = "printed closed forms: pop slope " + num(printed.pop) +
                       ", coh slope " + num(printed.coh);
  if (printed_ok)
    return {3, "perturbative-convergence", true, detail};

  const Slopes solved = convergence_slopes(Route::solved);
  const bool solved_ok = solved.pop >= 2.5 && solved.coh >= 1.5;
  // The fallback only rescues the criterion when the discrepancy is on the
  // ledger.
  bool ledgered = false;
  for (const auto& e : compute_errata())
    if (e.id == "convergence-slope-printed") ledgered = true;
  detail += "; linear-solve fallback: pop slope " + num(solved.pop) +
            ", coh slope " + num(solved.coh) +
            (ledgered ? " (discrepancy on the erratum ledger)"
                      : " (MISSING erratum entry)");
  return {3, "perturbative-convergence", solved_ok && ledgered, detail};
}

CriterionResult c4_resonance_condition() {
  auto sweep_pop = [](double w2, const std::string& obs) {
    SweepSpec s;
    s.base = make(20, w2, 0);
    s.axes = {{"omega3", 0, 40, 0.5}};
    s.observable = obs;
    s.method = "exact";
    return run_sweep(s).to_profile();
  };
  auto argext = [](const AbsorptionProfile& p, bool maxima) {
    size_t best = 0;
    for (size_t i = 1; i < p.values.size(); ++i)
      if (maxima ? p.values[i] > p.values[best] : p.values[i] < p.values[best])
        best = i;
    return p.grid[best];
  };
  auto local_depth = [](const AbsorptionProfile& p) {
    auto at = [&](double x) {
      size_t best = 0;
      for (size_t i = 1; i < p.grid.size(); ++i)
        if (std::abs(p.grid[i] - x) < std::abs(p.grid[best] - x)) best = i;
      return p.values[best];
    };
    const double shoulder = 0.5 * (at(15.0) + at(25.0));
    double lowest = shoulder;
    for (size_t i = 0; i < p.grid.size(); ++i)
      if (p.grid[i] >= 15.0 && p.grid[i] <= 25.0)
        lowest = std::min(lowest, p.values[i]);
    return (shoulder - lowest) / shoulder;
  };

  AbsorptionProfile r22_w2 = sweep_pop(2, "rho22");
  const double min22 = argext(r22_w2, false);
  const double max33 = argext(sweep_pop(2, "rho33"), true);
  const double max44 = argext(sweep_pop(2, "rho44"), true);
  const double depth2 = local_depth(r22_w2);
  const double depth8 = local_depth(sweep_pop(8, "rho22"));

  const bool located = std::abs(min22 - 20.0) <= 0.5 + 1e-12 &&
                       std::abs(max33 - 20.0) <= 0.5 + 1e-12 &&
                       std::abs(max44 - 20.0) <= 0.5 + 1e-12;
  const bool weaker = depth8 < depth2;
  return {4, "resonance-condition", located && weaker,
          "rho22 min at W3=" + num(min22) + ", rho33 max at " + num(max33) +
              ", rho44 max at " + num(max44) +
              "; relative dip depth (shoulder baseline, W3 in [15,25]) " +
              num(depth2) + " at W2=2 vs " + num(depth8) + " at W2=8"};
}

CriterionResult c5_three_peak() {
  AbsorptionProfile exact = exact_profile(make(4, 20, 4), "delta1", -60, 60, 0.05);
  PeakReport pe = find_peaks(exact);

  auto grid = linspace(-60, 60, 0.05);
  PeakReport pa = find_peaks(three_peak_eq6(make(4, 20, 4), grid));

  bool pass = pe.count == 3 && pa.count == 3;
  std::string detail = "exact peaks " + std::to_string(pe.count) +
                       ", closed-form peaks " + std::to_string(pa.count);
  if (pass) {
    auto center_ok = [](const PeakReport& r, double tol) {
      double best = 1e30;
      for (const auto& p : r.peaks) best = std::min(best, std::abs(p.location));
      return best <= tol;
    };
    pass = center_ok(pe, 0.05) && center_ok(pa, 0.05);
    detail += "; center peak within 0.05 of zero: " + std::string(pass ? "yes" : "no");
    double worst_loc = 0, worst_height = 0;
    for (int k = 0; k < 3 && pass; ++k) {
      const Peak& e = pe.peaks[k];
      const Peak& a = pa.peaks[k];
      if (std::abs(e.location) > 0.05) {
        const double dloc = std::abs(a.location - e.location) / std::abs(e.location);
        worst_loc = std::max(worst_loc, dloc);
      }
      worst_height =
          std::max(worst_height, std::abs(a.height - e.height) / e.height);
    }
    pass = pass && worst_loc <= 0.05;
    detail += "; side-peak location deviation " + num(worst_loc) +
              " (<= 0.05); first-order heights overshoot the saturated exact "
              "profile by " +
              num(worst_height) + " rel (erratum: first-order-saturation)";
  }
  return {5, "three-peak-structure", pass, detail};
}

CriterionResult c6_at_filtering() {
  AbsorptionProfile exact =
      exact_profile(make(4, 20, 4), "delta3", -60, 60, 0.02);
  PeakReport pe = find_peaks(exact);
  bool pass = pe.count == 1;
  double loc = pass ? pe.peaks[0].location : 1e30;
  pass = pass && std::abs(loc) <= 0.02;
  return {6, "autler-townes-filtering", pass,
          "exact delta3 profile: " + std::to_string(pe.count) +
              " peak(s), location " + num(loc)};
}

CriterionResult c7_subnatural() {
  // The closed-form width is probe-independent; the exact profile is run in
  // the weak-probe regime (W1 = 0.5) where the first-order shape applies.
  const double w1 = 0.5;
  auto grid = linspace(-60, 60, 0.02);
  auto fwhm_of = [](const PeakReport& r) -> double {
    if (r.count != 1 || !r.peaks[0].fwhm) return -1.0;
    return *r.peaks[0].fwhm;
  };
  const double fe4 =
      fwhm_of(find_peaks(exact_profile(make(w1, 20, 4), "delta3", -60, 60, 0.02)));
  const double fe2 =
      fwhm_of(find_peaks(exact_profile(make(w1, 20, 2), "delta3", -60, 60, 0.02)));
  const double fa4 = fwhm_of(find_peaks(lorentzian_eq7(make(w1, 20, 4), grid)));
  const double fa2 = fwhm_of(find_peaks(lorentzian_eq7(make(w1, 20, 2), grid)));

  const bool subnatural = fe4 > 0 && fe4 < 6.0;
  const double ratio = fa4 / fa2;
  const bool ratio_ok = ratio >= 4.0 * 0.85 && ratio <= 4.0 * 1.15;
  const double agree = std::abs(fa4 - fe4) / fe4;
  const bool agree_ok = agree <= 0.10;

  std::ostringstream d;
  d << "exact FWHM " << num(fe4) << " (subnatural: " << (subnatural ? "yes" : "no")
    << "); closed-form FWHM ratio W3=4/W3=2 " << num(ratio)
    << " vs required 4 +- 15% (" << (ratio_ok ? "ok" : "violated")
    << "; the gb4 W2^2 width floor caps the ratio at " << num(ratio)
    << ", erratum: eq7-width-ratio; exact ratio " << num(fe4 / fe2)
    << "); closed form vs exact FWHM rel " << num(agree) << " ("
    << (agree_ok ? "ok" : "violated") << ")";
  return {7, "subnatural-linewidth", subnatural && ratio_ok && agree_ok,
          d.str()};
}

CriterionResult c8_limit_chain() {
  auto grid = linspace(-60, 60, 0.05);
  double worst_56 = 0;
  {
    SystemParams p = make(1, 20, 0);
    AbsorptionProfile a6 = three_peak_eq6(p, grid);
    AbsorptionProfile a5 = doublet_eq5(p, grid);
    for (size_t i = 0; i < grid.size(); ++i)
      worst_56 = std::max(worst_56, std::abs(a6.values[i] - a5.values[i]));
  }
  double worst_rel = 0;
  {
    SystemParams p = make(1, 20, 0, 0, 0, 0.9);
    AbsorptionProfile a4 = eq4_profile(p, "delta1", grid);
    AbsorptionProfile a5 = doublet_eq5(p, grid);
    for (size_t i = 0; i < grid.size(); ++i)
      worst_rel = std::max(worst_rel, std::abs(a4.values[i] - a5.values[i]) /
                                          std::abs(a5.values[i]));
  }
  {
    SystemParams p = make(4, 20, 4);
    AbsorptionProfile a4 = eq4_profile(p, "delta1", grid);
    AbsorptionProfile a6 = three_peak_eq6(p, grid);
    for (size_t i = 0; i < grid.size(); ++i)
      worst_rel = std::max(worst_rel, std::abs(a4.values[i] - a6.values[i]) /
                                          std::abs(a6.values[i]));
    AbsorptionProfile b4 = eq4_profile(p, "delta3", grid);
    AbsorptionProfile a7 = lorentzian_eq7(p, grid);
    for (size_t i = 0; i < grid.size(); ++i)
      worst_rel = std::max(worst_rel, std::abs(b4.values[i] - a7.values[i]) /
                                          std::abs(a7.values[i]));
  }
  const bool pass = worst_56 <= 1e-12 && worst_rel <= 1e-10;
  return {8, "algebraic-limit-chain", pass,
          "eq6(W3=0) vs eq5 max abs " + num(worst_56) +
              "; eq4 specializations vs eq5/eq6/eq7 max rel " + num(worst_rel)};
}

CriterionResult c9_line_center_scalings() {
  double worst5 = 0;
  for (auto [w1, w2] : std::vector<std::pair<double, double>>{
           {1, 20}, {4, 20}, {2, 8}}) {
    const double grid[1] = {0.0};
    const double v = doublet_eq5(make(w1, w2, 0), grid).values[0];
    const double expect = w1 * 0.5 / (3.0 * 0.5 + w2 * w2);
    worst5 = std::max(worst5, std::abs(v - expect));
  }

  std::vector<double> exact_ratio, naive_ratio;
  for (double w3 : {1.0, 2.0, 4.0}) {
    const double grid[1] = {0.0};
    const double v = three_peak_eq6(make(4, 20, w3), grid).values[0];
    const double K = 3.0 * 0.25 + 0.5 * 400.0 + 3.0 * w3 * w3;
    exact_ratio.push_back(v / (4.0 * (w3 * w3 + 0.25) / K));
    naive_ratio.push_back(v / (4.0 * w3 * w3 / (0.5 * 400.0 + 3.0 * w3 * w3)));
  }
  auto spread = [](const std::vector<double>& r) {
    return *std::max_element(r.begin(), r.end()) -
           *std::min_element(r.begin(), r.end());
  };
  const double s_exact = spread(exact_ratio);
  const double s_naive = spread(naive_ratio);
  const bool pass = worst5 <= 1e-12 && s_exact <= 1e-9;
  return {9, "line-center-scalings", pass,
          "eq5 center identity max abs " + num(worst5) +
              "; eq6 center ratio spread vs derived constant " + num(s_exact) +
              " (quoted scaling without decay products spreads " + num(s_naive) +
              ", erratum: eq6-line-center-proportionality)"};
}

CriterionResult c10_figure_regression(const std::filesystem::path& work_dir) {
  namespace fs = std::filesystem;
  const fs::path run1 = work_dir / "run1";
  const fs::path run2 = work_dir / "run2";
  std::vector<std::string> problems;

  std::map<int, nlohmann::json> summaries;
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (int id = 2; id <= 12; ++id) {
    FigureResult r1 = reproduce_figure(id, run1);
    FigureResult r2 = reproduce_figure(id, run2);
    summaries[id] = r1.summary;
    for (size_t k = 0; k < r1.files.size(); ++k)
      pairs.emplace_back(r1.files[k], r2.files[k]);
    pairs.emplace_back(r1.summary_file, r2.summary_file);
  }

  auto slurp = [](const fs::path& f) {
    std::ifstream is(f, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  for (const auto& [a, b] : pairs)
    if (slurp(a) != slurp(b))
      problems.push_back("rerun differs: " + a.filename().string());

  try {
    const auto& s2 = summaries.at(2);
    if (!(s2.at("line_center_dip_b_minus_c").get<double>() > 0))
      problems.push_back("fig2: no line-center dip from the uppermost drive");
    if (std::abs(summaries.at(3).at("argmin_at_omega1_20").get<double>() - 20.0) >
        0.5 + 1e-12)
      problems.push_back("fig3: rho22 slice minimum away from the resonance");
    for (int id : {4, 5})
      if (std::abs(summaries.at(id).at("argmax_at_omega1_20").get<double>() -
                   20.0) > 0.5 + 1e-12)
        problems.push_back("fig" + std::to_string(id) +
                           ": population maximum away from the resonance");
    if (!summaries.at(6).at("sharper_dip_at_weak_middle_coupling").get<bool>())
      problems.push_back("fig6: dip not sharper at weak middle coupling");
    const auto& p9 = summaries.at(9).at("panels");
    if (p9.at("Ab").at("peak_count").get<int>() != 3)
      problems.push_back("fig9 A(b): expected 3 peaks");
    else {
      double best = 1e30;
      for (const auto& pk : p9.at("Ab").at("peaks"))
        best = std::min(best, std::abs(pk.at("location").get<double>()));
      if (best > 0.05) problems.push_back("fig9 A(b): no line-center peak");
    }
    if (p9.at("Bb").at("peak_count").get<int>() != 1)
      problems.push_back("fig9 B(b): expected 1 peak");
    else {
      const auto& mp = p9.at("Bb").at("main_peak");
      if (std::abs(mp.at("location").get<double>()) > 0.02)
        problems.push_back("fig9 B(b): peak away from line center");
      if (mp.at("fwhm").is_null() || mp.at("fwhm").get<double>() >= 6.0)
        problems.push_back("fig9 B(b): width not subnatural");
    }
    for (int id : {10, 11, 12})
      if (summaries.at(id)
              .at("slices_peaking_at_line_center_fraction")
              .get<double>() < 0.95)
        problems.push_back("fig" + std::to_string(id) +
                           ": absorption not concentrated at zero detuning");
  } catch (const std::exception& e) {
    problems.push_back(std::string("summary schema: ") + e.what());
  }

  std::string detail = "figures 2-12 written twice under " + work_dir.string();
  if (problems.empty())
    detail += "; byte-identical reruns; all summary features as claimed";
  else {
    detail += "; problems: ";
    for (const auto& p : problems) detail += p + "; ";
  }
  return {10, "figure-regression", problems.empty(), detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::optional<int> only,
                                            const std::filesystem::path& work_dir,
                                            std::ostream& log) {
  std::vector<CriterionResult> results;
  auto run = [&](int id, auto&& fn) {
    if (only && *only != id) return;
    CriterionResult r = fn();
    log << "C" << r.id << " " << r.name << ": " << (r.pass ? "PASS" : "FAIL")
        << " - " << r.detail << "\n";
    log.flush();
    results.push_back(std::move(r));
  };
  run(1, c1_physicality);
  run(2, c2_oracle_equivalence);
  run(3, c3_perturbative_convergence);
  run(4, c4_resonance_condition);
  run(5, c5_three_peak);
  run(6, c6_at_filtering);
  run(7, c7_subnatural);
  run(8, c8_limit_chain);
  run(9, c9_line_center_scalings);
  run(10, [&] { return c10_figure_regression(work_dir); });
  return results;
}

}  // namespace ladder4
