#include "ladder4/lineshape.hpp"

#include <algorithm>
#include <cmath>

#include "ladder4/errors.hpp"
#include "ladder4/perturb.hpp"

namespace ladder4 {

AbsorptionProfile::AbsorptionProfile(std::string var, std::vector<double> g,
                                     std::vector<double> v, std::string prov)
    : sweep_variable(std::move(var)),
      grid(std::move(g)),
      values(std::move(v)),
      provenance(std::move(prov)) {
  if (grid.size() != values.size())
    throw PreconditionError("profile grid and values must have equal length");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw PreconditionError("profile grid must be strictly increasing");
  for (double x : values)
    if (!std::isfinite(x))
      throw PreconditionError("profile values must be finite");
}

AbsorptionProfile doublet_eq5(const SystemParams& p,
                              std::span<const double> delta1_grid) {
  validate_params(p);
  const double w1 = p.omega1, w2 = p.omega2;
  const double gb2 = p.gbar2(), gb3 = p.gbar3();
  std::vector<double> vals;
  vals.reserve(delta1_grid.size());
  for (double d1 : delta1_grid) {
    const double s = d1 * d1;
    const double num = w1 * (s * gb2 + gb3 * (gb3 * gb2 + w2 * w2));
    const double den = s * s + s * (gb2 * gb2 + gb3 * gb3 - 2.0 * w2 * w2) +
                       std::pow(gb2 * gb3 + w2 * w2, 2);
    vals.push_back(num / den);
  }
  return AbsorptionProfile("delta1",
                           std::vector<double>(delta1_grid.begin(), delta1_grid.end()),
                           std::move(vals), "eq5");
}

AbsorptionProfile three_peak_eq6(const SystemParams& p,
                                 std::span<const double> delta1_grid) {
  validate_params(p);
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();
  SystemParams q = p;
  q.delta2 = q.delta3 = 0.0;
  const LFactors f = LFactors::from(q);
  std::vector<double> vals;
  vals.reserve(delta1_grid.size());
  for (double d1 : delta1_grid) {
    const double s = d1 * d1;
    const double num =
        w1 * (s * (s * gb2 + gb2 * (gb3 * gb3 + gb4 * gb4) + gb3 * w2 * w2 -
                   2.0 * gb2 * w3 * w3) +
              f.T1);
    const double den =
        s * std::pow(s - f.Gamma_p - w2 * w2 - w3 * w3, 2) +
        std::pow(s * f.Gamma_s - gb2 * gb3 * gb4 - gb4 * w2 * w2 -
                     gb2 * w3 * w3,
                 2);
    vals.push_back(num / den);
  }
  return AbsorptionProfile("delta1",
                           std::vector<double>(delta1_grid.begin(), delta1_grid.end()),
                           std::move(vals), "eq6");
}

AbsorptionProfile lorentzian_eq7(const SystemParams& p,
                                 std::span<const double> delta3_grid) {
  validate_params(p);
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();
  const double C = gb2 * gb3 + w2 * w2;
  const double S = gb4 * w2 * w2 + gb2 * (gb3 * gb4 + w3 * w3);
  std::vector<double> vals;
  vals.reserve(delta3_grid.size());
  for (double d3 : delta3_grid) {
    const double num = w1 * (d3 * d3 * gb3 * C + (gb3 * gb4 + w3 * w3) * S);
    const double den = d3 * d3 * C * C + S * S;
    vals.push_back(num / den);
  }
  return AbsorptionProfile("delta3",
                           std::vector<double>(delta3_grid.begin(), delta3_grid.end()),
                           std::move(vals), "eq7");
}

AbsorptionProfile eq4_profile(const SystemParams& p, const std::string& var,
                              std::span<const double> grid) {
  validate_params(p);
  std::vector<double> vals;
  vals.reserve(grid.size());
  SystemParams q = p;
  double* slot = nullptr;
  if (var == "delta1") slot = &q.delta1;
  else if (var == "delta2") slot = &q.delta2;
  else if (var == "delta3") slot = &q.delta3;
  else throw PreconditionError("eq4_profile sweeps a detuning");
  for (double x : grid) {
    *slot = x;
    vals.push_back(weak_omega1_first_order(q).im_rho21);
  }
  return AbsorptionProfile(var, std::vector<double>(grid.begin(), grid.end()),
                           std::move(vals), "eq4");
}

EitWidthResult eit_window_width(const SystemParams& p, bool squared_variant) {
  validate_params(p);
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), w2 = p.omega2;
  const double head = std::pow(gb2 * gb2 + gb3 * gb3 - 2.0 * w2 * w2, 2);
  const double tail = gb2 * gb3 + w2 * w2;
  EitWidthResult r;
  r.radicand = head - 4.0 * (squared_variant ? tail * tail : tail);
  r.imaginary = r.radicand < 0.0;
  r.width = std::sqrt(std::abs(r.radicand));
  return r;
}

namespace {

// Vertex of the parabola through three samples; falls back to the middle
// sample when the points are collinear or the vertex escapes the bracket.
struct Vertex {
  double x, y;
  bool refined;
};

Vertex parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                        double y2) {
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double a = (d2 - d1) / (x2 - x0);
  if (!(a < 0.0)) return {x1, y1, false};
  // y = y1 + d1 (x - x0_mid...) expressed around the middle sample:
  // slope at x1 equals (d1 (x2 - x1) + d2 (x1 - x0)) / (x2 - x0).
  const double s1 = (d1 * (x2 - x1) + d2 * (x1 - x0)) / (x2 - x0);
  const double xv = x1 - s1 / (2.0 * a);
  if (xv < x0 || xv > x2) return {x1, y1, false};
  const double yv = y1 + s1 * (xv - x1) + a * (xv - x1) * (xv - x1);
  return {xv, yv, true};
}

}  // namespace

PeakReport find_peaks(const AbsorptionProfile& profile) {
  const auto& x = profile.grid;
  const auto& v = profile.values;
  const size_t n = v.size();
  if (n < 3) throw TooFewSamples("find_peaks needs at least 3 samples");

  // Peak indices; plateaus report the leftmost sample.
  std::vector<size_t> idx;
  for (size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1])) continue;
    size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 < n && v[i] > v[j + 1]) idx.push_back(i);
    i = j;
  }

  // Local minima bound each peak's window.
  auto is_min = [&](size_t i) {
    if (i == 0 || i + 1 == n) return true;
    return v[i] <= v[i - 1] && v[i] <= v[i + 1];
  };

  PeakReport report;
  for (size_t ip : idx) {
    Peak pk;
    const bool plateau = ip + 1 < n && v[ip + 1] == v[ip];
    if (plateau) {
      pk.location = x[ip];
      pk.height = v[ip];
      pk.interpolated = false;
    } else {
      Vertex vx = parabolic_vertex(x[ip - 1], v[ip - 1], x[ip], v[ip],
                                   x[ip + 1], v[ip + 1]);
      pk.location = vx.x;
      pk.height = vx.y;
      pk.interpolated = vx.refined;
    }

    size_t lo = ip, hi = ip;
    while (lo > 0 && !is_min(lo)) --lo;
    while (hi + 1 < n && !is_min(hi)) ++hi;
    double base = v[lo];
    for (size_t k = lo; k <= hi; ++k) base = std::min(base, v[k]);

    const double half = base + 0.5 * (pk.height - base);
    std::optional<double> left, right;
    for (size_t k = ip; k > lo; --k) {
      if (v[k - 1] <= half && half <= v[k]) {
        left = x[k - 1] + (x[k] - x[k - 1]) * (half - v[k - 1]) / (v[k] - v[k - 1]);
        break;
      }
    }
    for (size_t k = ip; k < hi; ++k) {
      if (v[k + 1] <= half && half <= v[k]) {
        right = x[k] + (x[k + 1] - x[k]) * (v[k] - half) / (v[k] - v[k + 1]);
        break;
      }
    }
    if (left && right) pk.fwhm = *right - *left;
    report.peaks.push_back(pk);
  }
  report.count = static_cast<int>(report.peaks.size());
  return report;
}

}  // namespace ladder4
