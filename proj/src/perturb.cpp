#include "ladder4/perturb.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ladder4/errors.hpp"

namespace ladder4 {

namespace {

constexpr cplx I{0.0, 1.0};

void require_zero_detuning(const SystemParams& p, const char* who) {
  if (p.delta1 != 0.0 || p.delta2 != 0.0 || p.delta3 != 0.0)
    throw PreconditionError(std::string(who) + " is defined at zero detuning only");
}

// Solve a small complex system, guarding against a singular matrix.
template <int N>
Eigen::Vector<cplx, N> solve_checked(const Eigen::Matrix<cplx, N, N>& A,
                                     const Eigen::Vector<cplx, N>& b,
                                     const char* what) {
  Eigen::Vector<cplx, N> x = A.partialPivLu().solve(b);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (!x.allFinite() || (A * x - b).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ResonantDenominator(std::string(what) + ": defining system is singular");
  return x;
}

DensityMatrix assemble(const PerturbativeSolution& s) {
  DensityMatrix m;
  auto add = [&m](int i, int j, cplx v) {
    m.elem(i, j) += v;
    if (i != j) m.elem(j, i) += std::conj(v);
  };
  static const std::map<std::string, std::pair<int, int>> where = {
      {"rho11", {1, 1}}, {"rho22", {2, 2}}, {"rho33", {3, 3}}, {"rho44", {4, 4}},
      {"rho12", {1, 2}}, {"rho13", {1, 3}}, {"rho14", {1, 4}},
      {"rho23", {2, 3}}, {"rho24", {2, 4}}, {"rho34", {3, 4}}};
  for (int ord = 0; ord <= s.order; ++ord)
    for (const auto& [key, val] : s.corrections[ord]) {
      if (key == "rho21") continue;  // stored for support inspection only
      add(where.at(key).first, where.at(key).second, val);
    }
  return m;
}

}  // namespace

LFactors LFactors::from(const SystemParams& p) {
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double d1 = p.delta1, d2 = p.delta2, d3 = p.delta3;

  LFactors f;
  f.L1 = -I * d1 - gb2;
  f.L2 = -I * d2 - (gb2 + gb3);
  f.L12 = -I * (d1 + d2) - gb3;
  f.L23 = -I * (d2 + d3) - (gb2 + gb4);
  f.L123 = -I * (d1 + d2 + d3) - gb4;

  f.D1 = gb2 * (d1 * d1 + gb2 * gb2 + 4.0 * w1 * w1);
  f.D2 = std::pow(w1 * w1 - w3 * w3, 2) +
         w1 * w1 * (f.L123 * f.L23 + f.L12 * f.L2) +
         w3 * w3 * (f.L12 * f.L123 + f.L2 * f.L23) +
         f.L12 * f.L23 * f.L123 * f.L2;
  const double g34 = gb3 + gb4;
  f.D3 = 2.0 * w3 * w3 * g34 * g34 - gb3 * gb4 * (d3 * d3 + g34 * g34);

  f.Gamma_s = gb2 + gb3 + gb4;
  f.Gamma_p = gb2 * gb3 + gb3 * gb4 + gb4 * gb2;
  f.T1 = gb2 * gb3 * gb3 * gb4 * gb4 + gb3 * gb4 * gb4 * w2 * w2 +
         2.0 * gb2 * gb3 * gb4 * w3 * w3 + gb4 * w3 * w3 * w2 * w2 +
         gb2 * w3 * w3 * w3 * w3;
  f.G0 = gb4 * (w1 * w1 - w3 * w3);
  return f;
}

PerturbativeSolution weak_omega2_order0(const SystemParams& p) {
  validate_params(p);
  const double w1 = p.omega1;
  const LFactors f = LFactors::from(p);

  // Unknowns (rho12, rho21, rho22) with rho11 = 1 - rho22 substituted.
  Eigen::Matrix3<cplx> A = Eigen::Matrix3<cplx>::Zero();
  Eigen::Vector3<cplx> b;
  A(0, 0) = f.L1;
  A(0, 2) = -2.0 * I * w1;
  b(0) = -I * w1;
  A(1, 1) = std::conj(f.L1);
  A(1, 2) = 2.0 * I * w1;
  b(1) = I * w1;
  A(2, 0) = -I * w1;
  A(2, 1) = I * w1;
  A(2, 2) = -p.gamma2;
  b(2) = 0.0;
  Eigen::Vector3<cplx> x = solve_checked<3>(A, b, "weak_omega2_order0");

  PerturbativeSolution s;
  s.order = 0;
  s.corrections[0]["rho12"] = x(0);
  s.corrections[0]["rho21"] = x(1);
  s.corrections[0]["rho22"] = x(2);
  s.corrections[0]["rho11"] = 1.0 - x(2);
  s.total = assemble(s);
  return s;
}

namespace {

struct FirstOrder {
  cplx r23, r13, r14, r24;
};

FirstOrder first_order_printed(const SystemParams& p, const LFactors& f,
                               cplx r12_0, cplx r22_0) {
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double dw = w1 * w1 - w3 * w3;

  const cplx n23 =
      w2 * (w1 * r12_0 * (dw + f.L123 * f.L23) +
            I * r22_0 * (f.L12 * f.L23 * f.L123 + f.L12 * w1 * w1 + f.L23 * w3 * w3));
  // The printed rho13 formula carries first-order superscripts on its
  // rho12/rho22 inputs; they are taken to mean the zeroth-order values.
  const cplx n13 =
      w2 * (I * r12_0 * (f.L123 * f.L2 * f.L23 + f.L2 * w1 * w1 + f.L123 * w3 * w3) -
            w1 * r22_0 * (dw + f.L123 * f.L23));
  const cplx n24 = -w2 * w3 * (r22_0 * (f.L12 * f.L123 - dw) +
                               I * w1 * r12_0 * (f.L123 + f.L2));
  const cplx n14 = w2 * w3 * (r22_0 * (dw - f.L12 * f.L123) +
                              I * w1 * r12_0 * (f.L123 + f.L2));

  const double scale =
      std::max({std::abs(n23), std::abs(n13), std::abs(n24), std::abs(n14)});
  if (std::abs(f.D2) < 1e-12 * scale)
    throw ResonantDenominator(
        "first-order denominator D2 vanished relative to its numerators");

  return {n23 / f.D2, n13 / f.D2, n14 / f.D2, n24 / f.D2};
}

FirstOrder first_order_solved(const SystemParams& p, const LFactors& f,
                              cplx r12_0, cplx r22_0) {
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  // Unknowns (rho23, rho13, rho14, rho24).
  Eigen::Matrix4<cplx> A = Eigen::Matrix4<cplx>::Zero();
  Eigen::Vector4<cplx> b;
  A(0, 0) = f.L2;
  A(0, 1) = -I * w1;
  A(0, 3) = I * w3;
  b(0) = -I * w2 * r22_0;
  A(1, 0) = -I * w1;
  A(1, 1) = f.L12;
  A(1, 2) = I * w3;
  b(1) = -I * w2 * r12_0;
  A(2, 1) = I * w3;
  A(2, 2) = f.L123;
  A(2, 3) = -I * w1;
  b(2) = 0.0;
  A(3, 0) = I * w3;
  A(3, 2) = -I * w1;
  A(3, 3) = f.L23;
  b(3) = 0.0;
  Eigen::Vector4<cplx> x = solve_checked<4>(A, b, "weak_omega2_order1");
  return {x(0), x(1), x(2), x(3)};
}

FirstOrder first_order(const SystemParams& p, const LFactors& f, cplx r12_0,
                       cplx r22_0, Route route) {
  return route == Route::printed ? first_order_printed(p, f, r12_0, r22_0)
                                 : first_order_solved(p, f, r12_0, r22_0);
}

}  // namespace

PerturbativeSolution weak_omega2_order1_coherences(const SystemParams& p,
                                                   Route route) {
  PerturbativeSolution s = weak_omega2_order0(p);
  const LFactors f = LFactors::from(p);
  FirstOrder c = first_order(p, f, s.correction(0, "rho12"),
                             s.correction(0, "rho22"), route);
  s.order = 1;
  s.corrections[1]["rho23"] = c.r23;
  s.corrections[1]["rho13"] = c.r13;
  s.corrections[1]["rho14"] = c.r14;
  s.corrections[1]["rho24"] = c.r24;
  s.total = assemble(s);
  return s;
}

PerturbativeSolution weak_omega2_order2(const SystemParams& p, Route route) {
  PerturbativeSolution s = weak_omega2_order1_coherences(p, route);
  const LFactors f = LFactors::from(p);
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double d1 = p.delta1, d3 = p.delta3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();
  const double g34 = gb3 + gb4;

  const cplx r23_1 = s.correction(1, "rho23");
  const cplx r13_1 = s.correction(1, "rho13");
  const cplx r24_1 = s.correction(1, "rho24");

  cplx r33_2, r44_2, r34_2, r22_2, r12_2;

  if (route == Route::printed) {
    const double im23 = r23_1.imag();
    const double im24 = r24_1.imag(), re24 = r24_1.real();

    const cplx n33 = (gb4 * w2 * (d3 * d3 + g34 * g34) - 2.0 * w2 * w3 * w3 * g34) * im23 +
                     2.0 * w2 * w3 * gb4 * (d3 * im24 + g34 * re24);
    const cplx n44 = 2.0 * w2 * w3 * gb3 * (d3 * im24 + g34 * re24) +
                     w2 * w3 * w3 * g34 * im23;
    const cplx n34 = I * (2.0 * I * w2 * w3 * w3 * g34 * im24 -
                          gb3 * gb4 * w2 * (I * d3 - g34) * r24_1 +
                          gb4 * w2 * w3 * (I * d3 - g34) * im23);
    const double scale3 =
        std::max({std::abs(n33), std::abs(n44), std::abs(n34)});
    if (std::abs(f.D3) < 1e-12 * scale3)
      throw ResonantDenominator(
          "second-order denominator D3 vanished relative to its numerators");
    r33_2 = n33 / f.D3;
    r44_2 = n44 / f.D3;
    r34_2 = n34 / f.D3;

    // The printed 1-2 block expressions are totals through second order,
    // with their own (defective) zeroth order embedded; the second-order
    // content is their omega2-dependent part, i.e. the printed value minus
    // its omega2 = 0 limit. The embedded zeroth order itself is compared
    // against the direct solve in the erratum ledger.
    const cplx iD1 = I * d1 - gb2;
    auto printed_12_block = [&](cplx trace_deficit, double w2_on) {
      const cplx Tx = 1.0 - trace_deficit;
      const cplx r22 =
          (2.0 * gb2 * w1 * w1 * Tx - w2_on * im23 * (d1 * d1 + gb2 * gb2) +
           2.0 * w1 * w2_on * (d1 * r13_1.imag() + gb2 * r13_1.real())) /
          f.D1;
      const cplx r12 = -I *
                       (gb2 * w1 * iD1 * Tx + gb2 * w2_on * iD1 * r13_1 +
                        2.0 * w1 * w2_on * iD1 * im23 -
                        2.0 * w1 * w1 * w2_on * (r13_1 - std::conj(r13_1))) /
                       f.D1;
      return std::pair<cplx, cplx>(r22, r12);
    };
    const auto [r22_tot, r12_tot] = printed_12_block(r33_2 + r44_2, w2);
    const auto [r22_zero, r12_zero] = printed_12_block(0.0, 0.0);
    r22_2 = r22_tot - r22_zero;
    r12_2 = r12_tot - r12_zero;
  } else {
    // 3-4 block first: it depends only on the first-order coherences.
    Eigen::Matrix4<cplx> A = Eigen::Matrix4<cplx>::Zero();
    Eigen::Vector4<cplx> b;
    const cplx L3 = -I * d3 - g34;
    A(0, 0) = L3;
    A(0, 2) = I * w3;
    A(0, 3) = -I * w3;
    b(0) = I * w2 * r24_1;
    A(1, 1) = std::conj(L3);
    A(1, 2) = -I * w3;
    A(1, 3) = I * w3;
    b(1) = -I * w2 * std::conj(r24_1);
    A(2, 0) = I * w3;
    A(2, 1) = -I * w3;
    A(2, 2) = -p.gamma3;
    b(2) = I * w2 * (r23_1 - std::conj(r23_1));
    A(3, 0) = -I * w3;
    A(3, 1) = I * w3;
    A(3, 3) = -p.rho44_rate();
    b(3) = 0.0;
    Eigen::Vector4<cplx> z = solve_checked<4>(A, b, "weak_omega2_order2(3-4)");
    r34_2 = z(0);
    r33_2 = z(2);
    r44_2 = z(3);

    // 1-2 block with rho11 fixed by the vanishing trace of the corrections.
    const cplx S = r33_2 + r44_2;
    Eigen::Matrix3<cplx> B = Eigen::Matrix3<cplx>::Zero();
    Eigen::Vector3<cplx> c;
    B(0, 0) = f.L1;
    B(0, 2) = -2.0 * I * w1;
    c(0) = I * w1 * S - I * w2 * r13_1;
    B(1, 1) = std::conj(f.L1);
    B(1, 2) = 2.0 * I * w1;
    c(1) = -I * w1 * std::conj(S) + I * w2 * std::conj(r13_1);
    B(2, 0) = -I * w1;
    B(2, 1) = I * w1;
    B(2, 2) = -p.gamma2;
    c(2) = -I * w2 * (r23_1 - std::conj(r23_1));
    Eigen::Vector3<cplx> u = solve_checked<3>(B, c, "weak_omega2_order2(1-2)");
    r12_2 = u(0);
    r22_2 = u(2);
  }

  s.order = 2;
  s.corrections[2]["rho33"] = r33_2;
  s.corrections[2]["rho44"] = r44_2;
  s.corrections[2]["rho34"] = r34_2;
  s.corrections[2]["rho22"] = r22_2;
  s.corrections[2]["rho12"] = r12_2;
  s.corrections[2]["rho11"] = -(r22_2 + r33_2 + r44_2);
  s.total = assemble(s);
  return s;
}

ResonanceLimitResult resonance_limit(const SystemParams& p,
                                     const ResonanceLimitOptions& opt) {
  validate_params(p);
  require_zero_detuning(p, "resonance_limit");
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();

  // Zeroth order at line center, as printed alongside the approximations.
  const double r22_0 = 2.0 * w1 * w1 / (gb2 * gb2 + 4.0 * w1 * w1);
  const double im21_0 = gb2 * w1 / (gb2 * gb2 + w1 * w1);

  const double num22 =
      w1 * w1 * w2 * w2 * w3 * w3 * (gb3 * r22_0 - w1 * im21_0);
  const double num21 = 4.0 * w2 * w2 * w3 * w3 * w1 *
                       (gb2 * r22_0 * (2.0 * gb3 - gb4) +
                        im21_0 * (-2.0 * gb2 + gb4) * w1);
  const double num34 = gb4 * w2 * w2 * w3 * (-r22_0 * gb3 + w1 * im21_0);
  const double num33 = w2 * w2 * (2.0 * w3 * w3 * (gb4 - gb3) * r22_0 +
                                  2.0 * w3 * w3 * w1 * im21_0);
  const double num44_printed =
      2.0 * w2 * w2 * w3 * w3 * (gb3 * r22_0 - w1 * im21_0);
  const double num44 = opt.printed_rho44_sign ? num44_printed : -num44_printed;

  // Decay-only part of the exact first-order denominator D2 at zero
  // detuning; it sets the scale of the O(gbar^2) terms the printed
  // denominators abbreviate.
  const double g2bar = w1 * w1 * (gb3 * (gb2 + gb3) + gb4 * (gb2 + gb4)) +
                       w3 * w3 * (gb3 * gb4 + (gb2 + gb3) * (gb2 + gb4)) +
                       gb3 * gb4 * (gb2 + gb3) * (gb2 + gb4);
  const double wsq = w1 * w1 + w3 * w3;
  const double eps_scale = wsq > 0.0 ? g2bar / wsq : 0.0;

  const bool at_resonance = (w1 == w3);
  double eps_a, eps_b;
  if (opt.eps_g.has_value()) {
    if (*opt.eps_g == 0.0 && at_resonance)
      throw DivergentApproximation(
          "printed resonance denominators vanish at omega1 == omega3");
    eps_a = eps_b = *opt.eps_g;
  } else {
    eps_a = gb4 * eps_scale;
    eps_b = 2.0 * gb4 * w3 * w3 * eps_scale;
  }

  auto regularized = [](double resonant, double eps) {
    return resonant + (resonant >= 0.0 ? eps : -eps);
  };
  const double den_a = regularized(gb4 * (w1 * w1 - w3 * w3), eps_a);
  const double den_b =
      regularized(2.0 * gb4 * w3 * w3 * (w1 * w1 - w3 * w3), eps_b);

  auto ratio = [](double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0)
      throw DivergentApproximation("resonance denominator vanished");
    return num / den;
  };

  ResonanceLimitResult out;
  out.divergent = at_resonance;
  const double c22 = ratio(num22, den_a);
  const double c21 = ratio(num21, den_a);
  out.values["rho22_correction"] = c22;
  out.values["im_rho21_correction"] = c21;
  out.values["rho22"] = r22_0 + c22;
  out.values["im_rho21"] = im21_0 + c21;
  out.values["im_rho34"] = ratio(num34, den_b);
  out.values["rho33"] = ratio(num33, den_b);
  out.values["rho44"] = ratio(num44, den_b);
  return out;
}

std::map<std::string, double> three_photon_coherences(const SystemParams& p) {
  validate_params(p);
  require_zero_detuning(p, "three_photon_coherences");
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double gb2 = p.gbar2(), gb4 = p.gbar4();

  const double r22_0 = 2.0 * w1 * w1 / (gb2 * gb2 + 4.0 * w1 * w1);
  const double im21_0 = gb2 * w1 / (gb2 * gb2 + w1 * w1);

  const double n23 = w2 * im21_0;
  const double n13 = w1 * w2 * r22_0;
  const double n24 = w2 * w3 * r22_0;
  const double G0 = gb4 * (w1 * w1 - w3 * w3);
  const double scale = std::max({std::abs(n23), std::abs(n13), std::abs(n24)});
  if (std::abs(G0) < 1e-12 * scale)
    throw ResonantDenominator("G0 vanishes at omega1 == omega3");

  return {{"rho23", n23 / G0}, {"rho13", n13 / G0}, {"rho24", n24 / G0}};
}

WeakProbeCoherence weak_omega1_first_order(const SystemParams& p, Route route) {
  validate_params(p);
  const LFactors f = LFactors::from(p);
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;

  cplx rho12;
  if (route == Route::printed) {
    const cplx M = f.L12 + w3 * w3 / f.L123;
    const cplx den = w2 * w2 + f.L1 * f.L12 + w3 * w3 * f.L1 / f.L123;
    if (std::abs(den) < 1e-12 * std::abs(w1 * M))
      throw ResonantDenominator("weak-probe denominator vanished");
    rho12 = I * w1 * M / den;
  } else {
    Eigen::Matrix3<cplx> A = Eigen::Matrix3<cplx>::Zero();
    Eigen::Vector3<cplx> b;
    A(0, 0) = f.L1;
    A(0, 1) = I * w2;
    b(0) = I * w1;
    A(1, 0) = I * w2;
    A(1, 1) = f.L12;
    A(1, 2) = I * w3;
    b(1) = 0.0;
    A(2, 1) = I * w3;
    A(2, 2) = f.L123;
    b(2) = 0.0;
    Eigen::Vector3<cplx> x = solve_checked<3>(A, b, "weak_omega1_first_order");
    rho12 = x(0);
  }
  WeakProbeCoherence out;
  out.rho21 = std::conj(rho12);
  out.im_rho21 = out.rho21.imag();
  return out;
}

}  // namespace ladder4
