#include "ladder4/model.hpp"

#include <cmath>

namespace ladder4 {

namespace {
constexpr cplx I{0.0, 1.0};

bool all_finite(const SystemParams& p) {
  return std::isfinite(p.omega1) && std::isfinite(p.omega2) &&
         std::isfinite(p.omega3) && std::isfinite(p.delta1) &&
         std::isfinite(p.delta2) && std::isfinite(p.delta3) &&
         std::isfinite(p.gamma2) && std::isfinite(p.gamma3) &&
         std::isfinite(p.gamma4);
}
}  // namespace

SystemParams validate_params(const SystemParams& p) {
  if (!all_finite(p)) throw NonFiniteParam("system parameters must be finite");
  if (p.omega1 < 0 || p.omega2 < 0 || p.omega3 < 0)
    throw InvalidRabi("Rabi frequencies must be >= 0");
  if (p.gamma2 <= 0 || p.gamma3 <= 0 || p.gamma4 <= 0)
    throw InvalidDecay("decay constants must be > 0");
  return p;
}

DensityMatrix rhs(const SystemParams& p, const DensityMatrix& rho) {
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double d1 = p.delta1, d2 = p.delta2, d3 = p.delta3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();

  const cplx r11 = rho.elem(1, 1), r22 = rho.elem(2, 2);
  const cplx r33 = rho.elem(3, 3), r44 = rho.elem(4, 4);
  const cplx r12 = rho.elem(1, 2), r13 = rho.elem(1, 3), r14 = rho.elem(1, 4);
  const cplx r23 = rho.elem(2, 3), r24 = rho.elem(2, 4), r34 = rho.elem(3, 4);
  const cplx r21 = rho.elem(2, 1), r32 = rho.elem(3, 2), r43 = rho.elem(4, 3);

  DensityMatrix d;
  d.elem(1, 2) = (-I * d1 - gb2) * r12 - I * w1 * (r22 - r11) + I * w2 * r13;
  d.elem(2, 3) = (-I * d2 - (gb2 + gb3)) * r23 - I * w1 * r13 -
                 I * w2 * (r33 - r22) + I * w3 * r24;
  d.elem(3, 4) =
      (-I * d3 - (gb3 + gb4)) * r34 - I * w2 * r24 - I * w3 * (r44 - r33);
  d.elem(1, 3) = (-I * (d1 + d2) - gb3) * r13 - I * w1 * r23 + I * w2 * r12 +
                 I * w3 * r14;
  d.elem(1, 4) =
      (-I * (d1 + d2 + d3) - gb4) * r14 - I * w1 * r24 + I * w3 * r13;
  d.elem(2, 4) = (-I * (d2 + d3) - (gb2 + gb4)) * r24 - I * w1 * r14 -
                 I * w2 * r34 + I * w3 * r23;

  d.elem(2, 2) = -p.gamma2 * r22 + I * w1 * (r21 - r12) + I * w2 * (r23 - r32);
  d.elem(3, 3) = -p.gamma3 * r33 + I * w3 * (r34 - r43) - I * w2 * (r23 - r32);
  d.elem(4, 4) = -p.rho44_rate() * r44 - I * w3 * (r34 - r43);

  d.elem(2, 1) = std::conj(d.elem(1, 2));
  d.elem(3, 1) = std::conj(d.elem(1, 3));
  d.elem(4, 1) = std::conj(d.elem(1, 4));
  d.elem(3, 2) = std::conj(d.elem(2, 3));
  d.elem(4, 2) = std::conj(d.elem(2, 4));
  d.elem(4, 3) = std::conj(d.elem(3, 4));

  d.elem(1, 1) = -(d.elem(2, 2) + d.elem(3, 3) + d.elem(4, 4));
  return d;
}

Liouvillian build_liouvillian(const SystemParams& p) {
  const double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  const double d1 = p.delta1, d2 = p.delta2, d3 = p.delta3;
  const double gb2 = p.gbar2(), gb3 = p.gbar3(), gb4 = p.gbar4();

  Liouvillian L;
  auto at = [&L](int row, int i, int j) -> cplx& {
    return L.m(row, vec_index(i, j));
  };
  // Upper-triangle coherence rows.
  {
    int r = vec_index(1, 2);
    at(r, 1, 2) = -I * d1 - gb2;
    at(r, 2, 2) = -I * w1;
    at(r, 1, 1) = I * w1;
    at(r, 1, 3) = I * w2;
  }
  {
    int r = vec_index(2, 3);
    at(r, 2, 3) = -I * d2 - (gb2 + gb3);
    at(r, 1, 3) = -I * w1;
    at(r, 3, 3) = -I * w2;
    at(r, 2, 2) = I * w2;
    at(r, 2, 4) = I * w3;
  }
  {
    int r = vec_index(3, 4);
    at(r, 3, 4) = -I * d3 - (gb3 + gb4);
    at(r, 2, 4) = -I * w2;
    at(r, 4, 4) = -I * w3;
    at(r, 3, 3) = I * w3;
  }
  {
    int r = vec_index(1, 3);
    at(r, 1, 3) = -I * (d1 + d2) - gb3;
    at(r, 2, 3) = -I * w1;
    at(r, 1, 2) = I * w2;
    at(r, 1, 4) = I * w3;
  }
  {
    int r = vec_index(1, 4);
    at(r, 1, 4) = -I * (d1 + d2 + d3) - gb4;
    at(r, 2, 4) = -I * w1;
    at(r, 1, 3) = I * w3;
  }
  {
    int r = vec_index(2, 4);
    at(r, 2, 4) = -I * (d2 + d3) - (gb2 + gb4);
    at(r, 1, 4) = -I * w1;
    at(r, 3, 4) = -I * w2;
    at(r, 2, 3) = I * w3;
  }
  // Lower-triangle rows: conjugate dynamics with transposed indices, so that
  // the matrix acts linearly on the whole 16-vector and agrees with the
  // conjugation rule on Hermitian input.
  {
    int r = vec_index(2, 1);
    at(r, 2, 1) = I * d1 - gb2;
    at(r, 2, 2) = I * w1;
    at(r, 1, 1) = -I * w1;
    at(r, 3, 1) = -I * w2;
  }
  {
    int r = vec_index(3, 2);
    at(r, 3, 2) = I * d2 - (gb2 + gb3);
    at(r, 3, 1) = I * w1;
    at(r, 3, 3) = I * w2;
    at(r, 2, 2) = -I * w2;
    at(r, 4, 2) = -I * w3;
  }
  {
    int r = vec_index(4, 3);
    at(r, 4, 3) = I * d3 - (gb3 + gb4);
    at(r, 4, 2) = I * w2;
    at(r, 4, 4) = I * w3;
    at(r, 3, 3) = -I * w3;
  }
  {
    int r = vec_index(3, 1);
    at(r, 3, 1) = I * (d1 + d2) - gb3;
    at(r, 3, 2) = I * w1;
    at(r, 2, 1) = -I * w2;
    at(r, 4, 1) = -I * w3;
  }
  {
    int r = vec_index(4, 1);
    at(r, 4, 1) = I * (d1 + d2 + d3) - gb4;
    at(r, 4, 2) = I * w1;
    at(r, 3, 1) = -I * w3;
  }
  {
    int r = vec_index(4, 2);
    at(r, 4, 2) = I * (d2 + d3) - (gb2 + gb4);
    at(r, 4, 1) = I * w1;
    at(r, 4, 3) = I * w2;
    at(r, 3, 2) = -I * w3;
  }
  // Population rows.
  {
    int r = vec_index(2, 2);
    at(r, 2, 2) = -p.gamma2;
    at(r, 2, 1) = I * w1;
    at(r, 1, 2) = -I * w1;
    at(r, 2, 3) = I * w2;
    at(r, 3, 2) = -I * w2;
  }
  {
    int r = vec_index(3, 3);
    at(r, 3, 3) = -p.gamma3;
    at(r, 3, 4) = I * w3;
    at(r, 4, 3) = -I * w3;
    at(r, 2, 3) = -I * w2;
    at(r, 3, 2) = I * w2;
  }
  {
    int r = vec_index(4, 4);
    at(r, 4, 4) = -p.rho44_rate();
    at(r, 3, 4) = -I * w3;
    at(r, 4, 3) = I * w3;
  }
  // rho11 keeps the trace: its row is minus the sum of the population rows.
  L.m.row(vec_index(1, 1)) = -(L.m.row(vec_index(2, 2)) +
                               L.m.row(vec_index(3, 3)) +
                               L.m.row(vec_index(4, 4)));
  return L;
}

}  // namespace ladder4
