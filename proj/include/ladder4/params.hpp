#pragma once

#include <cmath>

#include "ladder4/errors.hpp"

namespace ladder4 {

// Drive strengths, detunings and decay constants of the four-level ladder
// 1-2-3-4. Everything is expressed in units of the ground-state linewidth
// gamma == 1, so there is no unit conversion anywhere.
//
// omega1 couples 1<->2, omega2 couples 2<->3, omega3 couples 3<->4.
// delta1..3 are the detunings of the corresponding fields; only detunings
// enter the equations of motion, never bare laser or Bohr frequencies.
struct SystemParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;

  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta3 = 0.0;

  // Default decay set (6, 1, 1): level 2 decays six times faster than the
  // upper two levels.
  double gamma2 = 6.0;
  double gamma3 = 1.0;
  double gamma4 = 1.0;

  // The printed equation of motion for rho44 carries a Gamma3 decay rate
  // where Gamma4 is physically expected. Default false uses Gamma4; true
  // reproduces the literal Gamma3 rate. The two are identical whenever
  // gamma3 == gamma4 (as in the default set).
  bool rho44_decay_literal = false;

  // Half decay rates; the closed-form expressions are written in these.
  double gbar2() const { return 0.5 * gamma2; }
  double gbar3() const { return 0.5 * gamma3; }
  double gbar4() const { return 0.5 * gamma4; }

  // Decay rate applied to rho44, after the literal/default switch.
  double rho44_rate() const { return rho44_decay_literal ? gamma3 : gamma4; }

  SystemParams& with_omega(double w1, double w2, double w3) {
    omega1 = w1;
    omega2 = w2;
    omega3 = w3;
    return *this;
  }
  SystemParams& with_delta(double d1, double d2, double d3) {
    delta1 = d1;
    delta2 = d2;
    delta3 = d3;
    return *this;
  }
  SystemParams& with_gamma(double g2, double g3, double g4) {
    gamma2 = g2;
    gamma3 = g3;
    gamma4 = g4;
    return *this;
  }
};

// Rejects negative Rabi frequencies, non-positive decay constants and
// non-finite values; returns the parameters unchanged otherwise.
SystemParams validate_params(const SystemParams& p);

}  // namespace ladder4
