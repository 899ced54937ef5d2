#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "ladder4/density_matrix.hpp"
#include "ladder4/params.hpp"

namespace ladder4 {

// Complex rate factors and denominators shared by the closed-form
// perturbative solutions and the analytic lineshapes.
struct LFactors {
  cplx L1;    // -i*delta1 - gbar2
  cplx L2;    // -i*delta2 - (gbar2 + gbar3)
  cplx L12;   // -i*(delta1 + delta2) - gbar3
  cplx L23;   // -i*(delta2 + delta3) - (gbar2 + gbar4)
  cplx L123;  // -i*(delta1 + delta2 + delta3) - gbar4

  double D1;  // gbar2 * (delta1^2 + gbar2^2 + 4 omega1^2)
  cplx D2;    // (W1^2-W3^2)^2 + W1^2 (L123 L23 + L12 L2)
              //   + W3^2 (L12 L123 + L2 L23) + L12 L23 L123 L2
  double D3;  // 2 W3^2 (gbar3+gbar4)^2 - gbar3 gbar4 (delta3^2+(gbar3+gbar4)^2)

  double Gamma_s;  // gbar2 + gbar3 + gbar4
  double Gamma_p;  // gbar2 gbar3 + gbar3 gbar4 + gbar4 gbar2
  double T1;       // constant term of the three-peak numerator
  double G0;       // gbar4 * (omega1^2 - omega3^2)

  static LFactors from(const SystemParams& p);
};

// The closed forms are evaluated exactly as printed; each one also has a
// direct linear solve of its defining steady-state system. The solved route
// is the arbiter whenever the two disagree (see the erratum ledger).
enum class Route { printed, solved };

// Order-indexed corrections of the weak-middle-coupling expansion. Element
// keys are "rho11".."rho44" plus upper-triangle coherences ("rho12",
// "rho13", ...); conjugate elements are implied. `total` assembles all
// included orders into a Hermitian matrix.
struct PerturbativeSolution {
  int order = 0;
  std::array<std::map<std::string, cplx>, 3> corrections;
  DensityMatrix total;

  cplx correction(int ord, const std::string& key) const {
    auto it = corrections.at(ord).find(key);
    return it == corrections.at(ord).end() ? cplx(0.0) : it->second;
  }
};

// Zeroth order in omega2: the driven 1-2 block solved with the trace
// constraint; every other element is zero. omega2 and omega3 are ignored.
PerturbativeSolution weak_omega2_order0(const SystemParams& p);

// First order: the four coherences rho23, rho13, rho14, rho24 (conjugates
// implied), driven by the zeroth-order solution. Throws ResonantDenominator
// when the printed denominator D2 collapses (omega1 == omega3 with
// vanishing decay rates at zero detuning).
PerturbativeSolution weak_omega2_order1_coherences(const SystemParams& p,
                                                   Route route = Route::printed);

// Second order: population corrections rho22, rho33, rho44 and coherence
// corrections rho12, rho34, with rho11 fixed by the trace. The 3-4 block
// depends only on first-order coherences and is solved first.
PerturbativeSolution weak_omega2_order2(const SystemParams& p,
                                        Route route = Route::printed);

struct ResonanceLimitOptions {
  // Regularizer standing in for the unspecified O(gbar^2) denominator terms.
  // Default (nullopt) reconstructs the scale from the decay-dependent part
  // of the exact first-order denominator D2 at zero detuning; 0 evaluates
  // the printed denominators verbatim and throws DivergentApproximation at
  // omega1 == omega3.
  std::optional<double> eps_g;
  // The printed rho44 numerator disagrees in sign with its companion
  // Im rho34 expression and with the steady-state relation
  // rho44 = omega3 * Im rho34 / gbar4; by default the consistent sign is
  // used. Set true to evaluate the numerator exactly as printed.
  bool printed_rho44_sign = false;
};

struct ResonanceLimitResult {
  // Keys: rho22, im_rho21 (totals), rho22_correction, im_rho21_correction,
  // im_rho34, rho33, rho44 (pure second-order terms).
  std::map<std::string, double> values;
  bool divergent = false;  // omega1 == omega3 exactly
};

// Resonance approximations of the second-order populations at zero detuning.
// Requires delta = (0,0,0).
ResonanceLimitResult resonance_limit(const SystemParams& p,
                                     const ResonanceLimitOptions& opt = {});

// Three-photon-resonance limits of the first-order coherences over
// G0 = gbar4 (omega1^2 - omega3^2). Keys: rho23, rho13, rho24.
// Requires delta = (0,0,0); throws ResonantDenominator at omega1 == omega3.
std::map<std::string, double> three_photon_coherences(const SystemParams& p);

struct WeakProbeCoherence {
  cplx rho21;       // first-order coherence, absorption-positive convention
  double im_rho21;  // Im(rho21): the ground-state absorption
};

// First order in omega1 (weak probe, strong middle coupling): the
// three-coherence chain solved in closed form. The solved route runs the
// same 3x3 system through the linear solver.
WeakProbeCoherence weak_omega1_first_order(const SystemParams& p,
                                           Route route = Route::printed);

}  // namespace ladder4
