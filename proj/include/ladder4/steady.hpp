#pragma once

#include "ladder4/model.hpp"

namespace ladder4 {

struct SteadyStateResult {
  DensityMatrix rho;
  // Infinity norm of L*vec(rho) for the unmodified generator.
  double residual_inf_norm = 0.0;
  // Infinity-norm condition number of the trace-constrained system.
  double condition_estimate = 0.0;
};

// Unique steady state of the driven system: the rho11 derivative row
// (redundant by trace conservation) is replaced by the trace constraint and
// the 16x16 system solved by a pivoted dense factorization.
//
// Throws SingularSystem when the constrained matrix is numerically singular
// (condition estimate above 1e14), signalling a parameter point whose steady
// state is not unique.
SteadyStateResult steady_state_exact(const SystemParams& p);

// Fixed-step classical fourth-order integration of rhs(). The state is
// re-Hermitized and trace-renormalized after every step to suppress drift.
// Serves as the independent oracle for steady_state_exact.
//
// Throws StepTooLarge when an intermediate trace deviates from 1 by more
// than 1e-3 (integration blow-up). The default step handles the mild
// stiffness of the default decay set up to drive strengths of ~40.
DensityMatrix evolve_rk4(const SystemParams& p, const DensityMatrix& rho0,
                         double t_final, double dt = 1e-3);

}  // namespace ladder4
