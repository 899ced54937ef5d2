#include "ladder4/steady.hpp"

#include <Eigen/LU>
#include <cmath>

namespace ladder4 {

SteadyStateResult steady_state_exact(const SystemParams& p) {
  validate_params(p);
  const Liouvillian L = build_liouvillian(p);

  Mat16 A = L.m;
  // Replace the rho11 row with Tr(rho) = 1.
  A.row(vec_index(1, 1)).setZero();
  for (int k = 1; k <= 4; ++k) A(vec_index(1, 1), vec_index(k, k)) = 1.0;

  Vec16 b = Vec16::Zero();
  b(vec_index(1, 1)) = 1.0;

  Eigen::PartialPivLU<Mat16> lu(A);
  const Mat16 Ainv = lu.inverse();
  const double norm_a = A.cwiseAbs().rowwise().sum().maxCoeff();
  const double norm_ainv = Ainv.cwiseAbs().rowwise().sum().maxCoeff();
  const double cond = norm_a * norm_ainv;
  if (!std::isfinite(cond) || cond > 1e14)
    throw SingularSystem("constrained steady-state system is singular (cond=" +
                         std::to_string(cond) + ")");

  Vec16 x = lu.solve(b);
  DensityMatrix rho =
      DensityMatrix::unvec(x).hermitized().trace_normalized();

  SteadyStateResult out;
  out.rho = rho;
  out.residual_inf_norm = L.apply(rho.vec()).cwiseAbs().maxCoeff();
  out.condition_estimate = cond;
  if (!(out.residual_inf_norm <= 1e-9))
    throw SingularSystem("steady-state residual " +
                         std::to_string(out.residual_inf_norm) +
                         " exceeds the acceptance bound");
  return out;
}

DensityMatrix evolve_rk4(const SystemParams& p, const DensityMatrix& rho0,
                         double t_final, double dt) {
  validate_params(p);
  if (!(dt > 0.0)) throw PreconditionError("evolve_rk4 requires dt > 0");
  if (t_final < 0.0) throw PreconditionError("evolve_rk4 requires t_final >= 0");

  DensityMatrix rho = rho0;
  const long n_steps = std::lround(t_final / dt);
  for (long s = 0; s < n_steps; ++s) {
    const Eigen::Matrix4cd y = rho.matrix();
    const Eigen::Matrix4cd k1 = rhs(p, rho).matrix();
    const Eigen::Matrix4cd k2 =
        rhs(p, DensityMatrix(y + 0.5 * dt * k1)).matrix();
    const Eigen::Matrix4cd k3 =
        rhs(p, DensityMatrix(y + 0.5 * dt * k2)).matrix();
    const Eigen::Matrix4cd k4 = rhs(p, DensityMatrix(y + dt * k3)).matrix();

    DensityMatrix next(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    const double tr = next.trace().real();
    if (!std::isfinite(tr) || std::abs(tr - 1.0) > 1e-3)
      throw StepTooLarge("trace deviated from 1 by more than 1e-3 at step " +
                         std::to_string(s));
    rho = next.hermitized().trace_normalized();
  }
  return rho;
}

}  // namespace ladder4
