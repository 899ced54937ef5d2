#pragma once

#include <Eigen/Dense>

#include "ladder4/density_matrix.hpp"
#include "ladder4/params.hpp"

namespace ladder4 {

using Mat16 = Eigen::Matrix<cplx, 16, 16>;

// The generator of the equations of motion as an explicit 16x16 matrix
// acting on the row-major flattened density matrix.
//
// Applied to any Hermitian rho it yields a Hermitian derivative with zero
// trace; the rho11 row absorbs every decay so that the total population is
// conserved by construction.
struct Liouvillian {
  Mat16 m =Mat16::Zero();

  Vec16 apply(const Vec16& v) const { return m * v; }

  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix::unvec(m * rho.vec());
  }
};

// Time derivative of rho under the three-field rotating-wave equations of
// motion. Upper-triangle coherence derivatives are evaluated directly, the
// lower triangle is filled by conjugation and drho11 = -(drho22 + drho33 +
// drho44).
DensityMatrix rhs(const SystemParams& p, const DensityMatrix& rho);

// Explicit matrix form of rhs(); the two agree entrywise to machine
// precision for Hermitian input.
Liouvillian build_liouvillian(const SystemParams& p);

}  // namespace ladder4
