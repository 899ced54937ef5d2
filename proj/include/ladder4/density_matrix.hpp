#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ladder4 {

using cplx = std::complex<double>;
using Vec16 = Eigen::Vector<cplx, 16>;

// 4x4 density matrix of the ladder system. Populations on the diagonal,
// coherences off it. Physical states are Hermitian with unit trace.
//
// Flattening convention (shared by every module): row-major,
// vec = (rho11, rho12, rho13, rho14, rho21, rho22, ..., rho44).
class DensityMatrix {
 public:
  DensityMatrix() : m_(Eigen::Matrix4cd::Zero()) {}
  explicit DensityMatrix(const Eigen::Matrix4cd& m) : m_(m) {}

  // 1-based level indices, matching the usual rho_ij notation.
  cplx& elem(int i, int j) { return m_(i - 1, j - 1); }
  cplx elem(int i, int j) const { return m_(i - 1, j - 1); }

  double population(int i) const { return m_(i - 1, i - 1).real(); }

  Eigen::Matrix4cd& matrix() { return m_; }
  const Eigen::Matrix4cd& matrix() const { return m_; }

  cplx trace() const { return m_.trace(); }

  double hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(hermitized().matrix());
    return es.eigenvalues().minCoeff();
  }

  DensityMatrix hermitized() const {
    return DensityMatrix(0.5 * (m_ + m_.adjoint()).eval());
  }

  DensityMatrix trace_normalized() const {
    return DensityMatrix((m_ / m_.trace().real()).eval());
  }

  // Largest elementwise |difference| to another state.
  double max_abs_diff(const DensityMatrix& o) const {
    return (m_ - o.m_).cwiseAbs().maxCoeff();
  }

  Vec16 vec() const {
    Vec16 v;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) v(4 * i + j) = m_(i, j);
    return v;
  }

  static DensityMatrix unvec(const Vec16& v) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = v(4 * i + j);
    return DensityMatrix(m);
  }

  // |k><k| for level k in 1..4.
  static DensityMatrix level(int k) {
    DensityMatrix r;
    r.elem(k, k) = 1.0;
    return r;
  }

  static DensityMatrix ground() { return level(1); }

 private:
  Eigen::Matrix4cd m_;
};

// Row-major flattened index of rho_ij (1-based i, j).
inline constexpr int vec_index(int i, int j) { return 4 * (i - 1) + (j - 1); }

}  // namespace ladder4
