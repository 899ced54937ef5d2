#include <random>

#include "doctest.h"
#include "ladder4/model.hpp"
#include "ladder4/steady.hpp"

using namespace ladder4;

namespace {

SystemParams fig2c() {
  SystemParams p;
  p.with_omega(20, 2, 20).with_delta(0, 0, 0).with_gamma(6, 1, 1);
  return p;
}

DensityMatrix random_hermitian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(u(rng), u(rng));
  return DensityMatrix(0.5 * (m + m.adjoint()).eval());
}

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uw(0.0, 40.0);
  std::uniform_real_distribution<double> ud(-60.0, 60.0);
  SystemParams p;
  p.with_omega(uw(rng), uw(rng), uw(rng))
      .with_delta(ud(rng), ud(rng), ud(rng))
      .with_gamma(6, 1, 1);
  return p;
}

}  // namespace

TEST_CASE("validate_params accepts the strong-drive working point") {
  CHECK_NOTHROW(validate_params(fig2c()));
}

TEST_CASE("validate_params rejects bad inputs") {
  SystemParams p = fig2c();
  p.gamma2 = 0.0;
  CHECK_THROWS_AS(validate_params(p), InvalidDecay);

  p = fig2c();
  p.omega1 = -1.0;
  CHECK_THROWS_AS(validate_params(p), InvalidRabi);

  p = fig2c();
  p.delta2 = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_params(p), NonFiniteParam);
}

TEST_CASE("undriven ground state is stationary") {
  SystemParams p;
  p.with_omega(0, 0, 0);
  DensityMatrix d = rhs(p, DensityMatrix::ground());
  CHECK(d.matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(build_liouvillian(p).apply(DensityMatrix::ground().vec()).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("level-2 population decays at rate gamma2") {
  SystemParams p;  // omega = 0, gamma2 = 6
  DensityMatrix d = rhs(p, DensityMatrix::level(2));
  CHECK(d.elem(2, 2).real() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK(d.elem(2, 2).imag() == 0.0);
}

TEST_CASE("probe drive term of the 1-2 coherence") {
  SystemParams p;
  p.with_omega(20, 0, 0).with_delta(0, 0, 0);
  DensityMatrix d = rhs(p, DensityMatrix::ground());
  CHECK(d.elem(1, 2).real() == doctest::Approx(0.0));
  CHECK(d.elem(1, 2).imag() == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("rhs preserves Hermiticity and trace") {
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 200; ++k) {
    SystemParams p = random_params(rng);
    DensityMatrix rho = random_hermitian(rng);
    DensityMatrix d = rhs(p, rho);
    CHECK(d.hermiticity_error() <= 1e-14);
    CHECK(std::abs(d.trace()) <= 1e-13);
  }
}

TEST_CASE("Liouvillian agrees with rhs on random states") {
  std::mt19937_64 rng(777);
  for (int k = 0; k < 1000; ++k) {
    SystemParams p = random_params(rng);
    p.rho44_decay_literal = (k % 2 == 0);
    DensityMatrix rho = random_hermitian(rng);
    Liouvillian L = build_liouvillian(p);
    DensityMatrix via_matrix = L.apply(rho);
    DensityMatrix via_rhs = rhs(p, rho);
    CHECK(via_matrix.max_abs_diff(via_rhs) <= 1e-12);
  }
}

TEST_CASE("Liouvillian derivative of a Hermitian state is Hermitian") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    SystemParams p = random_params(rng);
    DensityMatrix rho = random_hermitian(rng);
    DensityMatrix d = build_liouvillian(p).apply(rho);
    CHECK(d.hermiticity_error() <= 1e-12);
  }
}

TEST_CASE("population rows of the Liouvillian conserve the trace") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    SystemParams p = random_params(rng);
    DensityMatrix rho = random_hermitian(rng);
    Vec16 d = build_liouvillian(p).apply(rho.vec());
    cplx pop_sum = d(vec_index(1, 1)) + d(vec_index(2, 2)) +
                   d(vec_index(3, 3)) + d(vec_index(4, 4));
    CHECK(std::abs(pop_sum) <= 1e-12);
  }
}

TEST_CASE("rho44 decay switch is moot when gamma3 == gamma4") {
  SystemParams a = fig2c();
  SystemParams b = fig2c();
  a.rho44_decay_literal = false;
  b.rho44_decay_literal = true;

  Liouvillian La = build_liouvillian(a);
  Liouvillian Lb = build_liouvillian(b);
  CHECK(La.m == Lb.m);  // bitwise

  DensityMatrix ra = steady_state_exact(a).rho;
  DensityMatrix rb = steady_state_exact(b).rho;
  CHECK(ra.matrix() == rb.matrix());  // bitwise

  // With gamma3 != gamma4 the switch matters.
  a.gamma4 = 2.0;
  b.gamma4 = 2.0;
  CHECK(build_liouvillian(a).m != build_liouvillian(b).m);
}
