#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "holo/catalog.hpp"
#include "holo/errors.hpp"
#include "holo/liealg.hpp"
#include "oracles.hpp"

using namespace holo;

namespace {

Matrix pauli(int a) {
  Matrix m = Matrix::Zero(2, 2);
  const Complex i(0, 1);
  if (a == 1) m << 0, 1, 1, 0;
  if (a == 2) m << 0, -i, i, 0;
  if (a == 3) m << 1, 0, 0, -1;
  return m;
}

AlgebraElement isigma(int a, double c = 1.0) { return AlgebraElement(Complex(0, c) * pauli(a)); }

}  // namespace

TEST_CASE("exp of zero and of a diagonal element") {
  CHECK((exp_map(AlgebraElement::zero(2)).matrix() - Matrix::Identity(2, 2)).norm() == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = Complex(0, std::numbers::pi / 2);
  d(1, 1) = Complex(0, -std::numbers::pi / 2);
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = Complex(0, 1);
  want(1, 1) = Complex(0, -1);
  CHECK((exp_map(AlgebraElement(d)).matrix() - want).norm() < 1e-14);
}

TEST_CASE("exp matches the Taylor oracle") {
  const GroupSpec su2 = GroupSpec::su(2), su3 = GroupSpec::su(3);
  Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    AlgebraElement x = rng.algebra(su2, 1.0);
    x *= 0.3 / x.norm();
    CHECK(oracle::frob(exp_map(x).matrix() - oracle::taylor_exp(x.matrix())) < 1e-12);
    const AlgebraElement y = rng.algebra(su3, 1.0);
    CHECK(oracle::frob(exp_map(y).matrix() - oracle::taylor_exp(y.matrix())) < 1e-12);
  }
}

TEST_CASE("exp rejects a non-anti-Hermitian argument") {
  Matrix m = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(exp_map(AlgebraElement(m)), ValidationError);
}

TEST_CASE("exp(X) exp(-X) = I and the result is unitary") {
  Rng rng(7);
  const GroupSpec su2 = GroupSpec::su(2);
  for (int k = 0; k < 20; ++k) {
    const AlgebraElement x = rng.algebra(su2, 0.57);
    const Matrix g = exp_map(x).matrix();
    CHECK((g * exp_map(-x).matrix() - Matrix::Identity(2, 2)).norm() < 1e-10);
    CHECK(is_unitary(g));
    CHECK(std::abs(g.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("log inverts exp near the identity") {
  CHECK(log_map(GroupElement::identity(2)).norm() < 1e-15);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    AlgebraElement x = rng.algebra(GroupSpec::su(2), 1.0);
    x *= 0.2 / x.norm();
    CHECK((log_map(exp_map(x)) - x).norm() < 1e-10);
  }
  const AlgebraElement d = isigma(3, 0.3);
  CHECK((log_map(exp_map(d)) - d).norm() < 1e-12);
}

TEST_CASE("log refuses elements far from the identity") {
  CHECK_THROWS_AS(log_map(exp_map(isigma(3, 2.5))), DomainError);
}

TEST_CASE("adjoint action") {
  Rng rng(11);
  const GroupSpec su2 = GroupSpec::su(2);
  const AlgebraElement x = rng.algebra(su2, 1.0), y = rng.algebra(su2, 1.0);
  CHECK((adjoint_act(GroupElement::identity(2), x) - x).norm() < 1e-15);
  const GroupElement g = rng.group(su2, 1.0), h = rng.group(su2, 1.0);
  const AlgebraElement lhs = adjoint_act(g, bracket(x, y));
  const AlgebraElement rhs = bracket(adjoint_act(g, x), adjoint_act(g, y));
  CHECK((lhs - rhs).norm() < 1e-12);
  CHECK((adjoint_act(g * h, x) - adjoint_act(g, adjoint_act(h, x))).norm() < 1e-12);
  CHECK((adjoint_act_inv(g, adjoint_act(g, x)) - x).norm() < 1e-12);
  const Complex t0 = (x.matrix() * y.matrix()).trace();
  const Complex t1 = (adjoint_act(g, x).matrix() * adjoint_act(g, y).matrix()).trace();
  CHECK(std::abs(t0 - t1) < 1e-12);
  CHECK(is_anti_hermitian(adjoint_act(g, x).matrix()));

  const GroupSpec u1 = GroupSpec::u1(2);
  const AlgebraElement z = rng.algebra(u1, 1.0);
  CHECK((adjoint_act(rng.group(u1, 1.0), z) - z).norm() < 1e-15);
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  Rng rng(5);
  for (const GroupSpec& g : {GroupSpec::su(2), GroupSpec::su(3)}) {
    for (int k = 0; k < 10; ++k) {
      const AlgebraElement x = rng.algebra(g, 1.0), y = rng.algebra(g, 1.0), z = rng.algebra(g, 1.0);
      CHECK(bracket(x, x).norm() == 0.0);
      CHECK((bracket(x, y) + bracket(y, x)).norm() < 1e-15);
      const AlgebraElement jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      CHECK(jac.norm() < 1e-12);
    }
  }
  // [iσ1/2, iσ2/2] from a hand product: (iσ1/2)(iσ2/2) - (iσ2/2)(iσ1/2) = -(σ1σ2 - σ2σ1)/4 = -iσ3/2.
  const Matrix s1 = 0.5 * Complex(0, 1) * pauli(1), s2 = 0.5 * Complex(0, 1) * pauli(2);
  Matrix by_hand(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Complex acc = 0;
      for (int k = 0; k < 2; ++k) acc += s1(r, k) * s2(k, c) - s2(r, k) * s1(k, c);
      by_hand(r, c) = acc;
    }
  CHECK((bracket(AlgebraElement(s1), AlgebraElement(s2)).matrix() - by_hand).norm() < 1e-15);
  CHECK((by_hand + 0.5 * Complex(0, 1) * pauli(3)).norm() < 1e-15);

  const GroupSpec u1 = GroupSpec::u1(3);
  CHECK(bracket(rng.algebra(u1, 1.0), rng.algebra(u1, 1.0)).norm() == 0.0);
}

TEST_CASE("generator sets") {
  const GroupSpec su2 = GroupSpec::su(2);
  REQUIRE(su2.algebra_dim() == 3);
  for (const auto& t : su2.generators) {
    CHECK(is_anti_hermitian(t.matrix()));
    CHECK(std::abs(t.matrix().trace()) < 1e-15);
  }
  // Pauli generators are orthonormal under <X,Y> = -2 Re Tr(XY).
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(inner(su2.generators[a], su2.generators[b]) == doctest::Approx(a == b ? 1.0 : 0.0));
  const GroupSpec su3 = GroupSpec::su(3);
  CHECK(su3.algebra_dim() == 8);
  for (size_t a = 0; a < su3.cartan.size(); ++a)
    for (size_t b = 0; b < su3.cartan.size(); ++b) CHECK(bracket(su3.cartan[a], su3.cartan[b]).norm() < 1e-15);
  CHECK_THROWS_AS(GroupSpec::from_name("so", 3, "", {}), ValidationError);
  CHECK_THROWS_AS(GroupSpec::from_name("su", 3, "pauli", {}), ValidationError);
}

TEST_CASE("cartan residual") {
  // Distances are in the invariant norm sqrt(<X,X>).
  auto norm = [](const AlgebraElement& x) { return std::sqrt(inner(x, x)); };
  const GroupSpec su2 = GroupSpec::su(2);  // diagonal Cartan, iσ3/2
  CHECK(cartan_residual(isigma(3, 0.7), su2) < 1e-15);
  CHECK(cartan_residual(isigma(1), su2) == doctest::Approx(norm(isigma(1))));
  const AlgebraElement mixed = isigma(3) + isigma(1, 0.1);
  CHECK(cartan_residual(mixed, su2) == doctest::Approx(0.1 * norm(isigma(1))).epsilon(1e-12));
}

TEST_CASE("reunitarize pulls a perturbed element back") {
  Rng rng(9);
  const GroupElement g = rng.group(GroupSpec::su(2), 1.0);
  Matrix m = g.matrix();
  m(0, 1) += 1e-6;
  const GroupElement r = reunitarize(GroupElement(m));
  CHECK(is_unitary(r.matrix(), 1e-11));
  CHECK((r.matrix() - g.matrix()).norm() < 2e-6);
}
