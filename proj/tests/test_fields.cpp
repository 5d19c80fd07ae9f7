#include <doctest.h>

#include "holo/catalog.hpp"
#include "holo/errors.hpp"
#include "holo/fields.hpp"
#include "oracles.hpp"

using namespace holo;
using nlohmann::json;

namespace {

const ChartDomain kChart3 = ChartDomain::cube(3, 2.0);
const ChartDomain kChart4 = ChartDomain::cube(4, 2.0);
const GroupSpec kSU2 = GroupSpec::su(2);

AdjointForm fourier(int degree, unsigned seed, const ChartDomain& c = kChart3, double amp = 0.6) {
  return make_field(json{{"family", "fourier"}, {"seed", seed}, {"modes", 3}, {"amplitude", amp}}, degree, c, kSU2);
}

Vec random_point(Rng& rng, int d, double r = 1.0) {
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = r * rng.uniform();
  return x;
}

// Constant-coefficient 1-form Σ X_i dx^i.
AdjointForm constant_one_form(const ChartDomain& c, const std::vector<AlgebraElement>& xs) {
  return AdjointForm(c, 1, xs[0].dim(), [xs](const Vec&, AdjointForm::Components& out) {
    for (size_t i = 0; i < xs.size(); ++i) out[i] = xs[i];
  });
}

double max_diff(const AdjointForm& u, const AdjointForm& w, int samples, unsigned seed) {
  Rng rng(seed);
  double worst = 0.0;
  const int d = u.dim();
  for (int k = 0; k < samples; ++k) {
    const Vec x = random_point(rng, d);
    std::vector<Vec> vs;
    for (int j = 0; j < u.degree(); ++j) vs.push_back(random_point(rng, d));
    const std::span<const Vec> sp(vs.data(), vs.size());
    worst = std::max(worst, (u(x, sp) - w(x, sp)).norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("forms are multilinear and antisymmetric") {
  Rng rng(1);
  const AdjointForm b = fourier(2, 4);
  const AdjointForm c = fourier(3, 8);
  for (int k = 0; k < 10; ++k) {
    const Vec x = random_point(rng, 3), u = random_point(rng, 3), v = random_point(rng, 3), w = random_point(rng, 3);
    CHECK((b(x, {u, v}) + b(x, {v, u})).norm() < 1e-12);
    CHECK((b(x, {u + 2.0 * w, v}) - b(x, {u, v}) - 2.0 * b(x, {w, v})).norm() < 1e-10);
    CHECK((c(x, {u, v, w}) + c(x, {u, w, v})).norm() < 1e-12);
    CHECK((c(x, {u, v, w}) - c(x, {v, w, u})).norm() < 1e-12);
  }
}

TEST_CASE("chart bounds are enforced") {
  const AdjointForm a = fourier(1, 3);
  Vec x = Vec::Zero(3);
  x[0] = 2.5;
  CHECK_THROWS_AS(a(x, {oracle::basis(3, 0)}), DomainError);
  ChartDomain bad = kChart3;
  bad.dim = 5;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("catalog fields are reproducible from their seed") {
  const AdjointForm a1 = fourier(1, 3), a2 = fourier(1, 3), a3 = fourier(1, 4);
  CHECK(max_diff(a1, a2, 5, 2) == 0.0);
  CHECK(max_diff(a1, a3, 5, 2) > 1e-3);
  CHECK_THROWS_AS(make_field(json{{"family", "fourier"}}, 1, kChart3, kSU2), ValidationError);
  CHECK_THROWS_AS(make_field(json{{"family", "nope"}}, 1, kChart3, kSU2), ValidationError);
}

TEST_CASE("curvature of simple connections") {
  const Vec x = Vec::Constant(3, 0.3);
  const Vec ex = oracle::basis(3, 0), ey = oracle::basis(3, 1);
  SUBCASE("one constant component is flat") {
    const AdjointForm a = constant_one_form(kChart3, {kSU2.generators[0], AlgebraElement::zero(2), AlgebraElement::zero(2)});
    CHECK(curvature_F(a)(x, {ex, ey}).norm() == 0.0);
  }
  SUBCASE("u(1): A = x dy") {
    const GroupSpec u1 = GroupSpec::u1(1);
    const AlgebraElement t = u1.generators[0];
    const AdjointForm a(kChart3, 1, 1, [t](const Vec& p, AdjointForm::Components& out) {
      out[0] = AlgebraElement::zero(1);
      out[1] = p[0] * t;
      out[2] = AlgebraElement::zero(1);
    });
    CHECK((curvature_F(a)(x, {ex, ey}) - t).norm() < 1e-9);
  }
  SUBCASE("su(2): constant X dx + Y dy") {
    const AlgebraElement X = kSU2.generators[0], Y = kSU2.generators[1];
    const AdjointForm a = constant_one_form(kChart3, {X, Y, AlgebraElement::zero(2)});
    CHECK((curvature_F(a)(x, {ex, ey}) - bracket(X, Y)).norm() < 1e-14);
  }
}

TEST_CASE("finite-difference curvature converges at second order") {
  const AdjointForm a = fourier(1, 3);
  const AdjointForm exact = curvature_F(a);
  double prev = 0.0;
  for (double h : {4e-2, 2e-2, 1e-2}) {
    const AdjointForm approx = curvature_F(a.without_analytic_derivative().with_fd_step(h));
    const double err = max_diff(exact, approx, 8, 5);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.125));
    prev = err;
  }
}

TEST_CASE("covariant exterior derivative") {
  SUBCASE("A = 0 and constant w") {
    const AdjointForm zero = AdjointForm::zero(kChart3, 1, 2);
    const AdjointForm w = make_field(json{{"family", "constant"}, {"seed", 2}}, 2, kChart3, kSU2);
    CHECK(max_diff(cov_ext_derivative(zero, w), AdjointForm::zero(kChart3, 3, 2), 5, 1) < 1e-12);
  }
  SUBCASE("abelian A gives dw") {
    const GroupSpec u1 = GroupSpec::u1(1);
    const AdjointForm a = make_field(json{{"family", "fourier"}, {"seed", 1}}, 1, kChart3, u1);
    const AdjointForm w = make_field(json{{"family", "fourier"}, {"seed", 2}}, 1, kChart3, u1);
    const AdjointForm daw = cov_ext_derivative(a, w);
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
      const Vec x = random_point(rng, 3);
      const std::vector<Vec> vs = {random_point(rng, 3), random_point(rng, 3)};
      CHECK((daw(x, {vs[0], vs[1]}).matrix() - oracle::exterior_fd(w, x, vs, 1e-4)).norm() < 1e-7);
    }
  }
  SUBCASE("non-abelian d_A against dw + [A ^ w] by hand") {
    const AdjointForm a = fourier(1, 3), w = fourier(1, 5);
    const AdjointForm daw = cov_ext_derivative(a, w);
    Rng rng(4);
    for (int k = 0; k < 5; ++k) {
      const Vec x = random_point(rng, 3), u = random_point(rng, 3), v = random_point(rng, 3);
      const Matrix br = oracle::commutator(a(x, {u}).matrix(), w(x, {v}).matrix()) -
                        oracle::commutator(a(x, {v}).matrix(), w(x, {u}).matrix());
      const Matrix want = oracle::exterior_fd(w, x, {u, v}, 1e-4) + br;
      CHECK((daw(x, {u, v}).matrix() - want).norm() < 1e-7);
    }
  }
  SUBCASE("Bianchi identity") {
    const AdjointForm a = fourier(1, 3);
    CHECK(max_diff(cov_ext_derivative(a, curvature_F(a)), AdjointForm::zero(kChart3, 3, 2), 8, 6) < 1e-6);
  }
}

TEST_CASE("Hodge star in four dimensions") {
  const AlgebraElement X = kSU2.generators[0];
  const AdjointForm w(kChart4, 2, 2, [X](const Vec&, AdjointForm::Components& out) {
    for (auto& c : out) c = AlgebraElement::zero(2);
    out[0] = X;  // dx1 ^ dx2
  });
  const Vec x = Vec::Zero(4);
  CHECK((hodge_star(w)(x, {oracle::basis(4, 2), oracle::basis(4, 3)}) - X).norm() < 1e-15);
  CHECK(hodge_star(w)(x, {oracle::basis(4, 0), oracle::basis(4, 1)}).norm() < 1e-15);
  const AdjointForm b = fourier(2, 4, kChart4);
  CHECK(max_diff(hodge_star(hodge_star(b)), b, 8, 1) < 1e-14);
  const AdjointForm sd = b + hodge_star(b);
  CHECK(max_diff(hodge_star(sd), sd, 8, 2) < 1e-14);
  CHECK_THROWS_AS(hodge_star(fourier(2, 4)), UnsupportedError);
}

TEST_CASE("gauge action") {
  const AdjointForm a = fourier(1, 3), b = fourier(2, 4);
  const GaugeMap g = make_gauge_map(json{{"family", "euler"}, {"seed", 9}, {"amplitude", 0.8}}, kChart3, kSU2);
  const GaugeMap h = make_gauge_map(json{{"family", "euler"}, {"seed", 10}, {"amplitude", 0.8}}, kChart3, kSU2);
  SUBCASE("identity") {
    const FormPair p = act_gauge(a, b, GaugeMap::identity(kChart3, 2));
    CHECK(max_diff(p.a, a, 5, 1) < 1e-15);
    CHECK(max_diff(p.b, b, 5, 1) < 1e-15);
  }
  SUBCASE("abelian constant") {
    const GroupSpec u1 = GroupSpec::u1(1);
    const AdjointForm ua = make_field(json{{"family", "fourier"}, {"seed", 1}}, 1, kChart3, u1);
    const AdjointForm ub = make_field(json{{"family", "fourier"}, {"seed", 2}}, 2, kChart3, u1);
    const FormPair p = act_gauge(ua, ub, GaugeMap::constant(kChart3, Rng(3).group(u1, 1.0)));
    CHECK(max_diff(p.a, ua, 5, 1) < 1e-15);
    CHECK(max_diff(p.b, ub, 5, 1) < 1e-15);
  }
  SUBCASE("curvature transforms by Ad") {
    const FormPair p = act_gauge(a, b, g);
    CHECK(max_diff(curvature_F(p.a), ad_inverse_twist(g, curvature_F(a)), 8, 2) < 1e-7);
  }
  SUBCASE("right action") {
    GaugeMap gh = g;
    gh.value = [g, h](const Vec& x) { return g(x) * h(x); };
    gh.derivative = [g, h](const Vec& x, int mu) -> Matrix {
      return g.d(x, mu) * h(x).matrix() + g(x).matrix() * h.d(x, mu);
    };
    const FormPair once = act_gauge(a, b, gh);
    const FormPair p = act_gauge(a, b, g);
    const FormPair twice = act_gauge(p.a, p.b, h);
    CHECK(max_diff(once.a, twice.a, 8, 3) < 1e-10);
    CHECK(max_diff(once.b, twice.b, 8, 3) < 1e-10);
  }
}

TEST_CASE("first and second actions") {
  const AdjointForm a = fourier(1, 3), b = fourier(2, 4), eta = fourier(1, 5, kChart3, 0.4);
  const GaugeMap id = GaugeMap::identity(kChart3, 2);
  SUBCASE("trivial parameters") {
    const AdjointForm zero = AdjointForm::zero(kChart3, 1, 2);
    const FormPair p = act_first(a, b, id, zero), q = act_second(a, b, id, zero);
    CHECK(max_diff(p.a, a, 5, 1) < 1e-15);
    CHECK(max_diff(p.b, b, 5, 1) < 1e-15);
    CHECK(max_diff(q.b, b, 5, 1) < 1e-15);
  }
  SUBCASE("first action keeps the tautological pair tautological") {
    const FormPair p = act_first(a, -1.0 * curvature_F(a), id, eta);
    CHECK(max_diff(p.b, -1.0 * curvature_F(a + eta), 8, 2) < 1e-12);
  }
  SUBCASE("abelian first action shifts B by -d eta") {
    const GroupSpec u1 = GroupSpec::u1(1);
    const AdjointForm ua = make_field(json{{"family", "fourier"}, {"seed", 1}}, 1, kChart3, u1);
    const AdjointForm ub = make_field(json{{"family", "fourier"}, {"seed", 2}}, 2, kChart3, u1);
    const AdjointForm ue = make_field(json{{"family", "fourier"}, {"seed", 3}}, 1, kChart3, u1);
    const FormPair p = act_first(ua, ub, GaugeMap::identity(kChart3, 1), ue);
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
      const Vec x = random_point(rng, 3), u = random_point(rng, 3), v = random_point(rng, 3);
      const Matrix want = ub(x, {u, v}).matrix() - oracle::exterior_fd(ue, x, {u, v}, 1e-4);
      CHECK((p.b(x, {u, v}).matrix() - want).norm() < 1e-7);
    }
  }
  SUBCASE("second actions compose additively at g = I") {
    const AdjointForm eta2 = fourier(1, 6, kChart3, 0.3);
    const FormPair p1 = act_second(a, b, id, eta);
    const FormPair p2 = act_second(p1.a, p1.b, id, eta2);
    const FormPair p12 = act_second(a, b, id, eta + eta2);
    CHECK(max_diff(p2.b, p12.b, 8, 4) < 1e-12);
    CHECK(max_diff(p1.b - b, -1.0 * cov_ext_derivative(a, eta), 8, 4) < 1e-12);
  }
}

TEST_CASE("Lie derivative and interior product on a rotation field") {
  // A rotation about the origin leaves the constant form dz invariant.
  const VectorField v = make_vector_field(json{{"family", "rotation"}}, 3);
  const AlgebraElement X = kSU2.generators[2];
  const AdjointForm dz = constant_one_form(kChart3, {AlgebraElement::zero(2), AlgebraElement::zero(2), X});
  CHECK(max_diff(lie_derivative_base(v, dz), AdjointForm::zero(kChart3, 1, 2), 5, 1) < 1e-9);
  const Vec x = Vec::Constant(3, 0.4);
  CHECK(interior(v, dz)(x, std::span<const Vec>()).norm() < 1e-15);
}
