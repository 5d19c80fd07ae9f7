#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holo/catalog.hpp"
#include "holo/errors.hpp"
#include "holo/observables.hpp"
#include "holo/pathspace.hpp"
#include "oracles.hpp"

using namespace holo;
using nlohmann::json;

namespace {

const ChartDomain kChart = ChartDomain::cube(3, 2.0);
const ChartDomain kChart4 = ChartDomain::cube(4, 2.0);
const GroupSpec kSU2 = GroupSpec::su(2);
const GroupSpec kU1 = GroupSpec::u1(1);

AdjointForm field(int degree, unsigned seed, const GroupSpec& g = kSU2, double amp = 0.6,
                  const ChartDomain& chart = kChart) {
  return make_field(json{{"family", "fourier"}, {"seed", seed}, {"modes", 3}, {"amplitude", amp}}, degree, chart, g);
}

SurfaceOptions opts(int n) {
  SurfaceOptions o;
  o.grids = {n, n};
  return o;
}

Square cylinder() { return make_square(json{{"kind", "cylinder"}, {"radius", 0.6}, {"height", 0.8}}, 3); }

// Unit square in the (x, y) plane, bulged in z by h sin(πs) sin(πt). The boundary does not depend on h.
Square bulged(double h) {
  const double pi = std::numbers::pi;
  Square q;
  q.dim = 3;
  q.pos = [=](double s, double t) {
    Vec x(3);
    x << s - 0.5, t - 0.5, h * std::sin(pi * s) * std::sin(pi * t);
    return x;
  };
  q.ds = [=](double s, double t) {
    Vec x(3);
    x << 1.0, 0.0, h * pi * std::cos(pi * s) * std::sin(pi * t);
    return x;
  };
  q.dt = [=](double s, double t) {
    Vec x(3);
    x << 0.0, 1.0, h * pi * std::sin(pi * s) * std::cos(pi * t);
    return x;
  };
  return q;
}

}  // namespace

TEST_CASE("O_alphabeta") {
  const AdjointForm a = field(1, 3);
  SUBCASE("alpha = beta = 0 is the trace of the identity") {
    CHECK(std::abs(O_alphabeta(a, 0.0, 0.0, bulged(0.3), opts(16)) - 2.0) < 1e-14);
  }
  SUBCASE("alpha = -1 is the Wilson loop of the boundary, whatever the interior") {
    const Complex w = boundary_holonomy(a, bulged(0.0), {128, 128}).trace();
    for (double h : {0.0, 0.3, -0.5}) CHECK(std::abs(O_alphabeta(a, -1.0, 0.0, bulged(h), opts(128)) - w) < 1e-5);
  }
  SUBCASE("abelian closed form") {
    const AdjointForm ua = field(1, 1, kU1);
    const Square sq = bulged(0.3);
    const Complex want = oracle::taylor_exp(-0.5 * oracle::flux(curvature_F(ua), sq, 1000)).trace();
    const Complex v = (4.0 * O_alphabeta(ua, 0.5, 0.0, sq, opts(256)) - O_alphabeta(ua, 0.5, 0.0, sq, opts(128))) / 3.0;
    CHECK(std::abs(v - want) < 1e-7);
  }
  SUBCASE("beta needs four dimensions") {
    CHECK_THROWS_AS(O_alphabeta(a, -1.0, 0.5, bulged(0.0), opts(8)), UnsupportedError);
    ObservableSpec spec;
    spec.beta = 0.5;
    CHECK_THROWS_AS(spec.validate(3), UnsupportedError);
    CHECK_NOTHROW(spec.validate(4));
    spec.kind = "O_bogus";
    CHECK_THROWS_AS(spec.validate(4), ValidationError);
  }
  SUBCASE("four dimensions with a Hodge term") {
    const AdjointForm a4 = field(1, 3, kSU2, 0.6, kChart4);
    const Square sq = make_square(json{{"kind", "lissajous"}, {"seed", 5}, {"amplitude", 0.2}}, 4);
    const Complex v = O_alphabeta(a4, -1.0, 0.5, sq, opts(32));
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(std::abs(v - O_alphabeta(a4, -1.0, 0.0, sq, opts(32))) > 1e-4);
  }
}

TEST_CASE("O_tilde") {
  const Square cyl = cylinder();
  SUBCASE("B = 0") {
    CHECK(std::abs(O_tilde(field(1, 3), AdjointForm::zero(kChart, 2, 2), cyl, opts(16)) - 2.0) < 1e-12);
  }
  SUBCASE("abelian with A = 0") {
    const AdjointForm b = field(2, 2, kU1);
    const Complex want = oracle::taylor_exp(-oracle::flux(b, cyl, 1000)).trace();
    CHECK(std::abs(O_tilde(AdjointForm::zero(kChart, 1, 1), b, cyl, opts(256)) - want) < 1e-6);
  }
  SUBCASE("flat A: in-surface reparameterization") {
    const AdjointForm flat = make_field(json{{"family", "pure_gauge"}, {"seed", 2}, {"scale", 0.5}}, 1, kChart, kSU2);
    const AdjointForm b = field(2, 4);
    const Square rep = reparam_square(cyl, Monotone::quadratic(0.3), Monotone::power(2.0));
    auto extrap = [&](const Square& q) { return (4.0 * O_tilde(flat, b, q, opts(128)) - O_tilde(flat, b, q, opts(64))) / 3.0; };
    CHECK(std::abs(extrap(cyl) - extrap(rep)) < 1e-6);
  }
  SUBCASE("needs a loop of paths") {
    CHECK_THROWS_AS(O_tilde(field(1, 3), field(2, 4), bulged(0.0), opts(8)), ValidationError);
  }
}

TEST_CASE("O_hol_ratio") {
  CHECK(std::abs(O_hol_ratio(field(1, 3), AdjointForm::zero(kChart, 2, 2), cylinder(), opts(32)) - 1.0) < 1e-12);
  ObservableSpec spec;
  spec.kind = "O_hol_ratio";
  const Complex r = evaluate_observable(spec, field(1, 3), field(2, 4), cylinder(), opts(32));
  CHECK(std::abs(r - O_hol_ratio(field(1, 3), field(2, 4), cylinder(), opts(32))) == 0.0);
}

TEST_CASE("actions") {
  SUBCASE("zero fields") {
    const ActionValues v = action_values(AdjointForm::zero(kChart4, 1, 2), AdjointForm::zero(kChart4, 2, 2), 6);
    for (Complex c : {v.s_ym, v.s_ym_prime, v.s_tym, v.s_bf_bb, v.s_bf}) CHECK(std::abs(c) == 0.0);
  }
  SUBCASE("flat A, B = 0") {
    const AdjointForm flat = make_field(json{{"family", "pure_gauge"}, {"seed", 2}, {"scale", 0.5}}, 1, kChart4, kSU2);
    const ActionValues v = action_values(flat, AdjointForm::zero(kChart4, 2, 2), 6);
    CHECK(std::abs(v.s_ym) < 1e-8);
    CHECK(std::abs(v.s_tym) < 1e-8);
  }
  SUBCASE("u(1) BF action against a separable Gaussian integral") {
    // A = T x0 e^{-|x|²} dx1, B = T e^{-|x|²} dx2∧dx3, so B∧F = T² (1 - 2x0²) e^{-2|x|²} d⁴x and
    // ∫(1 - 2x²)e^{-2x²} = ½√(π/2), ∫e^{-2x²} = √(π/2): S_BF = Tr(T²) π²/8.
    const ChartDomain wide = ChartDomain::cube(4, 5.0);
    const AdjointForm a = make_field(json{{"family", "gaussian"}, {"factor_axis", 0}, {"components", {{1}}}}, 1, wide, kU1);
    const AdjointForm b = make_field(json{{"family", "gaussian"}, {"components", {{2, 3}}}}, 2, wide, kU1);
    const Matrix t = kU1.generators[0].matrix();
    const Complex want = (t * t).trace() * std::numbers::pi * std::numbers::pi / 8.0;
    const double e16 = std::abs(action_values(a, b, 16).s_bf - want);
    const double e32 = std::abs(action_values(a, b, 32).s_bf - want);
    CHECK(e16 < 1e-3);
    CHECK(e32 < 1e-10);
    CHECK(e32 < e16);
  }
  SUBCASE("topological action is gauge invariant") {
    const AdjointForm a = field(1, 3, kSU2, 0.6, kChart4);
    const GaugeMap g = make_gauge_map(json{{"family", "euler"}, {"seed", 9}, {"amplitude", 0.8}}, kChart4, kSU2);
    const FormPair p = act_gauge(a, AdjointForm::zero(kChart4, 2, 2), g);
    const Complex before = action_values(a, p.b, 8).s_tym, after = action_values(p.a, p.b, 8).s_tym;
    CHECK(std::abs(before) > 1e-3);
    CHECK(std::abs(before - after) < 1e-6 * std::abs(before));
  }
  SUBCASE("serial and parallel agree bitwise") {
    const AdjointForm a = field(1, 3, kSU2, 0.6, kChart4), b = field(2, 4, kSU2, 0.6, kChart4);
    const ActionValues s = action_values(a, b, 6, Exec::serial), p = action_values(a, b, 6, Exec::parallel);
    CHECK(s.s_ym == p.s_ym);
    CHECK(s.s_bf_bb == p.s_bf_bb);
    CHECK(s.s_ym_prime == p.s_ym_prime);
  }
}

TEST_CASE("gauge invariance report") {
  const AdjointForm a = field(1, 3), b = field(2, 4);
  const GaugeMap g = make_gauge_map(json{{"family", "euler"}, {"seed", 9}, {"amplitude", 0.8}}, kChart, kSU2);
  ObservableSpec spec;
  const auto rows = gauge_invariance_report(spec, a, b, bulged(0.3), opts(64), g);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].discrepancy < 1e-4);
  CHECK(rows[0].discrepancy == doctest::Approx(std::abs(rows[0].before - rows[0].after)));
  const AdjointForm eta = make_field(json{{"family", "vortex"}, {"c", 0.7}}, 1, kChart, kSU2);
  CHECK(gauge_invariance_report(spec, a, b, bulged(0.3), opts(16), g, eta).size() == 2);
}
