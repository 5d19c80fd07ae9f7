#include <doctest.h>

#include "holo/errors.hpp"
#include "holo/geom.hpp"
#include "oracles.hpp"

using namespace holo;
using nlohmann::json;

namespace {

Vec v3(double a, double b, double c) {
  Vec x(3);
  x << a, b, c;
  return x;
}

Square warped() { return make_square(json{{"kind", "lissajous"}, {"seed", 5}, {"amplitude", 0.2}}, 3); }

}  // namespace

TEST_CASE("boundary of a constant square is a constant loop") {
  const Path p = boundary_loop(constant_square(v3(0.1, 0.2, 0.3)));
  CHECK(p.loop);
  for (double t : {0.0, 0.1, 0.4, 0.6, 0.99, 1.0}) {
    CHECK((p(t) - v3(0.1, 0.2, 0.3)).norm() == 0.0);
    CHECK(p.velocity(t).norm() == 0.0);
  }
}

TEST_CASE("boundary of the swapped unit square runs counterclockwise from the origin") {
  // Γ(s,t) = (t, s).
  const Square sq = planar_square(Vec::Zero(3), v3(0, 1, 0), v3(1, 0, 0));
  const Path p = boundary_loop(sq);
  CHECK((p(0.0) - Vec::Zero(3)).norm() < 1e-15);
  CHECK((p(0.125) - v3(0.5, 0, 0)).norm() < 1e-15);
  CHECK((p(0.375) - v3(1, 0.5, 0)).norm() < 1e-15);
  CHECK((p(0.625) - v3(0.5, 1, 0)).norm() < 1e-15);
  CHECK((p(0.875) - v3(0, 0.5, 0)).norm() < 1e-15);
  CHECK((p.velocity(0.125) - v3(4, 0, 0)).norm() < 1e-15);
  CHECK((p.velocity(0.625) - v3(-4, 0, 0)).norm() < 1e-15);
  CHECK(p.breaks == std::vector<double>{0.25, 0.5, 0.75});
}

TEST_CASE("boundary loop closes and its velocity is the chain rule") {
  const Square sq = warped();
  const Path p = boundary_loop(sq);
  CHECK((p(1.0) - p(0.0)).norm() < 1e-12);
  CHECK((p(0.0) - sq(0.0, 0.0)).norm() < 1e-15);
  const double h = 1e-6;
  for (double t : {0.05, 0.2, 0.3, 0.45, 0.55, 0.7, 0.8, 0.95}) {
    const Vec fd = (p(t + h) - p(t - h)) / (2 * h);
    CHECK((fd - p.velocity(t)).norm() < 1e-6);
  }
}

TEST_CASE("square partials match finite differences and commute") {
  for (const Square& sq : {warped(), make_square(json{{"kind", "torus"}}, 3),
                           make_square(json{{"kind", "cylinder"}}, 3)}) {
    const double h = 1e-5;
    for (double s : {0.2, 0.5, 0.8})
      for (double t : {0.15, 0.6}) {
        CHECK(((sq(s + h, t) - sq(s - h, t)) / (2 * h) - sq.ds(s, t)).norm() < 1e-7);
        CHECK(((sq(s, t + h) - sq(s, t - h)) / (2 * h) - sq.dt(s, t)).norm() < 1e-7);
        const Vec mixed1 = (sq.ds(s, t + h) - sq.ds(s, t - h)) / (2 * h);
        const Vec mixed2 = (sq.dt(s + h, t) - sq.dt(s - h, t)) / (2 * h);
        CHECK((mixed1 - mixed2).norm() < 1e-5);
      }
  }
}

TEST_CASE("loop flags are enforced") {
  const Square cyl = make_square(json{{"kind", "cylinder"}}, 3);
  CHECK(cyl.loop_s);
  CHECK_NOTHROW(cyl.validate());
  Square broken = warped();
  broken.loop_s = true;
  CHECK_THROWS_AS(broken.validate(), ValidationError);
  Path p = straight_path(Vec::Zero(3), v3(1, 0, 0));
  p.loop = true;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("reparameterized squares") {
  const Square sq = warped();
  SUBCASE("identity") {
    const Square r = reparam_square(sq, Monotone::identity(), Monotone::identity());
    CHECK((r(0.3, 0.7) - sq(0.3, 0.7)).norm() == 0.0);
  }
  SUBCASE("t -> t^2 keeps the image and scales velocities") {
    const Square r = reparam_square(sq, Monotone::identity(), Monotone::power(2.0));
    for (double s : {0.25, 0.5})
      for (double t : {0.3, 0.9}) {
        CHECK((r(s, t) - sq(s, t * t)).norm() < 1e-15);
        CHECK((r.dt(s, t) - 2.0 * t * sq.dt(s, t * t)).norm() < 1e-13);
        const double h = 1e-6;
        CHECK(((r(s, t + h) - r(s, t - h)) / (2 * h) - r.dt(s, t)).norm() < 1e-7);
      }
  }
  SUBCASE("non-monotone maps are rejected") {
    CHECK_THROWS_AS(Monotone::quadratic(1.5), ValidationError);
    CHECK_THROWS_AS(Monotone::power(0.5), ValidationError);
    Monotone bad{[](double t) { return std::sin(3.0 * t) / std::sin(3.0); },
                 [](double t) { return 3.0 * std::cos(3.0 * t) / std::sin(3.0); }};
    CHECK_THROWS_AS(reparam_square(sq, bad, Monotone::identity()), ValidationError);
  }
}

TEST_CASE("path reversal and concatenation") {
  const Path a = straight_path(Vec::Zero(3), v3(1, 0, 0));
  const Path b = straight_path(v3(1, 0, 0), v3(1, 1, 0));
  const Path ab = concatenate(a, b);
  CHECK((ab(0.25) - v3(0.5, 0, 0)).norm() < 1e-15);
  CHECK((ab(0.75) - v3(1, 0.5, 0)).norm() < 1e-15);
  CHECK((ab.velocity(0.25) - v3(2, 0, 0)).norm() < 1e-15);
  const Path r = reversed(ab);
  CHECK((r(0.25) - ab(0.75)).norm() < 1e-15);
  CHECK_THROWS_AS(concatenate(b, b), ValidationError);
}

TEST_CASE("isotopy families") {
  const Square base = warped();
  SUBCASE("r = 0 is the base square") {
    for (const char* kind : {"in-surface-flow", "boundary-fixing-flow", "normal-displacement"}) {
      const IsotopyFamily f = make_isotopy(kind, json::object(), base);
      const Square q = f.at(0.0);
      CHECK((q(0.3, 0.6) - base(0.3, 0.6)).norm() < 1e-15);
    }
  }
  SUBCASE("in-surface flow stays on the image") {
    const IsotopyFamily f = make_isotopy("in-surface-flow", json::object(), base);
    for (double r : {0.3, 1.0})
      for (double s : {0.1, 0.5, 0.9})
        for (double t : {0.2, 0.7}) {
          const auto [u, w] = f.flow(r, s, t);
          CHECK(u >= 0.0);
          CHECK(u <= 1.0);
          CHECK((f.at(r)(s, t) - base(u, w)).norm() < 1e-10);
        }
    const IsotopyResiduals res = isotopy_residuals(f, 0.5);
    CHECK(res.z1 < 1e-10);
    CHECK(res.z2 < 1e-10);
    CHECK(res.z3 < 1e-10);
  }
  SUBCASE("boundary-fixing flow vanishes on the boundary") {
    const IsotopyFamily f = make_isotopy("boundary-fixing-flow", json::object(), base);
    for (double u : {0.0, 0.3, 0.8, 1.0}) {
      CHECK(f.z(0.4, u, 0.0).norm() == 0.0);
      CHECK(f.z(0.4, u, 1.0).norm() == 0.0);
      CHECK(f.z(0.4, 0.0, u).norm() == 0.0);
      CHECK(f.z(0.4, 1.0, u).norm() == 0.0);
    }
  }
  SUBCASE("Z is the r-derivative") {
    for (const char* kind : {"in-surface-flow", "boundary-fixing-flow", "normal-displacement"}) {
      const IsotopyFamily f = make_isotopy(kind, json::object(), base);
      const double h = 1e-5;
      const Vec fd = (f.at(0.5 + h)(0.3, 0.6) - f.at(0.5 - h)(0.3, 0.6)) / (2 * h);
      CHECK((fd - f.z(0.5, 0.3, 0.6)).norm() < 1e-7);
    }
  }
  SUBCASE("normal displacement leaves the surface") {
    const IsotopyFamily f = make_isotopy("normal-displacement", json::object(), base);
    CHECK(f.conditions.count("G2") == 0);
    CHECK(isotopy_residuals(f, 0.5).z2 > 1e-3);
  }
  CHECK_THROWS_AS(make_isotopy("spin", json::object(), base), ValidationError);
}

TEST_CASE("geometry catalog errors") {
  CHECK_THROWS_AS(make_square(json{{"kind", "blob"}}, 3), ValidationError);
  CHECK_THROWS_AS(make_square(json{{"kind", "lissajous"}}, 3), ValidationError);
  CHECK_THROWS_AS(make_square(json{{"kind", "cylinder"}}, 2), ValidationError);
  CHECK_THROWS_AS(make_path(json{{"kind", "spiral"}}, 3), ValidationError);
}
