#include "holo/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "holo/catalog.hpp"
#include "holo/errors.hpp"

namespace holo {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec vec_param(const json& j, const char* key, int dim, Vec fallback) {
  if (!j.contains(key)) return fallback;
  const auto v = j.at(key).get<std::vector<double>>();
  if (static_cast<int>(v.size()) != dim) throw ValidationError(std::string("'") + key + "' needs one entry per axis");
  Vec out(dim);
  for (int i = 0; i < dim; ++i) out[i] = v[i];
  return out;
}

Vec axis(int dim, int i, double c = 1.0) {
  Vec v = Vec::Zero(dim);
  if (i < dim) v[i] = c;
  return v;
}

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ValidationError(std::string("geometry parameter '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }), v.end());
  v.erase(std::remove_if(v.begin(), v.end(), [](double b) { return b <= 0.0 || b >= 1.0; }), v.end());
  return v;
}

}  // namespace

void Path::validate() const {
  if (!pos || !vel) throw ValidationError("path needs position and velocity samplers");
  for (size_t i = 0; i < breaks.size(); ++i) {
    if (!(breaks[i] > 0.0 && breaks[i] < 1.0)) throw ValidationError("path breakpoints must lie in (0,1)");
    if (i && !(breaks[i] > breaks[i - 1])) throw ValidationError("path breakpoints must increase");
  }
  if (loop && (pos(0.0) - pos(1.0)).norm() > 1e-12) throw ValidationError("loop flag set but path is not closed");
}

std::vector<double> Path::segments() const {
  std::vector<double> s{0.0};
  s.insert(s.end(), breaks.begin(), breaks.end());
  s.push_back(1.0);
  return s;
}

Path straight_path(const Vec& a, const Vec& b) {
  Path p;
  p.dim = static_cast<int>(a.size());
  p.pos = [a, b](double t) { return Vec(a + t * (b - a)); };
  p.vel = [a, b](double) { return Vec(b - a); };
  return p;
}

Path circle_path(const Vec& center, double r, int i, int j) {
  Path p;
  p.dim = static_cast<int>(center.size());
  p.loop = true;
  p.pos = [=](double t) {
    Vec x = center;
    x[i] += r * std::cos(kTwoPi * t);
    x[j] += r * std::sin(kTwoPi * t);
    return x;
  };
  const int d = p.dim;
  p.vel = [=](double t) {
    Vec v = Vec::Zero(d);
    v[i] = -kTwoPi * r * std::sin(kTwoPi * t);
    v[j] = kTwoPi * r * std::cos(kTwoPi * t);
    return v;
  };
  // exact closure: sin(2π)·r is not exactly 0 in floating point
  auto raw = p.pos;
  p.pos = [raw](double t) { return raw(t == 1.0 ? 0.0 : t); };
  return p;
}

Path reversed(const Path& p) {
  Path q = p;
  q.pos = [p](double t) { return p.pos(1.0 - t); };
  q.vel = [p](double t) { return Vec(-p.vel(1.0 - t)); };
  q.breaks.clear();
  for (auto it = p.breaks.rbegin(); it != p.breaks.rend(); ++it) q.breaks.push_back(1.0 - *it);
  return q;
}

Path concatenate(const Path& p1, const Path& p2) {
  if ((p1.pos(1.0) - p2.pos(0.0)).norm() > 1e-12) throw ValidationError("concatenate: paths do not meet");
  Path q;
  q.dim = p1.dim;
  q.pos = [p1, p2](double t) { return t <= 0.5 ? p1.pos(2.0 * t) : p2.pos(2.0 * t - 1.0); };
  q.vel = [p1, p2](double t) { return Vec(t < 0.5 ? 2.0 * p1.vel(2.0 * t) : 2.0 * p2.vel(2.0 * t - 1.0)); };
  for (double b : p1.breaks) q.breaks.push_back(0.5 * b);
  q.breaks.push_back(0.5);
  for (double b : p2.breaks) q.breaks.push_back(0.5 * (1.0 + b));
  q.loop = (p1.pos(0.0) - p2.pos(1.0)).norm() <= 1e-12;
  return q;
}

Monotone Monotone::identity() {
  return {[](double t) { return t; }, [](double) { return 1.0; }};
}

Monotone Monotone::power(double k) {
  if (k < 1.0) throw ValidationError("power reparameterization needs k >= 1");
  return {[k](double t) { return std::pow(t, k); }, [k](double t) { return k * std::pow(t, k - 1.0); }};
}

Monotone Monotone::quadratic(double a) {
  if (std::abs(a) >= 1.0) throw ValidationError("quadratic reparameterization needs |a| < 1");
  return {[a](double t) { return t + a * t * (1.0 - t); }, [a](double t) { return 1.0 + a * (1.0 - 2.0 * t); }};
}

namespace {

void check_monotone(const Monotone& m) {
  if (std::abs(m.f(0.0)) > 1e-12 || std::abs(m.f(1.0) - 1.0) > 1e-12)
    throw ValidationError("reparameterization must fix the endpoints");
  // Interior samples only: t^k has zero slope at 0 yet is strictly increasing.
  double prev = m.f(0.0);
  for (int i = 1; i <= 256; ++i) {
    const double t = i / 256.0;
    const double v = m.f(t);
    if (!(v > prev) || (i < 256 && !(m.df(t) > 0.0)))
      throw ValidationError("reparameterization is not strictly monotone");
    prev = v;
  }
}

}  // namespace

Path reparam_path(const Path& p, const Monotone& phi) {
  check_monotone(phi);
  Path q = p;
  q.pos = [p, phi](double t) { return p.pos(phi.f(t)); };
  q.vel = [p, phi](double t) { return Vec(phi.df(t) * p.vel(phi.f(t))); };
  // Breakpoints move to phi^{-1}(b).
  q.breaks.clear();
  for (double b : p.breaks) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi.f(mid) < b ? lo : hi) = mid;
    }
    q.breaks.push_back(0.5 * (lo + hi));
  }
  return q;
}

void Square::validate() const {
  if (!pos || !ds || !dt) throw ValidationError("square needs position and both partials");
  if (loop_s)
    for (double t : {0.0, 0.37, 1.0})
      if ((pos(0.0, t) - pos(1.0, t)).norm() > 1e-12) throw ValidationError("loop-in-s flag set but Γ(0,t) != Γ(1,t)");
  if (loop_t)
    for (double s : {0.0, 0.37, 1.0})
      if ((pos(s, 0.0) - pos(s, 1.0)).norm() > 1e-12) throw ValidationError("loop-in-t flag set but Γ(s,0) != Γ(s,1)");
}

Path Square::slice_t(double s) const {
  Path p;
  p.dim = dim;
  auto g = pos;
  auto d = dt;
  p.pos = [g, s](double t) { return g(s, t); };
  p.vel = [d, s](double t) { return d(s, t); };
  p.loop = loop_t;
  p.breaks = t_breaks;
  return p;
}

Path Square::slice_s(double t) const {
  Path p;
  p.dim = dim;
  auto g = pos;
  auto d = ds;
  p.pos = [g, t](double s) { return g(s, t); };
  p.vel = [d, t](double s) { return d(s, t); };
  p.loop = loop_s;
  p.breaks = s_breaks;
  return p;
}

Path boundary_loop(const Square& sq) {
  Path p;
  p.dim = sq.dim;
  p.loop = true;
  p.pos = [sq](double tau) -> Vec {
    if (tau <= 0.25) return sq.pos(0.0, 4.0 * tau);
    if (tau <= 0.5) return sq.pos(4.0 * tau - 1.0, 1.0);
    if (tau <= 0.75) return sq.pos(1.0, 3.0 - 4.0 * tau);
    return sq.pos(4.0 - 4.0 * tau, 0.0);
  };
  p.vel = [sq](double tau) -> Vec {
    if (tau < 0.25) return 4.0 * sq.dt(0.0, 4.0 * tau);
    if (tau < 0.5) return 4.0 * sq.ds(4.0 * tau - 1.0, 1.0);
    if (tau < 0.75) return -4.0 * sq.dt(1.0, 3.0 - 4.0 * tau);
    return -4.0 * sq.ds(4.0 - 4.0 * tau, 0.0);
  };
  std::vector<double> b{0.25, 0.5, 0.75};
  for (double t : sq.t_breaks) {
    b.push_back(t / 4.0);
    b.push_back((3.0 - t) / 4.0);
  }
  for (double s : sq.s_breaks) {
    b.push_back((s + 1.0) / 4.0);
    b.push_back((4.0 - s) / 4.0);
  }
  p.breaks = sorted_unique(b);
  return p;
}

Square reparam_square(const Square& sq, const Monotone& phi_s, const Monotone& phi_t) {
  check_monotone(phi_s);
  check_monotone(phi_t);
  Square q = sq;
  q.pos = [sq, phi_s, phi_t](double s, double t) { return sq.pos(phi_s.f(s), phi_t.f(t)); };
  q.ds = [sq, phi_s, phi_t](double s, double t) { return Vec(phi_s.df(s) * sq.ds(phi_s.f(s), phi_t.f(t))); };
  q.dt = [sq, phi_s, phi_t](double s, double t) { return Vec(phi_t.df(t) * sq.dt(phi_s.f(s), phi_t.f(t))); };
  q.s_breaks = reparam_path(sq.slice_s(0.0), phi_s).breaks;
  q.t_breaks = reparam_path(sq.slice_t(0.0), phi_t).breaks;
  return q;
}

Square planar_square(const Vec& origin, const Vec& e_s, const Vec& e_t) {
  Square q;
  q.dim = static_cast<int>(origin.size());
  q.pos = [=](double s, double t) { return Vec(origin + s * e_s + t * e_t); };
  q.ds = [=](double, double) { return e_s; };
  q.dt = [=](double, double) { return e_t; };
  return q;
}

Square constant_square(const Vec& x) {
  Square q;
  q.dim = static_cast<int>(x.size());
  const int d = q.dim;
  q.pos = [x](double, double) { return x; };
  q.ds = [d](double, double) { return Vec(Vec::Zero(d)); };
  q.dt = [d](double, double) { return Vec(Vec::Zero(d)); };
  return q;
}

namespace {

// φ_r(s,t) = (s + r a s(1-s)(1 + b t), t + r c t(1-t)(1 + e s)): fixes every edge setwise and every corner.
IsotopyFamily in_surface_flow(const json& p, const Square& base) {
  const double a = num(p, "a", 0.3), b = num(p, "b", 0.5), c = num(p, "c", -0.25), e = num(p, "e", 0.4);
  if (std::abs(a) * (1.0 + std::abs(b)) >= 1.0 || std::abs(c) * (1.0 + std::abs(e)) >= 1.0)
    throw ValidationError("in-surface-flow coefficients too large for a diffeomorphism");
  IsotopyFamily f;
  f.kind = "in-surface-flow";
  f.base = base;
  f.conditions = {"G1", "G2", "G3"};
  f.flow = [=](double r, double s, double t) {
    return std::pair{s + r * a * s * (1.0 - s) * (1.0 + b * t), t + r * c * t * (1.0 - t) * (1.0 + e * s)};
  };
  f.at = [=](double r) {
    Square q = base;
    q.pos = [=](double s, double t) {
      return base.pos(s + r * a * s * (1.0 - s) * (1.0 + b * t), t + r * c * t * (1.0 - t) * (1.0 + e * s));
    };
    q.ds = [=](double s, double t) {
      const double u = s + r * a * s * (1.0 - s) * (1.0 + b * t), w = t + r * c * t * (1.0 - t) * (1.0 + e * s);
      const double us = 1.0 + r * a * (1.0 - 2.0 * s) * (1.0 + b * t), ws = r * c * t * (1.0 - t) * e;
      return Vec(us * base.ds(u, w) + ws * base.dt(u, w));
    };
    q.dt = [=](double s, double t) {
      const double u = s + r * a * s * (1.0 - s) * (1.0 + b * t), w = t + r * c * t * (1.0 - t) * (1.0 + e * s);
      const double ut = r * a * s * (1.0 - s) * b, wt = 1.0 + r * c * (1.0 - 2.0 * t) * (1.0 + e * s);
      return Vec(ut * base.ds(u, w) + wt * base.dt(u, w));
    };
    q.s_breaks.clear();
    q.t_breaks.clear();
    return q;
  };
  f.z = [=](double r, double s, double t) {
    const double u = s + r * a * s * (1.0 - s) * (1.0 + b * t), w = t + r * c * t * (1.0 - t) * (1.0 + e * s);
    const double ur = a * s * (1.0 - s) * (1.0 + b * t), wr = c * t * (1.0 - t) * (1.0 + e * s);
    return Vec(ur * base.ds(u, w) + wr * base.dt(u, w));
  };
  return f;
}

// φ_r(s,t) = (s + r a β(s,t), t + r c β(s,t)), β = 16 s(1-s) t(1-t); Z = 0 on the boundary.
IsotopyFamily boundary_fixing_flow(const json& p, const Square& base) {
  const double a = num(p, "a", 0.12), c = num(p, "c", -0.08);
  if ((std::abs(a) + std::abs(c)) * 4.0 >= 1.0) throw ValidationError("boundary-fixing-flow coefficients too large");
  auto beta = [](double s, double t) { return 16.0 * s * (1.0 - s) * t * (1.0 - t); };
  auto beta_s = [](double s, double t) { return 16.0 * (1.0 - 2.0 * s) * t * (1.0 - t); };
  auto beta_t = [](double s, double t) { return 16.0 * s * (1.0 - s) * (1.0 - 2.0 * t); };
  IsotopyFamily f;
  f.kind = "boundary-fixing-flow";
  f.base = base;
  f.conditions = {"G1", "G2", "G3"};
  f.flow = [=](double r, double s, double t) { return std::pair{s + r * a * beta(s, t), t + r * c * beta(s, t)}; };
  f.at = [=](double r) {
    Square q = base;
    q.pos = [=](double s, double t) { return base.pos(s + r * a * beta(s, t), t + r * c * beta(s, t)); };
    q.ds = [=](double s, double t) {
      const double u = s + r * a * beta(s, t), w = t + r * c * beta(s, t);
      return Vec((1.0 + r * a * beta_s(s, t)) * base.ds(u, w) + (r * c * beta_s(s, t)) * base.dt(u, w));
    };
    q.dt = [=](double s, double t) {
      const double u = s + r * a * beta(s, t), w = t + r * c * beta(s, t);
      return Vec((r * a * beta_t(s, t)) * base.ds(u, w) + (1.0 + r * c * beta_t(s, t)) * base.dt(u, w));
    };
    q.s_breaks.clear();
    q.t_breaks.clear();
    return q;
  };
  f.z = [=](double r, double s, double t) {
    const double u = s + r * a * beta(s, t), w = t + r * c * beta(s, t);
    return Vec(a * beta(s, t) * base.ds(u, w) + c * beta(s, t) * base.dt(u, w));
  };
  return f;
}

// Γ_r = Γ_0 + r ε β(s,t) n with β vanishing at (0,0) only: keeps G.1, breaks G.2 and G.3.
IsotopyFamily normal_displacement(const json& p, const Square& base) {
  const int d = base.dim;
  const double eps = num(p, "epsilon", 0.3);
  const Vec n = vec_param(p, "direction", d, axis(d, d - 1));
  auto beta = [](double s, double t) { return s * (2.0 - s) * t * (2.0 - t) + 0.5 * s * t; };
  auto beta_s = [](double s, double t) { return (2.0 - 2.0 * s) * t * (2.0 - t) + 0.5 * t; };
  auto beta_t = [](double s, double t) { return s * (2.0 - s) * (2.0 - 2.0 * t) + 0.5 * s; };
  IsotopyFamily f;
  f.kind = "normal-displacement";
  f.base = base;
  f.conditions = {"G1"};
  f.at = [=](double r) {
    Square q = base;
    q.pos = [=](double s, double t) { return Vec(base.pos(s, t) + (r * eps * beta(s, t)) * n); };
    q.ds = [=](double s, double t) { return Vec(base.ds(s, t) + (r * eps * beta_s(s, t)) * n); };
    q.dt = [=](double s, double t) { return Vec(base.dt(s, t) + (r * eps * beta_t(s, t)) * n); };
    return q;
  };
  f.z = [=](double, double s, double t) { return Vec(eps * beta(s, t) * n); };
  return f;
}

}  // namespace

IsotopyFamily make_isotopy(const std::string& kind, const json& params, const Square& base) {
  if (kind == "in-surface-flow") return in_surface_flow(params, base);
  if (kind == "boundary-fixing-flow") return boundary_fixing_flow(params, base);
  if (kind == "normal-displacement") return normal_displacement(params, base);
  throw ValidationError("unknown isotopy kind: " + kind);
}

IsotopyResiduals isotopy_residuals(const IsotopyFamily& fam, double r, int samples) {
  IsotopyResiduals res;
  res.z1 = fam.z(r, 0.0, 0.0).norm();
  res.z3 = fam.z(r, 1.0, 0.0).norm();
  for (int i = 0; i <= samples; ++i)
    for (int k = 0; k <= samples; ++k) {
      const double s = static_cast<double>(i) / samples, t = static_cast<double>(k) / samples;
      // Tangent plane of the base image at the same point: for in-surface families the
      // point is Γ_0(φ_r(s,t)); otherwise use Γ_0(s,t) as the nearest parameter.
      double u = s, w = t;
      if (fam.flow) std::tie(u, w) = fam.flow(r, s, t);
      Eigen::Matrix<double, Eigen::Dynamic, 2, 0, 4, 2> basis(fam.base.dim, 2);
      basis.col(0) = fam.base.ds(u, w);
      basis.col(1) = fam.base.dt(u, w);
      const Vec z = fam.z(r, s, t);
      const auto qr = basis.colPivHouseholderQr();
      const Vec proj = basis * qr.solve(z);
      res.z2 = std::max(res.z2, (z - proj).norm());
    }
  return res;
}

Square make_square(const json& j, int dim) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("geometry spec needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "planar_square") {
    Vec o = Vec::Zero(dim);
    o[0] = -0.5;
    o[1] = -0.5;
    return planar_square(vec_param(j, "origin", dim, o), vec_param(j, "e_s", dim, axis(dim, 0)),
                         vec_param(j, "e_t", dim, axis(dim, 1)));
  }
  if (kind == "constant") return constant_square(vec_param(j, "point", dim, Vec::Zero(dim)));
  if (kind == "cylinder") {
    if (dim < 3) throw ValidationError("cylinder needs d >= 3");
    const double R = num(j, "radius", 0.8), h = num(j, "height", 1.0);
    const Vec c = vec_param(j, "center", dim, axis(dim, 2, -0.5));
    const std::string closed = j.value("closed", std::string("s"));
    if (closed != "s" && closed != "t") throw ValidationError("cylinder 'closed' must be \"s\" or \"t\"");
    const bool in_s = closed == "s";
    Square q;
    q.dim = dim;
    auto pos = [=](double ang, double z) {
      Vec x = c;
      x[0] += R * std::cos(kTwoPi * ang);
      x[1] += R * std::sin(kTwoPi * ang);
      x[2] += h * z;
      return x;
    };
    auto dang = [=](double ang) {
      Vec v = Vec::Zero(dim);
      v[0] = -kTwoPi * R * std::sin(kTwoPi * ang);
      v[1] = kTwoPi * R * std::cos(kTwoPi * ang);
      return v;
    };
    const Vec dz = axis(dim, 2, h);
    auto wrap = [](double a) { return a == 1.0 ? 0.0 : a; };
    if (in_s) {
      q.pos = [=](double s, double t) { return pos(wrap(s), t); };
      q.ds = [=](double s, double) { return dang(s); };
      q.dt = [=](double, double) { return dz; };
      q.loop_s = true;
    } else {
      q.pos = [=](double s, double t) { return pos(wrap(t), s); };
      q.ds = [=](double, double) { return dz; };
      q.dt = [=](double, double t) { return dang(t); };
      q.loop_t = true;
    }
    return q;
  }
  if (kind == "torus") {
    if (dim < 3) throw ValidationError("torus needs d >= 3");
    const double R = num(j, "major", 1.0), r = num(j, "minor", 0.4);
    const Vec c = vec_param(j, "center", dim, Vec::Zero(dim));
    auto wrap = [](double a) { return a == 1.0 ? 0.0 : a; };
    Square q;
    q.dim = dim;
    q.loop_s = q.loop_t = true;
    q.pos = [=](double s, double t) {
      const double a = kTwoPi * wrap(s), b = kTwoPi * wrap(t);
      Vec x = c;
      x[0] += (R + r * std::cos(b)) * std::cos(a);
      x[1] += (R + r * std::cos(b)) * std::sin(a);
      x[2] += r * std::sin(b);
      return x;
    };
    q.ds = [=](double s, double t) {
      const double a = kTwoPi * s, b = kTwoPi * t;
      Vec v = Vec::Zero(dim);
      v[0] = -kTwoPi * (R + r * std::cos(b)) * std::sin(a);
      v[1] = kTwoPi * (R + r * std::cos(b)) * std::cos(a);
      return v;
    };
    q.dt = [=](double s, double t) {
      const double a = kTwoPi * s, b = kTwoPi * t;
      Vec v = Vec::Zero(dim);
      v[0] = -kTwoPi * r * std::sin(b) * std::cos(a);
      v[1] = -kTwoPi * r * std::sin(b) * std::sin(a);
      v[2] = kTwoPi * r * std::cos(b);
      return v;
    };
    return q;
  }
  if (kind == "lissajous") {
    // Planar square plus a seeded sum of v_m sin(π(a_m s + b_m t) + φ_m).
    Vec o = Vec::Zero(dim);
    o[0] = -0.5;
    o[1] = -0.5;
    const Vec origin = vec_param(j, "origin", dim, o);
    const Vec es = vec_param(j, "e_s", dim, axis(dim, 0)), et = vec_param(j, "e_t", dim, axis(dim, 1));
    const double amp = num(j, "amplitude", 0.1);
    const int modes = j.value("modes", 3);
    if (!j.contains("seed")) throw ValidationError("lissajous geometry requires a seed");
    Rng rng(j.at("seed").get<unsigned long long>());
    std::vector<Vec> vs;
    std::vector<double> as, bs, ph;
    for (int m = 0; m < modes; ++m) {
      Vec v(dim);
      for (int i = 0; i < dim; ++i) v[i] = amp * rng.uniform();
      vs.push_back(v);
      as.push_back(std::floor(1.0 + 1.5 * (rng.uniform() + 1.0)));
      bs.push_back(std::floor(1.0 + 1.5 * (rng.uniform() + 1.0)));
      ph.push_back(std::numbers::pi * rng.uniform());
    }
    const double pi = std::numbers::pi;
    Square q;
    q.dim = dim;
    q.pos = [=](double s, double t) {
      Vec x = origin + s * es + t * et;
      for (size_t m = 0; m < vs.size(); ++m) x += std::sin(pi * (as[m] * s + bs[m] * t) + ph[m]) * vs[m];
      return x;
    };
    q.ds = [=](double s, double t) {
      Vec v = es;
      for (size_t m = 0; m < vs.size(); ++m) v += pi * as[m] * std::cos(pi * (as[m] * s + bs[m] * t) + ph[m]) * vs[m];
      return v;
    };
    q.dt = [=](double s, double t) {
      Vec v = et;
      for (size_t m = 0; m < vs.size(); ++m) v += pi * bs[m] * std::cos(pi * (as[m] * s + bs[m] * t) + ph[m]) * vs[m];
      return v;
    };
    return q;
  }
  throw ValidationError("unknown geometry kind: " + kind);
}

Path make_path(const json& j, int dim) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("path spec needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "circle")
    return circle_path(vec_param(j, "center", dim, Vec::Zero(dim)), num(j, "radius", 0.5), j.value("i", 0),
                       j.value("j", 1));
  if (kind == "straight") return straight_path(vec_param(j, "from", dim, Vec::Zero(dim)), vec_param(j, "to", dim, axis(dim, 0)));
  if (kind == "boundary") return boundary_loop(make_square(j.at("square"), dim));
  throw ValidationError("unknown path kind: " + kind);
}

}  // namespace holo
