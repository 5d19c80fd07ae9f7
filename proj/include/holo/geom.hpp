#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/fields.hpp"

namespace holo {

// Smooth (or piecewise-smooth, split at `breaks`) map [0,1] -> R^d with analytic velocity.
struct Path {
  int dim = 3;
  std::function<Vec(double)> pos;
  std::function<Vec(double)> vel;
  bool loop = false;
  std::vector<double> breaks;  // interior breakpoints, increasing, in (0,1)

  Vec operator()(double t) const { return pos(t); }
  Vec velocity(double t) const { return vel(t); }
  void validate() const;
  // Segment endpoints 0 = b_0 < ... < b_m = 1.
  std::vector<double> segments() const;
};

Path straight_path(const Vec& a, const Vec& b);
// Circle of radius r around `center` in the (i, j) coordinate plane, counterclockwise, from angle 0.
Path circle_path(const Vec& center, double r, int i = 0, int j = 1);
Path reversed(const Path& p);
// p1 on [0, 1/2], then p2 on [1/2, 1]; requires p1(1) = p2(0).
Path concatenate(const Path& p1, const Path& p2);

struct Monotone {
  std::function<double(double)> f;
  std::function<double(double)> df;
  static Monotone identity();
  static Monotone power(double k);  // t^k, k >= 1
  // t + a t (1 - t), |a| < 1
  static Monotone quadratic(double a);
};

Path reparam_path(const Path& p, const Monotone& phi);

// Path of paths Γ(s,t) with partials Γ' = d/ds and Γ̇ = d/dt.
struct Square {
  int dim = 3;
  std::function<Vec(double, double)> pos;
  std::function<Vec(double, double)> ds;
  std::function<Vec(double, double)> dt;
  bool loop_s = false;
  bool loop_t = false;
  std::vector<double> s_breaks;
  std::vector<double> t_breaks;

  Vec operator()(double s, double t) const { return pos(s, t); }
  void validate() const;
  Path slice_t(double s) const;  // t -> Γ(s,t)
  Path slice_s(double t) const;  // s -> Γ(s,t)
};

// (∂Γ)(τ) = Γ(0,4τ), Γ(4τ-1,1), Γ(1,3-4τ), Γ(4-4τ,0) on the four quarters.
Path boundary_loop(const Square& sq);

Square reparam_square(const Square& sq, const Monotone& phi_s, const Monotone& phi_t);

Square planar_square(const Vec& origin, const Vec& e_s, const Vec& e_t);
Square constant_square(const Vec& x);

struct IsotopyFamily {
  std::string kind;
  Square base;
  std::function<Square(double)> at;
  std::function<Vec(double, double, double)> z;  // d/dr Γ_r(s,t)
  std::set<std::string> conditions;             // subset of {"G1","G2","G3"}
  // Parameter map (s,t) -> (u,w) with Γ_r = base∘φ_r, when the family is in-surface.
  std::function<std::pair<double, double>(double, double, double)> flow;
};

// kind ∈ {in-surface-flow, boundary-fixing-flow, normal-displacement}.
IsotopyFamily make_isotopy(const std::string& kind, const nlohmann::json& params, const Square& base);

struct IsotopyResiduals {
  double z1 = 0.0;  // |Z_r(0,0)|
  double z2 = 0.0;  // normal part of Z_r relative to the base image
  double z3 = 0.0;  // |Z_r(1,0)|
};
IsotopyResiduals isotopy_residuals(const IsotopyFamily& fam, double r, int samples = 9);

// Geometry catalog: {"kind": "planar_square" | "cylinder" | "torus" | "lissajous" | ..., params}.
Square make_square(const nlohmann::json& spec, int dim);
Path make_path(const nlohmann::json& spec, int dim);

}  // namespace holo
