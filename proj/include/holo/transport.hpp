#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/liealg.hpp"

namespace holo {

// Source M(t) of dk/dt k^{-1} = -M(t) on [a,b].
struct OrderedIntegrand {
  double a = 0.0;
  double b = 1.0;
  std::function<AlgebraElement(double)> m;
};

struct TransportResult {
  GroupElement value;
  int steps = 0;
  int order = 2;
  double error_estimate = std::numeric_limits<double>::quiet_NaN();  // Richardson, when requested
};

// Re-projection period for long ordered products.
inline constexpr int kReprojectEvery = 64;

// Midpoint-exponential stepping k <- exp(-Δ M(t_mid)) k.
TransportResult ordered_exp(const OrderedIntegrand& m, int n, bool richardson = false);

// h(γ,·) sampled on a grid aligned with the path's breakpoints. Velocities are stored one-sided:
// vel_in[j] is the limit from the left at node j, vel_out[j] from the right.
struct FrameFactor {
  std::vector<double> t;
  std::vector<Vec> x;
  std::vector<Vec> vel_in;
  std::vector<Vec> vel_out;
  std::vector<GroupElement> h;

  int steps() const { return static_cast<int>(t.size()) - 1; }
  double step(int j) const { return t[j + 1] - t[j]; }
  // Trapezoid weights on the left and right sides of node j.
  double w_in(int j) const { return j > 0 ? 0.5 * step(j - 1) : 0.0; }
  double w_out(int j) const { return j < steps() ? 0.5 * step(j) : 0.0; }
  const GroupElement& end() const { return h.back(); }
};

// Steps per segment: round(n * segment length), at least one.
std::vector<int> distribute_steps(const Path& p, int n);

FrameFactor frame_factor(const AdjointForm& a, const Path& gamma, int n);
FrameFactor frame_factor(const AdjointForm& a, const Path& gamma, const std::vector<int>& steps_per_segment);

// Requires a closed path. Hol_A(γ, σ(γ(0))) = h(γ,1).
TransportResult holonomy_A(const AdjointForm& a, const Path& loop, int n, bool richardson = false);
// Transport along an open path; same conventions as holonomy_A.
TransportResult transport_A(const AdjointForm& a, const Path& path, int n, bool richardson = false);

// Vector field along a path, with optional analytic t-derivative.
struct VectorAlong {
  std::function<Vec(double)> value;
  std::function<Vec(double)> rate;  // FD if empty
  Vec operator()(double t) const { return value(t); }
  Vec derivative(double t) const;
  static VectorAlong zero(int dim);
  static VectorAlong from_field(const VectorField& v, const Path& gamma);
};

// Tangent to the bundle of A-horizontal paths: base field X(t) and vertical part ξ(t) = A(𝔮(t)),
// both sampled on the frame's grid.
struct PathTangent {
  Path base;
  VectorAlong field;
  FrameFactor frame;
  std::vector<Vec> x;                  // X(t_j)
  std::vector<AlgebraElement> vertical;  // ξ(t_j)
};

// max_j |A(𝔮(t_j)) - ξ(t_j)| where A(𝔮) is computed from the actual variation γ + uX of
// the horizontal lift (centered differences in u), independently of how ξ was built.
double horizontality_residual(const AdjointForm& a, const PathTangent& tangent, double du = 1e-5);

}  // namespace holo
