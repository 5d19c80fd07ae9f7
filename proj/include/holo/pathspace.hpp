#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/liealg.hpp"
#include "holo/transport.hpp"

namespace holo {

// (A, Ā = A + η, B). An invalid η means η = 0.
struct SpecialConnection {
  AdjointForm a;
  AdjointForm eta;
  AdjointForm b;

  static SpecialConnection trivial(const AdjointForm& a);
  static SpecialConnection tautological(const AdjointForm& a);  // B = -F_A
  bool has_eta() const { return eta.valid() && !eta.is_zero(); }
  void validate() const;
};

struct Grids {
  int ns = 64;
  int nt = 64;
};

enum class Exec { serial, parallel };

// bholonomy: integrate K = h0 k directly (production). conjugated: integrate k with
// Ad_{h0^{-1}} twists at s-midpoints taken from a half-step h0 grid.
enum class SurfaceRoute { bholonomy, conjugated };

struct SurfaceOptions {
  Grids grids;
  Exec exec = Exec::parallel;
  SurfaceRoute route = SurfaceRoute::bholonomy;
  GroupElement base;  // p0 = σ(Γ(0,0))·base; empty means identity
  bool keep_slices = false;
};

// Data of one t-slice Γ(s,·) at an s-midpoint.
struct Slice {
  double s = 0.0;
  FrameFactor frame;          // h_s(t) on the slice's t-grid
  std::vector<Vec> ds;        // Γ'(s, t_j)
  AlgebraElement a0;          // A(Γ'(s,0))
  AlgebraElement eta0;        // η(Γ'(s,0))
  AlgebraElement inner;       // ∫ Ad_{h_s^{-1}} B(Γ', Γ̇) dt
  AlgebraElement source;      // 𝒜(s) = A(Γ'(s,0)) + η(Γ'(s,0)) + inner
};

struct SurfaceTransport {
  std::vector<double> s;       // s-grid nodes
  std::vector<GroupElement> k;
  std::vector<GroupElement> K;   // K = h0·k
  std::vector<GroupElement> h0;  // transport along Γ(·,0)
  std::vector<Slice> slices;     // at s-midpoints, when kept
  std::vector<GroupElement> K_mid;  // K at s-midpoints, when slices are kept
  int ns = 0;
  int nt = 0;

  const GroupElement& H() const { return k.back(); }
  const GroupElement& hol() const { return K.back(); }
};

std::vector<int> s_steps(const Square& sq, int ns);
std::vector<int> t_steps(const Square& sq, int nt);

// Inner data of a single slice; exposed for the variation formulas.
Slice compute_slice(const SpecialConnection& conn, const Square& sq, double s, const std::vector<int>& tsteps);

SurfaceTransport surface_transport(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt);

// ℋ(Γ, p0) = k(1).
GroupElement H_map(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt);

// Hol_{(A,B)}(Γ, p0) = Hol_A(Γ(·,0), p0)·ℋ(Γ, p0); requires loop-in-s.
struct HolAB {
  GroupElement value;
  GroupElement hol_a;  // Hol_A(Γ(·,0))
  GroupElement H;
  double factorization_residual = 0.0;  // |value - hol_a·H|
};
HolAB hol_AB(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt);

// Transport along ∂Γ with Nt, Ns, Nt, Ns steps on the four quarters.
GroupElement boundary_holonomy(const AdjointForm& a, const Square& sq, const Grids& g);

struct StokesCheck {
  GroupElement surface;
  GroupElement boundary;
  double residual = 0.0;
};
StokesCheck tautological_check(const AdjointForm& a, const Square& sq, const SurfaceOptions& opt);

// Value of the special connection on a path tangent.
struct ConnectionValue {
  AlgebraElement difference;  // η(X(0)) + ∫ Ad_{h^{-1}} B(X, γ̇)
  AlgebraElement full;        // ξ(0) + difference
};
ConnectionValue eval_special_connection(const SpecialConnection& conn, const PathTangent& x);

// Evaluation of the (A,B,C) connection on a tangent to the lifted square.
struct IteratedEval {
  AlgebraElement value;
  AlgebraElement a_term;
  AlgebraElement b_term;
  AlgebraElement c_term;
  double horizontality = 0.0;  // max over s of the (A,B)-horizontality residual of the lift
  std::vector<std::string> warnings;
};
enum class SquareLift { ab, a_only };
IteratedEval iterated_connection_eval(const AdjointForm& a, const AdjointForm& b, const AdjointForm& c,
                                      const Square& sq, const std::function<Vec(double, double)>& x,
                                      const AlgebraElement& xi00, const Grids& g,
                                      SquareLift lift = SquareLift::ab, double tolerance = 1e-6);

// Trapezoid helpers on frame_factor nodes. Samples are (left-limit, right-limit) pairs per node.
struct NodeSample {
  AlgebraElement in;
  AlgebraElement out;
};
using NodeSamples = std::vector<NodeSample>;
AlgebraElement trapezoid(const FrameFactor& f, const NodeSamples& v);
// Running integral ∫_0^{t_j}, one value per node.
std::vector<AlgebraElement> cumulative(const FrameFactor& f, const NodeSamples& v);
// ∫_{t1<t2} [a(t1), b(t2)].
AlgebraElement simplex_bracket(const FrameFactor& f, const NodeSamples& a, const NodeSamples& b);

// Ad_{h^{-1}} w(args..., γ̇) at every node. args[i][j] is the i-th argument at node j.
NodeSamples twisted_samples(const AdjointForm& w, const FrameFactor& f, const std::vector<std::vector<Vec>>& args);

}  // namespace holo
