#pragma once

#include <string>
#include <vector>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/pathspace.hpp"
#include "holo/transport.hpp"

namespace holo {

// Tangent to the bundle of A-horizontal paths over ρ along γ with A(𝔮(0)) = ξ0.
PathTangent lift_tangent(const AdjointForm& a, const Path& gamma, const VectorAlong& rho, const AlgebraElement& xi0,
                         int n);
// Same, reusing an existing frame factor for γ.
PathTangent lift_tangent(const AdjointForm& a, const Path& gamma, const FrameFactor& frame, const VectorAlong& rho,
                         const AlgebraElement& xi0);

// ∫ Ad_{h^{-1}} w(X_1, ..., X_{p-1}, γ̇) dt.
AlgebraElement chen_line(const AdjointForm& w, const FrameFactor& f, const std::vector<const PathTangent*>& args);

// ∫_{t1<t2} [w1(.., γ̇)(t1), w2(.., γ̇)(t2)], shuffle-antisymmetrized over the tangent arguments:
// the first deg(w1)-1 go to w1, the rest to w2, with the shuffle sign.
AlgebraElement chen_bracket(const AdjointForm& w1, const AdjointForm& w2, const FrameFactor& f,
                            const std::vector<const PathTangent*>& args);

// Both sides of the reordering identity for the graded bracket under the simplex integral:
// lhs evaluates [(w1 ∧ dt1), w2] ∧ dt2, rhs evaluates [w1, w2] ∧ dt1 ∧ dt2, each by its own
// graded wedge expansion on (X..., ∂_{t1}, ∂_{t2}); the identity is lhs = (-1)^{deg w2 - 1} rhs.
struct ReorderingCheck {
  AlgebraElement lhs;
  AlgebraElement rhs;
  int sign = 1;
  AlgebraElement chen;  // chen_bracket, equal to rhs
  double residual = 0.0;  // |lhs - sign·rhs|
};
ReorderingCheck chen_reordering(const AdjointForm& w1, const AdjointForm& w2, const FrameFactor& f,
                                const std::vector<const PathTangent*>& args);

struct CurvatureTerms {
  AlgebraElement f_a;        // F_A(X(0), Y(0))
  AlgebraElement end_b;      // -Ad_{h(1)^{-1}} B(X(1), Y(1))
  AlgebraElement start_b;    // B(X(0), Y(0))
  AlgebraElement dab;        // ∫ Ad d_A B(X, Y, γ̇)
  AlgebraElement chen;       // Chen{B + F_A; B}(X, Y)
  AlgebraElement total;
  double admissibility = 0.0;  // max horizontality residual of X and Y, if checked
  std::vector<std::string> warnings;
};
CurvatureTerms curvature_FAB(const AdjointForm& a, const AdjointForm& b, const PathTangent& x, const PathTangent& y,
                             bool check_admissible = false, double tolerance = 1e-6);
// Same with F_A and d_A B supplied, for repeated use.
CurvatureTerms curvature_FAB(const AdjointForm& b, const AdjointForm& fa, const AdjointForm& dab, const PathTangent& x,
                             const PathTangent& y);

// -log Hol_{(A,B)} / ε² around the ε-square in path space spanned by X and Y at γ.
AlgebraElement small_square_curvature(const AdjointForm& a, const AdjointForm& b, const Path& gamma,
                                      const VectorAlong& x, const VectorAlong& y, double eps, const Grids& g);

// Smooth vector field along a path: c0 + c1 t + c2 sin(π t) with seeded coefficients.
VectorAlong random_along(unsigned long long seed, int dim, double scale = 1.0);

struct FlatnessResiduals {
  double f_a = 0.0;
  double dab = 0.0;
  double cartan = 0.0;
};
FlatnessResiduals flatness_check(const AdjointForm& a, const AdjointForm& b, const GroupSpec& spec, int samples = 32,
                                 unsigned long long seed = 1);

}  // namespace holo
