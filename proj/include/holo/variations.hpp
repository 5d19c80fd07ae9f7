#pragma once

#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/pathspace.hpp"

namespace holo {

struct VariationOptions {
  Grids grids;
  std::vector<double> kappas{1e-3, 5e-4};
  // Repeat at doubled grids and extrapolate both sides in Δ².
  bool grid_richardson = false;
  Exec exec = Exec::parallel;
};

// Analytic first variation against a centered finite difference. Values are matrices; trace-level
// quantities are 1x1.
struct VariationReport {
  std::string kind;
  Matrix analytic;
  Matrix fd;                      // κ-Richardson extrapolation of the centered differences
  std::vector<double> kappas;
  std::vector<Matrix> fd_raw;     // one per κ
  double discrepancy = 0.0;       // |analytic - fd|
  double kappa_error = 0.0;       // |fd - fd_raw[0]|, the O(κ²) part
  double grid_error = std::numeric_limits<double>::quiet_NaN();  // O(Δ²) part, with grid Richardson
  int ns = 0;
  int nt = 0;
  nlohmann::json breakdown = nlohmann::json::object();
};

// Z in aut P over the chart: base field v and vertical generator ξ (a 0-form; invalid means 0).
struct AutVectorField {
  VectorField v;
  AdjointForm xi;
};

// L_Z A = d_A(i_v A + ξ) + i_v F_A and L_Z B = L_v B + [B, ξ].
AdjointForm lie_derivative_A(const AdjointForm& a, const AutVectorField& z);
AdjointForm lie_derivative_B(const AdjointForm& b, const AutVectorField& z);

// Hol^{-1} δHol(η) = -∫ Ad_{h^{-1}} η(γ̇). Closed or open paths (for open paths, at t = 1).
VariationReport dHol_connection(const AdjointForm& a, const Path& gamma, const AdjointForm& eta,
                                const VariationOptions& opt);
// H(t) = h(t)^{-1} δh(t) at every node of the t-grid.
std::vector<AlgebraElement> dHol_along(const AdjointForm& a, const Path& gamma, const AdjointForm& eta, int n);

// δ Tr Hol_A along L_Z A against -Tr(Hol ∫ Ad_{h^{-1}} F_A(v, γ̇)).
VariationReport dTrHol_aut(const AdjointForm& a, const Path& loop, const AutVectorField& z,
                           const VariationOptions& opt);

struct CylinderTerms {
  bool f_a = true;
  bool end_b = true;
  bool start_b = true;
  bool dab = true;
  bool chen = true;
};
// δ Tr Hol_{(A,B)} along (L_Z A, L_Z B) for a loop of paths.
VariationReport cylinder_variation(const AdjointForm& a, const AdjointForm& b, const Square& sq,
                                   const AutVectorField& z, const VariationOptions& opt,
                                   const CylinderTerms& terms = {});

enum class SymmetryMode { direction, first_action, second_action };
// direction: (η, β) as given. first_action: β = -d_A η - ½[η,η]. second_action: along act_second at
// g = I, i.e. (0, -d_A η); β is ignored in the last two modes.
VariationReport symmetry_variation(const AdjointForm& a, const AdjointForm& b, const Square& sq,
                                   const AdjointForm& eta, const AdjointForm& beta, SymmetryMode mode,
                                   const VariationOptions& opt);

enum class SurfaceLawMode { lambda, kappa };
struct SurfaceLawReport {
  SurfaceLawMode mode = SurfaceLawMode::lambda;
  double mixed = 0.0;                  // |∂²ℋ/∂λ∂r| after grid extrapolation
  double mixed_coarse = 0.0;           // at the base grid
  double mixed_fine = 0.0;             // at the doubled grid
  double observed_order = std::numeric_limits<double>::quiet_NaN();
  double step = 0.0;
  double r_step = 0.0;
  double flatness = 0.0;               // sampled |F_A|
  bool conditions_met = false;         // the family declares what the mode needs
  std::vector<std::string> conditions;
  Matrix mixed_matrix;
};
// Throws PreconditionError when A is not flat.
SurfaceLawReport surface_law_check(const AdjointForm& a, const AdjointForm& eta, const AdjointForm& b,
                                   const IsotopyFamily& family, SurfaceLawMode mode, const Grids& g,
                                   double step = 1e-3, double r_step = 1e-3, Exec exec = Exec::parallel,
                                   double flatness_tolerance = 1e-6);

}  // namespace holo
