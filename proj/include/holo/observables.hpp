#pragma once

#include <complex>
#include <string>
#include <vector>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/pathspace.hpp"

namespace holo {

struct ObservableSpec {
  std::string kind = "O_alphabeta";  // O_alphabeta | O_tilde | O_hol_ratio
  double alpha = -1.0;
  double beta = 0.0;
  void validate(int dim) const;
};

// Tr ℋ_{(A, αF_A + β*F_A)}(Γ, p0).
Complex O_alphabeta(const AdjointForm& a, double alpha, double beta, const Square& sq, const SurfaceOptions& opt);

// Tr exp(D), D = d/dτ|₀ ℋ_{(A,τB)}(Γ) by centered differences; Γ closed in s.
Complex O_tilde(const AdjointForm& a, const AdjointForm& b, const Square& sq, const SurfaceOptions& opt,
                double step = 1e-4);

// Tr Hol_{(A,B)} / Tr Hol_A(Γ(·,0)).
Complex O_hol_ratio(const AdjointForm& a, const AdjointForm& b, const Square& sq, const SurfaceOptions& opt);

Complex evaluate_observable(const ObservableSpec& spec, const AdjointForm& a, const AdjointForm& b, const Square& sq,
                            const SurfaceOptions& opt);

struct ActionValues {
  Complex s_ym;       // ‖F_A‖² = -∫Tr(F ∧ *F)
  Complex s_ym_prime; // ¼‖B‖² + i∫Tr(B ∧ F)
  Complex s_tym;      // ∫Tr(F ∧ F)
  Complex s_bf_bb;    // ∫Tr(B ∧ F) + ½∫Tr(B ∧ B)
  Complex s_bf;       // ∫Tr(B ∧ F)
  int cells_per_axis = 0;
};

// Tensor-product midpoint rule over the chart box (d = 4). Slabs along the first axis are summed
// in parallel into per-slab partials, which are reduced in order.
ActionValues action_values(const AdjointForm& a, const AdjointForm& b, int cells_per_axis,
                           Exec exec = Exec::parallel);
// Same integrals with the box given explicitly.
ActionValues action_values(const AdjointForm& a, const AdjointForm& b,
                           const std::vector<std::pair<double, double>>& box, int cells_per_axis,
                           Exec exec = Exec::parallel);

struct GaugeInvarianceRow {
  std::string transformation;
  Complex before;
  Complex after;
  double discrepancy = 0.0;
};
// Observable before and after act_gauge with g, and after act_second with (I, η) when η is valid.
std::vector<GaugeInvarianceRow> gauge_invariance_report(const ObservableSpec& spec, const AdjointForm& a,
                                                        const AdjointForm& b, const Square& sq,
                                                        const SurfaceOptions& opt, const GaugeMap& g,
                                                        const AdjointForm& eta = AdjointForm());

}  // namespace holo
