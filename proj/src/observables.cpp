#include "holo/observables.hpp"

#include <array>
#include <cmath>
#include <exception>

#include "holo/errors.hpp"

namespace holo {

namespace {

// Top component of α ∧ β for 2-forms in d = 4, components in lexicographic order
// 12, 13, 14, 23, 24, 34; traced in the defining representation.
Complex wedge_trace(const AdjointForm::Components& x, const AdjointForm::Components& y) {
  auto tr = [&](int i, int j) { return (x[i].matrix() * y[j].matrix()).trace(); };
  return tr(0, 5) - tr(1, 4) + tr(2, 3) + tr(3, 2) - tr(4, 1) + tr(5, 0);
}

// Euclidean star on the same component list.
AdjointForm::Components star(const AdjointForm::Components& w) {
  return {w[5], -w[4], w[3], w[2], -w[1], w[0]};
}

}  // namespace

void ObservableSpec::validate(int dim) const {
  if (kind != "O_alphabeta" && kind != "O_tilde" && kind != "O_hol_ratio")
    throw ValidationError("unknown observable kind: " + kind);
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ValidationError("observable coefficients must be finite");
  if (kind == "O_alphabeta" && beta != 0.0 && dim != 4)
    throw UnsupportedError("the Hodge dual term needs a 4-dimensional chart");
}

Complex O_alphabeta(const AdjointForm& a, double alpha, double beta, const Square& sq, const SurfaceOptions& opt) {
  if (beta != 0.0 && a.dim() != 4) throw UnsupportedError("the Hodge dual term needs a 4-dimensional chart");
  const AdjointForm fa = curvature_F(a);
  AdjointForm b = alpha * fa;
  if (beta != 0.0) b = b + beta * hodge_star(fa);
  return H_map({a, AdjointForm(), b}, sq, opt).trace();
}

Complex O_tilde(const AdjointForm& a, const AdjointForm& b, const Square& sq, const SurfaceOptions& opt,
                double step) {
  if (!sq.loop_s) throw ValidationError("O_tilde needs a square that is closed in s");
  const Matrix plus = hol_AB({a, AdjointForm(), step * b}, sq, opt).H.matrix();
  const Matrix minus = hol_AB({a, AdjointForm(), -step * b}, sq, opt).H.matrix();
  const Matrix d = (plus - minus) / (2.0 * step);
  return exp_unchecked(Matrix(0.5 * (d - d.adjoint()))).trace();
}

Complex O_hol_ratio(const AdjointForm& a, const AdjointForm& b, const Square& sq, const SurfaceOptions& opt) {
  const HolAB h = hol_AB({a, AdjointForm(), b}, sq, opt);
  return h.value.trace() / h.hol_a.trace();
}

Complex evaluate_observable(const ObservableSpec& spec, const AdjointForm& a, const AdjointForm& b, const Square& sq,
                            const SurfaceOptions& opt) {
  spec.validate(a.dim());
  if (spec.kind == "O_alphabeta") return O_alphabeta(a, spec.alpha, spec.beta, sq, opt);
  if (spec.kind == "O_tilde") return O_tilde(a, b, sq, opt);
  return O_hol_ratio(a, b, sq, opt);
}

ActionValues action_values(const AdjointForm& a, const AdjointForm& b, int cells_per_axis, Exec exec) {
  return action_values(a, b, a.chart().box, cells_per_axis, exec);
}

ActionValues action_values(const AdjointForm& a, const AdjointForm& b,
                           const std::vector<std::pair<double, double>>& box, int n, Exec exec) {
  if (a.dim() != 4) throw UnsupportedError("action functionals need a 4-dimensional chart");
  if (b.valid() && (b.degree() != 2 || b.dim() != 4)) throw ValidationError("B must be a 2-form on the same chart");
  if (n < 1) throw ValidationError("cells per axis must be >= 1");
  if (box.size() != 4) throw ValidationError("integration box needs four axes");
  const AdjointForm fa = curvature_F(a);
  const bool has_b = b.valid() && !b.is_zero();
  std::array<double, 4> h, lo;
  double volume = 1.0;
  for (int i = 0; i < 4; ++i) {
    lo[i] = box[i].first;
    h[i] = (box[i].second - box[i].first) / n;
    volume *= h[i];
  }
  // Per slab: ∫Tr(F∧*F), ∫Tr(B∧*B), ∫Tr(F∧F), ∫Tr(B∧F), ∫Tr(B∧B).
  std::vector<std::array<Complex, 5>> slab(n);
  auto body = [&](int i0) {
    std::array<Complex, 5> acc{};
    Vec x(4);
    x[0] = lo[0] + (i0 + 0.5) * h[0];
    for (int i1 = 0; i1 < n; ++i1) {
      x[1] = lo[1] + (i1 + 0.5) * h[1];
      for (int i2 = 0; i2 < n; ++i2) {
        x[2] = lo[2] + (i2 + 0.5) * h[2];
        for (int i3 = 0; i3 < n; ++i3) {
          x[3] = lo[3] + (i3 + 0.5) * h[3];
          const auto f = fa.components(x);
          acc[0] += wedge_trace(f, star(f));
          acc[2] += wedge_trace(f, f);
          if (has_b) {
            const auto bc = b.components(x);
            acc[1] += wedge_trace(bc, star(bc));
            acc[3] += wedge_trace(bc, f);
            acc[4] += wedge_trace(bc, bc);
          }
        }
      }
    }
    slab[i0] = acc;
  };
  if (exec == Exec::serial) {
    for (int i = 0; i < n; ++i) body(i);
  } else {
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  std::array<Complex, 5> total{};
  for (const auto& s : slab)
    for (int k = 0; k < 5; ++k) total[k] += s[k];
  for (auto& t : total) t *= volume;

  const Complex i(0.0, 1.0);
  ActionValues v;
  v.cells_per_axis = n;
  v.s_ym = -total[0];
  v.s_ym_prime = -0.25 * total[1] + i * total[3];
  v.s_tym = total[2];
  v.s_bf_bb = total[3] + 0.5 * total[4];
  v.s_bf = total[3];
  return v;
}

std::vector<GaugeInvarianceRow> gauge_invariance_report(const ObservableSpec& spec, const AdjointForm& a,
                                                        const AdjointForm& b, const Square& sq,
                                                        const SurfaceOptions& opt, const GaugeMap& g,
                                                        const AdjointForm& eta) {
  std::vector<GaugeInvarianceRow> rows;
  const Complex before = evaluate_observable(spec, a, b, sq, opt);
  const FormPair gp = act_gauge(a, b, g);
  // The transformed values are conjugated by g(Γ(0,0)); traces do not see it.
  const Complex after = evaluate_observable(spec, gp.a, gp.b, sq, opt);
  rows.push_back({"act_gauge", before, after, std::abs(after - before)});
  if (eta.valid()) {
    const FormPair sp = act_second(a, b, GaugeMap::identity(a.chart(), a.rep_dim()), eta);
    const Complex after2 = evaluate_observable(spec, sp.a, sp.b, sq, opt);
    rows.push_back({"act_second", before, after2, std::abs(after2 - before)});
  }
  return rows;
}

}  // namespace holo
