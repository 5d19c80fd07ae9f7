#include "holo/variations.hpp"

#include <cmath>
#include <exception>
#include <functional>

#include "holo/catalog.hpp"
#include "holo/chen.hpp"
#include "holo/errors.hpp"

namespace holo {

namespace {

Matrix scalar(Complex c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  return m;
}

// Centered differences at each κ, then Richardson in κ² across the first two.
void finite_difference(VariationReport& r, const std::function<Matrix(double)>& value,
                       const std::vector<double>& kappas) {
  if (kappas.empty()) throw ValidationError("at least one FD step is required");
  r.kappas = kappas;
  r.fd_raw.clear();
  for (double k : kappas) r.fd_raw.push_back(Matrix((value(k) - value(-k)) / (2.0 * k)));
  if (kappas.size() >= 2) {
    const double q = (kappas[0] / kappas[1]) * (kappas[0] / kappas[1]);
    r.fd = (q * r.fd_raw[1] - r.fd_raw[0]) / (q - 1.0);
  } else {
    r.fd = r.fd_raw[0];
  }
  r.kappa_error = (r.fd - r.fd_raw[0]).norm();
}

void finish(VariationReport& r) { r.discrepancy = (r.analytic - r.fd).norm(); }

// Runs `fn` at g and 2g and extrapolates both sides in Δ².
VariationReport grid_extrapolated(const VariationOptions& opt,
                                  const std::function<VariationReport(const VariationOptions&)>& fn) {
  if (!opt.grid_richardson) return fn(opt);
  VariationReport coarse = fn(opt);
  VariationOptions fine_opt = opt;
  fine_opt.grids = {2 * opt.grids.ns, 2 * opt.grids.nt};
  VariationReport r = fn(fine_opt);
  r.breakdown["coarse"] = {{"analytic", std::abs(coarse.analytic(0, 0))}, {"fd", std::abs(coarse.fd(0, 0))},
                           {"ns", coarse.ns}, {"nt", coarse.nt}};
  r.grid_error = (r.analytic - coarse.analytic).norm() / 3.0;
  r.analytic = (4.0 * r.analytic - coarse.analytic) / 3.0;
  r.fd = (4.0 * r.fd - coarse.fd) / 3.0;
  for (size_t i = 0; i < r.fd_raw.size(); ++i) r.fd_raw[i] = (4.0 * r.fd_raw[i] - coarse.fd_raw[i]) / 3.0;
  r.kappa_error = (r.fd - r.fd_raw[0]).norm();
  finish(r);
  return r;
}

template <class F>
std::vector<std::vector<AlgebraElement>> per_slice(const SurfaceTransport& st, Exec exec, int count, F&& body) {
  const int n = static_cast<int>(st.slices.size());
  std::vector<std::vector<AlgebraElement>> out(n, std::vector<AlgebraElement>(count));
  if (exec == Exec::serial) {
    for (int i = 0; i < n; ++i) body(st.slices[i], out[i]);
  } else {
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      try {
        body(st.slices[i], out[i]);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  return out;
}

SurfaceTransport lifted(const AdjointForm& a, const AdjointForm& b, const Square& sq, const VariationOptions& opt) {
  SurfaceOptions so;
  so.grids = opt.grids;
  so.exec = opt.exec;
  so.keep_slices = true;
  return surface_transport({a, AdjointForm(), b}, sq, so);
}

// -Tr(K(1) Σ Δs Ad_{K_mid^{-1}} v_i)
Complex slice_trace(const SurfaceTransport& st, const std::vector<std::vector<AlgebraElement>>& vals, int which,
                    double sign = -1.0) {
  AlgebraElement sum = AlgebraElement::zero(st.K[0].dim());
  for (size_t i = 0; i < vals.size(); ++i)
    sum += (st.s[i + 1] - st.s[i]) * adjoint_act_inv(st.K_mid[i], vals[i][which]);
  return sign * (st.hol().matrix() * sum.matrix()).trace();
}

Complex trace_hol_ab(const AdjointForm& a, const AdjointForm& b, const Square& sq, const VariationOptions& opt) {
  SurfaceOptions so;
  so.grids = opt.grids;
  so.exec = opt.exec;
  return hol_AB({a, AdjointForm(), b}, sq, so).value.trace();
}

double sampled_curvature(const AdjointForm& a, int samples = 32) {
  const AdjointForm fa = curvature_F(a);
  const ChartDomain& chart = a.chart();
  const int d = chart.dim;
  Rng rng(97);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec x(d), u(d), v(d);
    for (int i = 0; i < d; ++i) {
      const auto [lo, hi] = chart.box[i];
      const double pad = 0.05 * (hi - lo);
      x[i] = rng.uniform(lo + pad, hi - pad);
      u[i] = rng.uniform();
      v[i] = rng.uniform();
    }
    worst = std::max(worst, fa(x, {u, v}).norm());
  }
  return worst;
}

PathTangent along_slice(const Slice& sl, std::vector<Vec> x) {
  PathTangent p;
  p.frame = sl.frame;
  p.x = std::move(x);
  return p;
}

}  // namespace

AdjointForm lie_derivative_A(const AdjointForm& a, const AutVectorField& z) {
  AdjointForm phi = interior(z.v, a);
  if (z.xi.valid()) phi = phi + z.xi;
  return cov_ext_derivative(a, phi) + interior(z.v, curvature_F(a));
}

AdjointForm lie_derivative_B(const AdjointForm& b, const AutVectorField& z) {
  AdjointForm out = lie_derivative_base(z.v, b);
  if (z.xi.valid()) out = out + bracket_with_function(b, z.xi);
  return out;
}

std::vector<AlgebraElement> dHol_along(const AdjointForm& a, const Path& gamma, const AdjointForm& eta, int n) {
  const FrameFactor f = frame_factor(a, gamma, n);
  const auto c = cumulative(f, twisted_samples(eta, f, {}));
  std::vector<AlgebraElement> out;
  out.reserve(c.size());
  for (const auto& v : c) out.push_back(-v);
  return out;
}

VariationReport dHol_connection(const AdjointForm& a, const Path& gamma, const AdjointForm& eta,
                                const VariationOptions& opt) {
  return grid_extrapolated(opt, [&](const VariationOptions& o) {
    VariationReport r;
    r.kind = "connection";
    r.nt = o.grids.nt;
    const FrameFactor f = frame_factor(a, gamma, o.grids.nt);
    r.analytic = (-trapezoid(f, twisted_samples(eta, f, {}))).matrix();
    const Matrix inv = f.end().inverse().matrix();
    finite_difference(
        r, [&](double k) { return Matrix(inv * frame_factor(a + k * eta, gamma, o.grids.nt).end().matrix()); },
        o.kappas);
    r.breakdown["closed"] = gamma.loop;
    finish(r);
    return r;
  });
}

VariationReport dTrHol_aut(const AdjointForm& a, const Path& loop, const AutVectorField& z,
                           const VariationOptions& opt) {
  if (!loop.loop) throw ValidationError("dTrHol_aut needs a closed path");
  const AdjointForm lza = lie_derivative_A(a, z);
  const AdjointForm ivf = interior(z.v, curvature_F(a));
  return grid_extrapolated(opt, [&](const VariationOptions& o) {
    VariationReport r;
    r.kind = "aut";
    r.nt = o.grids.nt;
    const FrameFactor f = frame_factor(a, loop, o.grids.nt);
    const AlgebraElement integral = trapezoid(f, twisted_samples(ivf, f, {}));
    r.analytic = scalar(-(f.end().matrix() * integral.matrix()).trace());
    finite_difference(
        r, [&](double k) { return scalar(frame_factor(a + k * lza, loop, o.grids.nt).end().trace()); }, o.kappas);
    finish(r);
    return r;
  });
}

VariationReport cylinder_variation(const AdjointForm& a, const AdjointForm& b, const Square& sq,
                                   const AutVectorField& z, const VariationOptions& opt, const CylinderTerms& terms) {
  if (!sq.loop_s) throw ValidationError("cylinder_variation needs a square that is closed in s");
  const AdjointForm fa = curvature_F(a);
  const AdjointForm dab = cov_ext_derivative(a, b);
  const AdjointForm lza = lie_derivative_A(a, z);
  const AdjointForm lzb = lie_derivative_B(b, z);
  return grid_extrapolated(opt, [&](const VariationOptions& o) {
    VariationReport r;
    r.kind = "cylinder";
    r.ns = o.grids.ns;
    r.nt = o.grids.nt;
    const SurfaceTransport st = lifted(a, b, sq, o);
    // Slots: 0 f_a, 1 end_b, 2 start_b, 3 dab, 4 chen, 5 enabled total.
    const auto vals = per_slice(st, o.exec, 6, [&](const Slice& sl, std::vector<AlgebraElement>& out) {
      std::vector<Vec> v(sl.frame.steps() + 1);
      for (size_t j = 0; j < v.size(); ++j) v[j] = z.v(sl.frame.x[j]);
      const CurvatureTerms c = curvature_FAB(b, fa, dab, along_slice(sl, v), along_slice(sl, sl.ds));
      out[0] = c.f_a;
      out[1] = c.end_b;
      out[2] = c.start_b;
      out[3] = c.dab;
      out[4] = c.chen;
      out[5] = AlgebraElement::zero(a.rep_dim());
      if (terms.f_a) out[5] += c.f_a;
      if (terms.end_b) out[5] += c.end_b;
      if (terms.start_b) out[5] += c.start_b;
      if (terms.dab) out[5] += c.dab;
      if (terms.chen) out[5] += c.chen;
    });
    r.analytic = scalar(slice_trace(st, vals, 5));
    const char* names[] = {"f_a", "end_b", "start_b", "dab", "chen"};
    Complex displayed = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Complex c = slice_trace(st, vals, t);
      r.breakdown["terms"][names[t]] = c.real();
      if (t == 0 || t == 3 || t == 4) displayed += c;
    }
    r.breakdown["four_term_display"] = displayed.real();
    r.breakdown["terms_enabled"] = {terms.f_a, terms.end_b, terms.start_b, terms.dab, terms.chen};
    finite_difference(
        r, [&](double k) { return scalar(trace_hol_ab(a + k * lza, b + k * lzb, sq, o)); }, o.kappas);
    finish(r);
    return r;
  });
}

VariationReport symmetry_variation(const AdjointForm& a, const AdjointForm& b, const Square& sq,
                                   const AdjointForm& eta, const AdjointForm& beta, SymmetryMode mode,
                                   const VariationOptions& opt) {
  if (!sq.loop_s) throw ValidationError("symmetry_variation needs a square that is closed in s");
  const int rep = a.rep_dim();
  const AdjointForm fa = curvature_F(a);
  const AdjointForm dae = cov_ext_derivative(a, eta);
  const AdjointForm ee = wedge_bracket(eta, eta);
  AdjointForm d_a = eta, d_b = beta;  // direction of the straight-line FD
  if (mode == SymmetryMode::first_action) d_b = -1.0 * dae - 0.5 * ee;
  if (mode == SymmetryMode::second_action) {
    d_a = AdjointForm::zero(a.chart(), 1, rep);
    d_b = -1.0 * dae;
  }
  if (!d_b.valid()) throw ValidationError("direction mode needs beta");
  return grid_extrapolated(opt, [&](const VariationOptions& o) {
    VariationReport r;
    r.kind = "symmetry";
    r.ns = o.grids.ns;
    r.nt = o.grids.nt;
    const SurfaceTransport st = lifted(a, b, sq, o);
    // Slots: 0 general formula, 1 first-action closed form, 2 same with the opposite Chen sign,
    // 3 second-action closed form (sign as printed, i.e. direction (0, +d_A η)).
    const auto vals = per_slice(st, o.exec, 4, [&](const Slice& sl, std::vector<AlgebraElement>& out) {
      const FrameFactor& f = sl.frame;
      const int n = f.steps();
      const NodeSamples et = twisted_samples(d_a, f, {});
      const NodeSamples bt = twisted_samples(b, f, {sl.ds});
      out[0] = d_a(f.x[0], {sl.ds[0]}) + trapezoid(f, twisted_samples(d_b, f, {sl.ds})) + simplex_bracket(f, et, bt);
      if (mode == SymmetryMode::direction) return;
      const NodeSamples e = twisted_samples(eta, f, {});
      const NodeSamples ft = twisted_samples(fa, f, {sl.ds});
      const AlgebraElement end = adjoint_act_inv(f.h[n], eta(f.x[n], {sl.ds[n]}));
      const AlgebraElement start = eta(f.x[0], {sl.ds[0]});
      NodeSamples bf = bt;
      for (size_t j = 0; j < bf.size(); ++j) {
        bf[j].in += ft[j].in;
        bf[j].out += ft[j].out;
      }
      const AlgebraElement half_ee = -0.5 * trapezoid(f, twisted_samples(ee, f, {sl.ds}));
      const AlgebraElement chen_bf = simplex_bracket(f, bf, e);
      out[1] = end + half_ee + chen_bf;
      out[2] = end + half_ee - chen_bf;
      out[3] = simplex_bracket(f, ft, e) + bracket(trapezoid(f, bt), trapezoid(f, e)) + end - start;
    });
    const Complex general = slice_trace(st, vals, 0);
    r.breakdown["general_formula"] = {general.real(), general.imag()};
    if (mode == SymmetryMode::first_action) {
      const Complex closed = slice_trace(st, vals, 1);
      r.analytic = scalar(closed);
      r.breakdown["closed_form"] = closed.real();
      r.breakdown["closed_form_opposite_chen_sign"] = slice_trace(st, vals, 2).real();
    } else if (mode == SymmetryMode::second_action) {
      r.analytic = scalar(general);
      r.breakdown["closed_form_printed"] = slice_trace(st, vals, 3, 1.0).real();
    } else {
      r.analytic = scalar(general);
    }
    finite_difference(
        r, [&](double k) { return scalar(trace_hol_ab(a + k * d_a, b + k * d_b, sq, o)); }, o.kappas);
    if (mode == SymmetryMode::second_action) {
      const double printed = r.breakdown["closed_form_printed"].get<double>();
      const double fd = r.fd(0, 0).real();
      r.breakdown["printed_sign_residual"] = std::abs(printed - fd);
      r.breakdown["negated_sign_residual"] = std::abs(-printed - fd);
      r.breakdown["matching_sign"] = std::abs(-printed - fd) < std::abs(printed - fd) ? "negated" : "printed";
    }
    finish(r);
    return r;
  });
}

SurfaceLawReport surface_law_check(const AdjointForm& a, const AdjointForm& eta, const AdjointForm& b,
                                   const IsotopyFamily& family, SurfaceLawMode mode, const Grids& g, double step,
                                   double r_step, Exec exec, double flatness_tolerance) {
  SurfaceLawReport rep;
  rep.mode = mode;
  rep.step = step;
  rep.r_step = r_step;
  rep.flatness = sampled_curvature(a);
  if (rep.flatness > flatness_tolerance)
    throw PreconditionError("surface law needs a flat connection: sampled |F_A| = " + std::to_string(rep.flatness));
  rep.conditions.assign(family.conditions.begin(), family.conditions.end());
  rep.conditions_met = family.conditions.count("G1") && family.conditions.count("G2") &&
                       (mode == SurfaceLawMode::lambda || family.conditions.count("G3"));
  if (mode == SurfaceLawMode::kappa && !eta.valid()) throw ValidationError("kappa mode needs eta");
  const AdjointForm neg_fa = -1.0 * curvature_F(a);

  auto value = [&](double p, double r, const Grids& grid) -> Matrix {
    SurfaceOptions so;
    so.grids = grid;
    so.exec = exec;
    const Square sq = family.at(r);
    if (mode == SurfaceLawMode::lambda) return H_map({a, AdjointForm(), neg_fa + p * b}, sq, so).matrix();
    const AdjointForm bar = a + p * eta;
    return H_map({a, p * eta, -1.0 * curvature_F(bar) + p * b}, sq, so).matrix();
  };
  auto mixed = [&](const Grids& grid) -> Matrix {
    return (value(step, r_step, grid) - value(step, -r_step, grid) - value(-step, r_step, grid) +
            value(-step, -r_step, grid)) /
           (4.0 * step * r_step);
  };
  const Matrix coarse = mixed(g);
  const Matrix fine = mixed({2 * g.ns, 2 * g.nt});
  rep.mixed_matrix = (4.0 * fine - coarse) / 3.0;
  rep.mixed = rep.mixed_matrix.norm();
  rep.mixed_coarse = coarse.norm();
  rep.mixed_fine = fine.norm();
  if (rep.mixed_fine > 0.0) rep.observed_order = std::log2(rep.mixed_coarse / rep.mixed_fine);
  return rep;
}

}  // namespace holo
