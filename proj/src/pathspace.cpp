#include "holo/pathspace.hpp"

#include <cmath>
#include <exception>

#include "holo/errors.hpp"

namespace holo {

namespace {

bool same(const Vec& a, const Vec& b) { return (a - b).squaredNorm() == 0.0; }

AlgebraElement anti_hermitian_part(const Matrix& m) { return AlgebraElement(Matrix(0.5 * (m - m.adjoint()))); }

GroupElement conj(const GroupElement& base, const GroupElement& g) {
  if (base.dim() == 0) return g;
  return base.inverse() * g * base;
}

// Runs body(i) for i in [0, n), optionally across OpenMP threads. Each index writes only its
// own output slot, so the result does not depend on the schedule.
template <class F>
void for_each_index(int n, Exec exec, F&& body) {
  if (exec == Exec::serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
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

}  // namespace

SpecialConnection SpecialConnection::trivial(const AdjointForm& a) {
  return {a, AdjointForm(), AdjointForm::zero(a.chart(), 2, a.rep_dim())};
}

SpecialConnection SpecialConnection::tautological(const AdjointForm& a) {
  return {a, AdjointForm(), -1.0 * curvature_F(a)};
}

void SpecialConnection::validate() const {
  if (!a.valid() || a.degree() != 1) throw ValidationError("special connection needs A of degree 1");
  if (!b.valid() || b.degree() != 2) throw ValidationError("special connection needs B of degree 2");
  if (eta.valid() && eta.degree() != 1) throw ValidationError("eta must be a 1-form");
  if (b.dim() != a.dim() || b.rep_dim() != a.rep_dim()) throw ValidationError("A and B live on different charts");
}

AlgebraElement trapezoid(const FrameFactor& f, const NodeSamples& v) {
  AlgebraElement sum = AlgebraElement::zero(f.h[0].dim());
  for (int j = 0; j <= f.steps(); ++j) {
    if (j > 0) sum += f.w_in(j) * v[j].in;
    if (j < f.steps()) sum += f.w_out(j) * v[j].out;
  }
  return sum;
}

std::vector<AlgebraElement> cumulative(const FrameFactor& f, const NodeSamples& v) {
  std::vector<AlgebraElement> c(f.steps() + 1);
  c[0] = AlgebraElement::zero(f.h[0].dim());
  for (int j = 0; j < f.steps(); ++j) c[j + 1] = c[j] + (0.5 * f.step(j)) * (v[j].out + v[j + 1].in);
  return c;
}

AlgebraElement simplex_bracket(const FrameFactor& f, const NodeSamples& a, const NodeSamples& b) {
  const auto c = cumulative(f, a);
  AlgebraElement sum = AlgebraElement::zero(f.h[0].dim());
  for (int j = 0; j <= f.steps(); ++j) {
    if (j > 0) sum += f.w_in(j) * bracket(c[j], b[j].in);
    if (j < f.steps()) sum += f.w_out(j) * bracket(c[j], b[j].out);
  }
  return sum;
}

NodeSamples twisted_samples(const AdjointForm& w, const FrameFactor& f, const std::vector<std::vector<Vec>>& args) {
  if (w.degree() != static_cast<int>(args.size()) + 1)
    throw ValidationError("form degree must be one more than the number of tangent arguments");
  const int n = f.steps();
  NodeSamples out(n + 1);
  const int rep = f.h[0].dim();
  if (w.is_zero()) {
    for (auto& s : out) s.in = s.out = AlgebraElement::zero(rep);
    return out;
  }
  std::vector<Vec> vs(args.size() + 1);
  for (int j = 0; j <= n; ++j) {
    const auto comps = w.components(f.x[j]);
    for (size_t i = 0; i < args.size(); ++i) vs[i] = args[i][j];
    vs.back() = f.vel_in[j];
    out[j].in = adjoint_act_inv(f.h[j], w.evaluate(comps, vs));
    if (same(f.vel_in[j], f.vel_out[j])) {
      out[j].out = out[j].in;
    } else {
      vs.back() = f.vel_out[j];
      out[j].out = adjoint_act_inv(f.h[j], w.evaluate(comps, vs));
    }
  }
  return out;
}

std::vector<int> s_steps(const Square& sq, int ns) { return distribute_steps(sq.slice_s(0.0), ns); }
std::vector<int> t_steps(const Square& sq, int nt) { return distribute_steps(sq.slice_t(0.0), nt); }

Slice compute_slice(const SpecialConnection& conn, const Square& sq, double s, const std::vector<int>& tsteps) {
  Slice sl;
  sl.s = s;
  sl.frame = frame_factor(conn.a, sq.slice_t(s), tsteps);
  const int n = sl.frame.steps();
  sl.ds.resize(n + 1);
  for (int j = 0; j <= n; ++j) sl.ds[j] = sq.ds(s, sl.frame.t[j]);
  const int rep = conn.a.rep_dim();
  sl.inner = conn.b.is_zero() ? AlgebraElement::zero(rep) : trapezoid(sl.frame, twisted_samples(conn.b, sl.frame, {sl.ds}));
  const Vec& x0 = sl.frame.x[0];
  sl.a0 = conn.a(x0, {sl.ds[0]});
  sl.eta0 = conn.has_eta() ? conn.eta(x0, {sl.ds[0]}) : AlgebraElement::zero(rep);
  sl.source = sl.a0 + sl.eta0 + sl.inner;
  return sl;
}

SurfaceTransport surface_transport(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt) {
  conn.validate();
  if (opt.grids.ns < 1 || opt.grids.nt < 1) throw ValidationError("grid sizes must be >= 1");
  const auto ssteps = s_steps(sq, opt.grids.ns);
  const auto tsteps = t_steps(sq, opt.grids.nt);
  const FrameFactor f0 = frame_factor(conn.a, sq.slice_s(0.0), ssteps);
  const int n = f0.steps();
  const int rep = conn.a.rep_dim();

  std::vector<Slice> slices(n);
  for_each_index(n, opt.exec, [&](int i) {
    slices[i] = compute_slice(conn, sq, 0.5 * (f0.t[i] + f0.t[i + 1]), tsteps);
  });

  SurfaceTransport r;
  r.s = f0.t;
  r.ns = n;
  r.nt = slices.empty() ? 0 : slices[0].frame.steps();
  r.k.reserve(n + 1);
  r.K.reserve(n + 1);
  const GroupElement id = GroupElement::identity(rep);
  if (opt.keep_slices) r.K_mid.reserve(n);

  if (opt.route == SurfaceRoute::bholonomy) {
    r.h0 = f0.h;
    GroupElement K = id;
    r.K.push_back(K);
    r.k.push_back(id);
    for (int i = 0; i < n; ++i) {
      const double ds = f0.step(i);
      if (opt.keep_slices) r.K_mid.push_back(exp_unchecked((-0.5 * ds) * slices[i].source.matrix()) * K);
      K = exp_unchecked((-ds) * slices[i].source.matrix()) * K;
      if ((i + 1) % kReprojectEvery == 0) K = reunitarize(K);
      r.K.push_back(K);
      r.k.push_back(r.h0[i + 1].inverse() * K);
    }
  } else {
    std::vector<int> doubled;
    for (int m : ssteps) doubled.push_back(2 * m);
    const FrameFactor half = frame_factor(conn.a, sq.slice_s(0.0), doubled);
    GroupElement k = id;
    r.k.push_back(k);
    r.h0.push_back(id);
    r.K.push_back(id);
    for (int i = 0; i < n; ++i) {
      const double ds = f0.step(i);
      const GroupElement& hm = half.h[2 * i + 1];
      const AlgebraElement m = adjoint_act_inv(hm, slices[i].eta0 + slices[i].inner);
      if (opt.keep_slices) r.K_mid.push_back(hm * exp_unchecked((-0.5 * ds) * m.matrix()) * k);
      k = exp_unchecked((-ds) * m.matrix()) * k;
      if ((i + 1) % kReprojectEvery == 0) k = reunitarize(k);
      r.k.push_back(k);
      r.h0.push_back(half.h[2 * i + 2]);
      r.K.push_back(half.h[2 * i + 2] * k);
    }
  }

  if (opt.base.dim() != 0) {
    for (auto* v : {&r.k, &r.K, &r.h0, &r.K_mid})
      for (auto& g : *v) g = conj(opt.base, g);
  }
  if (opt.keep_slices) r.slices = std::move(slices);
  return r;
}

GroupElement H_map(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt) {
  SurfaceOptions o = opt;
  o.keep_slices = false;
  return surface_transport(conn, sq, o).H();
}

HolAB hol_AB(const SpecialConnection& conn, const Square& sq, const SurfaceOptions& opt) {
  if (!sq.loop_s) throw ValidationError("hol_AB needs a square that is closed in s");
  SurfaceOptions o = opt;
  o.keep_slices = false;
  const SurfaceTransport st = surface_transport(conn, sq, o);
  HolAB r;
  r.value = st.hol();
  r.hol_a = st.h0.back();
  r.H = st.H();
  r.factorization_residual = distance(r.value, r.hol_a * r.H);
  return r;
}

GroupElement boundary_holonomy(const AdjointForm& a, const Square& sq, const Grids& g) {
  const Path loop = boundary_loop(sq);
  const auto seg = loop.segments();
  std::vector<int> steps;
  for (size_t k = 0; k + 1 < seg.size(); ++k) {
    const double mid = 0.5 * (seg[k] + seg[k + 1]);
    const int quarter = std::min(3, static_cast<int>(mid * 4.0));
    const int nq = quarter % 2 == 0 ? g.nt : g.ns;
    steps.push_back(std::max(1, static_cast<int>(std::lround(4.0 * nq * (seg[k + 1] - seg[k])))));
  }
  return frame_factor(a, loop, steps).end();
}

StokesCheck tautological_check(const AdjointForm& a, const Square& sq, const SurfaceOptions& opt) {
  StokesCheck r;
  r.surface = H_map(SpecialConnection::tautological(a), sq, opt);
  r.boundary = conj(opt.base, boundary_holonomy(a, sq, opt.grids));
  r.residual = distance(r.surface, r.boundary);
  return r;
}

ConnectionValue eval_special_connection(const SpecialConnection& conn, const PathTangent& x) {
  conn.validate();
  const FrameFactor& f = x.frame;
  ConnectionValue v;
  v.difference = conn.b.is_zero() ? AlgebraElement::zero(conn.a.rep_dim()) : trapezoid(f, twisted_samples(conn.b, f, {x.x}));
  if (conn.has_eta()) v.difference += conn.eta(f.x[0], {x.x[0]});
  v.full = x.vertical.empty() ? v.difference : x.vertical[0] + v.difference;
  return v;
}

IteratedEval iterated_connection_eval(const AdjointForm& a, const AdjointForm& b, const AdjointForm& c,
                                      const Square& sq, const std::function<Vec(double, double)>& x,
                                      const AlgebraElement& xi00, const Grids& g, SquareLift lift,
                                      double tolerance) {
  if (c.degree() != 3) throw ValidationError("C must be a 3-form");
  const SpecialConnection conn{a, AdjointForm(), b};
  SurfaceOptions opt;
  opt.grids = g;
  opt.keep_slices = true;
  const SurfaceTransport st = surface_transport(conn, sq, opt);
  const int n = st.ns;

  std::vector<GroupElement> K = st.K, K_mid = st.K_mid;
  if (lift == SquareLift::a_only) {
    K = st.h0;
    for (int i = 0; i < n; ++i)
      K_mid[i] = exp_unchecked((-0.5 * (st.s[i + 1] - st.s[i])) * st.slices[i].a0.matrix()) * st.h0[i];
  }

  IteratedEval r;
  const int rep = a.rep_dim();
  r.a_term = xi00.empty() ? AlgebraElement::zero(rep) : xi00;

  {
    const Slice s0 = compute_slice(conn, sq, 0.0, t_steps(sq, g.nt));
    std::vector<Vec> xs(s0.frame.steps() + 1);
    for (size_t j = 0; j < xs.size(); ++j) xs[j] = x(0.0, s0.frame.t[j]);
    r.b_term = trapezoid(s0.frame, twisted_samples(b, s0.frame, {xs}));
  }

  r.c_term = AlgebraElement::zero(rep);
  for (int i = 0; i < n; ++i) {
    const Slice& sl = st.slices[i];
    const double ds = st.s[i + 1] - st.s[i];
    std::vector<Vec> xs(sl.frame.steps() + 1);
    for (size_t j = 0; j < xs.size(); ++j) xs[j] = x(sl.s, sl.frame.t[j]);
    if (!c.is_zero()) {
      const AlgebraElement inner = trapezoid(sl.frame, twisted_samples(c, sl.frame, {xs, sl.ds}));
      r.c_term += ds * adjoint_act_inv(K_mid[i], inner);
    }
    const Matrix dK = (K[i + 1].matrix() - K[i].matrix()) / ds;
    const AlgebraElement res = adjoint_act_inv(K_mid[i], sl.a0 + sl.inner) +
                               anti_hermitian_part(K_mid[i].matrix().adjoint() * dK);
    r.horizontality = std::max(r.horizontality, res.norm());
  }
  r.value = r.a_term + r.b_term + r.c_term;
  if (r.horizontality > tolerance)
    r.warnings.push_back("lifted square is not (A,B)-horizontal: residual " + std::to_string(r.horizontality));
  return r;
}

}  // namespace holo
