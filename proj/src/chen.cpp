#include "holo/chen.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <map>
#include <numbers>

#include "holo/catalog.hpp"
#include "holo/errors.hpp"

namespace holo {

namespace {

std::vector<std::vector<Vec>> node_args(const std::vector<const PathTangent*>& args, const std::vector<int>& pick) {
  std::vector<std::vector<Vec>> out;
  for (int i : pick) out.push_back(args[i]->x);
  return out;
}

// Sign of the permutation that sorts `v` (entries distinct).
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
  return sign;
}

// All ways to split {0..n-1} into an increasing k-subset and its increasing complement,
// with the sign of the shuffle permutation.
struct Shuffle {
  std::vector<int> first;
  std::vector<int> second;
  int sign;
};
std::vector<Shuffle> shuffles(int n, int k) {
  std::vector<Shuffle> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    Shuffle s{{}, {}, 1};
    for (int i = 0; i < n; ++i) (mask[i] ? s.first : s.second).push_back(i);
    std::vector<int> perm = s.first;
    perm.insert(perm.end(), s.second.begin(), s.second.end());
    s.sign = sort_sign(perm);
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Symbolic graded forms for the reordering check. A monomial records which tangent
// arguments fed the w1 factor (S) and the w2 factor (T); "none" marks an absent factor.
// The product of two symbolic forms is the shuffle product, with monomials merged in order,
// which covers both ∧ with a scalar form and the bracket [w1-part, w2-part].
using Key = std::pair<std::vector<int>, std::vector<int>>;
struct Poly {
  std::map<Key, int> terms;  // key -> integer coefficient
};
const std::vector<int> kNone{-1};

struct Symbolic {
  int degree;
  std::function<Poly(const std::vector<int>&)> eval;
};

Symbolic leaf(int degree, bool is_first, int t_marker_min) {
  return {degree, [degree, is_first, t_marker_min](const std::vector<int>& vs) {
            Poly p;
            if (static_cast<int>(vs.size()) != degree) return p;
            for (int v : vs)
              if (v >= t_marker_min) return p;
            std::vector<int> sorted = vs;
            const int sign = sort_sign(sorted);
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return p;
            p.terms[is_first ? Key{sorted, kNone} : Key{kNone, sorted}] = sign;
            return p;
          }};
}

Symbolic dt(int marker) {
  return {1, [marker](const std::vector<int>& vs) {
            Poly p;
            if (vs.size() == 1 && vs[0] == marker) p.terms[Key{kNone, kNone}] = 1;
            return p;
          }};
}

Symbolic product(const Symbolic& a, const Symbolic& b) {
  return {a.degree + b.degree, [a, b](const std::vector<int>& vs) {
            Poly p;
            const int n = static_cast<int>(vs.size());
            for (const auto& sh : shuffles(n, a.degree)) {
              std::vector<int> va, vb;
              for (int i : sh.first) va.push_back(vs[i]);
              for (int i : sh.second) vb.push_back(vs[i]);
              const Poly pa = a.eval(va);
              if (pa.terms.empty()) continue;
              const Poly pb = b.eval(vb);
              for (const auto& [ka, ca] : pa.terms)
                for (const auto& [kb, cb] : pb.terms) {
                  Key k{ka.first != kNone ? ka.first : kb.first, ka.second != kNone ? ka.second : kb.second};
                  p.terms[k] += sh.sign * ca * cb;
                }
            }
            return p;
          }};
}

AlgebraElement integrate(const Poly& p, const AdjointForm& w1, const AdjointForm& w2, const FrameFactor& f,
                         const std::vector<const PathTangent*>& args) {
  AlgebraElement sum = AlgebraElement::zero(f.h[0].dim());
  for (const auto& [key, c] : p.terms) {
    if (c == 0) continue;
    const std::vector<int> s = key.first == kNone ? std::vector<int>{} : key.first;
    const std::vector<int> t = key.second == kNone ? std::vector<int>{} : key.second;
    sum += static_cast<double>(c) *
           simplex_bracket(f, twisted_samples(w1, f, node_args(args, s)), twisted_samples(w2, f, node_args(args, t)));
  }
  return sum;
}

}  // namespace

PathTangent lift_tangent(const AdjointForm& a, const Path& gamma, const VectorAlong& rho, const AlgebraElement& xi0,
                         int n) {
  return lift_tangent(a, gamma, frame_factor(a, gamma, n), rho, xi0);
}

PathTangent lift_tangent(const AdjointForm& a, const Path& gamma, const FrameFactor& frame, const VectorAlong& rho,
                         const AlgebraElement& xi0) {
  PathTangent q;
  q.base = gamma;
  q.field = rho;
  q.frame = frame;
  const int n = frame.steps();
  q.x.resize(n + 1);
  for (int j = 0; j <= n; ++j) q.x[j] = rho(frame.t[j]);
  const AlgebraElement start = xi0.empty() ? AlgebraElement::zero(a.rep_dim()) : xi0;
  const AdjointForm fa = curvature_F(a);
  const auto c = cumulative(frame, twisted_samples(fa, frame, {q.x}));
  q.vertical.resize(n + 1);
  for (int j = 0; j <= n; ++j) q.vertical[j] = start - c[j];
  return q;
}

AlgebraElement chen_line(const AdjointForm& w, const FrameFactor& f, const std::vector<const PathTangent*>& args) {
  if (w.degree() < 1) throw ValidationError("chen_line needs a form of degree >= 1");
  std::vector<int> all(args.size());
  for (size_t i = 0; i < args.size(); ++i) all[i] = static_cast<int>(i);
  return trapezoid(f, twisted_samples(w, f, node_args(args, all)));
}

AlgebraElement chen_bracket(const AdjointForm& w1, const AdjointForm& w2, const FrameFactor& f,
                            const std::vector<const PathTangent*>& args) {
  const int k1 = w1.degree() - 1, k2 = w2.degree() - 1;
  if (k1 < 0 || k2 < 0) throw ValidationError("chen_bracket needs forms of degree >= 1");
  if (static_cast<int>(args.size()) != k1 + k2) throw ValidationError("chen_bracket: wrong number of tangents");
  AlgebraElement sum = AlgebraElement::zero(f.h[0].dim());
  if (w1.is_zero() || w2.is_zero()) return sum;
  for (const auto& sh : shuffles(k1 + k2, k1))
    sum += static_cast<double>(sh.sign) * simplex_bracket(f, twisted_samples(w1, f, node_args(args, sh.first)),
                                                          twisted_samples(w2, f, node_args(args, sh.second)));
  return sum;
}

ReorderingCheck chen_reordering(const AdjointForm& w1, const AdjointForm& w2, const FrameFactor& f,
                                const std::vector<const PathTangent*>& args) {
  const int k1 = w1.degree() - 1, k2 = w2.degree() - 1;
  const int m = k1 + k2;
  if (static_cast<int>(args.size()) != m) throw ValidationError("chen_reordering: wrong number of tangents");
  const int t1 = m, t2 = m + 1;
  const Symbolic a = leaf(k1, true, t1), b = leaf(k2, false, t1);
  const Symbolic lhs = product(product(product(a, dt(t1)), b), dt(t2));
  const Symbolic rhs = product(product(product(a, b), dt(t1)), dt(t2));
  std::vector<int> vs(m + 2);
  for (int i = 0; i < m + 2; ++i) vs[i] = i;
  ReorderingCheck r;
  r.lhs = integrate(lhs.eval(vs), w1, w2, f, args);
  r.rhs = integrate(rhs.eval(vs), w1, w2, f, args);
  r.sign = k2 % 2 == 0 ? 1 : -1;
  r.chen = chen_bracket(w1, w2, f, args);
  r.residual = (r.lhs - static_cast<double>(r.sign) * r.rhs).norm();
  return r;
}

CurvatureTerms curvature_FAB(const AdjointForm& b, const AdjointForm& fa, const AdjointForm& dab, const PathTangent& x,
                             const PathTangent& y) {
  const FrameFactor& f = x.frame;
  if (y.frame.steps() != f.steps()) throw ValidationError("tangents must share the frame grid");
  const int n = f.steps();
  CurvatureTerms c;
  const Vec& x0 = f.x[0];
  c.f_a = fa(x0, {x.x[0], y.x[0]});
  c.start_b = b(x0, {x.x[0], y.x[0]});
  c.end_b = -adjoint_act_inv(f.h[n], b(f.x[n], {x.x[n], y.x[n]}));
  const std::vector<const PathTangent*> xy{&x, &y};
  c.dab = chen_line(dab, f, xy);
  c.chen = chen_bracket(b + fa, b, f, xy);
  c.total = c.f_a + c.end_b + c.start_b + c.dab + c.chen;
  return c;
}

CurvatureTerms curvature_FAB(const AdjointForm& a, const AdjointForm& b, const PathTangent& x, const PathTangent& y,
                             bool check_admissible, double tolerance) {
  CurvatureTerms c = curvature_FAB(b, curvature_F(a), cov_ext_derivative(a, b), x, y);
  if (check_admissible) {
    c.admissibility = std::max(horizontality_residual(a, x), horizontality_residual(a, y));
    if (c.admissibility > tolerance)
      c.warnings.push_back("tangent is not admissible: horizontality residual " + std::to_string(c.admissibility));
  }
  return c;
}

AlgebraElement small_square_curvature(const AdjointForm& a, const AdjointForm& b, const Path& gamma,
                                      const VectorAlong& x, const VectorAlong& y, double eps, const Grids& g) {
  // (u, v) runs counterclockwise around [0, ε]² as s goes from 0 to 1.
  auto uv = [eps](double s) -> std::array<double, 4> {
    const double q = 4.0 * s;
    if (q < 1.0) return {eps * q, 0.0, eps, 0.0};
    if (q < 2.0) return {eps, eps * (q - 1.0), 0.0, eps};
    if (q < 3.0) return {eps * (3.0 - q), eps, -eps, 0.0};
    return {0.0, eps * std::max(0.0, 4.0 - q), 0.0, -eps};
  };
  Square sq;
  sq.dim = gamma.dim;
  sq.loop_s = true;
  sq.s_breaks = {0.25, 0.5, 0.75};
  sq.t_breaks = gamma.breaks;
  sq.pos = [=](double s, double t) {
    const auto c = uv(s);
    return Vec(gamma.pos(t) + c[0] * x(t) + c[1] * y(t));
  };
  sq.ds = [=](double s, double t) {
    const auto c = uv(s);
    return Vec(4.0 * (c[2] * x(t) + c[3] * y(t)));
  };
  sq.dt = [=](double s, double t) {
    const auto c = uv(s);
    return Vec(gamma.vel(t) + c[0] * x.derivative(t) + c[1] * y.derivative(t));
  };
  SurfaceOptions opt;
  opt.grids = g;
  const SurfaceTransport st = surface_transport({a, AdjointForm(), b}, sq, opt);
  return (-1.0 / (eps * eps)) * log_map(st.hol());
}

VectorAlong random_along(unsigned long long seed, int dim, double scale) {
  Rng rng(seed);
  Vec c0(dim), c1(dim), c2(dim);
  for (int i = 0; i < dim; ++i) {
    c0[i] = scale * rng.uniform();
    c1[i] = scale * rng.uniform();
    c2[i] = scale * rng.uniform();
  }
  const double pi = std::numbers::pi;
  return {[=](double t) { return Vec(c0 + t * c1 + std::sin(pi * t) * c2); },
          [=](double t) { return Vec(c1 + pi * std::cos(pi * t) * c2); }};
}

FlatnessResiduals flatness_check(const AdjointForm& a, const AdjointForm& b, const GroupSpec& spec, int samples,
                                 unsigned long long seed) {
  const AdjointForm fa = curvature_F(a);
  const AdjointForm dab = cov_ext_derivative(a, b);
  const ChartDomain& chart = a.chart();
  const int d = chart.dim;
  Rng rng(seed);
  FlatnessResiduals r;
  for (int k = 0; k < samples; ++k) {
    Vec x(d);
    for (int i = 0; i < d; ++i) {
      const auto [lo, hi] = chart.box[i];
      const double pad = 0.05 * (hi - lo);
      x[i] = rng.uniform(lo + pad, hi - pad);
    }
    Vec u(d), v(d), w(d);
    for (int i = 0; i < d; ++i) {
      u[i] = rng.uniform();
      v[i] = rng.uniform();
      w[i] = rng.uniform();
    }
    r.f_a = std::max(r.f_a, fa(x, {u, v}).norm());
    if (!dab.is_zero()) r.dab = std::max(r.dab, dab(x, {u, v, w}).norm());
    for (const auto& c : a.components(x)) r.cartan = std::max(r.cartan, cartan_residual(c, spec));
    for (const auto& c : b.components(x)) r.cartan = std::max(r.cartan, cartan_residual(c, spec));
  }
  return r;
}

}  // namespace holo
