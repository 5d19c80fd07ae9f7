#include "holo/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "holo/errors.hpp"

namespace holo {

ChartDomain ChartDomain::cube(int d, double half_width, double h_fd) {
  ChartDomain c;
  c.dim = d;
  c.box.assign(d, {-half_width, half_width});
  c.h_fd = h_fd;
  c.validate();
  return c;
}

void ChartDomain::validate() const {
  if (dim < 2 || dim > 4) throw ValidationError("chart dimension must be 2, 3 or 4");
  if (static_cast<int>(box.size()) != dim) throw ValidationError("chart box needs one interval per axis");
  for (auto [lo, hi] : box)
    if (!(lo < hi)) throw ValidationError("chart box interval is empty");
  if (!(h_fd > 0.0)) throw ValidationError("h_fd must be positive");
}

bool ChartDomain::contains(const Vec& x, double slack) const {
  if (x.size() != dim) return false;
  for (int i = 0; i < dim; ++i)
    if (!(x[i] >= box[i].first - slack && x[i] <= box[i].second + slack)) return false;
  return true;
}

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

struct IndexTables {
  std::vector<std::array<int, 4>> sets[5][5];
  IndexTables() {
    for (int d = 0; d <= 4; ++d)
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::array<int, 4> t{-1, -1, -1, -1};
        int p = 0;
        for (int i = 0; i < d; ++i)
          if (mask & (1u << i)) t[p++] = i;
        sets[d][p].push_back(t);
      }
    for (auto& row : sets)
      for (auto& v : row) std::sort(v.begin(), v.end());
  }
};

const IndexTables& tables() {
  static const IndexTables t;
  return t;
}

double det_small(const Jacobian& m) {
  switch (m.rows()) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.determinant();
  }
}

AdjointForm::Components zeros(int count, int rep) {
  return AdjointForm::Components(count, AlgebraElement::zero(rep));
}

void require_same_chart(const AdjointForm& a, const AdjointForm& b) {
  if (a.dim() != b.dim()) throw ValidationError("forms live on charts of different dimension");
  if (a.rep_dim() != b.rep_dim()) throw ValidationError("forms use different representations");
}

}  // namespace

const std::vector<std::array<int, 4>>& index_sets(int d, int p) {
  if (d < 0 || d > 4 || p < 0 || p > 4) throw ValidationError("index_sets: bad (d, p)");
  return tables().sets[d][p];
}

int component_index(int d, int p, const int* sorted) {
  const auto& sets = index_sets(d, p);
  std::array<int, 4> key{-1, -1, -1, -1};
  std::copy(sorted, sorted + p, key.begin());
  auto it = std::lower_bound(sets.begin(), sets.end(), key);
  if (it == sets.end() || *it != key) throw ValidationError("component_index: tuple not sorted or out of range");
  return static_cast<int>(it - sets.begin());
}

AdjointForm::AdjointForm(ChartDomain chart, int degree, int rep_dim, ComponentFn comps, DerivativeFn deriv) {
  chart.validate();
  // Degrees above the chart dimension are allowed and identically zero (no components).
  if (degree < 0 || degree > 4) throw ValidationError("form degree out of range");
  if (rep_dim < 1 || rep_dim > kMaxRep) throw ValidationError("representation size out of range");
  auto impl = std::make_shared<Impl>();
  impl->chart = std::move(chart);
  impl->degree = degree;
  impl->rep_dim = rep_dim;
  impl->comps = std::move(comps);
  impl->deriv = std::move(deriv);
  impl_ = std::move(impl);
}

AdjointForm AdjointForm::zero(const ChartDomain& chart, int degree, int rep_dim) {
  const int count = binomial(chart.dim, degree);
  AdjointForm f(
      chart, degree, rep_dim, [count, rep_dim](const Vec&, Components& out) { out = zeros(count, rep_dim); },
      [count, rep_dim](const Vec&, int, Components& out) { out = zeros(count, rep_dim); });
  std::const_pointer_cast<Impl>(f.impl_)->zero = true;
  return f;
}

AdjointForm::Components AdjointForm::components(const Vec& x) const {
  const auto& c = impl_->chart;
  if (!c.contains(x, 2.0 * c.h_fd)) throw DomainError("point outside the chart");
  Components out(num_components());
  impl_->comps(x, out);
  return out;
}

AdjointForm::Components AdjointForm::derivative(const Vec& x, int mu) const {
  if (mu < 0 || mu >= dim()) throw ValidationError("derivative direction out of range");
  if (impl_->deriv) {
    if (!impl_->chart.contains(x, 2.0 * impl_->chart.h_fd)) throw DomainError("point outside the chart");
    Components out(num_components());
    impl_->deriv(x, mu, out);
    return out;
  }
  const double h = impl_->chart.h_fd;
  Vec xp = x, xm = x;
  xp[mu] += h;
  xm[mu] -= h;
  Components fp = components(xp);
  const Components fm = components(xm);
  for (size_t i = 0; i < fp.size(); ++i) fp[i] = (1.0 / (2.0 * h)) * (fp[i] - fm[i]);
  return fp;
}

AlgebraElement AdjointForm::evaluate(const Components& comps, std::span<const Vec> vs) const {
  const int p = degree();
  if (static_cast<int>(vs.size()) != p) throw ValidationError("form evaluated on the wrong number of vectors");
  if (p == 0) return comps[0];
  const int d = dim();
  const auto& sets = index_sets(d, p);
  AlgebraElement out = AlgebraElement::zero(rep_dim());
  Jacobian m(p, p);
  for (size_t c = 0; c < sets.size(); ++c) {
    for (int l = 0; l < p; ++l)
      for (int k = 0; k < p; ++k) m(l, k) = vs[k][sets[c][l]];
    const double det = det_small(m);
    if (det != 0.0) out += det * comps[c];
  }
  return out;
}

AlgebraElement AdjointForm::operator()(const Vec& x, std::span<const Vec> vs) const {
  return evaluate(components(x), vs);
}

AdjointForm AdjointForm::without_analytic_derivative() const {
  AdjointForm f = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->deriv = nullptr;
  f.impl_ = std::move(impl);
  return f;
}

AdjointForm AdjointForm::with_fd_step(double h) const {
  if (!(h > 0.0)) throw ValidationError("h_fd must be positive");
  AdjointForm f = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->chart.h_fd = h;
  f.impl_ = std::move(impl);
  return f;
}

Jacobian VectorField::jac(const Vec& x) const {
  if (jacobian) return jacobian(x);
  Jacobian j(dim, dim);
  for (int mu = 0; mu < dim; ++mu) {
    Vec xp = x, xm = x;
    xp[mu] += h_fd;
    xm[mu] -= h_fd;
    j.col(mu) = (value(xp) - value(xm)) / (2.0 * h_fd);
  }
  return j;
}

Matrix GaugeMap::d(const Vec& x, int mu) const {
  if (derivative) return derivative(x, mu);
  const double h = chart.h_fd;
  Vec xp = x, xm = x;
  xp[mu] += h;
  xm[mu] -= h;
  return (value(xp).matrix() - value(xm).matrix()) / (2.0 * h);
}

GaugeMap GaugeMap::identity(const ChartDomain& chart, int rep_dim) {
  return constant(chart, GroupElement::identity(rep_dim));
}

GaugeMap GaugeMap::constant(const ChartDomain& chart, const GroupElement& g) {
  GaugeMap m;
  m.chart = chart;
  m.rep_dim = g.dim();
  m.value = [g](const Vec&) { return g; };
  const int n = g.dim();
  m.derivative = [n](const Vec&, int) { return Matrix(Matrix::Zero(n, n)); };
  return m;
}

AdjointForm operator+(const AdjointForm& a, const AdjointForm& b) {
  require_same_chart(a, b);
  if (a.degree() != b.degree()) throw ValidationError("adding forms of different degree");
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  AdjointForm::DerivativeFn deriv;
  if (a.has_analytic_derivative() && b.has_analytic_derivative())
    deriv = [a, b](const Vec& x, int mu, AdjointForm::Components& out) {
      out = a.derivative(x, mu);
      const auto db = b.derivative(x, mu);
      for (size_t i = 0; i < out.size(); ++i) out[i] += db[i];
    };
  return AdjointForm(
      a.chart(), a.degree(), a.rep_dim(),
      [a, b](const Vec& x, AdjointForm::Components& out) {
        out = a.components(x);
        const auto cb = b.components(x);
        for (size_t i = 0; i < out.size(); ++i) out[i] += cb[i];
      },
      deriv);
}

AdjointForm operator*(double c, const AdjointForm& a) {
  if (a.is_zero()) return a;
  AdjointForm::DerivativeFn deriv;
  if (a.has_analytic_derivative())
    deriv = [a, c](const Vec& x, int mu, AdjointForm::Components& out) {
      out = a.derivative(x, mu);
      for (auto& v : out) v *= c;
    };
  return AdjointForm(
      a.chart(), a.degree(), a.rep_dim(),
      [a, c](const Vec& x, AdjointForm::Components& out) {
        out = a.components(x);
        for (auto& v : out) v *= c;
      },
      deriv);
}

AdjointForm operator-(const AdjointForm& a, const AdjointForm& b) {
  if (b.is_zero()) return a;
  return a + (-1.0) * b;
}

AdjointForm wedge_bracket(const AdjointForm& a, const AdjointForm& b) {
  require_same_chart(a, b);
  const int p = a.degree(), q = b.degree(), d = a.dim();
  if (p + q > 4) throw ValidationError("wedge degree above 4");
  if (p + q > d || a.is_zero() || b.is_zero()) return AdjointForm::zero(a.chart(), p + q, a.rep_dim());
  return AdjointForm(a.chart(), p + q, a.rep_dim(), [a, b, p, q, d](const Vec& x, AdjointForm::Components& out) {
    const auto ca = a.components(x);
    const auto cb = b.components(x);
    const auto& sets = index_sets(d, p + q);
    const int n = p + q;
    for (size_t c = 0; c < sets.size(); ++c) {
      AlgebraElement acc = AlgebraElement::zero(a.rep_dim());
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != p) continue;
        int ja[4], jb[4], na = 0, nb = 0, inversions = 0;
        for (int pos = 0; pos < n; ++pos) {
          if (mask & (1u << pos)) {
            ja[na++] = sets[c][pos];
            inversions += nb;  // b-slots already placed before this a-slot
          } else {
            jb[nb++] = sets[c][pos];
          }
        }
        const AlgebraElement term = bracket(ca[component_index(d, p, ja)], cb[component_index(d, q, jb)]);
        if (inversions % 2) acc -= term; else acc += term;
      }
      out[c] = acc;
    }
  });
}

AdjointForm ad_inverse_twist(const GaugeMap& g, const AdjointForm& w) {
  if (w.is_zero()) return w;
  return AdjointForm(w.chart(), w.degree(), w.rep_dim(), [g, w](const Vec& x, AdjointForm::Components& out) {
    out = w.components(x);
    const GroupElement gx = g(x);
    for (auto& v : out) v = adjoint_act_inv(gx, v);
  });
}

AdjointForm interior(const VectorField& v, const AdjointForm& w) {
  const int p = w.degree(), d = w.dim();
  if (p == 0) throw ValidationError("interior product of a 0-form");
  if (w.is_zero()) return AdjointForm::zero(w.chart(), p - 1, w.rep_dim());
  return AdjointForm(w.chart(), p - 1, w.rep_dim(), [v, w, p, d](const Vec& x, AdjointForm::Components& out) {
    const auto cw = w.components(x);
    const Vec vx = v(x);
    const auto& sets = index_sets(d, p - 1);
    for (size_t c = 0; c < sets.size(); ++c) {
      AlgebraElement acc = AlgebraElement::zero(w.rep_dim());
      for (int mu = 0; mu < d; ++mu) {
        int full[4], n = 0, below = 0;
        bool clash = false;
        for (int k = 0; k < p - 1; ++k) {
          if (sets[c][k] == mu) clash = true;
          if (sets[c][k] < mu) ++below;
        }
        if (clash || vx[mu] == 0.0) continue;
        for (int k = 0; k < p - 1; ++k) {
          if (k == below) full[n++] = mu;
          full[n++] = sets[c][k];
        }
        if (below == p - 1) full[n++] = mu;
        const double sign = (below % 2) ? -1.0 : 1.0;
        acc += (sign * vx[mu]) * cw[component_index(d, p, full)];
      }
      out[c] = acc;
    }
  });
}

AdjointForm lie_derivative_base(const VectorField& v, const AdjointForm& w) {
  if (w.is_zero()) return w;
  const int p = w.degree(), d = w.dim();
  return AdjointForm(w.chart(), p, w.rep_dim(), [v, w, p, d](const Vec& x, AdjointForm::Components& out) {
    const auto cw = w.components(x);
    const Vec vx = v(x);
    const Jacobian j = v.jac(x);
    for (auto& o : out) o = AlgebraElement::zero(w.rep_dim());
    for (int mu = 0; mu < d; ++mu) {
      if (vx[mu] == 0.0) continue;
      const auto dw = w.derivative(x, mu);
      for (size_t c = 0; c < out.size(); ++c) out[c] += vx[mu] * dw[c];
    }
    const auto& sets = index_sets(d, p);
    std::vector<Vec> args(p, Vec::Zero(d));
    for (size_t c = 0; c < sets.size(); ++c) {
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          args[l] = Vec::Zero(d);
          args[l][sets[c][l]] = 1.0;
        }
        args[k] = j.col(sets[c][k]);
        out[c] += w.evaluate(cw, args);
      }
    }
  });
}

AdjointForm bracket_with_function(const AdjointForm& w, const AdjointForm& xi) {
  require_same_chart(w, xi);
  if (xi.degree() != 0) throw ValidationError("bracket_with_function needs a 0-form");
  if (w.is_zero() || xi.is_zero()) return AdjointForm::zero(w.chart(), w.degree(), w.rep_dim());
  return AdjointForm(w.chart(), w.degree(), w.rep_dim(), [w, xi](const Vec& x, AdjointForm::Components& out) {
    out = w.components(x);
    const AlgebraElement f = xi.components(x)[0];
    for (auto& o : out) o = bracket(o, f);
  });
}

AdjointForm curvature_F(const AdjointForm& a) {
  if (a.degree() != 1) throw ValidationError("curvature_F needs a 1-form");
  const int d = a.dim();
  if (a.is_zero()) return AdjointForm::zero(a.chart(), 2, a.rep_dim());
  return AdjointForm(a.chart(), 2, a.rep_dim(), [a, d](const Vec& x, AdjointForm::Components& out) {
    const auto ca = a.components(x);
    std::vector<AdjointForm::Components> da(d);
    for (int mu = 0; mu < d; ++mu) da[mu] = a.derivative(x, mu);
    const auto& sets = index_sets(d, 2);
    for (size_t c = 0; c < sets.size(); ++c) {
      const int i = sets[c][0], j = sets[c][1];
      out[c] = da[i][j] - da[j][i] + bracket(ca[i], ca[j]);
    }
  });
}

AdjointForm cov_ext_derivative(const AdjointForm& a, const AdjointForm& w) {
  if (a.degree() != 1) throw ValidationError("cov_ext_derivative needs a connection 1-form");
  require_same_chart(a, w);
  const int p = w.degree(), d = w.dim();
  if (p > 2) throw ValidationError("cov_ext_derivative supports degree <= 2");
  if (p + 1 > d || w.is_zero()) return AdjointForm::zero(w.chart(), p + 1, w.rep_dim());
  return AdjointForm(w.chart(), p + 1, w.rep_dim(), [a, w, p, d](const Vec& x, AdjointForm::Components& out) {
    const auto cw = w.components(x);
    const auto ca = a.components(x);
    std::vector<AdjointForm::Components> dw(d);
    for (int mu = 0; mu < d; ++mu) dw[mu] = w.derivative(x, mu);
    const auto& sets = index_sets(d, p + 1);
    for (size_t c = 0; c < sets.size(); ++c) {
      AlgebraElement acc = AlgebraElement::zero(w.rep_dim());
      for (int k = 0; k <= p; ++k) {
        int rest[4], n = 0;
        for (int l = 0; l <= p; ++l)
          if (l != k) rest[n++] = sets[c][l];
        const int ci = component_index(d, p, rest);
        const int mu = sets[c][k];
        AlgebraElement term = dw[mu][ci] + bracket(ca[mu], cw[ci]);
        if (k % 2) acc -= term; else acc += term;
      }
      out[c] = acc;
    }
  });
}

AdjointForm hodge_star(const AdjointForm& w) {
  if (w.dim() != 4) throw UnsupportedError("hodge_star is implemented for d = 4 only");
  if (w.degree() != 2) throw ValidationError("hodge_star acts on 2-forms");
  if (w.is_zero()) return w;
  // (*w)_{kl} = eps_{ijkl} w_{ij}, (i,j) the sorted complement of (k,l).
  return AdjointForm(w.chart(), 2, w.rep_dim(), [w](const Vec& x, AdjointForm::Components& out) {
    const auto cw = w.components(x);
    const auto& sets = index_sets(4, 2);
    for (size_t c = 0; c < sets.size(); ++c) {
      const int k = sets[c][0], l = sets[c][1];
      int comp[2], n = 0;
      for (int i = 0; i < 4; ++i)
        if (i != k && i != l) comp[n++] = i;
      const int perm[4] = {comp[0], comp[1], k, l};
      int inv = 0;
      for (int s = 0; s < 4; ++s)
        for (int t = s + 1; t < 4; ++t)
          if (perm[s] > perm[t]) ++inv;
      out[c] = (inv % 2 ? -1.0 : 1.0) * cw[component_index(4, 2, comp)];
    }
  });
}

FormPair act_gauge(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g) {
  if (a.degree() != 1 || b.degree() != 2) throw ValidationError("act_gauge needs (1-form, 2-form)");
  const int d = a.dim();
  AdjointForm ag(a.chart(), 1, a.rep_dim(), [a, g, d](const Vec& x, AdjointForm::Components& out) {
    const auto ca = a.components(x);
    const GroupElement gx = g(x);
    for (int mu = 0; mu < d; ++mu) {
      const Matrix dg = g.d(x, mu);
      out[mu] = adjoint_act_inv(gx, ca[mu]) + AlgebraElement(Matrix(gx.matrix().adjoint() * dg));
    }
  });
  return {ag, ad_inverse_twist(g, b)};
}

FormPair act_first(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g, const AdjointForm& eta) {
  FormPair p = act_gauge(a, b, g);
  if (eta.is_zero()) return p;
  AdjointForm b2 = p.b - cov_ext_derivative(p.a, eta) - 0.5 * wedge_bracket(eta, eta);
  return {p.a + eta, b2};
}

FormPair act_second(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g, const AdjointForm& eta) {
  FormPair p = act_gauge(a, b, g);
  if (eta.is_zero()) return p;
  return {p.a, p.b - cov_ext_derivative(p.a, eta)};
}

}  // namespace holo
