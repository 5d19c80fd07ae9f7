#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "holo/liealg.hpp"

namespace holo {

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

struct ChartDomain {
  int dim = 3;
  std::vector<std::pair<double, double>> box;
  double h_fd = 1e-4;

  static ChartDomain cube(int d, double half_width, double h_fd = 1e-4);
  void validate() const;
  bool contains(const Vec& x, double slack = 0.0) const;
};

// Sorted index tuples of length p out of {0..d-1}, lexicographic; the component basis.
const std::vector<std::array<int, 4>>& index_sets(int d, int p);
int binomial(int n, int k);
// Position of a sorted tuple in index_sets(d, p).
int component_index(int d, int p, const int* sorted);

// Degree-p adjoint-valued form given by its components w_I(x), I a sorted index tuple.
// Evaluation on vectors is the determinant expansion, so multilinearity and antisymmetry
// hold by construction.
class AdjointForm {
 public:
  using Components = std::vector<AlgebraElement>;
  using ComponentFn = std::function<void(const Vec& x, Components& out)>;
  using DerivativeFn = std::function<void(const Vec& x, int mu, Components& out)>;

  AdjointForm() = default;
  AdjointForm(ChartDomain chart, int degree, int rep_dim, ComponentFn comps, DerivativeFn deriv = {});
  static AdjointForm zero(const ChartDomain& chart, int degree, int rep_dim);

  int degree() const { return impl_->degree; }
  int dim() const { return impl_->chart.dim; }
  int rep_dim() const { return impl_->rep_dim; }
  int num_components() const { return binomial(dim(), degree()); }
  const ChartDomain& chart() const { return impl_->chart; }
  bool valid() const { return static_cast<bool>(impl_); }
  bool is_zero() const { return impl_ && impl_->zero; }
  bool has_analytic_derivative() const { return static_cast<bool>(impl_->deriv); }

  // Throws DomainError outside the chart.
  Components components(const Vec& x) const;
  // d/dx_mu of every component; analytic if available, else central differences.
  Components derivative(const Vec& x, int mu) const;

  AlgebraElement operator()(const Vec& x, std::span<const Vec> vs) const;
  AlgebraElement operator()(const Vec& x, std::initializer_list<Vec> vs) const {
    return (*this)(x, std::span<const Vec>(vs.begin(), vs.size()));
  }
  AlgebraElement evaluate(const Components& comps, std::span<const Vec> vs) const;

  // Copy that forgets the analytic derivative, so derivatives fall back to FD.
  AdjointForm without_analytic_derivative() const;
  AdjointForm with_fd_step(double h) const;

 private:
  struct Impl {
    ChartDomain chart;
    int degree = 0;
    int rep_dim = 0;
    ComponentFn comps;
    DerivativeFn deriv;
    bool zero = false;
  };
  std::shared_ptr<const Impl> impl_;
};

struct VectorField {
  int dim = 3;
  std::function<Vec(const Vec&)> value;
  std::function<Jacobian(const Vec&)> jacobian;  // J(i,j) = dv_i/dx_j; FD if empty
  double h_fd = 1e-4;

  Vec operator()(const Vec& x) const { return value(x); }
  Jacobian jac(const Vec& x) const;
};

struct GaugeMap {
  ChartDomain chart;
  int rep_dim = 2;
  std::function<GroupElement(const Vec&)> value;
  std::function<Matrix(const Vec&, int mu)> derivative;  // dg/dx_mu; FD if empty

  GroupElement operator()(const Vec& x) const { return value(x); }
  Matrix d(const Vec& x, int mu) const;
  static GaugeMap identity(const ChartDomain& chart, int rep_dim);
  static GaugeMap constant(const ChartDomain& chart, const GroupElement& g);
};

// Form algebra.
AdjointForm operator+(const AdjointForm& a, const AdjointForm& b);
AdjointForm operator-(const AdjointForm& a, const AdjointForm& b);
AdjointForm operator*(double c, const AdjointForm& a);
// Graded bracket [a^b]: shuffle sum of [a(..), b(..)] with Koszul signs.
AdjointForm wedge_bracket(const AdjointForm& a, const AdjointForm& b);
// Ad_{g^{-1}} w, pointwise.
AdjointForm ad_inverse_twist(const GaugeMap& g, const AdjointForm& w);
// i_v w.
AdjointForm interior(const VectorField& v, const AdjointForm& w);
// Lie derivative along a base vector field (no vertical part).
AdjointForm lie_derivative_base(const VectorField& v, const AdjointForm& w);
// [w, xi] with xi a 0-form.
AdjointForm bracket_with_function(const AdjointForm& w, const AdjointForm& xi);

// F_A = dA + 1/2[A,A].
AdjointForm curvature_F(const AdjointForm& a);
// d_A w = dw + [A^w]; (d_A w)(v_0..v_p) = sum_k (-1)^k ((v_k.d) w + [A(v_k), w])(..no v_k..).
AdjointForm cov_ext_derivative(const AdjointForm& a, const AdjointForm& w);
// Euclidean Hodge star on 2-forms in d = 4.
AdjointForm hodge_star(const AdjointForm& w);

struct FormPair {
  AdjointForm a;
  AdjointForm b;
};

// (A^g, Ad_{g^{-1}} B), A^g = Ad_{g^{-1}}A + g^{-1}dg.
FormPair act_gauge(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g);
// (A^g + eta, Ad_{g^{-1}}B - d_{A^g} eta - 1/2[eta,eta]).
FormPair act_first(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g, const AdjointForm& eta);
// (A^g, Ad_{g^{-1}}B - d_{A^g} eta).
FormPair act_second(const AdjointForm& a, const AdjointForm& b, const GaugeMap& g, const AdjointForm& eta);

}  // namespace holo
