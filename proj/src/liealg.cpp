#include "holo/liealg.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "holo/errors.hpp"

namespace holo {

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.empty()) return *this;
  if (empty()) {
    m_ = o.m_;
    return *this;
  }
  if (m_.rows() != o.m_.rows()) throw ValidationError("algebra elements of different size");
  m_ += o.m_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (o.empty()) return *this;
  if (empty()) {
    m_ = -o.m_;
    return *this;
  }
  if (m_.rows() != o.m_.rows()) throw ValidationError("algebra elements of different size");
  m_ -= o.m_;
  return *this;
}

std::vector<AlgebraElement> gellmann_generators(int n) {
  if (n < 2 || n > kMaxRep) throw ValidationError("su(N) needs 2 <= N <= 4");
  const Complex I(0.0, 1.0);
  std::vector<AlgebraElement> out;
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      Matrix s = Matrix::Zero(n, n);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.emplace_back(Matrix(0.5 * I * s));
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = -I;
      a(k, j) = I;
      out.emplace_back(Matrix(0.5 * I * a));
    }
    Matrix d = Matrix::Zero(n, n);
    const double c = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int j = 0; j < k; ++j) d(j, j) = c;
    d(k, k) = -k * c;
    out.emplace_back(Matrix(0.5 * I * d));
  }
  return out;
}

std::vector<AlgebraElement> pauli_generators() { return gellmann_generators(2); }

GroupSpec GroupSpec::su(int n, std::vector<int> cartan_indices) {
  GroupSpec g;
  g.family = GroupFamily::SUN;
  g.n = n;
  g.generator_set = n == 2 ? "pauli" : "gellmann";
  g.generators = gellmann_generators(n);
  if (cartan_indices.empty()) {
    for (int i = 0; i < g.algebra_dim(); ++i) {
      const Matrix& m = g.generators[i].matrix();
      if ((m - Matrix(m.diagonal().asDiagonal())).norm() == 0.0) cartan_indices.push_back(i);
    }
  }
  for (int i : cartan_indices) {
    if (i < 0 || i >= g.algebra_dim()) throw ValidationError("cartan index out of range");
    g.cartan.push_back(g.generators[i]);
  }
  for (size_t a = 0; a < g.cartan.size(); ++a)
    for (size_t b = a + 1; b < g.cartan.size(); ++b)
      if (bracket(g.cartan[a], g.cartan[b]).norm() > 1e-12)
        throw ValidationError("cartan basis elements must commute");
  g.cartan_indices = std::move(cartan_indices);
  return g;
}

GroupSpec GroupSpec::u1(int k) {
  if (k < 1 || k > kMaxRep) throw ValidationError("u(1)^k needs 1 <= k <= 4");
  GroupSpec g;
  g.family = GroupFamily::U1k;
  g.n = k;
  g.generator_set = "u1";
  for (int j = 0; j < k; ++j) {
    Matrix m = Matrix::Zero(k, k);
    m(j, j) = Complex(0.0, 1.0);
    g.generators.emplace_back(m);
    g.cartan_indices.push_back(j);
  }
  g.cartan = g.generators;
  return g;
}

GroupSpec GroupSpec::from_name(const std::string& family, int n, const std::string& generators,
                               std::vector<int> cartan_indices) {
  if (family == "u1" || family == "u1k" || family == "U1") {
    if (!generators.empty() && generators != "u1")
      throw ValidationError("u(1)^k uses the \"u1\" generator set");
    GroupSpec g = u1(n);
    if (!cartan_indices.empty()) {
      g.cartan.clear();
      for (int i : cartan_indices) {
        if (i < 0 || i >= n) throw ValidationError("cartan index out of range");
        g.cartan.push_back(g.generators[i]);
      }
      g.cartan_indices = std::move(cartan_indices);
    }
    return g;
  }
  if (family == "su" || family == "suN" || family == "SU") {
    if (generators == "pauli" && n != 2) throw ValidationError("pauli generators need N = 2");
    if (!generators.empty() && generators != "pauli" && generators != "gellmann")
      throw ValidationError("unknown generator set: " + generators);
    return su(n, std::move(cartan_indices));
  }
  throw ValidationError("unknown group family: " + family);
}

std::string GroupSpec::family_name() const {
  return family == GroupFamily::U1k ? "u1^" + std::to_string(n) : "su" + std::to_string(n);
}

bool is_anti_hermitian(const Matrix& m, double tol) {
  return (m + m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_unitary(const Matrix& m, double tol) {
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

GroupElement exp_unchecked(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  // Scale to 1-norm <= 1/4, Taylor to degree 14, square back.
  const double nrm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (nrm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.25)));
  const Matrix y = x / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k <= 14; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return GroupElement(sum);
}

GroupElement exp_map(const AlgebraElement& x) {
  if (!is_anti_hermitian(x.matrix())) throw ValidationError("exp_map: input is not anti-Hermitian");
  return exp_unchecked(x.matrix());
}

AlgebraElement log_map(const GroupElement& g) {
  const Matrix& m = g.matrix();
  if (!is_unitary(m, 1e-8)) throw ValidationError("log_map: input is not unitary");
  Eigen::ComplexSchur<Matrix> schur(m);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  // Unitary is normal, so T is diagonal and |lambda - 1| bounds ||g - I|| in the 2-norm.
  Matrix l = Matrix::Zero(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    const Complex lam = t(i, i);
    if (std::abs(lam - 1.0) >= 1.0) throw DomainError("log_map: group element too far from identity");
    l(i, i) = std::log(lam);
  }
  Matrix x = u * l * u.adjoint();
  return AlgebraElement(Matrix(0.5 * (x - x.adjoint())));
}

AlgebraElement adjoint_act(const GroupElement& g, const AlgebraElement& x) {
  if (x.empty()) return x;
  return AlgebraElement(Matrix(g.matrix() * x.matrix() * g.matrix().adjoint()));
}

AlgebraElement adjoint_act_inv(const GroupElement& g, const AlgebraElement& x) {
  if (x.empty()) return x;
  return AlgebraElement(Matrix(g.matrix().adjoint() * x.matrix() * g.matrix()));
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.empty() || y.empty()) return AlgebraElement();
  return AlgebraElement(Matrix(x.matrix() * y.matrix() - y.matrix() * x.matrix()));
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.empty() || y.empty()) return 0.0;
  return -2.0 * (x.matrix() * y.matrix()).trace().real();
}

namespace {

std::vector<double> project_coeffs(const AlgebraElement& x, const std::vector<AlgebraElement>& basis) {
  const int k = static_cast<int>(basis.size());
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (int a = 0; a < k; ++a) {
    rhs(a) = inner(basis[a], x);
    for (int b = 0; b < k; ++b) gram(a, b) = inner(basis[a], basis[b]);
  }
  Eigen::VectorXd c = gram.ldlt().solve(rhs);
  return {c.data(), c.data() + k};
}

}  // namespace

std::vector<double> coordinates(const AlgebraElement& x, const GroupSpec& spec) {
  if (x.empty()) return std::vector<double>(spec.generators.size(), 0.0);
  return project_coeffs(x, spec.generators);
}

double cartan_residual(const AlgebraElement& x, const GroupSpec& spec) {
  if (spec.cartan.empty()) throw ValidationError("cartan_residual: empty Cartan basis");
  if (x.empty()) return 0.0;
  const auto c = project_coeffs(x, spec.cartan);
  AlgebraElement r = x;
  for (size_t a = 0; a < c.size(); ++a) r -= c[a] * spec.cartan[a];
  return std::sqrt(std::max(0.0, inner(r, r)));
}

GroupElement reunitarize(const GroupElement& g) {
  const Matrix& m = g.matrix();
  const int n = static_cast<int>(m.rows());
  return GroupElement(Matrix(0.5 * m * (3.0 * Matrix::Identity(n, n) - m.adjoint() * m)));
}

double distance(const GroupElement& a, const GroupElement& b) { return (a.matrix() - b.matrix()).norm(); }

}  // namespace holo
