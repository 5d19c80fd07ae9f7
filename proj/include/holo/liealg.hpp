#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace holo {

using Complex = std::complex<double>;

// Defining representations up to 4x4 live on the stack.
inline constexpr int kMaxRep = 4;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxRep, kMaxRep>;

// Anti-Hermitian matrix. A default-constructed element is an empty zero that adopts
// the size of whatever is added to it, which keeps accumulators simple.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(Matrix m) : m_(std::move(m)) {}
  static AlgebraElement zero(int n) { return AlgebraElement(Matrix::Zero(n, n)); }

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  bool empty() const { return m_.size() == 0; }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double c) {
    m_ *= c;
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
  friend AlgebraElement operator*(double c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(AlgebraElement a, double c) { return a *= c; }

  // Frobenius norm.
  double norm() const { return m_.size() ? m_.norm() : 0.0; }

 private:
  Matrix m_;
};

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(Matrix m) : m_(std::move(m)) {}
  static GroupElement identity(int n) { return GroupElement(Matrix::Identity(n, n)); }

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  // Unitary, so the inverse is the adjoint.
  GroupElement inverse() const { return GroupElement(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.m_ * b.m_);
  }

 private:
  Matrix m_;
};

enum class GroupFamily { U1k, SUN };

struct GroupSpec {
  GroupFamily family = GroupFamily::SUN;
  int n = 2;
  std::string generator_set;               // "pauli", "gellmann", "u1"
  std::vector<AlgebraElement> generators;  // basis of the algebra
  std::vector<AlgebraElement> cartan;      // commuting subset
  std::vector<int> cartan_indices;
  double inner_normalization = -2.0;       // <X,Y> = c * Re Tr(XY)

  // cartan_indices index into the named generator set; empty picks the diagonal ones.
  static GroupSpec su(int n, std::vector<int> cartan_indices = {});
  static GroupSpec u1(int k);
  static GroupSpec from_name(const std::string& family, int n, const std::string& generators,
                             std::vector<int> cartan_indices);

  int algebra_dim() const { return static_cast<int>(generators.size()); }
  std::string family_name() const;
};

// i*sigma_a/2 for a = 1,2,3.
std::vector<AlgebraElement> pauli_generators();
// i*lambda_a/2 with the generalized Gell-Mann matrices of size n.
std::vector<AlgebraElement> gellmann_generators(int n);

bool is_anti_hermitian(const Matrix& m, double tol = 1e-12);
bool is_unitary(const Matrix& m, double tol = 1e-10);

GroupElement exp_map(const AlgebraElement& x);
// Same as exp_map without the anti-Hermitian check; for values built internally.
GroupElement exp_unchecked(const Matrix& x);
AlgebraElement log_map(const GroupElement& g);

// g X g^{-1}
AlgebraElement adjoint_act(const GroupElement& g, const AlgebraElement& x);
// g^{-1} X g, the Ad_{g^{-1}} twist used everywhere in transport formulas.
AlgebraElement adjoint_act_inv(const GroupElement& g, const AlgebraElement& x);
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
double inner(const AlgebraElement& x, const AlgebraElement& y);
// Real coordinates of x in the spec's generator basis (least squares under inner()).
std::vector<double> coordinates(const AlgebraElement& x, const GroupSpec& spec);

double cartan_residual(const AlgebraElement& x, const GroupSpec& spec);

// Nearest unitary by one Newton-Schulz step; cheap when g is already close.
GroupElement reunitarize(const GroupElement& g);

// Spectral-norm-free distance used in reports.
double distance(const GroupElement& a, const GroupElement& b);

}  // namespace holo
