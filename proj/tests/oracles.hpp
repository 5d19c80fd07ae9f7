#pragma once

// Reference computations that share no numerical code with the library: Taylor exponentials,
// RK4 on the raw transport ODE, midpoint flux sums, and plain finite differences.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "holo/fields.hpp"
#include "holo/geom.hpp"
#include "holo/liealg.hpp"

namespace oracle {

using holo::Complex;
using holo::Matrix;
using holo::Vec;

// Scaling and squaring around a 64-term Taylor series.
inline Matrix taylor_exp(const Matrix& x) {
  int squarings = 0;
  double nrm = x.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++squarings;
  }
  const Matrix y = x / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(x.rows(), x.cols());
  Matrix sum = term;
  for (int k = 1; k <= 64; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double frob(const Matrix& m) { return m.norm(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// A(γ̇) as a raw matrix, with the velocity taken strictly inside the segment containing t.
inline Matrix a_dot(const holo::AdjointForm& a, const holo::Path& p, double t, double lo, double hi) {
  const double tc = std::clamp(t, lo + 1e-13, hi - 1e-13);
  return a(p.pos(t), {p.vel(tc)}).matrix();
}

// Classical RK4 for dh/dt = -A(γ̇) h, segment by segment, n steps per unit length.
inline Matrix rk4_transport(const holo::AdjointForm& a, const holo::Path& p, int n) {
  const auto segs = p.segments();
  Matrix h = Matrix::Identity(a.rep_dim(), a.rep_dim());
  for (size_t k = 0; k + 1 < segs.size(); ++k) {
    const double lo = segs[k], hi = segs[k + 1];
    const int m = std::max(1, static_cast<int>(std::lround(n * (hi - lo))));
    const double dt = (hi - lo) / m;
    for (int j = 0; j < m; ++j) {
      const double t = lo + j * dt;
      const Matrix k1 = -a_dot(a, p, t, lo, hi) * h;
      const Matrix k2 = -a_dot(a, p, t + 0.5 * dt, lo, hi) * (h + 0.5 * dt * k1);
      const Matrix k3 = -a_dot(a, p, t + 0.5 * dt, lo, hi) * (h + 0.5 * dt * k2);
      const Matrix k4 = -a_dot(a, p, t + dt, lo, hi) * (h + dt * k3);
      h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return h;
}

// Midpoint rule for ∬ w(Γ', Γ̇) ds dt.
inline Matrix flux(const holo::AdjointForm& w, const holo::Square& sq, int n) {
  Matrix acc = Matrix::Zero(w.rep_dim(), w.rep_dim());
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double s = (i + 0.5) * h, t = (j + 0.5) * h;
      acc += w(sq.pos(s, t), {sq.ds(s, t), sq.dt(s, t)}).matrix();
    }
  return acc * (h * h);
}

// Centered difference of a matrix-valued function of one real variable.
inline Matrix central(const std::function<Matrix(double)>& f, double h) { return (f(h) - f(-h)) / (2.0 * h); }

// Value of a form at x with coordinate basis vectors e_i, e_j (and e_k for 3-forms).
inline Vec basis(int d, int i) {
  Vec e = Vec::Zero(d);
  e[i] = 1.0;
  return e;
}

// d w (e_0..e_p) by centered differences of the raw sampler, for p = 1, 2:
// dw(v0..vp) = Σ_k (-1)^k ∂_{v_k} w(..no v_k..).
inline Matrix exterior_fd(const holo::AdjointForm& w, const Vec& x, const std::vector<Vec>& vs, double h) {
  Matrix acc = Matrix::Zero(w.rep_dim(), w.rep_dim());
  for (size_t k = 0; k < vs.size(); ++k) {
    std::vector<Vec> rest;
    for (size_t j = 0; j < vs.size(); ++j)
      if (j != k) rest.push_back(vs[j]);
    auto at = [&](const Vec& y) { return w(y, std::span<const Vec>(rest.data(), rest.size())).matrix(); };
    const Matrix der = (at(x + h * vs[k]) - at(x - h * vs[k])) / (2.0 * h);
    acc += (k % 2 == 0 ? 1.0 : -1.0) * der;
  }
  return acc;
}

}  // namespace oracle
