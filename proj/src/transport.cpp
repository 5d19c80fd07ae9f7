#include "holo/transport.hpp"

#include <cmath>

#include "holo/errors.hpp"

namespace holo {

namespace {

// One ordered product with periodic re-projection.
class Accumulator {
 public:
  explicit Accumulator(int n) : k_(GroupElement::identity(n)) {}
  void step(const Matrix& generator) {
    k_ = exp_unchecked(generator) * k_;
    if (++count_ % kReprojectEvery == 0) k_ = reunitarize(k_);
  }
  const GroupElement& value() const { return k_; }

 private:
  GroupElement k_;
  int count_ = 0;
};

GroupElement ordered_exp_value(const OrderedIntegrand& m, int n) {
  const double dt = (m.b - m.a) / n;
  AlgebraElement first = m.m(m.a + 0.5 * dt);
  Accumulator acc(first.dim());
  acc.step((-dt) * first.matrix());
  for (int i = 1; i < n; ++i) acc.step((-dt) * m.m(m.a + (i + 0.5) * dt).matrix());
  return acc.value();
}

Vec one_sided(const Path& p, double t, double toward) {
  return p.vel(std::nextafter(t, toward));
}

}  // namespace

TransportResult ordered_exp(const OrderedIntegrand& m, int n, bool richardson) {
  if (n < 1) throw ValidationError("ordered_exp needs N >= 1");
  if (!m.m) throw ValidationError("ordered_exp needs an integrand");
  TransportResult r;
  r.value = ordered_exp_value(m, n);
  r.steps = n;
  if (richardson && n % 2 == 0) {
    const GroupElement coarse = ordered_exp_value(m, n / 2);
    r.error_estimate = distance(r.value, coarse) / 3.0;
  }
  return r;
}

std::vector<int> distribute_steps(const Path& p, int n) {
  if (n < 1) throw ValidationError("step count must be >= 1");
  const auto seg = p.segments();
  std::vector<int> out;
  for (size_t k = 0; k + 1 < seg.size(); ++k)
    out.push_back(std::max(1, static_cast<int>(std::lround(n * (seg[k + 1] - seg[k])))));
  return out;
}

FrameFactor frame_factor(const AdjointForm& a, const Path& gamma, int n) {
  return frame_factor(a, gamma, distribute_steps(gamma, n));
}

FrameFactor frame_factor(const AdjointForm& a, const Path& gamma, const std::vector<int>& steps) {
  if (a.degree() != 1) throw ValidationError("frame_factor needs a connection 1-form");
  const auto seg = gamma.segments();
  if (steps.size() + 1 != seg.size()) throw ValidationError("one step count per path segment required");
  FrameFactor f;
  const int rep = a.rep_dim();
  f.t.push_back(0.0);
  for (size_t k = 0; k + 1 < seg.size(); ++k) {
    if (steps[k] < 1) throw ValidationError("segment step count must be >= 1");
    const double lo = seg[k], hi = seg[k + 1];
    for (int i = 1; i <= steps[k]; ++i) f.t.push_back(i == steps[k] ? hi : lo + (hi - lo) * i / steps[k]);
  }
  const int n = static_cast<int>(f.t.size()) - 1;
  f.x.resize(n + 1);
  f.vel_in.resize(n + 1);
  f.vel_out.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    f.x[j] = gamma.pos(f.t[j]);
    f.vel_in[j] = j > 0 ? one_sided(gamma, f.t[j], 0.0) : gamma.vel(0.0);
    f.vel_out[j] = j < n ? one_sided(gamma, f.t[j], 1.0) : gamma.vel(1.0);
    if (!a.chart().contains(f.x[j])) throw DomainError("path exits the chart");
  }
  f.h.reserve(n + 1);
  Accumulator acc(rep);
  f.h.push_back(acc.value());
  const bool zero = a.is_zero();
  for (int j = 0; j < n; ++j) {
    if (!zero) {
      const double tm = 0.5 * (f.t[j] + f.t[j + 1]);
      const Vec v = gamma.vel(tm);
      const AlgebraElement av = a(gamma.pos(tm), {v});
      acc.step((-f.step(j)) * av.matrix());
    }
    f.h.push_back(acc.value());
  }
  return f;
}

TransportResult transport_A(const AdjointForm& a, const Path& path, int n, bool richardson) {
  TransportResult r;
  const FrameFactor f = frame_factor(a, path, n);
  r.value = f.end();
  r.steps = f.steps();
  if (richardson && n % 2 == 0 && n >= 2) {
    const FrameFactor c = frame_factor(a, path, n / 2);
    r.error_estimate = distance(r.value, c.end()) / 3.0;
  }
  return r;
}

TransportResult holonomy_A(const AdjointForm& a, const Path& loop, int n, bool richardson) {
  if (!loop.loop) throw ValidationError("holonomy_A needs a closed path");
  return transport_A(a, loop, n, richardson);
}

Vec VectorAlong::derivative(double t) const {
  if (rate) return rate(t);
  const double h = 1e-5;
  const double lo = std::max(0.0, t - h), hi = std::min(1.0, t + h);
  return (value(hi) - value(lo)) / (hi - lo);
}

VectorAlong VectorAlong::zero(int dim) {
  return {[dim](double) { return Vec(Vec::Zero(dim)); }, [dim](double) { return Vec(Vec::Zero(dim)); }};
}

VectorAlong VectorAlong::from_field(const VectorField& v, const Path& gamma) {
  return {[v, gamma](double t) { return v(gamma.pos(t)); },
          [v, gamma](double t) { return Vec(v.jac(gamma.pos(t)) * gamma.vel(t)); }};
}

double horizontality_residual(const AdjointForm& a, const PathTangent& tangent, double du) {
  const FrameFactor& f = tangent.frame;
  const int n = f.steps();
  std::vector<int> steps;
  {
    const auto seg = tangent.base.segments();
    size_t k = 0;
    int count = 0;
    for (int j = 1; j <= n; ++j) {
      ++count;
      if (std::abs(f.t[j] - seg[k + 1]) < 1e-15) {
        steps.push_back(count);
        count = 0;
        ++k;
      }
    }
  }
  auto shifted = [&](double u) {
    Path p = tangent.base;
    const Path base = tangent.base;
    const VectorAlong x = tangent.field;
    p.pos = [base, x, u](double t) { return Vec(base.pos(t) + u * x(t)); };
    p.vel = [base, x, u](double t) { return Vec(base.vel(t) + u * x.derivative(t)); };
    return frame_factor(a, p, steps);
  };
  const FrameFactor fp = shifted(du), fm = shifted(-du);
  const AlgebraElement ax0 = a(f.x[0], {tangent.x[0]});
  const AlgebraElement offset = tangent.vertical[0] - ax0;  // g'(0) of the fibre variation
  double worst = 0.0;
  for (int j = 0; j <= n; ++j) {
    const Matrix dh = (fp.h[j].matrix() - fm.h[j].matrix()) / (2.0 * du);
    const Matrix hinv = f.h[j].matrix().adjoint();
    Matrix twisted = hinv * dh;
    AlgebraElement vert(Matrix(0.5 * (twisted - twisted.adjoint())));
    const AlgebraElement aq = adjoint_act_inv(f.h[j], a(f.x[j], {tangent.x[j]})) + vert + offset;
    worst = std::max(worst, (aq - tangent.vertical[j]).norm());
  }
  return worst;
}

}  // namespace holo
