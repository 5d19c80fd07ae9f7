#include "holo/catalog.hpp"

#include <cmath>

#include "holo/errors.hpp"

namespace holo {

using nlohmann::json;

Rng::Rng(unsigned long long seed) : state_(seed) {}

double Rng::uniform() {
  // splitmix64 keeps the stream self-contained in the object.
  unsigned long long z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
}

AlgebraElement Rng::algebra(const GroupSpec& group, double scale) {
  AlgebraElement x = AlgebraElement::zero(group.n);
  for (const auto& t : group.generators) x += (scale * uniform()) * t;
  return x;
}

GroupElement Rng::group(const GroupSpec& g, double scale) { return exp_map(algebra(g, scale)); }

namespace {

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ValidationError(std::string("field parameter '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ValidationError(std::string("parameter '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

unsigned long long seed_of(const json& j) {
  if (!j.contains("seed")) throw ValidationError("random field family requires a seed");
  if (!j.at("seed").is_number_integer()) throw ValidationError("seed must be an integer");
  return j.at("seed").get<unsigned long long>();
}

const AlgebraElement& cartan_generator(const json& j, const GroupSpec& g) {
  const int idx = integer(j, "generator", 0);
  if (g.cartan.empty()) throw ValidationError("group has no Cartan basis");
  if (idx < 0 || idx >= static_cast<int>(g.cartan.size())) throw ValidationError("Cartan generator index out of range");
  return g.cartan[idx];
}

using Comps = AdjointForm::Components;

// w_I(x) = c_I + sum_mu b_{I,mu} x_mu, algebra-valued coefficients.
AdjointForm linear_family(const ChartDomain& chart, int degree, const GroupSpec& g, Rng& rng, double scale,
                          bool constant_only) {
  const int d = chart.dim, nc = binomial(d, degree), rep = g.n;
  std::vector<AlgebraElement> c(nc);
  std::vector<std::vector<AlgebraElement>> b(nc, std::vector<AlgebraElement>(d, AlgebraElement::zero(rep)));
  for (int i = 0; i < nc; ++i) {
    c[i] = rng.algebra(g, scale);
    if (!constant_only)
      for (int mu = 0; mu < d; ++mu) b[i][mu] = rng.algebra(g, scale);
  }
  return AdjointForm(
      chart, degree, rep,
      [c, b, d](const Vec& x, Comps& out) {
        for (size_t i = 0; i < c.size(); ++i) {
          AlgebraElement v = c[i];
          for (int mu = 0; mu < d; ++mu) v += x[mu] * b[i][mu];
          out[i] = v;
        }
      },
      [b](const Vec&, int mu, Comps& out) {
        for (size_t i = 0; i < b.size(); ++i) out[i] = b[i][mu];
      });
}

struct FourierMode {
  Vec k;
  std::vector<AlgebraElement> cos_coef, sin_coef;  // per component
};

AdjointForm fourier_family(const ChartDomain& chart, int degree, const GroupSpec& g, Rng& rng, double amplitude,
                           int modes, double kmax) {
  if (modes < 1) throw ValidationError("fourier family needs modes >= 1");
  const int d = chart.dim, nc = binomial(d, degree), rep = g.n;
  const double norm = amplitude / std::sqrt(static_cast<double>(modes));
  std::vector<FourierMode> ms(modes);
  for (auto& m : ms) {
    m.k = Vec(d);
    for (int mu = 0; mu < d; ++mu) m.k[mu] = kmax * rng.uniform();
    for (int i = 0; i < nc; ++i) {
      m.cos_coef.push_back(rng.algebra(g, norm));
      m.sin_coef.push_back(rng.algebra(g, norm));
    }
  }
  return AdjointForm(
      chart, degree, rep,
      [ms, nc, rep](const Vec& x, Comps& out) {
        for (int i = 0; i < nc; ++i) out[i] = AlgebraElement::zero(rep);
        for (const auto& m : ms) {
          const double ph = m.k.dot(x), c = std::cos(ph), s = std::sin(ph);
          for (int i = 0; i < nc; ++i) out[i] += c * m.cos_coef[i] + s * m.sin_coef[i];
        }
      },
      [ms, nc, rep](const Vec& x, int mu, Comps& out) {
        for (int i = 0; i < nc; ++i) out[i] = AlgebraElement::zero(rep);
        for (const auto& m : ms) {
          const double ph = m.k.dot(x), c = std::cos(ph), s = std::sin(ph);
          for (int i = 0; i < nc; ++i) out[i] += (m.k[mu] * c) * m.sin_coef[i] - (m.k[mu] * s) * m.cos_coef[i];
        }
      });
}

// Scalar Fourier series in the coordinates listed in `axes`.
struct ScalarFourier {
  std::vector<int> axes;
  std::vector<std::vector<double>> k;
  std::vector<double> a, b;
  double value(const Vec& x) const {
    double v = 0.0;
    for (size_t m = 0; m < a.size(); ++m) {
      double ph = 0.0;
      for (size_t i = 0; i < axes.size(); ++i) ph += k[m][i] * x[axes[i]];
      v += a[m] * std::cos(ph) + b[m] * std::sin(ph);
    }
    return v;
  }
  double deriv(const Vec& x, int mu) const {
    double v = 0.0;
    for (size_t m = 0; m < a.size(); ++m) {
      double ph = 0.0, kmu = 0.0;
      for (size_t i = 0; i < axes.size(); ++i) {
        ph += k[m][i] * x[axes[i]];
        if (axes[i] == mu) kmu += k[m][i];
      }
      v += kmu * (b[m] * std::cos(ph) - a[m] * std::sin(ph));
    }
    return v;
  }
};

ScalarFourier scalar_fourier(Rng& rng, std::vector<int> axes, int modes, double amplitude, double kmax) {
  ScalarFourier f;
  f.axes = std::move(axes);
  const double norm = amplitude / std::sqrt(static_cast<double>(modes));
  for (int m = 0; m < modes; ++m) {
    std::vector<double> k;
    for (size_t i = 0; i < f.axes.size(); ++i) k.push_back(kmax * rng.uniform());
    f.k.push_back(k);
    f.a.push_back(norm * rng.uniform());
    f.b.push_back(norm * rng.uniform());
  }
  return f;
}

// Closed forms valued in one Cartan direction: eta_i = T f_i(x_i), B_ij = T g_ij(x_i, x_j).
AdjointForm cartan_closed_family(const ChartDomain& chart, int degree, const AlgebraElement& t, Rng& rng,
                                 double amplitude, int modes, double kmax) {
  if (degree < 1 || degree > 2) throw ValidationError("cartan_closed builds 1- and 2-forms");
  const int d = chart.dim;
  const auto& sets = index_sets(d, degree);
  std::vector<ScalarFourier> fs;
  for (const auto& s : sets) {
    std::vector<int> axes(s.begin(), s.begin() + degree);
    fs.push_back(scalar_fourier(rng, axes, modes, amplitude, kmax));
  }
  return AdjointForm(
      chart, degree, t.dim(),
      [fs, t](const Vec& x, Comps& out) {
        for (size_t i = 0; i < fs.size(); ++i) out[i] = fs[i].value(x) * t;
      },
      [fs, t](const Vec& x, int mu, Comps& out) {
        for (size_t i = 0; i < fs.size(); ++i) out[i] = fs[i].deriv(x, mu) * t;
      });
}

// A = c T (x dy - y dx), optionally divided by x^2 + y^2 (closed angular form).
AdjointForm vortex_family(const ChartDomain& chart, const AlgebraElement& t, double c, bool angular) {
  const int d = chart.dim;
  return AdjointForm(
      chart, 1, t.dim(),
      [t, c, d, angular](const Vec& x, Comps& out) {
        for (int mu = 0; mu < d; ++mu) out[mu] = AlgebraElement::zero(t.dim());
        const double r2 = angular ? x[0] * x[0] + x[1] * x[1] : 1.0;
        if (r2 == 0.0) throw DomainError("angular form evaluated on its singular axis");
        out[0] = (-c * x[1] / r2) * t;
        out[1] = (c * x[0] / r2) * t;
      },
      [t, c, d, angular](const Vec& x, int mu, Comps& out) {
        for (int nu = 0; nu < d; ++nu) out[nu] = AlgebraElement::zero(t.dim());
        if (!angular) {
          if (mu == 0) out[1] = c * t;
          if (mu == 1) out[0] = -c * t;
          return;
        }
        const double X = x[0], Y = x[1], r2 = X * X + Y * Y, r4 = r2 * r2;
        if (mu == 0) {
          out[0] = (c * 2.0 * X * Y / r4) * t;
          out[1] = (c * (Y * Y - X * X) / r4) * t;
        } else if (mu == 1) {
          out[0] = (c * (Y * Y - X * X) / r4) * t;
          out[1] = (-c * 2.0 * X * Y / r4) * t;
        }
      });
}

double levi3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i - j) * (j - k) * (k - i)) / 2.0;
}

// su(2) hedgehog on the first three axes: A_i = s eps_{aij} x_j T_a, B_ij = s eps_{ijk} x_k T_k.
AdjointForm hedgehog_family(const ChartDomain& chart, int degree, const GroupSpec& g, double s) {
  if (g.family != GroupFamily::SUN || g.n != 2) throw ValidationError("su2_hedgehog needs su(2)");
  if (chart.dim < 3) throw ValidationError("su2_hedgehog needs d >= 3");
  const int d = chart.dim;
  const auto T = g.generators;
  if (degree == 1) {
    return AdjointForm(
        chart, 1, 2,
        [T, s, d](const Vec& x, Comps& out) {
          for (int i = 0; i < d; ++i) {
            out[i] = AlgebraElement::zero(2);
            if (i >= 3) continue;
            for (int a = 0; a < 3; ++a)
              for (int j = 0; j < 3; ++j) {
                const double e = levi3(a, i, j);
                if (e != 0.0) out[i] += (s * e * x[j]) * T[a];
              }
          }
        },
        [T, s, d](const Vec&, int mu, Comps& out) {
          for (int i = 0; i < d; ++i) {
            out[i] = AlgebraElement::zero(2);
            if (i >= 3 || mu >= 3) continue;
            for (int a = 0; a < 3; ++a) {
              const double e = levi3(a, i, mu);
              if (e != 0.0) out[i] += (s * e) * T[a];
            }
          }
        });
  }
  if (degree == 2) {
    const auto& sets = index_sets(d, 2);
    return AdjointForm(
        chart, 2, 2,
        [T, s, sets](const Vec& x, Comps& out) {
          for (size_t c = 0; c < sets.size(); ++c) {
            out[c] = AlgebraElement::zero(2);
            const int i = sets[c][0], j = sets[c][1];
            if (j >= 3) continue;
            for (int k = 0; k < 3; ++k) {
              const double e = levi3(i, j, k);
              if (e != 0.0) out[c] += (s * e * x[k]) * T[k];
            }
          }
        },
        [T, s, sets](const Vec&, int mu, Comps& out) {
          for (size_t c = 0; c < sets.size(); ++c) {
            out[c] = AlgebraElement::zero(2);
            const int i = sets[c][0], j = sets[c][1];
            if (j >= 3 || mu >= 3) continue;
            const double e = levi3(i, j, mu);
            if (e != 0.0) out[c] = (s * e) * T[mu];
          }
        });
  }
  throw ValidationError("su2_hedgehog builds 1- and 2-forms");
}

// Flat A = g^{-1}dg with g = prod_mu exp(x_mu X_mu).
AdjointForm pure_gauge_family(const ChartDomain& chart, const std::vector<AlgebraElement>& xs) {
  const int d = chart.dim;
  auto comps = [xs, d](const Vec& x, Comps& out) {
    // A_mu = Ad_{R^{-1}} X_mu with R = prod_{nu > mu} exp(x_nu X_nu).
    GroupElement r = GroupElement::identity(xs[0].dim());
    for (int mu = d - 1; mu >= 0; --mu) {
      out[mu] = adjoint_act_inv(r, xs[mu]);
      r = exp_unchecked((x[mu] * xs[mu]).matrix()) * r;
    }
  };
  return AdjointForm(chart, 1, xs[0].dim(), comps, [comps, d](const Vec& x, int mu, Comps& out) {
    Comps a(d);
    comps(x, a);
    for (int nu = 0; nu < d; ++nu) out[nu] = mu > nu ? bracket(a[nu], a[mu]) : AlgebraElement::zero(a[0].dim());
  });
}

std::vector<AlgebraElement> pure_gauge_generators(const json& j, int d, const GroupSpec& g) {
  Rng rng(seed_of(j));
  const double scale = num(j, "scale", 0.5);
  std::vector<AlgebraElement> xs;
  for (int mu = 0; mu < d; ++mu) xs.push_back(rng.algebra(g, scale));
  return xs;
}

// amp T f(x) exp(-|x - c|^2 / w^2) on the listed components; f = x_k or 1.
AdjointForm gaussian_family(const json& j, const ChartDomain& chart, int degree, const GroupSpec& g) {
  const int d = chart.dim;
  const double amp = num(j, "amplitude", 1.0), w = num(j, "width", 1.0);
  const int axis = integer(j, "factor_axis", -1);
  if (axis >= d) throw ValidationError("factor_axis out of range");
  Vec center = Vec::Zero(d);
  if (j.contains("center")) {
    const auto c = j.at("center").get<std::vector<double>>();
    if (static_cast<int>(c.size()) != d) throw ValidationError("center needs one coordinate per axis");
    for (int i = 0; i < d; ++i) center[i] = c[i];
  }
  AlgebraElement t = g.generators.at(integer(j, "generator", 0));
  std::vector<int> which;
  if (!j.contains("components")) throw ValidationError("gaussian family needs a components list");
  for (const auto& comp : j.at("components")) {
    std::vector<int> idx = comp.get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != degree) throw ValidationError("gaussian component has the wrong degree");
    which.push_back(component_index(d, degree, idx.data()));
  }
  const int nc = binomial(d, degree);
  auto profile = [center, w, axis, amp](const Vec& x, double* value, Vec* grad) {
    const Vec y = x - center;
    const double e = amp * std::exp(-y.squaredNorm() / (w * w));
    const double f = axis >= 0 ? x[axis] : 1.0;
    *value = f * e;
    if (grad) {
      *grad = (-2.0 / (w * w)) * f * e * y;
      if (axis >= 0) (*grad)[axis] += e;
    }
  };
  return AdjointForm(
      chart, degree, g.n,
      [profile, which, nc, t](const Vec& x, Comps& out) {
        double v;
        profile(x, &v, nullptr);
        for (int i = 0; i < nc; ++i) out[i] = AlgebraElement::zero(t.dim());
        for (int i : which) out[i] = v * t;
      },
      [profile, which, nc, t, d](const Vec& x, int mu, Comps& out) {
        double v;
        Vec grad(d);
        profile(x, &v, &grad);
        for (int i = 0; i < nc; ++i) out[i] = AlgebraElement::zero(t.dim());
        for (int i : which) out[i] = grad[mu] * t;
      });
}

}  // namespace

const std::vector<FieldCatalogEntry>& field_catalog() {
  static const std::vector<FieldCatalogEntry> entries = {
      {"zero", {}, {0, 1, 2, 3}, "identically zero"},
      {"constant", {"seed", "scale"}, {0, 1, 2, 3}, "random constant coefficients"},
      {"linear", {"seed", "scale"}, {0, 1, 2, 3}, "random coefficients affine in x"},
      {"fourier", {"seed", "modes", "amplitude", "kmax"}, {0, 1, 2, 3}, "truncated random Fourier series"},
      {"vortex", {"c", "generator"}, {1}, "c T (x dy - y dx), T a Cartan generator"},
      {"angular", {"c", "generator"}, {1}, "c T (x dy - y dx)/(x^2 + y^2), closed"},
      {"su2_hedgehog", {"scale"}, {1, 2}, "su(2) hedgehog on the first three axes"},
      {"pure_gauge", {"seed", "scale"}, {1}, "flat g^{-1}dg, g = prod exp(x_mu X_mu)"},
      {"cartan_closed", {"seed", "modes", "amplitude", "kmax", "generator"}, {1, 2}, "closed Cartan-valued form"},
      {"gaussian", {"amplitude", "width", "center", "factor_axis", "components", "generator"}, {0, 1, 2, 3},
       "Gaussian bump on chosen components"},
  };
  return entries;
}

AdjointForm make_field(const json& j, int degree, const ChartDomain& chart, const GroupSpec& g) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ValidationError("field spec needs a \"family\" string");
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "zero") return AdjointForm::zero(chart, degree, g.n);
  if (fam == "constant" || fam == "linear") {
    Rng rng(seed_of(j));
    return linear_family(chart, degree, g, rng, num(j, "scale", 0.5), fam == "constant");
  }
  if (fam == "fourier") {
    Rng rng(seed_of(j));
    return fourier_family(chart, degree, g, rng, num(j, "amplitude", 0.5), integer(j, "modes", 3), num(j, "kmax", 1.5));
  }
  if (fam == "vortex" || fam == "angular") {
    if (degree != 1) throw ValidationError(fam + " builds 1-forms only");
    return vortex_family(chart, cartan_generator(j, g), num(j, "c", 1.0), fam == "angular");
  }
  if (fam == "su2_hedgehog") return hedgehog_family(chart, degree, g, num(j, "scale", 0.4));
  if (fam == "pure_gauge") {
    if (degree != 1) throw ValidationError("pure_gauge builds 1-forms only");
    return pure_gauge_family(chart, pure_gauge_generators(j, chart.dim, g));
  }
  if (fam == "cartan_closed") {
    Rng rng(seed_of(j));
    return cartan_closed_family(chart, degree, cartan_generator(j, g), rng, num(j, "amplitude", 0.5),
                                integer(j, "modes", 3), num(j, "kmax", 1.5));
  }
  if (fam == "gaussian") return gaussian_family(j, chart, degree, g);
  throw ValidationError("unknown field family: " + fam);
}

VectorField make_vector_field(const json& j, int dim) {
  if (!j.is_object() || !j.contains("family")) throw ValidationError("vector field spec needs a \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  VectorField v;
  v.dim = dim;
  if (fam == "zero") {
    v.value = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
    v.jacobian = [dim](const Vec&) { return Jacobian(Jacobian::Zero(dim, dim)); };
    return v;
  }
  if (fam == "rotation") {
    // omega * (-(x_j - c_j), x_i - c_i) in the (i, j) plane.
    const double w = num(j, "omega", 1.0);
    const int i = integer(j, "i", 0), k = integer(j, "j", 1);
    if (i < 0 || k < 0 || i >= dim || k >= dim || i == k) throw ValidationError("rotation plane out of range");
    Vec c = Vec::Zero(dim);
    if (j.contains("center")) {
      const auto cc = j.at("center").get<std::vector<double>>();
      if (static_cast<int>(cc.size()) != dim) throw ValidationError("center needs one coordinate per axis");
      for (int a = 0; a < dim; ++a) c[a] = cc[a];
    }
    v.value = [=](const Vec& x) {
      Vec out = Vec::Zero(dim);
      out[i] = -w * (x[k] - c[k]);
      out[k] = w * (x[i] - c[i]);
      return out;
    };
    v.jacobian = [=](const Vec&) {
      Jacobian m = Jacobian::Zero(dim, dim);
      m(i, k) = -w;
      m(k, i) = w;
      return m;
    };
    return v;
  }
  if (fam == "linear" || fam == "constant") {
    Rng rng(seed_of(j));
    const double s = num(j, "scale", 0.5);
    Jacobian m = Jacobian::Zero(dim, dim);
    Vec b(dim);
    for (int a = 0; a < dim; ++a) {
      b[a] = s * rng.uniform();
      if (fam == "linear")
        for (int c = 0; c < dim; ++c) m(a, c) = s * rng.uniform();
    }
    v.value = [m, b](const Vec& x) { return Vec(m * x + b); };
    v.jacobian = [m](const Vec&) { return m; };
    return v;
  }
  if (fam == "fourier") {
    Rng rng(seed_of(j));
    const int modes = integer(j, "modes", 3);
    const double amp = num(j, "amplitude", 0.5), kmax = num(j, "kmax", 1.5);
    std::vector<int> axes(dim);
    for (int a = 0; a < dim; ++a) axes[a] = a;
    std::vector<ScalarFourier> fs;
    for (int a = 0; a < dim; ++a) fs.push_back(scalar_fourier(rng, axes, modes, amp, kmax));
    v.value = [fs, dim](const Vec& x) {
      Vec out(dim);
      for (int a = 0; a < dim; ++a) out[a] = fs[a].value(x);
      return out;
    };
    v.jacobian = [fs, dim](const Vec& x) {
      Jacobian m(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int c = 0; c < dim; ++c) m(a, c) = fs[a].deriv(x, c);
      return m;
    };
    return v;
  }
  throw ValidationError("unknown vector field family: " + fam);
}

GaugeMap make_gauge_map(const json& j, const ChartDomain& chart, const GroupSpec& g) {
  if (!j.is_object() || !j.contains("family")) throw ValidationError("gauge map spec needs a \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "identity") return GaugeMap::identity(chart, g.n);
  if (fam == "constant") {
    Rng rng(seed_of(j));
    return GaugeMap::constant(chart, rng.group(g, num(j, "scale", 1.0)));
  }
  const int d = chart.dim;
  std::vector<AlgebraElement> xs;
  std::vector<ScalarFourier> fs;
  if (fam == "pure_gauge") {
    // Coefficients are the coordinates themselves: g = prod exp(x_mu X_mu).
    xs = pure_gauge_generators(j, d, g);
  } else if (fam == "euler") {
    // g = prod_i exp(f_i(x) X_i), f_i random Fourier scalars, X_i the generators.
    Rng rng(seed_of(j));
    const int modes = integer(j, "modes", 3);
    const double amp = num(j, "amplitude", 1.0), kmax = num(j, "kmax", 1.5);
    std::vector<int> axes(d);
    for (int a = 0; a < d; ++a) axes[a] = a;
    for (const auto& t : g.generators) {
      xs.push_back(t);
      fs.push_back(scalar_fourier(rng, axes, modes, amp, kmax));
    }
  } else {
    throw ValidationError("unknown gauge map family: " + fam);
  }
  const bool linear = fam == "pure_gauge";
  auto coeff = [fs, linear](const Vec& x, size_t i) { return linear ? x[static_cast<int>(i)] : fs[i].value(x); };
  auto dcoeff = [fs, linear](const Vec& x, size_t i, int mu) {
    return linear ? (static_cast<int>(i) == mu ? 1.0 : 0.0) : fs[i].deriv(x, mu);
  };
  GaugeMap m;
  m.chart = chart;
  m.rep_dim = g.n;
  m.value = [xs, coeff](const Vec& x) {
    GroupElement out = GroupElement::identity(xs[0].dim());
    for (size_t i = 0; i < xs.size(); ++i) out = out * exp_unchecked((coeff(x, i) * xs[i]).matrix());
    return out;
  };
  m.derivative = [xs, coeff, dcoeff](const Vec& x, int mu) {
    const int n = xs[0].dim();
    std::vector<GroupElement> e;
    for (size_t i = 0; i < xs.size(); ++i) e.push_back(exp_unchecked((coeff(x, i) * xs[i]).matrix()));
    Matrix out = Matrix::Zero(n, n);
    for (size_t i = 0; i < xs.size(); ++i) {
      const double dc = dcoeff(x, i, mu);
      if (dc == 0.0) continue;
      Matrix left = Matrix::Identity(n, n);
      for (size_t k = 0; k < i; ++k) left = left * e[k].matrix();
      Matrix right = e[i].matrix();
      for (size_t k = i + 1; k < xs.size(); ++k) right = right * e[k].matrix();
      out += dc * left * xs[i].matrix() * right;
    }
    return out;
  };
  return m;
}

}  // namespace holo
