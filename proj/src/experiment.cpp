#include "holo/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "holo/catalog.hpp"
#include "holo/chen.hpp"
#include "holo/errors.hpp"
#include "holo/observables.hpp"
#include "holo/transport.hpp"
#include "holo/variations.hpp"

#ifndef HOLO_VERSION
#define HOLO_VERSION "0.0.0"
#endif

namespace holo {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string>& known_kinds() {
  static const std::vector<std::string> k = {"wilson",    "surface", "stokes-check", "curvature",
                                             "variation", "observe", "flatness"};
  return k;
}

json num_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Grids parse_level(const json& g) {
  Grids out;
  if (g.is_number_integer()) {
    out.ns = out.nt = g.get<int>();
  } else if (g.is_array() && g.size() == 2) {
    out.ns = g[0].get<int>();
    out.nt = g[1].get<int>();
  } else if (g.is_object()) {
    out.ns = g.at("ns").get<int>();
    out.nt = g.at("nt").get<int>();
  } else {
    throw ValidationError("grid level must be N, [Ns, Nt] or {\"ns\":..,\"nt\":..}");
  }
  if (out.ns < 2 || out.nt < 2) throw ValidationError("grid levels need at least 2 steps per direction");
  return out;
}

ChartDomain parse_chart(const json& j) {
  ChartDomain c;
  c.dim = j.value("dim", 3);
  if (c.dim < 2 || c.dim > 4) throw ValidationError("chart dimension must be 2, 3 or 4");
  if (j.contains("box")) {
    for (const auto& r : j.at("box")) c.box.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
  } else {
    c = ChartDomain::cube(c.dim, j.value("half_width", 2.0));
  }
  c.h_fd = j.value("h_fd", 1e-4);
  c.validate();
  return c;
}

GroupSpec parse_group(const json& j) {
  return GroupSpec::from_name(j.value("family", std::string("su")), j.value("n", 2),
                              j.value("generators", std::string()), j.value("cartan", std::vector<int>{}));
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  return j.contains(key) ? j.at(key) : empty;
}

struct Fields {
  AdjointForm a, b, eta, beta, xi;
  bool tautological = false;
};

AdjointForm field_or(const json& f, const char* key, int degree, const ExperimentConfig& c, bool required) {
  if (!f.contains(key)) {
    if (required) throw ValidationError(std::string("config needs fields.") + key);
    return AdjointForm();
  }
  return make_field(f.at(key), degree, c.chart, c.group);
}

Fields load_fields(const ExperimentConfig& c) {
  const json& f = section(c.raw, "fields");
  Fields out;
  out.a = field_or(f, "A", 1, c, true);
  if (f.contains("B") && f.at("B").is_string()) {
    if (f.at("B").get<std::string>() != "tautological") throw ValidationError("fields.B string must be \"tautological\"");
    out.tautological = true;
    out.b = -1.0 * curvature_F(out.a);
  } else {
    out.b = field_or(f, "B", 2, c, false);
    if (!out.b.valid()) out.b = AdjointForm::zero(c.chart, 2, c.group.n);
  }
  out.eta = field_or(f, "eta", 1, c, false);
  out.beta = field_or(f, "beta", 2, c, false);
  out.xi = field_or(f, "xi", 0, c, false);
  return out;
}

Square load_square(const ExperimentConfig& c) {
  const json& g = section(c.raw, "geometry");
  if (!g.contains("square")) throw ValidationError("config needs geometry.square");
  Square sq = make_square(g.at("square"), c.chart.dim);
  sq.validate();
  return sq;
}

Path load_path(const ExperimentConfig& c) {
  const json& g = section(c.raw, "geometry");
  if (g.contains("path")) return make_path(g.at("path"), c.chart.dim);
  if (g.contains("square")) return boundary_loop(make_square(g.at("square"), c.chart.dim));
  throw ValidationError("config needs geometry.path or geometry.square");
}

double unitarity(const Matrix& m) {
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

json group_json(const GroupElement& g) { return matrix_json(g.matrix()); }

// One grid level of one experiment.
struct Row {
  json data = json::object();
  Complex trace{0.0, 0.0};
  double residual = kNaN;
  double error = kNaN;
  Matrix value;
};

Row finish(Row r, const Grids& g) {
  r.data["ns"] = g.ns;
  r.data["nt"] = g.nt;
  r.data["value"] = matrix_json(r.value);
  r.data["trace"] = complex_json(r.trace);
  r.data["residual"] = num_or_null(r.residual);
  r.data["error_estimate"] = num_or_null(r.error);
  return r;
}

// Midpoint-rule flux ∬ Γ*w for an abelian 2-form, as a matrix.
Matrix surface_flux(const AdjointForm& w, const Square& sq, int n) {
  Matrix acc = Matrix::Zero(w.rep_dim(), w.rep_dim());
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double s = (i + 0.5) * h, t = (j + 0.5) * h;
      acc += w(sq.pos(s, t), {sq.ds(s, t), sq.dt(s, t)}).matrix();
    }
  return acc * h * h;
}

Row run_wilson(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const Path loop = load_path(c);
  Row r;
  const TransportResult t = loop.loop ? holonomy_A(f.a, loop, g.nt, true) : transport_A(f.a, loop, g.nt, true);
  r.value = t.value.matrix();
  r.trace = r.value.trace();
  r.error = t.error_estimate;
  r.data["steps"] = t.steps;
  r.data["unitarity"] = unitarity(r.value);
  r.residual = r.error;
  const json& geo = section(c.raw, "geometry");
  if (c.group.family == GroupFamily::U1k && geo.contains("square") && !geo.contains("path")) {
    // Abelian reference on a fine midpoint grid. ∂Γ runs against the (s,t) orientation, so the
    // holonomy is exp(+∬ F_A(Γ', Γ̇)).
    const Square sq = make_square(geo.at("square"), c.chart.dim);
    const Matrix ref = exp_unchecked(surface_flux(curvature_F(f.a), sq, 4 * g.nt)).matrix();
    r.residual = (r.value - ref).norm();
    r.data["reference"] = "exp of the F_A flux through the square";
  }
  return r;
}

SurfaceOptions surface_opts(const Grids& g, SurfaceRoute route = SurfaceRoute::bholonomy) {
  SurfaceOptions o;
  o.grids = g;
  o.route = route;
  return o;
}

Row run_surface(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const Square sq = load_square(c);
  const SpecialConnection conn{f.a, f.eta, f.b};
  Row r;
  const json& s = section(c.raw, "surface");
  const bool want_hol = sq.loop_s && s.value("holonomy", true);
  Matrix other;
  if (want_hol) {
    const HolAB h = hol_AB(conn, sq, surface_opts(g));
    r.value = h.value.matrix();
    r.data["H"] = group_json(h.H);
    r.data["hol_a"] = group_json(h.hol_a);
    r.data["factorization_residual"] = h.factorization_residual;
    other = hol_AB(conn, sq, surface_opts(g, SurfaceRoute::conjugated)).value.matrix();
    r.data["quantity"] = "Hol_(A,B)";
  } else {
    r.value = H_map(conn, sq, surface_opts(g)).matrix();
    other = H_map(conn, sq, surface_opts(g, SurfaceRoute::conjugated)).matrix();
    r.data["quantity"] = "H";
  }
  r.trace = r.value.trace();
  r.error = (r.value - other).norm();
  r.data["route_difference"] = r.error;
  r.residual = unitarity(r.value);
  r.data["residual_kind"] = "unitarity";
  return r;
}

Row run_stokes(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const Square sq = load_square(c);
  const StokesCheck st = tautological_check(f.a, sq, surface_opts(g));
  Row r;
  r.value = st.surface.matrix();
  r.trace = r.value.trace();
  r.data["boundary"] = group_json(st.boundary);
  r.residual = st.residual;
  r.error = st.residual;
  return r;
}

CurvatureTerms curvature_at(const ExperimentConfig& c, const Fields& f, const Path& gamma, int n,
                            unsigned long long tseed, double scale, double* admissibility) {
  const VectorAlong x = random_along(tseed, c.chart.dim, scale);
  const VectorAlong y = random_along(tseed + 1, c.chart.dim, scale);
  Rng rng(tseed + 2);
  const AlgebraElement xi_x = rng.algebra(c.group, scale), xi_y = rng.algebra(c.group, scale);
  const FrameFactor frame = frame_factor(f.a, gamma, n);
  const PathTangent tx = lift_tangent(f.a, gamma, frame, x, xi_x);
  const PathTangent ty = lift_tangent(f.a, gamma, frame, y, xi_y);
  CurvatureTerms terms = curvature_FAB(f.a, f.b, tx, ty, admissibility != nullptr);
  if (admissibility) *admissibility = terms.admissibility;
  return terms;
}

Row run_curvature(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const json& cs = section(c.raw, "curvature");
  const Path gamma = load_path(c);
  const unsigned long long tseed = cs.value("tangent_seed", c.seed);
  const double scale = cs.value("scale", 0.3);
  double adm = 0.0;
  const CurvatureTerms fine = curvature_at(c, f, gamma, g.nt, tseed, scale, &adm);
  const CurvatureTerms coarse = curvature_at(c, f, gamma, g.nt / 2, tseed, scale, nullptr);
  Row r;
  r.value = fine.total.matrix();
  r.trace = r.value.trace();
  r.residual = adm;
  r.data["residual_kind"] = "horizontality of the lifted tangents";
  r.error = (fine.total - coarse.total).norm() / 3.0;
  r.data["terms"] = {{"f_a", matrix_json(fine.f_a.matrix())},     {"end_b", matrix_json(fine.end_b.matrix())},
                     {"start_b", matrix_json(fine.start_b.matrix())}, {"dab", matrix_json(fine.dab.matrix())},
                     {"chen", matrix_json(fine.chen.matrix())}};
  r.data["tangent_seed"] = tseed;
  r.data["warnings"] = fine.warnings;
  return r;
}

AutVectorField load_aut(const ExperimentConfig& c, const Fields& f) {
  const json& fs = section(c.raw, "fields");
  if (!fs.contains("v")) throw ValidationError("config needs fields.v");
  return {make_vector_field(fs.at("v"), c.chart.dim), f.xi};
}

SymmetryMode parse_symmetry_mode(const std::string& m) {
  if (m == "direction") return SymmetryMode::direction;
  if (m == "first_action") return SymmetryMode::first_action;
  if (m == "second_action") return SymmetryMode::second_action;
  throw ValidationError("unknown symmetry mode: " + m);
}

Row run_variation(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const json& vs = section(c.raw, "variation");
  const std::string kind = vs.value("kind", std::string("connection"));
  VariationOptions opt;
  opt.grids = g;
  if (vs.contains("kappas")) opt.kappas = vs.at("kappas").get<std::vector<double>>();
  opt.grid_richardson = vs.value("grid_richardson", false);
  Row r;
  r.data["variation_kind"] = kind;
  if (kind == "surface-law") {
    if (!f.eta.valid()) throw ValidationError("surface-law needs fields.eta");
    const json& iso = vs.contains("isotopy") ? vs.at("isotopy") : json::object();
    const IsotopyFamily fam =
        make_isotopy(iso.value("kind", std::string("in-surface-flow")), iso.value("params", json::object()), load_square(c));
    const std::string mode = vs.value("mode", std::string("lambda"));
    if (mode != "lambda" && mode != "kappa") throw ValidationError("surface-law mode must be lambda or kappa");
    const SurfaceLawReport s = surface_law_check(f.a, f.eta, f.b, fam, mode == "lambda" ? SurfaceLawMode::lambda
                                                                                       : SurfaceLawMode::kappa,
                                                 g, vs.value("step", 1e-3), vs.value("r_step", 1e-3));
    r.value = s.mixed_matrix;
    r.residual = s.mixed;
    r.error = std::abs(s.mixed_fine - s.mixed_coarse);
    r.data["mode"] = mode;
    r.data["mixed_coarse"] = s.mixed_coarse;
    r.data["mixed_fine"] = s.mixed_fine;
    r.data["observed_order"] = num_or_null(s.observed_order);
    r.data["flatness"] = s.flatness;
    r.data["conditions_met"] = s.conditions_met;
    r.data["conditions"] = s.conditions;
    r.trace = r.value.trace();
    return r;
  }
  VariationReport v;
  if (kind == "connection") {
    if (!f.eta.valid()) throw ValidationError("connection variation needs fields.eta");
    v = dHol_connection(f.a, load_path(c), f.eta, opt);
  } else if (kind == "aut") {
    v = dTrHol_aut(f.a, load_path(c), load_aut(c, f), opt);
  } else if (kind == "cylinder") {
    v = cylinder_variation(f.a, f.b, load_square(c), load_aut(c, f), opt);
  } else if (kind == "symmetry") {
    if (!f.eta.valid()) throw ValidationError("symmetry variation needs fields.eta");
    const SymmetryMode mode = parse_symmetry_mode(vs.value("mode", std::string("direction")));
    if (mode == SymmetryMode::direction && !f.beta.valid()) throw ValidationError("direction mode needs fields.beta");
    v = symmetry_variation(f.a, f.b, load_square(c), f.eta, f.beta, mode, opt);
  } else {
    throw ValidationError("unknown variation kind: " + kind);
  }
  r.value = v.analytic;
  r.trace = v.analytic.trace();
  r.residual = v.discrepancy;
  r.error = std::isfinite(v.grid_error) ? std::hypot(v.kappa_error, v.grid_error) : v.kappa_error;
  r.data["fd"] = matrix_json(v.fd);
  r.data["kappas"] = v.kappas;
  r.data["kappa_error"] = v.kappa_error;
  r.data["grid_error"] = num_or_null(v.grid_error);
  r.data["breakdown"] = v.breakdown;
  return r;
}

Row run_observe(const ExperimentConfig& c, const Fields& f, const Grids& g) {
  const json& os = section(c.raw, "observable");
  ObservableSpec spec;
  spec.kind = os.value("kind", spec.kind);
  spec.alpha = os.value("alpha", spec.alpha);
  spec.beta = os.value("beta", spec.beta);
  spec.validate(c.chart.dim);
  const Square sq = load_square(c);
  const json& fs = section(c.raw, "fields");
  const GaugeMap gm = fs.contains("gauge") ? make_gauge_map(fs.at("gauge"), c.chart, c.group)
                                           : GaugeMap::identity(c.chart, c.group.n);
  const auto rows = gauge_invariance_report(spec, f.a, f.b, sq, surface_opts(g), gm, f.eta);
  Grids half{std::max(2, g.ns / 2), std::max(2, g.nt / 2)};
  const Complex coarse = evaluate_observable(spec, f.a, f.b, sq, surface_opts(half));
  Row r;
  r.trace = rows.front().before;
  r.value = Matrix::Constant(1, 1, r.trace);
  r.residual = 0.0;
  json gr = json::array();
  for (const auto& row : rows) {
    r.residual = std::max(r.residual, row.discrepancy);
    gr.push_back({{"transformation", row.transformation},
                  {"after", complex_json(row.after)},
                  {"discrepancy", row.discrepancy}});
  }
  r.error = std::abs(r.trace - coarse) / 3.0;
  r.data["observable"] = {{"kind", spec.kind}, {"alpha", spec.alpha}, {"beta", spec.beta}};
  r.data["gauge"] = gr;
  if (c.chart.dim == 4 && section(c.raw, "observable").value("actions", false)) {
    const ActionValues av = action_values(f.a, f.b, section(c.raw, "observable").value("cells", 24));
    r.data["actions"] = {{"S_YM", complex_json(av.s_ym)},
                         {"S_YM_prime", complex_json(av.s_ym_prime)},
                         {"S_tYM", complex_json(av.s_tym)},
                         {"S_BF_BB", complex_json(av.s_bf_bb)},
                         {"S_BF", complex_json(av.s_bf)},
                         {"cells_per_axis", av.cells_per_axis}};
  }
  return r;
}

Row run_flatness(const ExperimentConfig& c, const Fields& f) {
  const json& fl = section(c.raw, "flatness");
  const int samples = fl.value("samples", 32);
  const FlatnessResiduals res = flatness_check(f.a, f.b, c.group, samples, c.seed);
  Row r;
  r.value = Matrix::Zero(1, 1);
  r.residual = std::max(res.f_a, res.dab);
  r.error = 0.0;
  r.data["f_a"] = res.f_a;
  r.data["dab"] = res.dab;
  r.data["cartan"] = res.cartan;
  r.data["samples"] = samples;
  return r;
}

json metadata(const ExperimentConfig& c) {
  std::ostringstream ip;
  ip << "<X,Y> = " << c.group.inner_normalization << " Re Tr(XY)";
  return {{"inner_product", ip.str()},
          {"representation", "defining, N = " + std::to_string(c.group.n)},
          {"trace", "matrix trace in the defining representation"},
          {"group", c.group.family_name()},
          {"assumptions",
           {{"compact_support", "fields are evaluated on a finite chart box; integrals are truncated to it"},
            {"embeddedness", "not checked; surfaces are arbitrary smooth maps into the chart"}}}};
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  c.kind = j.value("kind", std::string());
  if (std::find(known_kinds().begin(), known_kinds().end(), c.kind) == known_kinds().end())
    throw ValidationError("unknown experiment kind: \"" + c.kind + "\"");
  c.group = parse_group(section(j, "group"));
  c.chart = parse_chart(section(j, "chart"));
  if (!j.contains("grids") || !j.at("grids").is_array()) throw ValidationError("config needs a grids list");
  for (const auto& g : j.at("grids")) c.grids.push_back(parse_level(g));
  if (c.grids.empty()) throw ValidationError("grid schedule is empty");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw ValidationError("seed must be an integer");
    c.seed = j.at("seed").get<unsigned long long>();
  }
  c.richardson = j.value("richardson", false);
  const json& tol = section(j, "tolerances");
  if (tol.contains("residual")) c.residual_tolerance = tol.at("residual").get<double>();
  if (tol.contains("ratio")) {
    const auto band = tol.at("ratio").get<std::vector<double>>();
    if (band.size() != 2 || band[0] > band[1]) throw ValidationError("tolerances.ratio must be [lo, hi]");
    c.ratio_band = std::make_pair(band[0], band[1]);
  }
  return c;
}

json apply_overrides(json config, const Overrides& o) {
  if (o.kind) {
    if (config.contains("kind") && config.at("kind") != *o.kind)
      throw ValidationError("subcommand " + *o.kind + " does not match config kind " + config.at("kind").dump());
    config["kind"] = *o.kind;
  }
  if (o.variation_kind) config["variation"]["kind"] = *o.variation_kind;
  if (o.steps_s || o.steps_t) {
    Grids g;
    if (config.contains("grids") && config.at("grids").is_array() && !config.at("grids").empty())
      g = parse_level(config.at("grids").back());
    if (o.steps_s) g.ns = *o.steps_s;
    if (o.steps_t) g.nt = *o.steps_t;
    config["grids"] = json::array({json::array({g.ns, g.nt})});
  }
  if (o.seed) config["seed"] = *o.seed;
  if (o.tangent_seed) config["curvature"]["tangent_seed"] = *o.tangent_seed;
  if (o.richardson) config["richardson"] = *o.richardson;
  return config;
}

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json matrix_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r1 = json::array(), r2 = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      r1.push_back(m(i, j).real());
      r2.push_back(m(i, j).imag());
    }
    re.push_back(r1);
    im.push_back(r2);
  }
  return {{"re", re}, {"im", im}};
}

json complex_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Report run_experiment(const ExperimentConfig& c) {
  Report rep;
  Fields f;
  try {
    f = load_fields(c);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("fields: ") + e.what());
  }
  std::vector<Row> rows;
  auto one = [&](const Grids& g) {
    if (c.kind == "wilson") return run_wilson(c, f, g);
    if (c.kind == "surface") return run_surface(c, f, g);
    if (c.kind == "stokes-check") return run_stokes(c, f, g);
    if (c.kind == "curvature") return run_curvature(c, f, g);
    if (c.kind == "variation") return run_variation(c, f, g);
    if (c.kind == "observe") return run_observe(c, f, g);
    return run_flatness(c, f);
  };
  const std::vector<Grids> levels = c.kind == "flatness" ? std::vector<Grids>{c.grids.front()} : c.grids;
  for (const Grids& g : levels) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rows.push_back(finish(one(g), g));
    } catch (const ValidationError& e) {
      throw ValidationError(c.kind + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError(c.kind + ": " + e.what());
    } catch (const PreconditionError& e) {
      throw PreconditionError(c.kind + ": " + e.what());
    } catch (const UnsupportedError& e) {
      throw UnsupportedError(c.kind + ": " + e.what());
    }
    rep.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }

  // Convergence ratios need three levels. Exact-reference residuals (stokes-check, variation) use
  // residual ratios; otherwise successive differences of the value.
  const bool by_residual = c.kind == "stokes-check" || c.kind == "variation";
  std::vector<double> ratios(rows.size(), kNaN);
  if (rows.size() >= 3) {
    for (size_t i = 1; i < rows.size(); ++i) {
      if (by_residual) {
        ratios[i] = rows[i - 1].residual / rows[i].residual;
      } else if (i >= 2) {
        const double d1 = (rows[i - 1].value - rows[i - 2].value).norm();
        const double d2 = (rows[i].value - rows[i - 1].value).norm();
        ratios[i] = d1 / d2;
      }
    }
  }
  json jr = json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i].data["ratio"] = num_or_null(ratios[i]);
    jr.push_back(rows[i].data);
  }

  json checks = json::array();
  if (c.residual_tolerance) {
    const double r = rows.back().residual;
    const bool ok = std::isfinite(r) && r <= *c.residual_tolerance;
    checks.push_back({{"name", "residual at finest level"}, {"value", num_or_null(r)},
                      {"tolerance", *c.residual_tolerance}, {"pass", ok}});
    rep.pass = rep.pass && ok;
  }
  if (c.ratio_band) {
    bool any = false;
    for (double q : ratios) {
      if (!std::isfinite(q)) continue;
      any = true;
      const bool ok = q >= c.ratio_band->first && q <= c.ratio_band->second;
      checks.push_back({{"name", "convergence ratio"}, {"value", q},
                        {"tolerance", {c.ratio_band->first, c.ratio_band->second}}, {"pass", ok}});
      rep.pass = rep.pass && ok;
    }
    if (!any) {
      checks.push_back({{"name", "convergence ratio"}, {"value", nullptr}, {"pass", false},
                        {"note", "ratios need at least three grid levels"}});
      rep.pass = false;
    }
  }

  rep.payload = {{"kind", c.kind},
                 {"config_hash", config_hash(c.raw)},
                 {"code_version", HOLO_VERSION},
                 {"metadata", metadata(c)},
                 {"ratio_basis", by_residual ? "residual" : "successive differences"},
                 {"rows", jr},
                 {"checks", checks},
                 {"pass", rep.pass}};
  return rep;
}

std::string csv_table(const json& payload) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "Ns,Nt,trace_re,trace_im,residual,error_estimate,ratio\n";
  auto cell = [](const json& v) -> std::string {
    if (v.is_null()) return "";
    std::ostringstream s;
    s << std::setprecision(17) << v.get<double>();
    return s.str();
  };
  for (const auto& r : payload.at("rows")) {
    os << r.at("ns").get<int>() << ',' << r.at("nt").get<int>() << ',' << cell(r.at("trace").at("re")) << ','
       << cell(r.at("trace").at("im")) << ',' << cell(r.at("residual")) << ',' << cell(r.at("error_estimate"))
       << ',' << cell(r.at("ratio")) << '\n';
  }
  return os.str();
}

void emit(const Report& r, const std::string& dir, const std::string& format) {
  if (format != "json" && format != "csv") throw ValidationError("format must be json or csv");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw OutputError("cannot write " + p.string());
    out << text;
    if (!out) throw OutputError("cannot write " + p.string());
  };
  if (format == "json")
    write(fs::path(dir) / "report.json", r.payload.dump(2) + "\n");
  else
    write(fs::path(dir) / "report.csv", csv_table(r.payload));
  json timing = {{"config_hash", r.payload.at("config_hash")}, {"seconds", r.seconds}};
  write(fs::path(dir) / "timing.json", timing.dump(2) + "\n");
}

}  // namespace holo
