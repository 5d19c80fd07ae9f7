#include <fstream>
#include <iostream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "holo/errors.hpp"
#include "holo/experiment.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::string format = "json";
  int workers = 0;
  int steps_s = 0;
  int steps_t = 0;
  long long seed = -1;
  std::string richardson;
  long long tangent_seed = -1;
  std::string variation_kind;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output directory");
  app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--workers", c.workers, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app->add_option("--steps-s", c.steps_s, "s steps; replaces the grid schedule")->check(CLI::PositiveNumber);
  app->add_option("--steps-t", c.steps_t, "t steps; replaces the grid schedule")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "seed for randomized defaults")->check(CLI::NonNegativeNumber);
  app->add_option("--richardson", c.richardson, "step-halving error estimates")->check(CLI::IsMember({"on", "off"}));
}

int run(const std::string& sub, const Common& c) {
  nlohmann::json config;
  {
    std::ifstream in(c.config);
    try {
      config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw holo::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  holo::Overrides o;
  if (sub != "converge") o.kind = sub;
  if (!c.variation_kind.empty()) o.variation_kind = c.variation_kind;
  if (c.steps_s > 0) o.steps_s = c.steps_s;
  if (c.steps_t > 0) o.steps_t = c.steps_t;
  if (c.seed >= 0) o.seed = static_cast<unsigned long long>(c.seed);
  if (c.tangent_seed >= 0) o.tangent_seed = static_cast<unsigned long long>(c.tangent_seed);
  if (!c.richardson.empty()) o.richardson = c.richardson == "on";
  const holo::ExperimentConfig cfg = holo::ExperimentConfig::parse(holo::apply_overrides(config, o));
  if (sub == "converge" && cfg.grids.size() < 3) throw holo::ValidationError("converge needs at least three grid levels");
  if (c.workers > 0) omp_set_num_threads(c.workers);
  const holo::Report rep = holo::run_experiment(cfg);
  holo::emit(rep, c.out, c.format);
  const auto& rows = rep.payload.at("rows");
  for (const auto& r : rows)
    std::cout << cfg.kind << " Ns=" << r.at("ns") << " Nt=" << r.at("nt") << " residual=" << r.at("residual")
              << " error=" << r.at("error_estimate") << " ratio=" << r.at("ratio") << '\n';
  std::cout << (rep.pass ? "PASS" : "FAIL") << '\n';
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holonomy of special connections on path spaces"};
  app.require_subcommand(1);
  Common c;
  const char* subs[] = {"wilson", "surface", "stokes-check", "curvature", "variation", "observe", "flatness", "converge"};
  const char* help[] = {"holonomy of A along a loop",
                        "surface transport H and Hol_(A,B)",
                        "tautological surface holonomy against boundary transport",
                        "path-space curvature, term by term",
                        "analytic first variations against finite differences",
                        "observables and their gauge residuals",
                        "flatness and reducibility residuals",
                        "convergence study for the config's kind"};
  for (int i = 0; i < 8; ++i) {
    CLI::App* s = app.add_subcommand(subs[i], help[i]);
    add_common(s, c);
    if (std::string(subs[i]) == "curvature")
      s->add_option("--tangent-seed", c.tangent_seed, "seed of the random tangents")->check(CLI::NonNegativeNumber);
    if (std::string(subs[i]) == "variation")
      s->add_option("--kind", c.variation_kind, "variation formula")
          ->check(CLI::IsMember({"connection", "aut", "cylinder", "symmetry", "surface-law"}));
  }
  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    return run(sub, c);
  } catch (const holo::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
  } catch (const holo::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
  } catch (const holo::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
  } catch (const holo::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
  } catch (const holo::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
