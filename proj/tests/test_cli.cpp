#include <doctest.h>

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holo/errors.hpp"
#include "holo/experiment.hpp"

using namespace holo;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json stokes_config() {
  return json{{"kind", "stokes-check"},
              {"group", {{"family", "su"}, {"n", 2}, {"generators", "pauli"}}},
              {"chart", {{"dim", 3}, {"half_width", 2.0}}},
              {"fields", {{"A", {{"family", "fourier"}, {"seed", 3}, {"amplitude", 0.6}}}}},
              {"geometry", {{"square", {{"kind", "lissajous"}, {"seed", 5}, {"amplitude", 0.2}}}}},
              {"grids", {8, 16, 32}},
              {"tolerances", {{"residual", 1e-2}, {"ratio", {3.5, 4.5}}}}};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "holo_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config validation") {
  SUBCASE("empty grid schedule") {
    json c = stokes_config();
    c["grids"] = json::array();
    CHECK_THROWS_AS(ExperimentConfig::parse(c), ValidationError);
  }
  SUBCASE("unknown kind") {
    json c = stokes_config();
    c["kind"] = "teleport";
    CHECK_THROWS_AS(ExperimentConfig::parse(c), ValidationError);
  }
  SUBCASE("grid forms") {
    json c = stokes_config();
    c["grids"] = json::array({16, {8, 24}, {{"ns", 4}, {"nt", 12}}});
    const ExperimentConfig cfg = ExperimentConfig::parse(c);
    REQUIRE(cfg.grids.size() == 3);
    CHECK(cfg.grids[1].ns == 8);
    CHECK(cfg.grids[1].nt == 24);
    CHECK(cfg.grids[2].nt == 12);
  }
  SUBCASE("overrides") {
    Overrides o;
    o.steps_s = 12;
    o.steps_t = 20;
    const json c = apply_overrides(stokes_config(), o);
    const ExperimentConfig cfg = ExperimentConfig::parse(c);
    REQUIRE(cfg.grids.size() == 1);
    CHECK(cfg.grids[0].ns == 12);
    CHECK(cfg.grids[0].nt == 20);
    Overrides clash;
    clash.kind = "surface";
    CHECK_THROWS_AS(apply_overrides(stokes_config(), clash), ValidationError);
  }
  SUBCASE("config hash") {
    CHECK(config_hash(stokes_config()) == config_hash(stokes_config()));
    CHECK(config_hash(stokes_config()).size() == 16);
    json c = stokes_config();
    c["grids"] = {8, 16};
    CHECK(config_hash(c) != config_hash(stokes_config()));
  }
}

TEST_CASE("stokes-check report") {
  const Report r = run_experiment(ExperimentConfig::parse(stokes_config()));
  const json& p = r.payload;
  CHECK(p["kind"] == "stokes-check");
  REQUIRE(p["rows"].size() == 3);
  CHECK(p["rows"][0]["ratio"].is_null());
  for (int i = 1; i < 3; ++i) {
    const double q = p["rows"][i]["ratio"].get<double>();
    CHECK(q > 3.5);
    CHECK(q < 4.5);
  }
  for (const auto& row : p["rows"]) CHECK(row.contains("error_estimate"));
  CHECK(p["pass"].get<bool>() == r.pass);
  CHECK(r.seconds.size() == 3);
}

TEST_CASE("output formats") {
  const Report r = run_experiment(ExperimentConfig::parse(stokes_config()));
  const fs::path dj = scratch("json"), dc = scratch("csv");
  emit(r, dj.string(), "json");
  emit(r, dc.string(), "csv");
  CHECK(fs::exists(dj / "timing.json"));
  const json back = json::parse(slurp(dj / "report.json"));
  CHECK(back == r.payload);

  std::istringstream csv(slurp(dc / "report.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "Ns,Nt,trace_re,trace_im,residual,error_estimate,ratio");
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    const json& row = back["rows"][rows];
    CHECK(std::stoi(cells[0]) == row["ns"].get<int>());
    CHECK(std::stod(cells[2]) == row["trace"]["re"].get<double>());
    CHECK(std::stod(cells[4]) == row["residual"].get<double>());
    ++rows;
  }
  CHECK(rows == 3);
  CHECK_THROWS_AS(emit(r, dj.string(), "xml"), ValidationError);
}

TEST_CASE("unwritable output") {
  const Report r = run_experiment(ExperimentConfig::parse(stokes_config()));
  const fs::path blocker = scratch("blocked") / "file";
  std::ofstream(blocker) << "x";
  CHECK_THROWS_AS(emit(r, (blocker / "sub").string(), "json"), OutputError);
}

TEST_CASE("reports do not depend on the worker count") {
  for (const char* kind : {"stokes-check", "surface"}) {
    json c = stokes_config();
    c["kind"] = kind;
    if (std::string(kind) == "surface") {
      c["fields"]["B"] = {{"family", "fourier"}, {"seed", 4}, {"amplitude", 0.6}};
      c["geometry"]["square"] = {{"kind", "cylinder"}, {"radius", 0.6}, {"height", 0.8}};
      c.erase("tolerances");
    }
    const ExperimentConfig cfg = ExperimentConfig::parse(c);
    std::string first;
    for (int w : {1, 2, 5}) {
      omp_set_num_threads(w);
      const fs::path d = scratch(std::string(kind) + std::to_string(w));
      emit(run_experiment(cfg), d.string(), "json");
      const std::string text = slurp(d / "report.json");
      if (first.empty()) first = text;
      CHECK(text == first);
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}
