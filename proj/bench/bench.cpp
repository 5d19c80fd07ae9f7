// Serial reference against the OpenMP kernels: surface transport and the 4-D action integrals.
// Prints one line per kernel with wall times, speedup and whether the results agree bitwise.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>

#include "holo/catalog.hpp"
#include "holo/observables.hpp"
#include "holo/pathspace.hpp"

using namespace holo;
using nlohmann::json;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-18s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  bitwise %s\n", name, serial, parallel,
              serial / parallel, same ? "equal" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernels"};
  int n = 128, cells = 12, reps = 3, workers = 0;
  app.add_option("--grid", n, "surface grid per direction");
  app.add_option("--cells", cells, "action cells per axis");
  app.add_option("--reps", reps, "repetitions, best time kept");
  app.add_option("--workers", workers, "OpenMP threads (0 = runtime default)");
  CLI11_PARSE(app, argc, argv);
  if (workers > 0) omp_set_num_threads(workers);
  std::printf("threads %d, processors %d\n", omp_get_max_threads(), omp_get_num_procs());

  const GroupSpec su2 = GroupSpec::su(2);
  const ChartDomain c3 = ChartDomain::cube(3, 2.0);
  const SpecialConnection conn{make_field(json{{"family", "fourier"}, {"seed", 3}}, 1, c3, su2), AdjointForm(),
                               make_field(json{{"family", "fourier"}, {"seed", 4}}, 2, c3, su2)};
  const Square sq = make_square(json{{"kind", "lissajous"}, {"seed", 5}}, 3);
  SurfaceOptions so;
  so.grids = {n, n};
  GroupElement hs = GroupElement::identity(2), hp = hs;
  so.exec = Exec::serial;
  const double ts = best_of(reps, [&] { hs = H_map(conn, sq, so); });
  so.exec = Exec::parallel;
  const double tp = best_of(reps, [&] { hp = H_map(conn, sq, so); });
  report("surface_transport", ts, tp, hs.matrix() == hp.matrix());

  const ChartDomain c4 = ChartDomain::cube(4, 2.0);
  const AdjointForm a4 = make_field(json{{"family", "fourier"}, {"seed", 3}}, 1, c4, su2);
  const AdjointForm b4 = make_field(json{{"family", "fourier"}, {"seed", 4}}, 2, c4, su2);
  ActionValues vs, vp;
  const double as = best_of(reps, [&] { vs = action_values(a4, b4, cells, Exec::serial); });
  const double ap = best_of(reps, [&] { vp = action_values(a4, b4, cells, Exec::parallel); });
  report("action_values", as, ap, vs.s_ym == vp.s_ym && vs.s_bf_bb == vp.s_bf_bb && vs.s_tym == vp.s_tym);
  return 0;
}
