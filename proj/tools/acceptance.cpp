// Runs every acceptance criterion at zero tolerance; one line per criterion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "supergeo/verification.hpp"

int main(int argc, char** argv) {
  CLI::App app{"supergeo acceptance runner", "acceptance"};
  int only = 0;
  supergeo::verify::Options o;
  o.fixture_dir = SUPERGEO_FIXTURE_DIR;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  app.add_option("--seed", o.seed, "base seed (default 0)");
  app.add_option("--cases", o.cases, "override per-criterion case counts");
  app.add_option("--fixtures", o.fixture_dir, "directory of .sg fixtures");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  const int n = static_cast<int>(supergeo::verify::all_criteria().size());
  for (int id = 1; id <= n; ++id) {
    if (only && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = supergeo::verify::run_criterion(id, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (r.ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << r.name << "  [" << r.checks
              << " checks, " << timing << "]";
    if (!r.ok || !r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << "\n";
    if (!r.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
