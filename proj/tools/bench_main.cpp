#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "valord/certificate.hpp"

// Times the enumeration kernels under the serial reference policy and the
// OpenMP policy on the flat-poset fixture, checking that both produce the
// same answers.

namespace {

using namespace valord;
using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& body, int repeat) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    auto start = Clock::now();
    body();
    std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool equal) {
  std::printf("%-24s %12.2f %12.2f %9.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel comparison"};
  unsigned scan_depth = 18, cylinder_depth = 11, grid_depth = 18;
  int repeat = 3;
  app.add_option("--scan-depth", scan_depth, "exception scan depth (<= 26)");
  app.add_option("--cylinder-depth", cylinder_depth, "cylinder sweep depth (<= 14)");
  app.add_option("--grid-depth", grid_depth, "grid push-forward depth (<= 26)");
  app.add_option("--repeat", repeat, "repetitions, best time wins");
  CLI11_PARSE(app, argc, argv);

  PosetPtr flat = FinitePoset::build({"0", "1", "⊥"},
                                     {{"⊥", "0"}, {"⊥", "1"}},
                                     "⊥");
  FlatDemo demo = make_flat_demo(flat, scan_depth);
  RealizationResult limit = realize_chain(demo.approximants);
  std::vector<RealizationResult> sequence;
  for (const auto& mu : demo.members) {
    std::vector<SimpleValuation> singleton{mu};
    sequence.push_back(realize_chain(singleton));
  }

  std::printf("workers: %u\n", worker_count());
  std::printf("%-24s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms",
              "speedup");

  {
    ASConvergenceCertificate serial_result, parallel_result;
    double s = time_ms(
        [&] {
          serial_result = empirical_convergence(sequence, limit, scan_depth, 1,
                                                ExecPolicy::serial);
        },
        repeat);
    double p = time_ms(
        [&] {
          parallel_result = empirical_convergence(
              sequence, limit, scan_depth, 1, ExecPolicy::parallel);
        },
        repeat);
    bool equal =
        serial_result.exception_mass == parallel_result.exception_mass &&
        serial_result.exception_words.size() ==
            parallel_result.exception_words.size();
    report("exception-scan", s, p, equal);
  }

  {
    CylinderCheck serial_result, parallel_result;
    double s = time_ms(
        [&] {
          serial_result =
              cylinder_pushforward_check(cylinder_depth, ExecPolicy::serial);
        },
        repeat);
    double p = time_ms(
        [&] {
          parallel_result =
              cylinder_pushforward_check(cylinder_depth, ExecPolicy::parallel);
        },
        repeat);
    report("cylinder-sweep", s, p,
           serial_result.pass == parallel_result.pass);
  }

  {
    RealizationResult shallow = limit;
    SimpleValuation serial_result = SimpleValuation::zero(flat);
    SimpleValuation parallel_result = SimpleValuation::zero(flat);
    double s = time_ms(
        [&] {
          serial_result = skorohod_grid_pushforward(shallow, grid_depth,
                                                    ExecPolicy::serial);
        },
        repeat);
    double p = time_ms(
        [&] {
          parallel_result = skorohod_grid_pushforward(shallow, grid_depth,
                                                      ExecPolicy::parallel);
        },
        repeat);
    report("grid-pushforward", s, p, serial_result == parallel_result);
  }
  return 0;
}
