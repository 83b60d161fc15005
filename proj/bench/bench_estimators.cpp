// Times the fused OpenMP estimator kernels against the serial reference
// implementations on the zoo sequences.
//
//   bench_estimators [n]   (default n = 100000)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idealseq/harness.hpp"
#include "idealseq/reference.hpp"

using namespace idealseq;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_call(F&& f) {
  auto t0 = Clock::now();
  f();
  return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 100000;
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif
  std::printf("n = %lld\n\n", static_cast<long long>(n));
  std::printf("%-28s %-10s %10s %10s %8s\n", "sequence", "estimator", "serial[s]", "fused[s]",
              "speedup");

  for (const std::string name : {"squares-indicator", "evens-indicator", "inverse-n"}) {
    const ZooEntry& e = zoo(name);
    NeighborhoodSchedule sched{e.eps0, e.levels};
    SequencePrefix x = generate(e.spec, n);
    IdealSpec ideal = IdealSpec::density_alpha(0.0);
    GdiSpec gdi = GdiSpec::natural_density(n);

    LimitSetReport a, b;
    double ts = time_call([&] { a = reference::estimate_Gamma(x, ideal, sched); });
    double tf = time_call([&] { b = estimate_Gamma(x, ideal, sched); });
    bool same = a.accepted == b.accepted;
    std::printf("%-28s %-10s %10.3f %10.3f %7.1fx%s\n", name.c_str(), "Gamma", ts, tf, ts / tf,
                same ? "" : "  MISMATCH");

    ts = time_call([&] { a = reference::estimate_Lambda_gdi(x, gdi, sched); });
    tf = time_call([&] { b = estimate_Lambda_gdi(x, gdi, sched); });
    same = a.accepted == b.accepted;
    std::printf("%-28s %-10s %10.3f %10.3f %7.1fx%s\n", name.c_str(), "Lambda", ts, tf, ts / tf,
                same ? "" : "  MISMATCH");

    ts = time_call([&] { a = reference::estimate_L(x, sched, e.min_hits); });
    tf = time_call([&] { b = estimate_L(x, sched, e.min_hits); });
    same = a.accepted == b.accepted;
    std::printf("%-28s %-10s %10.3f %10.3f %7.1fx%s\n", name.c_str(), "L", ts, tf, ts / tf,
                same ? "" : "  MISMATCH");
  }
  return 0;
}
