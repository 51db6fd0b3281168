// Timing comparison of the serial reference kernels against the OpenMP
// parallel ones. Not a correctness test (test_parallel covers bit-equality);
// run manually: build/bench/mazer_bench [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mazer/batch.hpp"
#include "mazer/datasets.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double time_ms(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = Clock::now();
        fn();
        const auto stop = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel policy runs serially\n");
#endif

    const mazer::ModeProfile gaussian = mazer::ModeProfile::gaussian(1.0, 10.0);
    const mazer::ModeProfile mesa = mazer::ModeProfile::mesa(10.0);
    const mazer::SolverConfig config;

    std::vector<double> ks;
    for (int i = 0; i < 12; ++i)
        ks.push_back(0.05 + 0.45 * i);

    report("amplitude_table gaussian",
           time_ms(repeats,
                   [&] { mazer::amplitude_table(gaussian, 24, ks, config, mazer::Exec::Serial); }),
           time_ms(repeats, [&] {
               mazer::amplitude_table(gaussian, 24, ks, config, mazer::Exec::Parallel);
           }));

    report("figure1 mesa",
           time_ms(repeats,
                   [&] {
                       mazer::figure1_dataset(mesa, 0.1, config, 1e-10, 100, 0.99,
                                              mazer::Exec::Serial);
                   }),
           time_ms(repeats, [&] {
               mazer::figure1_dataset(mesa, 0.1, config, 1e-10, 100, 0.99,
                                      mazer::Exec::Parallel);
           }));

    report("figure1 sech2",
           time_ms(repeats,
                   [&] {
                       mazer::figure1_dataset(mazer::ModeProfile::sech2(1.0, 10.0), 0.1, config,
                                              1e-8, 40, 0.9, mazer::Exec::Serial);
                   }),
           time_ms(repeats, [&] {
               mazer::figure1_dataset(mazer::ModeProfile::sech2(1.0, 10.0), 0.1, config, 1e-8,
                                      40, 0.9, mazer::Exec::Parallel);
           }));

    return 0;
}
