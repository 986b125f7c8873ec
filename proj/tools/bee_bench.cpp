// Times the Monte Carlo cell kernel: OpenMP parallel loop against the serial
// reference, same seeds, and checks the counts agree before reporting.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bee/montecarlo.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    bee::ExperimentConfig cfg;
    cfg.n_list = {16};
    cfg.rate = 0.2;
    cfg.p = 0.05;
    cfg.decoder = bee::DecoderKind::Joint;
    cfg.trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    cfg.base_seed = 7;
    if (cfg.trials == 0) {
        std::fprintf(stderr, "usage: %s [trials]\n", argv[0]);
        return 2;
    }

#ifdef _OPENMP
    std::printf("threads %d\n", omp_get_max_threads());
#else
    std::printf("threads 1 (OpenMP disabled)\n");
#endif
    std::printf("cell n=%zu rate=%g p=%g trials=%llu decoder=joint\n",
                cfg.n_list[0], cfg.rate, cfg.p,
                static_cast<unsigned long long>(cfg.trials));

    auto t0 = std::chrono::steady_clock::now();
    const bee::TrialStats serial = bee::run_cell_serial(cfg, cfg.n_list[0]);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const bee::TrialStats parallel = bee::run_cell(cfg, cfg.n_list[0]);
    const double parallel_s = seconds_since(t0);

    if (serial.errors != parallel.errors) {
        std::printf("MISMATCH serial=%llu parallel=%llu\n",
                    static_cast<unsigned long long>(serial.errors),
                    static_cast<unsigned long long>(parallel.errors));
        return 1;
    }
    std::printf("errors %llu  p_hat %.6g\n",
                static_cast<unsigned long long>(serial.errors), serial.p_hat);
    std::printf("serial   %8.3f s  (%.0f trials/s)\n", serial_s,
                static_cast<double>(cfg.trials) / serial_s);
    std::printf("parallel %8.3f s  (%.0f trials/s)\n", parallel_s,
                static_cast<double>(cfg.trials) / parallel_s);
    std::printf("speedup  %.2fx\n", serial_s / parallel_s);
    return 0;
}
