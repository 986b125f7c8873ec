#ifndef BEE_MONTECARLO_HPP
#define BEE_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bee/codebook.hpp"
#include "bee/stats.hpp"

namespace bee {

enum class DecoderKind { Independent, Joint, Gmd, Bruteforce };

const char* to_string(DecoderKind d);

struct ExperimentConfig {
    std::vector<std::size_t> n_list;
    double rate = 0.1;
    double p = 0.1;
    Ensemble ensemble = Ensemble::Rce;
    double epsilon = 0.0;  // TRC band margin; 0 selects the derived default
    DecoderKind decoder = DecoderKind::Joint;
    std::uint64_t trials = 1000;
    std::uint64_t base_seed = 1;
    bool fresh_codebook_per_trial = true;
    bool fix_identity = false;  // skip permutation sampling (validated path)
    std::optional<std::size_t> gmd_threshold;
};

struct TrialStats {
    std::size_t n = 0;
    std::size_t m = 0;
    double realized_rate = 0.0;
    double p = 0.0;
    DecoderKind decoder = DecoderKind::Joint;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::optional<double> exponent_hat;  // -log2(p_hat)/n, absent when 0 errors
};

// Barcode count for blocklength n at design rate: max(2, round(2^{n rate})).
std::size_t barcode_count(double rate, std::size_t n);

// Runs cfg.trials independent trials at blocklength n: sample codebook
// (fresh per trial unless fresh_codebook_per_trial is off), permutation,
// noise; decode; count exact-recovery failures. Every random stream is keyed
// by hash(base_seed, n, trial), so counts are identical across thread counts
// and schedules. Pre: n appears in cfg.n_list.
TrialStats run_cell(const ExperimentConfig& cfg, std::size_t n);

// Single-threaded reference with the identical trial stream; run_cell must
// match it count-for-count.
TrialStats run_cell_serial(const ExperimentConfig& cfg, std::size_t n);

struct ExponentFit {
    double slope;
    double intercept;
    std::vector<double> residuals;  // one per cell used in the fit
};

// Least squares of -log2(p_hat) against n over cells with errors > 0.
// Pre: cells ordered by strictly increasing n; >= 3 cells qualify.
ExponentFit estimate_exponent(std::span<const TrialStats> cells);

}  // namespace bee

#endif
