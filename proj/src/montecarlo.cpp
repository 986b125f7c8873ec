#include "bee/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bee/channel.hpp"
#include "bee/decoders.hpp"
#include "bee/exponents.hpp"
#include "bee/rng.hpp"

namespace bee {

const char* to_string(DecoderKind d) {
    switch (d) {
        case DecoderKind::Independent:
            return "independent";
        case DecoderKind::Joint:
            return "joint";
        case DecoderKind::Gmd:
            return "gmd";
        case DecoderKind::Bruteforce:
            return "bruteforce";
    }
    return "?";
}

std::size_t barcode_count(double rate, std::size_t n) {
    if (!(rate > 0.0) || n == 0) {
        throw std::invalid_argument("barcode_count: need rate > 0 and n >= 1");
    }
    const double raw = std::exp2(rate * static_cast<double>(n));
    const auto rounded = static_cast<std::size_t>(std::llround(raw));
    return std::max<std::size_t>(2, rounded);
}

namespace {

// Stream labels under the per-trial key; disjoint per purpose.
enum SeedTag : std::uint64_t {
    kTagCodebook = 1,
    kTagPermutation = 2,
    kTagNoise = 3,
    kTagTie = 4,
    kTagCellCodebook = 5,  // shared fixed-codebook mode, keyed per cell
};

struct CellPlan {
    std::size_t n = 0;
    std::size_t m = 0;
    double realized_rate = 0.0;
    double epsilon = 0.0;  // TRC only
    std::size_t gmd_threshold = 0;
};

CellPlan make_plan(const ExperimentConfig& cfg, std::size_t n) {
    if (std::find(cfg.n_list.begin(), cfg.n_list.end(), n) ==
        cfg.n_list.end()) {
        throw std::invalid_argument("run_cell: n is not in cfg.n_list");
    }
    if (cfg.trials == 0) {
        throw std::invalid_argument("run_cell: trials must be >= 1");
    }
    ChannelParam ch(cfg.p);  // validates p
    (void)ch;
    CellPlan plan;
    plan.n = n;
    plan.m = barcode_count(cfg.rate, n);
    plan.realized_rate = std::log2(static_cast<double>(plan.m)) /
                         static_cast<double>(n);
    if (cfg.decoder == DecoderKind::Bruteforce && plan.m > 8) {
        throw std::invalid_argument(
            "run_cell: bruteforce decoder limited to m <= 8");
    }
    if (cfg.ensemble == Ensemble::Trc) {
        if (!(plan.realized_rate < 0.5)) {
            throw std::invalid_argument(
                "run_cell: TRC requires realized rate below 0.5");
        }
        plan.epsilon = cfg.epsilon > 0.0
                           ? cfg.epsilon
                           : default_trc_epsilon(n, plan.m);
    }
    if (cfg.decoder == DecoderKind::Gmd) {
        plan.gmd_threshold =
            cfg.gmd_threshold
                ? *cfg.gmd_threshold
                : default_gmd_threshold(n, plan.realized_rate, cfg.p);
    }
    return plan;
}

Codebook make_codebook(const ExperimentConfig& cfg, const CellPlan& plan,
                       std::uint64_t seed) {
    if (cfg.ensemble == Ensemble::Trc) {
        return generate_trc(plan.n, plan.m, plan.epsilon, seed);
    }
    return generate_rce(plan.n, plan.m, seed);
}

// One trial, keyed entirely by (base_seed, n, trial). `fixed` supplies the
// shared codebook when fresh_codebook_per_trial is off.
bool trial_fails(const ExperimentConfig& cfg, const CellPlan& plan,
                 const Codebook* fixed, std::uint64_t trial) {
    const std::uint64_t trial_seed = hash3(cfg.base_seed, plan.n, trial);
    std::optional<Codebook> fresh;
    if (!fixed) {
        fresh = make_codebook(cfg, plan, hash2(trial_seed, kTagCodebook));
    }
    const Codebook& code = fixed ? *fixed : *fresh;
    PermutationMap pi;
    if (cfg.fix_identity) {
        pi = PermutationMap::identity(plan.m);
    } else {
        SplitMix64 rng(hash2(trial_seed, kTagPermutation));
        pi = sample_permutation(plan.m, rng);
    }
    const ChannelOutput y =
        transmit(code, pi, ChannelParam(cfg.p), hash2(trial_seed, kTagNoise));
    const std::uint64_t tie_seed = hash2(trial_seed, kTagTie);
    DecoderVerdict v;
    switch (cfg.decoder) {
        case DecoderKind::Independent:
            v = decode_independent(code, y, tie_seed);
            break;
        case DecoderKind::Joint:
            v = decode_joint_assignment(code, y);
            break;
        case DecoderKind::Gmd:
            v = decode_gmd(code, y, plan.gmd_threshold, tie_seed);
            break;
        case DecoderKind::Bruteforce:
            v = decode_joint_bruteforce(code, y);
            break;
    }
    return !v.exact_recovery;
}

TrialStats finalize(const ExperimentConfig& cfg, const CellPlan& plan,
                    std::uint64_t errors) {
    TrialStats st;
    st.n = plan.n;
    st.m = plan.m;
    st.realized_rate = plan.realized_rate;
    st.p = cfg.p;
    st.decoder = cfg.decoder;
    st.trials = cfg.trials;
    st.errors = errors;
    st.p_hat = static_cast<double>(errors) / static_cast<double>(cfg.trials);
    if (errors == 0) {
        // Rule of three: one-sided 95% upper bound when nothing was observed.
        st.ci_low = 0.0;
        st.ci_high = std::min(1.0, 3.0 / static_cast<double>(cfg.trials));
    } else {
        const WilsonInterval ci = wilson_interval(errors, cfg.trials);
        st.ci_low = ci.low;
        st.ci_high = ci.high;
        st.exponent_hat =
            -std::log2(st.p_hat) / static_cast<double>(plan.n);
    }
    return st;
}

}  // namespace

TrialStats run_cell(const ExperimentConfig& cfg, std::size_t n) {
    const CellPlan plan = make_plan(cfg, n);
    std::optional<Codebook> fixed;
    if (!cfg.fresh_codebook_per_trial) {
        fixed = make_codebook(cfg, plan,
                              hash3(cfg.base_seed, n, kTagCellCodebook));
    }
    const Codebook* fixed_ptr = fixed ? &*fixed : nullptr;
    std::uint64_t errors = 0;
    bool failed = false;
    std::string failure;
    const auto total = static_cast<long long>(cfg.trials);
#pragma omp parallel for schedule(static) reduction(+ : errors)
    for (long long t = 0; t < total; ++t) {
        bool bad = false;
        try {
            bad = trial_fails(cfg, plan, fixed_ptr,
                              static_cast<std::uint64_t>(t));
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
        errors += bad ? 1 : 0;
    }
    if (failed) {
        throw std::runtime_error("run_cell: trial failed: " + failure);
    }
    return finalize(cfg, plan, errors);
}

TrialStats run_cell_serial(const ExperimentConfig& cfg, std::size_t n) {
    const CellPlan plan = make_plan(cfg, n);
    std::optional<Codebook> fixed;
    if (!cfg.fresh_codebook_per_trial) {
        fixed = make_codebook(cfg, plan,
                              hash3(cfg.base_seed, n, kTagCellCodebook));
    }
    const Codebook* fixed_ptr = fixed ? &*fixed : nullptr;
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        if (trial_fails(cfg, plan, fixed_ptr, t)) {
            ++errors;
        }
    }
    return finalize(cfg, plan, errors);
}

ExponentFit estimate_exponent(std::span<const TrialStats> cells) {
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].n <= cells[i - 1].n) {
            throw std::invalid_argument(
                "estimate_exponent: cells must have strictly increasing n");
        }
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const TrialStats& c : cells) {
        if (c.errors > 0) {
            xs.push_back(static_cast<double>(c.n));
            ys.push_back(-std::log2(c.p_hat));
        }
    }
    if (xs.size() < 3) {
        throw std::invalid_argument(
            "estimate_exponent: need at least 3 cells with observed errors");
    }
    const LineFit fit = least_squares(xs, ys);
    ExponentFit out;
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.residuals.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
    }
    return out;
}

}  // namespace bee
