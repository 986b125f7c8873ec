// End-to-end acceptance gate. Each criterion prints one PASS/FAIL line with
// its measured numbers; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bee/channel.hpp"
#include "bee/codebook.hpp"
#include "bee/decoders.hpp"
#include "bee/exponents.hpp"
#include "bee/montecarlo.hpp"
#include "bee/rng.hpp"
#include "bee/stats.hpp"

using namespace bee;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    va_list ap;
    va_start(ap, pattern);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, pattern, ap);
    va_end(ap);
    return buf;
}

constexpr double kSlack = 1e-9;

// 1. the headline constant at p = 0.01
Outcome constant_alpha() {
    const double a = alpha_p(ChannelParam(0.01));
    return {std::abs(a - 2.33) <= 0.005,
            fmt("alpha=%.6f target 2.33+-0.005", a)};
}

// 2. both curves must approach alpha_p as the rate vanishes
Outcome zero_rate_limit() {
    const ChannelParam ch(0.01);
    const double a = alpha_p(ch);
    const double jd = *bound_trc_jd(1e-6, ch);
    const double ub = bound_upper(1e-6, ch);
    const double dev_jd = std::abs(jd - a);
    const double dev_ub = std::abs(ub - a);
    return {dev_jd <= 1e-3 && dev_ub <= 1e-3,
            fmt("trc_jd dev=%.6g ub dev=%.6g tol 1e-3", dev_jd, dev_ub)};
}

// 3. analytic inequality grid over 500 channels x 100 rates
Outcome inequality_grid() {
    std::size_t violations = 0;
    std::string first;
    auto demand = [&](bool ok, double p, double rate, const char* what) {
        if (!ok) {
            violations += 1;
            if (first.empty()) {
                first = fmt("first: %s at p=%.6g R=%.6g", what, p, rate);
            }
        }
    };
    for (int i = 0; i < 500; ++i) {
        const double p = 0.001 + (0.499 - 0.001) * i / 499.0;
        const ChannelParam ch(p);
        const BoundProfile pf = bound_profile(ch);
        demand(pf.r0 <= 2.0 * pf.r_cr + kSlack, p, -1, "r0 <= 2 r_cr");
        demand(pf.r1 + 2.0 * pf.r_trc <= 2.0 * pf.r0 + kSlack, p, -1,
               "2 r0 >= r1 + 2 r_trc");
        demand(pf.r0 <= pf.r1 + kSlack, p, -1, "r1 > r0");
        demand(pf.delta_hat <= pf.delta_tilde + kSlack, p, -1,
               "delta_hat < delta_tilde");
        demand(pf.delta_tilde <= 0.5 + kSlack, p, -1, "delta_tilde < 1/2");
        demand(pf.r_trc <= pf.r_hat + kSlack, p, -1, "r_trc < r_hat");
        for (int j = 0; j < 100; ++j) {
            const double rate = 0.6 * j / 99.0;
            const double id = bound_rce_id(rate, ch);
            const double jd = bound_rce_jd(rate, ch);
            const auto tid = bound_trc_id(rate, ch);
            const auto tjd = bound_trc_jd(rate, ch);
            if (pf.r0 - 2.0 * rate > kSlack) {
                demand(jd > id, p, rate, "joint dominance");
            }
            if (rate < pf.r_trc - kSlack) {
                demand(tjd && *tjd > jd, p, rate, "typical dominance");
            }
            if (tid && tjd) {
                demand(std::abs(*tjd - 2.0 * *tid) <= kSlack, p, rate,
                       "trc_jd = 2 trc_id");
            }
        }
    }
    return {violations == 0,
            violations == 0 ? std::string("50000 grid points clean") : first};
}

// 4. emitted sweep at p = 0.01 is ordered wherever curves coexist
Outcome curve_ordering() {
    const ChannelParam ch(0.01);
    const BoundCurve curve = bound_curve(ch, 0.0, 0.6, 121);
    for (const CurvePoint& pt : curve) {
        if (pt.rce_id > pt.upper + kSlack ||
            pt.rce_jd > pt.upper + kSlack) {
            return {false, fmt("lower bound above ub at R=%.6g", pt.rate)};
        }
        if (pt.trc_jd && *pt.trc_jd > pt.upper + kSlack) {
            return {false, fmt("trc_jd above ub at R=%.6g", pt.rate)};
        }
        const bool all_positive = pt.rce_id > 0.0 && pt.rce_jd > 0.0 &&
                                  pt.trc_jd && *pt.trc_jd > 0.0;
        if (all_positive) {
            if (!(pt.rce_id <= pt.rce_jd + kSlack &&
                  pt.rce_jd <= *pt.trc_jd + kSlack &&
                  *pt.trc_jd <= pt.upper + kSlack)) {
                return {false, fmt("chain broken at R=%.6g", pt.rate)};
            }
        }
    }
    return {true, fmt("%zu sweep points ordered", curve.size())};
}

// 5. gv solver residuals and closed-form minimizers
Outcome gv_solver() {
    SplitMix64 rng(2025);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double rate = rng.next_unit();
        worst = std::max(worst, std::abs(binary_entropy(gv_distance(rate)) -
                                         (1.0 - rate)));
    }
    if (worst > 1e-10) {
        return {false, fmt("worst entropy residual %.3g", worst)};
    }
    double worst_min = 0.0;
    for (const double p : {0.01, 0.1}) {
        const ChannelParam ch(p);
        const double a = alpha_p(ch);
        const DeltaMinimizers mins = delta_minimizers(ch);
        double b1 = 0.0, v1 = 1e300, b2 = 0.0, v2 = 1e300;
        for (int i = 0; i <= 50000; ++i) {
            const double d = i * 1e-5;
            const double base = 1.0 - binary_entropy(d);
            if (base + d * a < v1) {
                v1 = base + d * a;
                b1 = d;
            }
            if (base + 2.0 * d * a < v2) {
                v2 = base + 2.0 * d * a;
                b2 = d;
            }
        }
        worst_min = std::max({worst_min, std::abs(b1 - mins.delta_tilde),
                              std::abs(b2 - mins.delta_hat)});
    }
    return {worst_min <= 1e-4,
            fmt("entropy residual %.3g, minimizer gap %.3g", worst,
                worst_min)};
}

// 6. assignment decoder against exhaustive joint search
Outcome assignment_oracle() {
    SplitMix64 rng(606060);
    std::size_t cost_bad = 0, nu_bad = 0, unique_cases = 0;
    for (int it = 0; it < 1000; ++it) {
        const std::size_t m = 2 + rng.next_below(6);
        const std::size_t n = 8 + rng.next_below(9);
        const double p = (rng.next() & 1) ? 0.05 : 0.2;
        const Codebook code = generate_rce(n, m, rng.next());
        const PermutationMap pi = sample_permutation(m, rng);
        const ChannelOutput y =
            transmit(code, pi, ChannelParam(p), rng.next());
        const DecoderVerdict fast = decode_joint_assignment(code, y);
        const DecoderVerdict slow = decode_joint_bruteforce(code, y);
        if (*fast.total_cost != *slow.total_cost) {
            cost_bad += 1;
        }
        if (slow.ties_broken == 0) {
            unique_cases += 1;
            if (fast.nu != slow.nu) {
                nu_bad += 1;
            }
        }
    }
    return {cost_bad == 0 && nu_bad == 0,
            fmt("1000 instances, cost mismatches %zu, nu mismatches %zu "
                "(%zu unique optima)",
                cost_bad, nu_bad, unique_cases)};
}

// shared by criteria 7 and 8: success shares of one decoded row under
// exhaustive noise enumeration, ties split evenly
long double row_success_exact(const Codebook& code, std::size_t i, double p) {
    const std::size_t n = code.n();
    const std::size_t m = code.m();
    std::vector<long double> weight_prob(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        weight_prob[w] =
            std::pow(static_cast<long double>(p), w) *
            std::pow(static_cast<long double>(1.0 - p),
                     static_cast<long double>(n - w));
    }
    std::vector<std::uint32_t> xor_mask(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t c = 0; c < n; ++c) {
            if (code.bit(i, c) != code.bit(k, c)) {
                xor_mask[k] |= 1u << c;
            }
        }
    }
    long double total = 0.0L;
    for (std::uint32_t e = 0; e < (1u << n); ++e) {
        int best = static_cast<int>(n) + 1;
        int ties = 0;
        bool holds = false;
        for (std::size_t k = 0; k < m; ++k) {
            const int d = __builtin_popcount(e ^ xor_mask[k]);
            if (d < best) {
                best = d;
                ties = 1;
                holds = (k == i);
            } else if (d == best) {
                ties += 1;
                holds = holds || (k == i);
            }
        }
        if (holds) {
            total += weight_prob[__builtin_popcount(e)] /
                     static_cast<long double>(ties);
        }
    }
    return total;
}

// 7. independent decoding: exhaustive error probability vs Monte Carlo
Outcome exact_enumeration() {
    const std::size_t n = 15;
    const double p = 0.1;
    std::uint64_t book_seed = 7777;
    Codebook code = generate_rce(n, 2, book_seed);
    while (pairwise_min_distance(code).distance == 0) {
        code = generate_rce(n, 2, ++book_seed);
    }
    const long double ps0 = row_success_exact(code, 0, p);
    const long double ps1 = row_success_exact(code, 1, p);
    const double exact = static_cast<double>(1.0L - ps0 * ps1);

    const std::uint64_t trials = 100000;
    std::size_t covered = 0;
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
        std::uint64_t errors = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::uint64_t ts = hash3(1000 + rep, n, t);
            SplitMix64 prng(hash2(ts, 2));
            const PermutationMap pi = sample_permutation(2, prng);
            const ChannelOutput y =
                transmit(code, pi, ChannelParam(p), hash2(ts, 3));
            const DecoderVerdict v =
                decode_independent(code, y, hash2(ts, 4));
            errors += v.exact_recovery ? 0 : 1;
        }
        const WilsonInterval ci = wilson_interval(errors, trials);
        if (ci.low <= exact && exact <= ci.high) {
            covered += 1;
        }
    }
    return {covered >= 47,
            fmt("exact=%.6g, wilson covered %zu/50 (needs >= 47)", exact,
                covered)};
}

// 8. two-codeword confusion probability against the decay bound
Outcome pairwise_bound() {
    const std::size_t n = 20;
    const double p = 0.1;
    const double a = alpha_p(ChannelParam(p));
    std::vector<long double> weight_prob(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        weight_prob[w] =
            std::pow(static_cast<long double>(p), w) *
            std::pow(static_cast<long double>(1.0 - p),
                     static_cast<long double>(n - w));
    }
    std::string detail;
    bool ok = true;
    for (const std::size_t d : {4u, 8u, 12u}) {
        const std::uint32_t mask = (1u << d) - 1;  // c0 = 0, c1 = d ones
        long double confusion = 0.0L;
        for (std::uint32_t e = 0; e < (1u << n); ++e) {
            const int d0 = __builtin_popcount(e);
            const int d1 = __builtin_popcount(e ^ mask);
            if (d1 < d0) {
                confusion += weight_prob[d0];
            } else if (d1 == d0) {
                confusion += weight_prob[d0] / 2.0L;
            }
        }
        const double bound = std::exp2(-static_cast<double>(d) * a);
        ok = ok && static_cast<double>(confusion) <= bound;
        detail += fmt("d=%zu: %.4g<=%.4g ", d,
                      static_cast<double>(confusion), bound);
    }
    return {ok, detail};
}

// 9. joint <= gmd <= independent error rates on identical realizations
Outcome decoder_dominance() {
    const std::size_t n = 12;
    const double rate = 0.25;
    const double p = 0.03;
    const std::uint64_t trials = 100000;
    const std::size_t m = barcode_count(rate, n);
    const double realized =
        std::log2(static_cast<double>(m)) / static_cast<double>(n);
    const std::size_t thr = default_gmd_threshold(n, realized, p);

    std::uint64_t e_ind = 0, e_jnt = 0, e_gmd = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = hash3(777, n, t);
        const Codebook code = generate_rce(n, m, hash2(ts, 1));
        SplitMix64 prng(hash2(ts, 2));
        const PermutationMap pi = sample_permutation(m, prng);
        const ChannelOutput y =
            transmit(code, pi, ChannelParam(p), hash2(ts, 3));
        const std::uint64_t tie = hash2(ts, 4);
        e_ind += decode_independent(code, y, tie).exact_recovery ? 0 : 1;
        e_jnt += decode_joint_assignment(code, y).exact_recovery ? 0 : 1;
        e_gmd += decode_gmd(code, y, thr, tie).exact_recovery ? 0 : 1;
    }
    const double T = static_cast<double>(trials);
    auto se_pooled = [T](std::uint64_t a, std::uint64_t b) {
        const double pool = static_cast<double>(a + b) / (2.0 * T);
        return std::sqrt(2.0 * pool * (1.0 - pool) / T);
    };
    const double pi_hat = e_ind / T, pj_hat = e_jnt / T, pg_hat = e_gmd / T;
    const bool jnt_vs_ind = pj_hat <= pi_hat + 3.0 * se_pooled(e_jnt, e_ind);
    const bool gmd_above = pj_hat <= pg_hat + 3.0 * se_pooled(e_jnt, e_gmd);
    const bool gmd_below = pg_hat <= pi_hat + 3.0 * se_pooled(e_gmd, e_ind);
    return {jnt_vs_ind && gmd_above && gmd_below,
            fmt("p_hat ind=%.5f gmd=%.5f jnt=%.5f (thr=%zu)", pi_hat, pg_hat,
                pj_hat, thr)};
}

// 10. row relabeling must not move the optimum
Outcome relabeling_invariance() {
    SplitMix64 rng(161803);
    std::size_t tested = 0;
    for (int it = 0; it < 100; ++it) {
        const std::size_t m = 2 + rng.next_below(5);
        const std::size_t n = 10 + rng.next_below(7);
        const Codebook code = generate_rce(n, m, rng.next());
        const PermutationMap pi = sample_permutation(m, rng);
        const ChannelOutput y =
            transmit(code, pi, ChannelParam(0.1), rng.next());
        if (decode_joint_bruteforce(code, y).ties_broken != 0) {
            continue;  // nu is only pinned down off ties
        }
        tested += 1;
        const PermutationMap tau = sample_permutation(m, rng);
        Codebook shuffled(m, n);
        for (std::size_t j = 0; j < m; ++j) {
            auto src = y.received.row(j);
            std::copy(src.begin(), src.end(),
                      shuffled.row_mut(tau(j)).begin());
        }
        std::vector<std::size_t> fwd(m);
        for (std::size_t i = 0; i < m; ++i) {
            fwd[i] = tau(pi(i));
        }
        const ChannelOutput moved{std::move(shuffled),
                                  PermutationMap(std::move(fwd)), 0, 0};
        const DecoderVerdict base = decode_joint_assignment(code, y);
        const DecoderVerdict after = decode_joint_assignment(code, moved);
        if (*base.total_cost != *after.total_cost) {
            return {false, fmt("cost moved on instance %d", it)};
        }
        if (base.exact_recovery != after.exact_recovery) {
            return {false, fmt("recovery flag moved on instance %d", it)};
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (after.nu[tau(j)] != base.nu[j]) {
                return {false, fmt("nu not covariant on instance %d", it)};
            }
        }
    }
    return {tested >= 50, fmt("%zu tie-free instances invariant", tested)};
}

// 11. typical-code ensemble hygiene plus pairwise distance independence
Outcome trc_and_independence() {
    for (const auto& [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {32, 4}, {48, 8}, {63, 8}, {40, 6}}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const double eps = default_trc_epsilon(n, m);
            const Codebook cb = generate_trc(n, m, eps, seed);
            if (!satisfies_trc_band(cb, eps)) {
                return {false,
                        fmt("band scan failed n=%zu m=%zu seed=%llu", n, m,
                            static_cast<unsigned long long>(seed))};
            }
        }
    }
    // distances from row 0 to rows 1 and 2 across fresh uniform codebooks
    auto bin = [](std::size_t d) -> std::size_t {
        if (d <= 3) return 0;
        if (d == 4) return 1;
        if (d == 5) return 2;
        return 3;
    };
    std::vector<std::vector<std::uint64_t>> table(
        4, std::vector<std::uint64_t>(4, 0));
    for (std::size_t t = 0; t < 100000; ++t) {
        const Codebook cb = generate_rce(10, 3, hash2(424242, t));
        table[bin(row_distance(cb, 0, cb, 1))]
             [bin(row_distance(cb, 0, cb, 2))] += 1;
    }
    const ChiSquareResult res = chi_square_independence(table);
    return {res.p_value >= 0.001,
            fmt("band scans clean, independence p=%.4f (needs >= 0.001)",
                res.p_value)};
}

// 12. error rate decays with blocklength at fixed design rate
Outcome exponent_trend() {
    ExperimentConfig cfg;
    cfg.n_list = {8, 12, 16, 20};
    cfg.rate = 0.1;
    cfg.p = 0.05;
    cfg.decoder = DecoderKind::Joint;
    cfg.trials = 1000000;
    cfg.base_seed = 2026;

    std::vector<TrialStats> cells;
    for (const std::size_t n : cfg.n_list) {
        cells.push_back(run_cell(cfg, n));
    }
    std::string detail;
    bool monotone = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        detail += fmt("n=%zu p_hat=%.3g ", cells[i].n, cells[i].p_hat);
        if (i > 0) {
            const double T = static_cast<double>(cfg.trials);
            const double var_prev =
                cells[i - 1].p_hat * (1.0 - cells[i - 1].p_hat) / T;
            const double var_cur =
                cells[i].p_hat * (1.0 - cells[i].p_hat) / T;
            if (cells[i].p_hat >
                cells[i - 1].p_hat + 3.0 * std::sqrt(var_prev + var_cur)) {
                monotone = false;
            }
        }
    }
    double slope = 0.0;
    bool fit_ok = false;
    try {
        slope = estimate_exponent(cells).slope;
        fit_ok = slope > 0.0;
    } catch (const std::exception&) {
        detail += "(too few nonzero cells for a fit) ";
    }
    // analytic joint lower bound at the realized rate, for inspection only
    const ChannelParam ch(cfg.p);
    detail += fmt("slope=%.4f rce_jd(RR)=%.4f", slope,
                  bound_rce_jd(cells.back().realized_rate, ch));
    return {monotone && fit_ok, detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion table[] = {
        {"constant-alpha", constant_alpha},
        {"zero-rate-limit", zero_rate_limit},
        {"inequality-grid", inequality_grid},
        {"curve-ordering", curve_ordering},
        {"gv-solver", gv_solver},
        {"assignment-oracle", assignment_oracle},
        {"exact-enumeration", exact_enumeration},
        {"pairwise-bound", pairwise_bound},
        {"decoder-dominance", decoder_dominance},
        {"relabeling-invariance", relabeling_invariance},
        {"trc-and-independence", trc_and_independence},
        {"exponent-trend", exponent_trend},
    };
    bool all_ok = true;
    int idx = 1;
    for (const Criterion& c : table) {
        const Outcome out = c.run();
        all_ok = all_ok && out.pass;
        std::printf("CRITERION %2d %-24s %s  %s\n", idx, c.name,
                    out.pass ? "PASS" : "FAIL", out.detail.c_str());
        std::fflush(stdout);
        idx += 1;
    }
    std::printf("%s\n", all_ok ? "acceptance: all criteria passed"
                               : "acceptance: FAILURES above");
    return all_ok ? 0 : 1;
}
