#include "bee/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bee/channel.hpp"
#include "bee/codebook.hpp"
#include "bee/decoders.hpp"
#include "bee/exponents.hpp"
#include "bee/montecarlo.hpp"
#include "bee/rng.hpp"
#include "bee/stats.hpp"

namespace bee {

namespace {

constexpr double kSlack = 1e-9;

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// One named check; keeps only the first violation.
class Check {
  public:
    explicit Check(std::string name) : name_(std::move(name)) {}

    void require(bool ok, const std::string& detail) {
        if (!ok && pass_) {
            pass_ = false;
            detail_ = detail;
        }
    }

    CheckResult finish() const { return {name_, pass_, detail_}; }

  private:
    std::string name_;
    bool pass_ = true;
    std::string detail_;
};

std::vector<double> p_grid(const VerifyOptions& opt) {
    if (opt.single_p) {
        return {*opt.single_p};
    }
    std::vector<double> grid;
    const std::size_t count = std::max<std::size_t>(2, opt.p_points);
    grid.reserve(count);
    const double lo = 0.001;
    const double hi = 0.499;
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
    }
    return grid;
}

std::vector<double> rate_grid(const VerifyOptions& opt) {
    std::vector<double> grid;
    const std::size_t count = std::max<std::size_t>(2, opt.rate_points);
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(0.6 * static_cast<double>(i) /
                       static_cast<double>(count - 1));
    }
    return grid;
}

void numeric_checks(const VerifyOptions& opt,
                    std::vector<CheckResult>& results) {
    Check profile_sanity("profile-sanity");
    Check r0_vs_rcr("r0-below-2rcr");
    Check chain("2r0-covers-r1-plus-2rtrc");
    Check continuity("er-continuity");
    Check eta_sign("eta-positivity-at-lambda");
    Check prop3("prop3-strict-dominance");
    Check prop5("prop5-strict-dominance");
    Check doubling("trc-jd-doubles-id");
    Check bound_chain("bound-ordering-chain");
    Check consistency("bound-consistency");
    Check cor7("zero-rate-limit");

    const std::vector<double> rates = rate_grid(opt);
    for (const double p : p_grid(opt)) {
        const ChannelParam ch(p);
        const BoundProfile pf = bound_profile(ch);
        const double r1_used = pf.r1 + opt.r1_offset;

        profile_sanity.require(
            pf.delta_hat > 0.0 && pf.delta_hat < pf.delta_tilde &&
                pf.delta_tilde < 0.5,
            fmt("p=%.6g delta_hat=%.12g delta_tilde=%.12g", p, pf.delta_hat,
                pf.delta_tilde));
        profile_sanity.require(
            pf.r0 > 0.0 && pf.r1 > pf.r0,
            fmt("p=%.6g r0=%.12g r1=%.12g", p, pf.r0, pf.r1));
        profile_sanity.require(
            pf.r_trc < pf.r_hat && pf.r_trc < pf.r_cr,
            fmt("p=%.6g r_trc=%.12g r_hat=%.12g", p, pf.r_trc, pf.r_hat));
        profile_sanity.require(
            pf.lambda_p == std::min(2.0 * pf.r0 / 3.0, 0.5 * pf.r1),
            fmt("p=%.6g lambda_p=%.12g", p, pf.lambda_p));

        r0_vs_rcr.require(pf.r0 <= 2.0 * pf.r_cr + kSlack,
                          fmt("p=%.6g r0=%.12g r_cr=%.12g", p, pf.r0, pf.r_cr));
        chain.require(
            2.0 * pf.r0 >= r1_used + 2.0 * pf.r_trc - kSlack,
            fmt("p=%.6g margin=%.12g", p,
                2.0 * pf.r0 - r1_used - 2.0 * pf.r_trc));

        const double h = 1e-12;
        const double left = random_coding_exponent(pf.r_cr - h, ch);
        const double right = random_coding_exponent(pf.r_cr + h, ch);
        continuity.require(std::abs(left - right) <= kSlack,
                           fmt("p=%.6g jump=%.12g at r_cr", p, left - right));
        const double capacity = 1.0 - binary_entropy(p);
        continuity.require(
            random_coding_exponent(capacity - h, ch) <= kSlack &&
                random_coding_exponent(capacity, ch) == 0.0,
            fmt("p=%.6g capacity=%.12g", p, capacity));

        for (const double rate : rates) {
            const double rce_id = bound_rce_id(rate, ch);
            const double rce_jd = bound_rce_jd(rate, ch);
            const auto trc_id = bound_trc_id(rate, ch);
            const auto trc_jd = bound_trc_jd(rate, ch);
            const double ub = bound_upper(rate, ch);

            if (rate < pf.lambda_p - kSlack) {
                eta_sign.require(rce_jd > 0.0,
                                 fmt("p=%.6g R=%.6g rce_jd=%.12g", p, rate,
                                     rce_jd));
            } else if (rate > pf.lambda_p + kSlack) {
                eta_sign.require(rce_jd == 0.0,
                                 fmt("p=%.6g R=%.6g rce_jd=%.12g", p, rate,
                                     rce_jd));
            }

            if (pf.r0 - 2.0 * rate > kSlack) {
                prop3.require(rce_jd > rce_id,
                              fmt("p=%.6g R=%.6g gap=%.12g", p, rate,
                                  rce_jd - rce_id));
            }

            doubling.require(trc_id.has_value() == (rate < pf.r_trc),
                             fmt("p=%.6g R=%.6g", p, rate));
            doubling.require(trc_jd.has_value() == trc_id.has_value(),
                             fmt("p=%.6g R=%.6g", p, rate));
            if (trc_id && trc_jd) {
                doubling.require(*trc_jd == 2.0 * *trc_id,
                                 fmt("p=%.6g R=%.6g", p, rate));
            }

            if (rate < pf.r_trc - kSlack && trc_jd) {
                prop5.require(*trc_jd > rce_jd,
                              fmt("p=%.6g R=%.6g gap=%.12g", p, rate,
                                  *trc_jd - rce_jd));
            }

            bound_chain.require(rce_id >= 0.0 && rce_jd >= 0.0 && ub >= 0.0,
                                fmt("p=%.6g R=%.6g", p, rate));
            bound_chain.require(rce_id <= rce_jd + 1e-12,
                                fmt("p=%.6g R=%.6g gap=%.12g", p, rate,
                                    rce_jd - rce_id));
            bound_chain.require(rce_jd <= ub + kSlack,
                                fmt("p=%.6g R=%.6g gap=%.12g", p, rate,
                                    ub - rce_jd));
            if (trc_jd) {
                bound_chain.require(*trc_id <= *trc_jd &&
                                        *trc_jd <= ub + kSlack,
                                    fmt("p=%.6g R=%.6g gap=%.12g", p, rate,
                                        ub - *trc_jd));
            }

            // Cross-computation from the profile fields; the r1 fault
            // injection lands here and must be caught.
            const double expect_id = std::max(0.0, pf.r0 - 2.0 * rate);
            const double expect_jd = std::max(
                0.0, std::min(r1_used - 2.0 * rate, 2.0 * pf.r0 - 3.0 * rate));
            consistency.require(std::abs(rce_id - expect_id) <= 1e-12,
                                fmt("p=%.6g R=%.6g diff=%.12g", p, rate,
                                    rce_id - expect_id));
            consistency.require(std::abs(rce_jd - expect_jd) <= 1e-12,
                                fmt("p=%.6g R=%.6g diff=%.12g", p, rate,
                                    rce_jd - expect_jd));
        }

        // Probe rate must sit inside (0, r_trc), which collapses as p -> 0.5.
        const double r_tiny = std::min(1e-10, pf.r_trc / 2.0);
        const double tol = 1e-4 * std::max(1.0, pf.alpha_p);
        const double ub0 = bound_upper(r_tiny, ch);
        const auto jd0 = bound_trc_jd(r_tiny, ch);
        cor7.require(std::abs(ub0 - pf.alpha_p) <= tol,
                     fmt("p=%.6g ub=%.12g alpha=%.12g", p, ub0, pf.alpha_p));
        cor7.require(jd0 && std::abs(*jd0 - pf.alpha_p) <= tol,
                     fmt("p=%.6g trc_jd=%.12g alpha=%.12g", p,
                         jd0 ? *jd0 : -1.0, pf.alpha_p));
    }

    Check gv_res("gv-residual");
    SplitMix64 rng(hash2(opt.seed, 0x6776));
    for (int i = 0; i < 1000; ++i) {
        const double rate = rng.next_unit();
        const double residual =
            std::abs(binary_entropy(gv_distance(rate)) - (1.0 - rate));
        gv_res.require(residual <= 1e-10,
                       fmt("R=%.12g residual=%.3g", rate, residual));
    }

    Check minimizers("delta-minimizer-grid");
    const std::vector<double> probe =
        opt.single_p ? std::vector<double>{*opt.single_p}
                     : std::vector<double>{0.01, 0.05, 0.1, 0.25, 0.4};
    for (const double p : probe) {
        const ChannelParam ch(p);
        const double alpha = alpha_p(ch);
        const auto mins = delta_minimizers(ch);
        double best1 = 0.0, best1_val = 1e300;
        double best2 = 0.0, best2_val = 1e300;
        for (int i = 0; i <= 50000; ++i) {
            const double d = static_cast<double>(i) * 1e-5;
            const double base = 1.0 - binary_entropy(d);
            const double e1 = base + d * alpha;
            const double e2 = base + 2.0 * d * alpha;
            if (e1 < best1_val) {
                best1_val = e1;
                best1 = d;
            }
            if (e2 < best2_val) {
                best2_val = e2;
                best2 = d;
            }
        }
        minimizers.require(std::abs(best2 - mins.delta_hat) <= 1e-4,
                           fmt("p=%.6g grid=%.6g closed=%.6g", p, best2,
                               mins.delta_hat));
        minimizers.require(std::abs(best1 - mins.delta_tilde) <= 1e-4,
                           fmt("p=%.6g grid=%.6g closed=%.6g", p, best1,
                               mins.delta_tilde));
    }

    for (Check* c : {&profile_sanity, &r0_vs_rcr, &chain, &continuity,
                     &eta_sign, &prop3, &prop5, &doubling, &bound_chain,
                     &consistency, &cor7, &gv_res, &minimizers}) {
        results.push_back(c->finish());
    }
}

void decoder_checks(const VerifyOptions& opt,
                    std::vector<CheckResult>& results) {
    Check oracle("assignment-matches-bruteforce");
    Check separable("joint-cost-separability");
    Check noiseless("noiseless-exact-recovery");
    Check relabel("relabeling-invariance");
    Check dominance("paired-decoder-dominance");

    SplitMix64 rng(hash2(opt.seed, 0xdec0de));
    const std::size_t instances = opt.quick ? 50 : 200;
    for (std::size_t it = 0; it < instances; ++it) {
        const std::size_t n = 8 + rng.next_below(9);
        const std::size_t m = 2 + rng.next_below(6);
        const double p = (rng.next() & 1) ? 0.05 : 0.2;
        const Codebook code = generate_rce(n, m, rng.next());
        const PermutationMap pi = sample_permutation(m, rng);
        const ChannelOutput y = transmit(code, pi, ChannelParam(p), rng.next());

        const DecoderVerdict fast = decode_joint_assignment(code, y);
        const DecoderVerdict slow = decode_joint_bruteforce(code, y);
        oracle.require(fast.total_cost == slow.total_cost,
                       fmt("cost %g vs %g (instance %g)",
                           static_cast<double>(*fast.total_cost),
                           static_cast<double>(*slow.total_cost),
                           static_cast<double>(it)));
        if (slow.ties_broken == 0) {
            oracle.require(fast.nu == slow.nu,
                           fmt("unique minimizer differs (instance %g)",
                               static_cast<double>(it)));
        }

        // d_H(received, permuted codebook) must equal the cost-matrix sum,
        // column-selected through the same permutation.
        const CostMatrix cm = build_cost_matrix(code, y.received);
        const PermutationMap sigma = sample_permutation(m, rng);
        const PermutationMap sigma_inv = sigma.inverse();
        std::int64_t via_matrix = 0;
        std::size_t direct = 0;
        for (std::size_t j = 0; j < m; ++j) {
            via_matrix += cm.at(j, sigma_inv(j));
            direct += hamming(y.received.row(j), code.row(sigma_inv(j)));
        }
        separable.require(via_matrix == static_cast<std::int64_t>(direct),
                          fmt("instance %g", static_cast<double>(it)));

        // Noiseless identity transmit: the cost matrix holds all pairwise
        // codeword distances, and selecting column sigma^-1(j) in row j must
        // reproduce permuted_distance exactly.
        const ChannelOutput clean =
            transmit_noiseless(code, PermutationMap::identity(m));
        const CostMatrix cm0 = build_cost_matrix(code, clean.received);
        std::int64_t chained = 0;
        for (std::size_t j = 0; j < m; ++j) {
            chained += cm0.at(j, sigma_inv(j));
        }
        separable.require(
            chained == static_cast<std::int64_t>(
                           permuted_distance(code, sigma.forward())),
            fmt("noiseless identity, instance %g", static_cast<double>(it)));

        if (pairwise_min_distance(code).distance > 0) {
            const DecoderVerdict ind =
                decode_independent(code, clean, rng.next());
            const DecoderVerdict jnt = decode_joint_assignment(code, clean);
            noiseless.require(ind.exact_recovery && jnt.exact_recovery &&
                                  jnt.total_cost == 0,
                              fmt("instance %g", static_cast<double>(it)));
        }
    }

    const std::size_t relabel_instances = opt.quick ? 20 : 50;
    for (std::size_t it = 0; it < relabel_instances; ++it) {
        const std::size_t n = 8 + rng.next_below(9);
        const std::size_t m = 2 + rng.next_below(5);
        const Codebook code = generate_rce(n, m, rng.next());
        const PermutationMap pi = sample_permutation(m, rng);
        const ChannelOutput y =
            transmit(code, pi, ChannelParam(0.1), rng.next());
        if (decode_joint_bruteforce(code, y).ties_broken != 0) {
            continue;  // covariance of nu is only defined off ties
        }
        const PermutationMap tau = sample_permutation(m, rng);
        Codebook shuffled(m, n);
        for (std::size_t j = 0; j < m; ++j) {
            auto src = y.received.row(j);
            auto dst = shuffled.row_mut(tau(j));
            std::copy(src.begin(), src.end(), dst.begin());
        }
        std::vector<std::size_t> fwd(m);
        for (std::size_t i = 0; i < m; ++i) {
            fwd[i] = tau(pi(i));
        }
        const ChannelOutput relabeled{std::move(shuffled),
                                      PermutationMap(std::move(fwd)),
                                      y.flip_count, y.noise_seed};
        const DecoderVerdict base = decode_joint_assignment(code, y);
        const DecoderVerdict moved = decode_joint_assignment(code, relabeled);
        relabel.require(base.total_cost == moved.total_cost,
                        fmt("cost changed, instance %g",
                            static_cast<double>(it)));
        bool covariant = true;
        for (std::size_t j = 0; j < m; ++j) {
            covariant = covariant && moved.nu[tau(j)] == base.nu[j];
        }
        relabel.require(covariant, fmt("nu not covariant, instance %g",
                                       static_cast<double>(it)));
        relabel.require(base.exact_recovery == moved.exact_recovery,
                        fmt("recovery flag changed, instance %g",
                            static_cast<double>(it)));
    }

    // Paired dominance on identical channel realizations.
    {
        const std::size_t n = 10;
        const double rate = 0.2;
        const double p = 0.05;
        const std::uint64_t trials = opt.quick ? 4000 : 20000;
        const std::size_t m = barcode_count(rate, n);
        const std::size_t thr =
            default_gmd_threshold(n, std::log2(static_cast<double>(m)) /
                                         static_cast<double>(n),
                                  p);
        std::uint64_t err_ind = 0, err_jnt = 0, err_gmd = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::uint64_t ts = hash3(opt.seed, 0xd0 + n, t);
            const Codebook code = generate_rce(n, m, hash2(ts, 1));
            SplitMix64 prng(hash2(ts, 2));
            const PermutationMap pi = sample_permutation(m, prng);
            const ChannelOutput y =
                transmit(code, pi, ChannelParam(p), hash2(ts, 3));
            const std::uint64_t tie = hash2(ts, 4);
            err_ind += decode_independent(code, y, tie).exact_recovery ? 0 : 1;
            err_jnt += decode_joint_assignment(code, y).exact_recovery ? 0 : 1;
            err_gmd += decode_gmd(code, y, thr, tie).exact_recovery ? 0 : 1;
        }
        const double nt = static_cast<double>(trials);
        const double pi_ = static_cast<double>(err_ind) / nt;
        const double pj = static_cast<double>(err_jnt) / nt;
        const double pg = static_cast<double>(err_gmd) / nt;
        auto pooled = [&](double a, double b) {
            return std::sqrt(a * (1.0 - a) / nt + b * (1.0 - b) / nt);
        };
        dominance.require(pj <= pi_ + 3.0 * pooled(pj, pi_),
                          fmt("joint=%.6g independent=%.6g", pj, pi_));
        dominance.require(pg <= pi_ + 3.0 * pooled(pg, pi_),
                          fmt("gmd=%.6g independent=%.6g", pg, pi_));
        dominance.require(pg >= pj - 3.0 * pooled(pg, pj),
                          fmt("gmd=%.6g joint=%.6g", pg, pj));
    }

    for (Check* c :
         {&oracle, &separable, &noiseless, &relabel, &dominance}) {
        results.push_back(c->finish());
    }
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    std::vector<CheckResult> results;
    numeric_checks(opt, results);
    decoder_checks(opt, results);
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace bee
