#include "bee/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bee/channel.hpp"
#include "bee/codebook.hpp"
#include "bee/decoders.hpp"
#include "bee/exponents.hpp"
#include "bee/montecarlo.hpp"
#include "bee/verify.hpp"

namespace bee {

std::string format_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Resolves --seed: an omitted seed becomes a recorded entropy draw, echoed
// to stderr so the run can be replayed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) {
        return *seed;
    }
    const std::uint64_t drawn = entropy_seed();
    std::cerr << "seed " << drawn << "\n";
    return drawn;
}

std::optional<DecoderKind> parse_decoder(const std::string& name) {
    if (name == "independent") return DecoderKind::Independent;
    if (name == "joint") return DecoderKind::Joint;
    if (name == "gmd") return DecoderKind::Gmd;
    if (name == "bruteforce") return DecoderKind::Bruteforce;
    return std::nullopt;
}

std::optional<Ensemble> parse_ensemble(const std::string& name) {
    if (name == "rce") return Ensemble::Rce;
    if (name == "trc") return Ensemble::Trc;
    return std::nullopt;
}

void write_bounds_csv(const BoundCurve& curve, std::ostream& os) {
    os << "R,lb_rce_id,lb_rce_jd,lb_trc_id,lb_trc_jd,ub\n";
    for (const CurvePoint& pt : curve) {
        os << format_sig10(pt.rate) << ',' << format_sig10(pt.rce_id) << ','
           << format_sig10(pt.rce_jd) << ','
           << (pt.trc_id ? format_sig10(*pt.trc_id) : "") << ','
           << (pt.trc_jd ? format_sig10(*pt.trc_jd) : "") << ','
           << format_sig10(pt.upper) << '\n';
    }
}

void write_simulate_row(const TrialStats& st, Ensemble ensemble,
                        std::ostream& os) {
    os << st.n << ',' << st.m << ',' << format_sig10(st.realized_rate) << ','
       << format_sig10(st.p) << ',' << to_string(ensemble) << ','
       << to_string(st.decoder) << ',' << st.trials << ',' << st.errors << ','
       << format_sig10(st.p_hat) << ',' << format_sig10(st.ci_low) << ','
       << format_sig10(st.ci_high) << ','
       << (st.exponent_hat ? format_sig10(*st.exponent_hat) : "") << '\n';
}

}  // namespace

int cmd_bounds(const BoundsArgs& args) {
    try {
        const ChannelParam ch(args.p);
        const BoundProfile pf = bound_profile(ch);
        const BoundCurve curve =
            bound_curve(ch, args.r_min, args.r_max, args.steps);
        if (args.out_path.empty()) {
            write_bounds_csv(curve, std::cout);
            if (!std::cout) {
                std::cerr << "bounds: write failure\n";
                return kExitCheckFailed;
            }
        } else {
            std::ofstream os(args.out_path);
            if (!os) {
                std::cerr << "bounds: cannot open " << args.out_path << "\n";
                return kExitCheckFailed;
            }
            write_bounds_csv(curve, os);
            if (!os) {
                std::cerr << "bounds: write failure\n";
                return kExitCheckFailed;
            }
        }
        std::ostream& info = args.out_path.empty() ? std::cerr : std::cout;
        info << "p " << format_sig10(pf.p) << "\n"
             << "alpha_p " << format_sig10(pf.alpha_p) << "\n"
             << "r0 " << format_sig10(pf.r0) << "\n"
             << "r1 " << format_sig10(pf.r1) << "\n"
             << "r_cr " << format_sig10(pf.r_cr) << "\n"
             << "r_trc " << format_sig10(pf.r_trc) << "\n"
             << "lambda_p " << format_sig10(pf.lambda_p) << "\n";
        return kExitOk;
    } catch (const std::domain_error& e) {
        std::cerr << "bounds: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bounds: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "bounds: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

int cmd_simulate(const SimulateArgs& args) {
    const auto decoder = parse_decoder(args.decoder);
    if (!decoder) {
        std::cerr << "simulate: unknown decoder \"" << args.decoder << "\"\n";
        return kExitUsage;
    }
    const auto ensemble = parse_ensemble(args.ensemble);
    if (!ensemble) {
        std::cerr << "simulate: unknown ensemble \"" << args.ensemble << "\"\n";
        return kExitUsage;
    }
    if (args.n_list.empty()) {
        std::cerr << "simulate: at least one --n is required\n";
        return kExitUsage;
    }
    ExperimentConfig cfg;
    cfg.n_list = args.n_list;
    cfg.rate = args.rate;
    cfg.p = args.p;
    cfg.ensemble = *ensemble;
    cfg.epsilon = args.epsilon;
    cfg.decoder = *decoder;
    cfg.trials = args.trials;
    cfg.fresh_codebook_per_trial = !args.fixed_codebook;
    cfg.fix_identity = args.fix_identity;
    cfg.gmd_threshold = args.threshold;

    // Flag-combination validation up front so misuse exits 2, not mid-run.
    try {
        ChannelParam ch(args.p);
        (void)ch;
        if (args.trials == 0) {
            std::cerr << "simulate: --trials must be >= 1\n";
            return kExitUsage;
        }
        for (const std::size_t n : args.n_list) {
            const std::size_t m = barcode_count(args.rate, n);
            if (cfg.decoder == DecoderKind::Bruteforce && m > 8) {
                std::cerr << "simulate: bruteforce needs m <= 8, n=" << n
                          << " gives m=" << m << "\n";
                return kExitUsage;
            }
            if (cfg.ensemble == Ensemble::Trc) {
                const double realized =
                    std::log2(static_cast<double>(m)) / static_cast<double>(n);
                if (!(realized < 0.5)) {
                    std::cerr << "simulate: TRC requires realized rate < 0.5, "
                                 "n="
                              << n << " gives " << format_sig10(realized)
                              << "\n";
                    return kExitUsage;
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitUsage;
    }
    cfg.base_seed = resolve_seed(args.seed);

    std::ofstream file;
    if (!args.out_path.empty()) {
        file.open(args.out_path);
        if (!file) {
            std::cerr << "simulate: cannot open " << args.out_path << "\n";
            return kExitCheckFailed;
        }
    }
    std::ostream& os = args.out_path.empty() ? std::cout : file;

    os << "n,m,realized_rate,p,ensemble,decoder,trials,errors,p_hat,ci_low,"
          "ci_high,exponent_hat\n";
    std::vector<TrialStats> cells;
    try {
        for (const std::size_t n : cfg.n_list) {
            const TrialStats st = run_cell(cfg, n);
            cells.push_back(st);
            write_simulate_row(st, cfg.ensemble, os);
            os.flush();
        }
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    std::size_t usable = 0;
    for (const TrialStats& st : cells) {
        usable += st.errors > 0 ? 1 : 0;
    }
    if (usable >= 3) {
        const ExponentFit fit = estimate_exponent(cells);
        double worst = 0.0;
        for (const double r : fit.residuals) {
            worst = std::max(worst, std::abs(r));
        }
        os << "# exponent_fit slope=" << format_sig10(fit.slope)
           << " intercept=" << format_sig10(fit.intercept)
           << " cells=" << fit.residuals.size()
           << " max_residual=" << format_sig10(worst) << '\n';
    }
    if (!os) {
        std::cerr << "simulate: write failure\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
    VerifyOptions opt;
    opt.p_points = args.p_points;
    opt.rate_points = args.rate_points;
    opt.single_p = args.p;
    opt.seed = args.seed;
    opt.r1_offset = args.r1_offset;
    if (args.p && (!(*args.p > 0.0) || !(*args.p < 0.5))) {
        std::cerr << "verify: --p must lie in (0, 0.5)\n";
        return kExitUsage;
    }
    std::vector<CheckResult> results;
    try {
        results = run_verify(opt);
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    bool ok = true;
    for (const CheckResult& r : results) {
        std::printf("CHECK %-28s %s", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL");
        if (!r.pass) {
            std::printf("  %s", r.detail.c_str());
            ok = false;
        }
        std::printf("\n");
    }
    std::printf("%s\n", ok ? "verify: all checks passed"
                           : "verify: checks failed");
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_codebook(const CodebookArgs& args) {
    if (args.action == "generate") {
        const auto ensemble = parse_ensemble(args.ensemble);
        if (!ensemble) {
            std::cerr << "codebook: unknown ensemble \"" << args.ensemble
                      << "\"\n";
            return kExitUsage;
        }
        if (args.out_path.empty()) {
            std::cerr << "codebook: generate requires --out\n";
            return kExitUsage;
        }
        try {
            const std::uint64_t seed = resolve_seed(args.seed);
            Codebook cb = *ensemble == Ensemble::Trc
                              ? generate_trc(args.n, args.m,
                                             args.epsilon > 0.0
                                                 ? args.epsilon
                                                 : default_trc_epsilon(
                                                       args.n, args.m),
                                             seed)
                              : generate_rce(args.n, args.m, seed);
            save_codebook(cb, args.out_path);
            return kExitOk;
        } catch (const std::domain_error& e) {
            std::cerr << "codebook: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "codebook: " << e.what() << "\n";
            return kExitCheckFailed;
        }
    }
    if (args.action == "inspect") {
        if (args.in_path.empty()) {
            std::cerr << "codebook: inspect requires --in\n";
            return kExitUsage;
        }
        try {
            const Codebook cb = load_codebook(args.in_path);
            std::printf("m %zu\n", cb.m());
            std::printf("n %zu\n", cb.n());
            std::printf("rate %s\n", format_sig10(cb.rate()).c_str());
            if (cb.m() >= 2) {
                const RowPair lo = pairwise_min_distance(cb);
                const RowPair hi = pairwise_max_distance(cb);
                std::printf("min_distance %zu\n", lo.distance);
                std::printf("min_pair %zu %zu\n", lo.i, lo.j);
                std::printf("max_distance %zu\n", hi.distance);
                std::printf("max_pair %zu %zu\n", hi.i, hi.j);
            }
            if (cb.rate() < 0.5 && cb.m() >= 2) {
                const double eps = args.epsilon > 0.0
                                       ? args.epsilon
                                       : default_trc_epsilon(cb.n(), cb.m());
                const TrcBand band = trc_band(cb.n(), cb.m(), eps);
                std::printf("trc_epsilon %s\n", format_sig10(eps).c_str());
                std::printf("trc_band_low %s\n",
                            format_sig10(band.lo).c_str());
                std::printf("trc_band_high %s\n",
                            format_sig10(band.hi).c_str());
                std::printf("trc_band_ok %s\n",
                            satisfies_trc_band(cb, eps) ? "yes" : "no");
            }
            if (cb.m() >= 4) {
                const PairSet ps = greedy_pair_set(cb);
                std::printf("greedy_pairs %zu\n", ps.pairs.size());
                for (std::size_t k = 0; k < ps.pairs.size(); ++k) {
                    std::printf("pair %zu %zu %zu\n", ps.pairs[k].first,
                                ps.pairs[k].second, ps.source_distances[k]);
                }
            }
            return kExitOk;
        } catch (const std::exception& e) {
            std::cerr << "codebook: " << e.what() << "\n";
            return kExitCheckFailed;
        }
    }
    std::cerr << "codebook: action must be generate or inspect\n";
    return kExitUsage;
}

}  // namespace bee
