#ifndef BEE_EXPONENTS_HPP
#define BEE_EXPONENTS_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace bee {

// Binary symmetric channel with crossover probability p, 0 < p < 1/2.
struct ChannelParam {
    double p;

    explicit ChannelParam(double crossover);
};

// Scalar quantities attached to one channel. All rates and exponents are in
// bits per symbol.
struct BoundProfile {
    double p;
    double alpha_p;      // -log2 sqrt(4p(1-p)), pairwise error decay per bit
    double r0;           // cutoff rate 1 - log2(1 + sqrt(4p(1-p)))
    double r1;           // 1 - log2(1 + 4p(1-p))
    double delta_hat;    // 4p(1-p) / (1 + 4p(1-p))
    double delta_tilde;  // sqrt(4p(1-p)) / (1 + sqrt(4p(1-p)))
    double r_cr;         // critical rate of the random-coding exponent
    double r_trc;        // (1 - H(delta_tilde)) / 2, typical-code threshold
    double r_hat;        // (1 - H(delta_hat)) / 2
    double lambda_p;     // min(2 r0 / 3, r1 / 2), positivity threshold
};

struct DeltaMinimizers {
    double delta_hat;
    double delta_tilde;
};

struct CriticalRates {
    double r_cr;
    double r_trc;
    double r_hat;
};

// One row of a bound sweep. The typical-code bounds are absent at rates where
// that ensemble argument gives no exponent (rate >= r_trc).
struct CurvePoint {
    double rate;
    double rce_id;
    double rce_jd;
    std::optional<double> trc_id;
    std::optional<double> trc_jd;
    double upper;
};

using BoundCurve = std::vector<CurvePoint>;

// H(x) in bits; H(0) = H(1) = 0. Pre: 0 <= x <= 1.
double binary_entropy(double x);

// D(x || y) in bits, with 0 log 0 = 0. Pre: 0 <= x <= 1, 0 < y < 1.
double binary_kl(double x, double y);

// Gilbert-Varshamov distance: the delta in [0, 1/2] with H(delta) = 1 - rate.
// Pre: 0 <= rate <= 1. Bisection, residual below 1e-12.
double gv_distance(double rate);

double alpha_p(ChannelParam ch);
double r0(ChannelParam ch);
double r1(ChannelParam ch);

DeltaMinimizers delta_minimizers(ChannelParam ch);
CriticalRates critical_rates(ChannelParam ch);

// Random-coding exponent: r0 - rate up to r_cr, then D(gv_distance(rate)||p)
// up to capacity 1 - H(p), zero beyond. Continuous at both joins.
double random_coding_exponent(double rate, ChannelParam ch);

// Typical-random-code exponent alpha_p * gv_distance(2 rate) + rate.
// Defined for 0 <= rate < r_trc; out_of_range elsewhere.
double trc_exponent(double rate, ChannelParam ch);

// Linear-programming distance delta_lp = 1/2 - sqrt(g(1-g)) with
// g = gv_distance(1 - rate). Pre: 0 <= rate <= 1.
double delta_lp(double rate);

// Lower bounds on the identification-error exponent. Pre: rate >= 0.
double bound_rce_id(double rate, ChannelParam ch);
double bound_rce_jd(double rate, ChannelParam ch);
std::optional<double> bound_trc_id(double rate, ChannelParam ch);
std::optional<double> bound_trc_jd(double rate, ChannelParam ch);

// Converse (upper bound). Pre: 0 <= rate <= 1.
double bound_upper(double rate, ChannelParam ch);

BoundProfile bound_profile(ChannelParam ch);

// Uniform sweep over [r_min, r_max] inclusive with `steps` points.
// Pre: 0 <= r_min < r_max <= 1 and steps >= 2.
BoundCurve bound_curve(ChannelParam ch, double r_min, double r_max,
                       std::size_t steps);

}  // namespace bee

#endif
