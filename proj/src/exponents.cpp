#include "bee/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bee {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

double log2_1p(double x) {
    return std::log1p(x) * kInvLn2;
}

// 4p(1-p), the Bhattacharyya parameter of the BSC squared.
double zeta(double p) {
    return 4.0 * p * (1.0 - p);
}

}  // namespace

ChannelParam::ChannelParam(double crossover) : p(crossover) {
    if (!(crossover > 0.0) || !(crossover < 0.5)) {
        throw std::domain_error("ChannelParam: p must lie in (0, 0.5)");
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error("binary_entropy: argument outside [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double binary_kl(double x, double y) {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error("binary_kl: x outside [0, 1]");
    }
    if (!(y > 0.0) || !(y < 1.0)) {
        throw std::domain_error("binary_kl: y outside (0, 1)");
    }
    double acc = 0.0;
    if (x > 0.0) {
        acc += x * std::log2(x / y);
    }
    if (x < 1.0) {
        acc += (1.0 - x) * std::log2((1.0 - x) / (1.0 - y));
    }
    return acc;
}

double gv_distance(double rate) {
    if (!(rate >= 0.0) || !(rate <= 1.0)) {
        throw std::domain_error("gv_distance: rate outside [0, 1]");
    }
    if (rate == 0.0) {
        return 0.5;
    }
    if (rate == 1.0) {
        return 0.0;
    }
    const double target = 1.0 - rate;
    double lo = 0.0;
    double hi = 0.5;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h = binary_entropy(mid);
        if (h < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (std::abs(h - target) < 1e-15) {
            return mid;
        }
    }
    return 0.5 * (lo + hi);
}

double alpha_p(ChannelParam ch) {
    return -0.5 * std::log2(zeta(ch.p));
}

double r0(ChannelParam ch) {
    return 1.0 - log2_1p(std::sqrt(zeta(ch.p)));
}

double r1(ChannelParam ch) {
    return 1.0 - log2_1p(zeta(ch.p));
}

DeltaMinimizers delta_minimizers(ChannelParam ch) {
    const double z = zeta(ch.p);
    const double s = std::sqrt(z);
    return {z / (1.0 + z), s / (1.0 + s)};
}

CriticalRates critical_rates(ChannelParam ch) {
    const double sp = std::sqrt(ch.p);
    const double sq = std::sqrt(1.0 - ch.p);
    const double delta_cr = sp / (sp + sq);
    const auto [delta_hat, delta_tilde] = delta_minimizers(ch);
    CriticalRates out;
    out.r_cr = 1.0 - binary_entropy(delta_cr);
    out.r_trc = 0.5 * (1.0 - binary_entropy(delta_tilde));
    out.r_hat = 0.5 * (1.0 - binary_entropy(delta_hat));
    return out;
}

double random_coding_exponent(double rate, ChannelParam ch) {
    if (!(rate >= 0.0)) {
        throw std::domain_error("random_coding_exponent: rate must be >= 0");
    }
    const double capacity = 1.0 - binary_entropy(ch.p);
    if (rate >= capacity) {
        return 0.0;
    }
    const double r_cr = critical_rates(ch).r_cr;
    if (rate <= r_cr) {
        return r0(ch) - rate;
    }
    return binary_kl(gv_distance(rate), ch.p);
}

double trc_exponent(double rate, ChannelParam ch) {
    const double r_trc = critical_rates(ch).r_trc;
    if (!(rate >= 0.0) || !(rate < r_trc)) {
        throw std::out_of_range("trc_exponent: rate outside [0, r_trc)");
    }
    return alpha_p(ch) * gv_distance(2.0 * rate) + rate;
}

double delta_lp(double rate) {
    if (!(rate >= 0.0) || !(rate <= 1.0)) {
        throw std::domain_error("delta_lp: rate outside [0, 1]");
    }
    const double g = gv_distance(1.0 - rate);
    return 0.5 - std::sqrt(g * (1.0 - g));
}

double bound_rce_id(double rate, ChannelParam ch) {
    if (!(rate >= 0.0)) {
        throw std::domain_error("bound_rce_id: rate must be >= 0");
    }
    return std::max(0.0, r0(ch) - 2.0 * rate);
}

double bound_rce_jd(double rate, ChannelParam ch) {
    if (!(rate >= 0.0)) {
        throw std::domain_error("bound_rce_jd: rate must be >= 0");
    }
    const double eta = std::min(r1(ch) - 2.0 * rate, 2.0 * r0(ch) - 3.0 * rate);
    return std::max(0.0, eta);
}

std::optional<double> bound_trc_id(double rate, ChannelParam ch) {
    if (!(rate >= 0.0)) {
        throw std::domain_error("bound_trc_id: rate must be >= 0");
    }
    if (rate >= critical_rates(ch).r_trc) {
        return std::nullopt;
    }
    return alpha_p(ch) * gv_distance(2.0 * rate);
}

std::optional<double> bound_trc_jd(double rate, ChannelParam ch) {
    const auto id = bound_trc_id(rate, ch);
    if (!id) {
        return std::nullopt;
    }
    return 2.0 * *id;
}

double bound_upper(double rate, ChannelParam ch) {
    return std::max(0.0, 2.0 * delta_lp(rate) * alpha_p(ch) - rate);
}

BoundProfile bound_profile(ChannelParam ch) {
    const auto [delta_hat, delta_tilde] = delta_minimizers(ch);
    const auto crit = critical_rates(ch);
    BoundProfile out;
    out.p = ch.p;
    out.alpha_p = alpha_p(ch);
    out.r0 = r0(ch);
    out.r1 = r1(ch);
    out.delta_hat = delta_hat;
    out.delta_tilde = delta_tilde;
    out.r_cr = crit.r_cr;
    out.r_trc = crit.r_trc;
    out.r_hat = crit.r_hat;
    out.lambda_p = std::min(2.0 * out.r0 / 3.0, 0.5 * out.r1);
    return out;
}

BoundCurve bound_curve(ChannelParam ch, double r_min, double r_max,
                       std::size_t steps) {
    if (!(r_min >= 0.0) || !(r_min < r_max) || !(r_max <= 1.0) || steps < 2) {
        throw std::invalid_argument(
            "bound_curve: need 0 <= r_min < r_max <= 1 and steps >= 2");
    }
    BoundCurve curve;
    curve.reserve(steps);
    const double width = r_max - r_min;
    for (std::size_t i = 0; i < steps; ++i) {
        const double rate =
            (i + 1 == steps) ? r_max
                             : r_min + width * static_cast<double>(i) /
                                           static_cast<double>(steps - 1);
        CurvePoint pt;
        pt.rate = rate;
        pt.rce_id = bound_rce_id(rate, ch);
        pt.rce_jd = bound_rce_jd(rate, ch);
        pt.trc_id = bound_trc_id(rate, ch);
        pt.trc_jd = bound_trc_jd(rate, ch);
        pt.upper = bound_upper(rate, ch);
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace bee
