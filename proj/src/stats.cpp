#include "bee/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bee {

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials,
                               double z) {
    if (trials == 0 || errors > trials || !(z > 0.0)) {
        throw std::invalid_argument("wilson_interval: bad arguments");
    }
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval out;
    out.low = std::max(0.0, (center - half) / denom);
    out.high = std::min(1.0, (center + half) / denom);
    return out;
}

namespace {

// Series expansion of the lower regularized gamma P(a, x); converges fast
// for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int it = 0; it < 500; ++it) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the upper regularized gamma Q(a, x);
// converges fast for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            break;
        }
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return 1.0 - gamma_p_series(a, x);
    }
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, std::size_t df) {
    if (df == 0) {
        throw std::domain_error("chi_square_pvalue: df must be positive");
    }
    if (!(stat >= 0.0)) {
        throw std::domain_error("chi_square_pvalue: stat must be >= 0");
    }
    return regularized_gamma_q(0.5 * static_cast<double>(df), 0.5 * stat);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw std::invalid_argument("chi_square_gof: size mismatch");
    }
    std::vector<double> exp_merged;
    std::vector<double> obs_merged;
    double exp_acc = 0.0;
    double obs_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        exp_acc += expected[i];
        obs_acc += static_cast<double>(observed[i]);
        if (exp_acc >= 5.0) {
            exp_merged.push_back(exp_acc);
            obs_merged.push_back(obs_acc);
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 || obs_acc > 0.0) {
        if (exp_merged.empty()) {
            throw std::invalid_argument("chi_square_gof: expected counts too small");
        }
        exp_merged.back() += exp_acc;
        obs_merged.back() += obs_acc;
    }
    if (exp_merged.size() < 2) {
        throw std::invalid_argument("chi_square_gof: fewer than two usable cells");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < exp_merged.size(); ++i) {
        const double diff = obs_merged[i] - exp_merged[i];
        stat += diff * diff / exp_merged[i];
    }
    ChiSquareResult out;
    out.statistic = stat;
    out.df = exp_merged.size() - 1;
    out.p_value = chi_square_pvalue(stat, out.df);
    return out;
}

ChiSquareResult chi_square_independence(
    const std::vector<std::vector<std::uint64_t>>& table) {
    const std::size_t rows = table.size();
    if (rows < 2) {
        throw std::invalid_argument("chi_square_independence: need >= 2 rows");
    }
    const std::size_t cols = table.front().size();
    if (cols < 2) {
        throw std::invalid_argument("chi_square_independence: need >= 2 cols");
    }
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (table[i].size() != cols) {
            throw std::invalid_argument("chi_square_independence: ragged table");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = static_cast<double>(table[i][j]);
            row_sum[i] += v;
            col_sum[j] += v;
            total += v;
        }
    }
    for (double s : row_sum) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("chi_square_independence: empty row");
        }
    }
    for (double s : col_sum) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("chi_square_independence: empty column");
        }
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double e = row_sum[i] * col_sum[j] / total;
            const double diff = static_cast<double>(table[i][j]) - e;
            stat += diff * diff / e;
        }
    }
    ChiSquareResult out;
    out.statistic = stat;
    out.df = (rows - 1) * (cols - 1);
    out.p_value = chi_square_pvalue(stat, out.df);
    return out;
}

double binomial_pmf(std::size_t n, std::size_t k, double p) {
    if (k > n || !(p >= 0.0) || !(p <= 1.0)) {
        throw std::domain_error("binomial_pmf: bad arguments");
    }
    if (p == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    if (p == 1.0) {
        return k == n ? 1.0 : 0.0;
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double lchoose = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
                           std::lgamma(nd - kd + 1.0);
    return std::exp(lchoose + kd * std::log(p) +
                    (nd - kd) * std::log1p(-p));
}

double binomial_tail_geq(std::size_t n, std::size_t k, double p) {
    if (k > n) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t i = k; i <= n; ++i) {
        acc += binomial_pmf(n, i, p);
    }
    return std::min(1.0, acc);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares: size mismatch");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("least_squares: x values all equal");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.max_residual = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::abs(y[i] - (fit.intercept + fit.slope * x[i]));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

}  // namespace bee
