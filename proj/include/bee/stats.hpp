#ifndef BEE_STATS_HPP
#define BEE_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bee {

struct WilsonInterval {
    double low;
    double high;
};

// Wilson score interval for a binomial proportion. Pre: trials > 0,
// errors <= trials, z > 0.
WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials,
                               double z = 1.96);

// Upper regularized incomplete gamma Q(a, x). Pre: a > 0, x >= 0.
double regularized_gamma_q(double a, double x);

// P(X >= stat) for X chi-square with df degrees of freedom.
double chi_square_pvalue(double stat, std::size_t df);

struct ChiSquareResult {
    double statistic;
    std::size_t df;
    double p_value;
};

// Goodness of fit against given expected counts. Adjacent cells are merged
// left to right until each kept cell has expected count >= 5; a sparse
// remainder is folded into the last kept cell. Pre: sizes match, at least
// two cells survive merging.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected);

// Independence test on a contingency table with expected counts from the
// margins. Pre: table is rectangular, at least 2x2, all margins positive.
ChiSquareResult chi_square_independence(
    const std::vector<std::vector<std::uint64_t>>& table);

// Binomial(n, p) point mass and upper tail P(X >= k). Pre: 0 <= p <= 1.
double binomial_pmf(std::size_t n, std::size_t k, double p);
double binomial_tail_geq(std::size_t n, std::size_t k, double p);

struct LineFit {
    double slope;
    double intercept;
    double max_residual;
};

// Ordinary least squares of y on x. Pre: sizes match, size >= 2, x values
// not all equal.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace bee

#endif
