#ifndef BEE_CODEBOOK_HPP
#define BEE_CODEBOOK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bee {

enum class Ensemble { Rce, Trc, Explicit };

const char* to_string(Ensemble e);

// Generators refuse codebooks larger than this many bits (packed size).
inline constexpr std::size_t kMaxCodebookBits = std::size_t{1} << 33;

// m x n binary matrix. Rows are bit-packed little-endian into 64-bit words;
// bits past n in the last word of a row are always zero, so popcount-based
// distances need no masking.
class Codebook {
  public:
    Codebook(std::size_t m, std::size_t n);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return wpr_; }
    double rate() const noexcept;  // log2(m) / n

    bool bit(std::size_t r, std::size_t c) const;
    void set_bit(std::size_t r, std::size_t c, bool v);

    std::span<const std::uint64_t> row(std::size_t r) const;
    std::span<std::uint64_t> row_mut(std::size_t r);

    // Zeroes any bits past column n in the last word of every row.
    void mask_tail();

    bool operator==(const Codebook& other) const = default;

    Ensemble ensemble = Ensemble::Explicit;
    double epsilon = 0.0;    // TRC band margin; meaningless otherwise
    std::uint64_t seed = 0;  // generator seed; 0 for explicit codebooks

  private:
    std::size_t m_;
    std::size_t n_;
    std::size_t wpr_;
    std::vector<std::uint64_t> words_;
};

// Population count of the XOR. Pre: equal lengths.
std::size_t hamming(std::span<const std::uint64_t> x,
                    std::span<const std::uint64_t> y);

// hamming between row i of a and row j of b. Pre: equal n.
std::size_t row_distance(const Codebook& a, std::size_t i, const Codebook& b,
                         std::size_t j);

// Sum of row distances over aligned rows. Pre: equal shapes.
std::size_t matrix_distance(const Codebook& a, const Codebook& b);

// Uniform random codebook, every bit i.i.d. fair. Deterministic given seed.
Codebook generate_rce(std::size_t n, std::size_t m, std::uint64_t seed);

// Margin used by generate_trc when the caller does not pick one.
double default_trc_epsilon(std::size_t n, std::size_t m);

struct TrcBand {
    double delta_low;  // delta_gv(2 rate) - epsilon
    double lo;         // n * delta_low; distances must exceed this
    double hi;         // n * (1 - delta_low); distances must stay below this
};

TrcBand trc_band(std::size_t n, std::size_t m, double epsilon);

// Typical-random-code sampler: rows are drawn uniformly and re-drawn until
// every pairwise distance d satisfies band.lo < d < band.hi against all
// previously accepted rows. This sequential scheme is an approximation of
// sampling uniformly from the constrained ensemble; acceptance is near 1 at
// rates well below 1/2, where the artifact operates. Pre: realized rate
// log2(m)/n < 0.5 and 0 < epsilon < delta_gv(2 rate). Throws runtime_error
// when a row exceeds max_attempts redraws.
Codebook generate_trc(std::size_t n, std::size_t m, double epsilon,
                      std::uint64_t seed, std::size_t max_attempts = 1000000);

// Full pairwise re-scan of the band constraint with the given margin.
bool satisfies_trc_band(const Codebook& cb, double epsilon);

struct RowPair {
    std::size_t distance;
    std::size_t i;
    std::size_t j;  // i < j
};

// Exact extremes over all unordered pairs; witness is the lexicographically
// first pair attaining it. Pre: m >= 2.
RowPair pairwise_min_distance(const Codebook& cb);
RowPair pairwise_max_distance(const Codebook& cb);

struct PairSet {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j
    std::vector<std::size_t> source_distances;
};

// Repeatedly extracts a closest pair (ties by lexicographic index order) and
// retires both endpoints, until ceil(m/4) disjoint pairs are collected.
// Pre: m >= 4.
PairSet greedy_pair_set(const Codebook& cb);

// Sum over i of hamming(row i, row sigma(i)) for a bijection sigma given as
// its forward map. Pre: sigma is a permutation of 0..m-1.
std::size_t permuted_distance(const Codebook& cb,
                              std::span<const std::size_t> sigma);

// Text format: line 1 is "m n"; then m lines of exactly n characters from
// {0,1}; newline after every line; no other whitespace. Round-trips exactly.
void save_codebook(const Codebook& cb, std::ostream& os);
void save_codebook(const Codebook& cb, const std::string& path);
Codebook load_codebook(std::istream& is);
Codebook load_codebook(const std::string& path);

}  // namespace bee

#endif
