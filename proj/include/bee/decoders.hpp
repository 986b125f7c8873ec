#ifndef BEE_DECODERS_HPP
#define BEE_DECODERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bee/channel.hpp"
#include "bee/codebook.hpp"

namespace bee {

struct DecoderVerdict {
    // nu[j] = decoded source index for received row j. Exact recovery means
    // nu equals the inverse of the channel permutation.
    std::vector<std::size_t> nu;
    bool is_permutation = false;
    std::optional<std::int64_t> total_cost;  // joint decoders only
    // Independent/GMD: rows whose nearest-codeword set had more than one
    // element. Bruteforce: optimal permutations beyond the first.
    std::size_t ties_broken = 0;
    std::vector<std::size_t> erased;  // GMD stage-one erasures, ascending
    bool exact_recovery = false;
};

struct CostMatrix {
    std::size_t m = 0;
    std::vector<std::int64_t> entries;  // row-major, entries[j*m + k]

    std::int64_t at(std::size_t j, std::size_t k) const {
        return entries[j * m + k];
    }
};

// entries[j][k] = hamming(received row j, codebook row k).
// Pre: shapes match.
CostMatrix build_cost_matrix(const Codebook& code, const Codebook& received);

struct Assignment {
    std::vector<std::size_t> row_to_col;
    std::int64_t total_cost = 0;
};

// Exact minimum-cost perfect matching on a square integer matrix, shortest
// augmenting paths with potentials, O(m^3). Pre: m >= 1.
Assignment min_cost_assignment(const CostMatrix& cm);

// Per-row nearest codeword; ties drawn uniformly from the minimizing set,
// keyed by (tie_seed, row). Output need not be a permutation.
DecoderVerdict decode_independent(const Codebook& code, const ChannelOutput& y,
                                  std::uint64_t tie_seed);

// Exact joint ML: the joint distance separates over received rows, so the
// global minimum over permutations is a minimum-cost assignment on the
// row-to-codeword cost matrix.
DecoderVerdict decode_joint_assignment(const Codebook& code,
                                       const ChannelOutput& y);

// Exhaustive joint ML over all m! permutations; lexicographically smallest
// minimizer. Pre: m <= 8.
DecoderVerdict decode_joint_bruteforce(const Codebook& code,
                                       const ChannelOutput& y);

// Two-step decoder: per-row nearest neighbor with erasure when the minimum
// distance exceeds threshold, collisions demoted to erasures, then a joint
// assignment of erased rows onto unclaimed codewords. Pre: threshold <= n.
DecoderVerdict decode_gmd(const Codebook& code, const ChannelOutput& y,
                          std::size_t threshold, std::uint64_t tie_seed);

// floor(n (p + gv_distance(min(1, 2 rate)) / 2) / 2): midpoint between the
// expected noise weight and half the design distance.
std::size_t default_gmd_threshold(std::size_t n, double rate, double p);

}  // namespace bee

#endif
