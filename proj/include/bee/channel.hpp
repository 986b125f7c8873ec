#ifndef BEE_CHANNEL_HPP
#define BEE_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bee/codebook.hpp"
#include "bee/exponents.hpp"
#include "bee/rng.hpp"

namespace bee {

class PermutationMap {
  public:
    PermutationMap() = default;
    explicit PermutationMap(std::vector<std::size_t> forward);

    static PermutationMap identity(std::size_t m);

    std::size_t size() const noexcept { return forward_.size(); }
    std::size_t operator()(std::size_t i) const;
    std::span<const std::size_t> forward() const noexcept { return forward_; }
    PermutationMap inverse() const;

    bool operator==(const PermutationMap& other) const = default;

  private:
    std::vector<std::size_t> forward_;
};

// Fisher-Yates shuffle, uniform over S_m. Pre: m >= 1.
PermutationMap sample_permutation(std::size_t m, SplitMix64& rng);

struct ChannelOutput {
    Codebook received;  // row pi(i) carries codeword i plus noise
    PermutationMap truth;
    std::size_t flip_count = 0;
    std::uint64_t noise_seed = 0;
};

// Row-permutes the codebook and XORs an i.i.d. Bernoulli(p) mask onto every
// bit. The mask is a pure function of (noise_seed, output row, bit index),
// so replay never depends on evaluation order. Pre: pi.size() == code.m().
ChannelOutput transmit(const Codebook& code, const PermutationMap& pi,
                       ChannelParam ch, std::uint64_t noise_seed);

// Permutation only, no noise. Stands in for p = 0, which ChannelParam
// rejects; decoder oracles need the noiseless point.
ChannelOutput transmit_noiseless(const Codebook& code,
                                 const PermutationMap& pi);

// Codebook text format preceded by a "# pi: <space-separated forward map>"
// line (0-based indices). flip_count and noise_seed are not persisted.
void save_channel_output(const ChannelOutput& out, std::ostream& os);
ChannelOutput load_channel_output(std::istream& is);

}  // namespace bee

#endif
