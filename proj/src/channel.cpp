#include "bee/channel.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bee {

PermutationMap::PermutationMap(std::vector<std::size_t> forward)
    : forward_(std::move(forward)) {
    std::vector<char> seen(forward_.size(), 0);
    for (std::size_t v : forward_) {
        if (v >= forward_.size() || seen[v]) {
            throw std::invalid_argument("PermutationMap: not a bijection");
        }
        seen[v] = 1;
    }
}

PermutationMap PermutationMap::identity(std::size_t m) {
    std::vector<std::size_t> fwd(m);
    for (std::size_t i = 0; i < m; ++i) {
        fwd[i] = i;
    }
    return PermutationMap(std::move(fwd));
}

std::size_t PermutationMap::operator()(std::size_t i) const {
    if (i >= forward_.size()) {
        throw std::out_of_range("PermutationMap: index out of range");
    }
    return forward_[i];
}

PermutationMap PermutationMap::inverse() const {
    std::vector<std::size_t> inv(forward_.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) {
        inv[forward_[i]] = i;
    }
    return PermutationMap(std::move(inv));
}

PermutationMap sample_permutation(std::size_t m, SplitMix64& rng) {
    if (m == 0) {
        throw std::invalid_argument("sample_permutation: m must be >= 1");
    }
    std::vector<std::size_t> fwd(m);
    for (std::size_t i = 0; i < m; ++i) {
        fwd[i] = i;
    }
    for (std::size_t i = m; i-- > 1;) {
        const std::size_t j =
            static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(fwd[i], fwd[j]);
    }
    return PermutationMap(std::move(fwd));
}

namespace {

// p mapped onto the full 64-bit range; a bit flips when its counter hash
// falls below this. long double keeps the quantization of p below 2^-63.
std::uint64_t flip_threshold(double p) {
    return static_cast<std::uint64_t>(
        std::ldexp(static_cast<long double>(p), 64));
}

std::uint64_t noise_word(std::uint64_t row_key, std::size_t word_index,
                         std::size_t bits, std::uint64_t threshold) {
    std::uint64_t mask = 0;
    const std::uint64_t base = static_cast<std::uint64_t>(word_index) * 64;
    for (std::size_t b = 0; b < bits; ++b) {
        const std::uint64_t u = mix64(row_key ^ (base + b + 1));
        if (u < threshold) {
            mask |= std::uint64_t{1} << b;
        }
    }
    return mask;
}

}  // namespace

ChannelOutput transmit(const Codebook& code, const PermutationMap& pi,
                       ChannelParam ch, std::uint64_t noise_seed) {
    if (pi.size() != code.m()) {
        throw std::invalid_argument("transmit: permutation size mismatch");
    }
    const std::uint64_t threshold = flip_threshold(ch.p);
    ChannelOutput out{Codebook(code.m(), code.n()), pi, 0, noise_seed};
    const std::size_t wpr = code.words_per_row();
    for (std::size_t i = 0; i < code.m(); ++i) {
        const std::size_t j = pi(i);
        const std::uint64_t row_key = hash2(noise_seed, j);
        auto src = code.row(i);
        auto dst = out.received.row_mut(j);
        for (std::size_t w = 0; w < wpr; ++w) {
            const std::size_t bits =
                (w + 1 == wpr && code.n() % 64 != 0) ? code.n() % 64 : 64;
            const std::uint64_t mask = noise_word(row_key, w, bits, threshold);
            dst[w] = src[w] ^ mask;
            out.flip_count += static_cast<std::size_t>(std::popcount(mask));
        }
    }
    return out;
}

ChannelOutput transmit_noiseless(const Codebook& code,
                                 const PermutationMap& pi) {
    if (pi.size() != code.m()) {
        throw std::invalid_argument(
            "transmit_noiseless: permutation size mismatch");
    }
    ChannelOutput out{Codebook(code.m(), code.n()), pi, 0, 0};
    for (std::size_t i = 0; i < code.m(); ++i) {
        auto src = code.row(i);
        auto dst = out.received.row_mut(pi(i));
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

void save_channel_output(const ChannelOutput& out, std::ostream& os) {
    os << "# pi:";
    for (std::size_t v : out.truth.forward()) {
        os << ' ' << v;
    }
    os << '\n';
    save_codebook(out.received, os);
}

ChannelOutput load_channel_output(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) {
        throw std::runtime_error("load_channel_output: missing header");
    }
    const std::string prefix = "# pi:";
    if (header.rfind(prefix, 0) != 0) {
        throw std::runtime_error(
            "load_channel_output: expected a \"# pi:\" header line");
    }
    std::istringstream hs(header.substr(prefix.size()));
    std::vector<std::size_t> fwd;
    std::size_t v = 0;
    while (hs >> v) {
        fwd.push_back(v);
    }
    if (!hs.eof()) {
        throw std::runtime_error("load_channel_output: malformed header");
    }
    PermutationMap truth{std::move(fwd)};
    Codebook received = load_codebook(is);
    if (truth.size() != received.m()) {
        throw std::runtime_error(
            "load_channel_output: header size does not match matrix");
    }
    return ChannelOutput{std::move(received), std::move(truth), 0, 0};
}

}  // namespace bee
