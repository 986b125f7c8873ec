#include "bee/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bee/exponents.hpp"
#include "bee/rng.hpp"

namespace bee {

const char* to_string(Ensemble e) {
    switch (e) {
        case Ensemble::Rce:
            return "RCE";
        case Ensemble::Trc:
            return "TRC";
        case Ensemble::Explicit:
            return "EXPLICIT";
    }
    return "?";
}

Codebook::Codebook(std::size_t m, std::size_t n)
    : m_(m), n_(n), wpr_((n + 63) / 64) {
    if (m == 0 || n == 0) {
        throw std::invalid_argument("Codebook: m and n must be positive");
    }
    if (m > kMaxCodebookBits / n) {
        throw std::length_error("Codebook: m*n exceeds the memory cap");
    }
    words_.assign(m_ * wpr_, 0);
}

double Codebook::rate() const noexcept {
    return std::log2(static_cast<double>(m_)) / static_cast<double>(n_);
}

bool Codebook::bit(std::size_t r, std::size_t c) const {
    if (r >= m_ || c >= n_) {
        throw std::out_of_range("Codebook::bit: index out of range");
    }
    return (words_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
}

void Codebook::set_bit(std::size_t r, std::size_t c, bool v) {
    if (r >= m_ || c >= n_) {
        throw std::out_of_range("Codebook::set_bit: index out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (v) {
        words_[r * wpr_ + c / 64] |= mask;
    } else {
        words_[r * wpr_ + c / 64] &= ~mask;
    }
}

std::span<const std::uint64_t> Codebook::row(std::size_t r) const {
    if (r >= m_) {
        throw std::out_of_range("Codebook::row: index out of range");
    }
    return {words_.data() + r * wpr_, wpr_};
}

std::span<std::uint64_t> Codebook::row_mut(std::size_t r) {
    if (r >= m_) {
        throw std::out_of_range("Codebook::row_mut: index out of range");
    }
    return {words_.data() + r * wpr_, wpr_};
}

void Codebook::mask_tail() {
    const std::size_t rem = n_ % 64;
    if (rem == 0) {
        return;
    }
    const std::uint64_t keep = (std::uint64_t{1} << rem) - 1;
    for (std::size_t r = 0; r < m_; ++r) {
        words_[r * wpr_ + wpr_ - 1] &= keep;
    }
}

std::size_t hamming(std::span<const std::uint64_t> x,
                    std::span<const std::uint64_t> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("hamming: length mismatch");
    }
    std::size_t acc = 0;
    for (std::size_t w = 0; w < x.size(); ++w) {
        acc += static_cast<std::size_t>(std::popcount(x[w] ^ y[w]));
    }
    return acc;
}

std::size_t row_distance(const Codebook& a, std::size_t i, const Codebook& b,
                         std::size_t j) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("row_distance: blocklength mismatch");
    }
    return hamming(a.row(i), b.row(j));
}

std::size_t matrix_distance(const Codebook& a, const Codebook& b) {
    if (a.m() != b.m() || a.n() != b.n()) {
        throw std::invalid_argument("matrix_distance: shape mismatch");
    }
    std::size_t acc = 0;
    for (std::size_t i = 0; i < a.m(); ++i) {
        acc += hamming(a.row(i), b.row(i));
    }
    return acc;
}

namespace {

void fill_random_row(Codebook& cb, std::size_t r, SplitMix64& rng) {
    auto row = cb.row_mut(r);
    for (auto& w : row) {
        w = rng.next();
    }
}

}  // namespace

Codebook generate_rce(std::size_t n, std::size_t m, std::uint64_t seed) {
    Codebook cb(m, n);
    SplitMix64 rng(mix64(seed));
    for (std::size_t r = 0; r < m; ++r) {
        fill_random_row(cb, r, rng);
    }
    cb.mask_tail();
    cb.ensemble = Ensemble::Rce;
    cb.seed = seed;
    return cb;
}

double default_trc_epsilon(std::size_t n, std::size_t m) {
    const double rate =
        std::log2(static_cast<double>(m)) / static_cast<double>(n);
    return std::min(0.02, gv_distance(2.0 * rate) / 4.0);
}

TrcBand trc_band(std::size_t n, std::size_t m, double epsilon) {
    const double rate =
        std::log2(static_cast<double>(m)) / static_cast<double>(n);
    if (!(rate < 0.5)) {
        throw std::domain_error("trc_band: rate must be below 0.5");
    }
    const double gv = gv_distance(2.0 * rate);
    if (!(epsilon > 0.0) || !(epsilon < gv)) {
        throw std::domain_error(
            "trc_band: epsilon must lie in (0, gv_distance(2 rate))");
    }
    TrcBand band;
    band.delta_low = gv - epsilon;
    band.lo = static_cast<double>(n) * band.delta_low;
    band.hi = static_cast<double>(n) * (1.0 - band.delta_low);
    return band;
}

namespace {

bool in_band(const TrcBand& band, std::size_t d) {
    const double dd = static_cast<double>(d);
    return dd > band.lo && dd < band.hi;
}

}  // namespace

Codebook generate_trc(std::size_t n, std::size_t m, double epsilon,
                      std::uint64_t seed, std::size_t max_attempts) {
    const TrcBand band = trc_band(n, m, epsilon);
    Codebook cb(m, n);
    SplitMix64 rng(mix64(seed));
    for (std::size_t r = 0; r < m; ++r) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
            fill_random_row(cb, r, rng);
            cb.mask_tail();
            bool ok = true;
            for (std::size_t q = 0; q < r; ++q) {
                if (!in_band(band, hamming(cb.row(r), cb.row(q)))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            std::ostringstream msg;
            msg << "generate_trc: no admissible row " << r << " after "
                << max_attempts << " attempts (n=" << n << ", m=" << m
                << ", epsilon=" << epsilon << ")";
            throw std::runtime_error(msg.str());
        }
    }
    cb.ensemble = Ensemble::Trc;
    cb.epsilon = epsilon;
    cb.seed = seed;
    return cb;
}

bool satisfies_trc_band(const Codebook& cb, double epsilon) {
    const TrcBand band = trc_band(cb.n(), cb.m(), epsilon);
    for (std::size_t i = 0; i < cb.m(); ++i) {
        for (std::size_t j = i + 1; j < cb.m(); ++j) {
            if (!in_band(band, hamming(cb.row(i), cb.row(j)))) {
                return false;
            }
        }
    }
    return true;
}

RowPair pairwise_min_distance(const Codebook& cb) {
    if (cb.m() < 2) {
        throw std::invalid_argument("pairwise_min_distance: need m >= 2");
    }
    RowPair best{cb.n() + 1, 0, 0};
    for (std::size_t i = 0; i + 1 < cb.m(); ++i) {
        for (std::size_t j = i + 1; j < cb.m(); ++j) {
            const std::size_t d = hamming(cb.row(i), cb.row(j));
            if (d < best.distance) {
                best = {d, i, j};
            }
        }
    }
    return best;
}

RowPair pairwise_max_distance(const Codebook& cb) {
    if (cb.m() < 2) {
        throw std::invalid_argument("pairwise_max_distance: need m >= 2");
    }
    RowPair best{0, 0, 1};
    best.distance = hamming(cb.row(0), cb.row(1));
    for (std::size_t i = 0; i + 1 < cb.m(); ++i) {
        for (std::size_t j = i + 1; j < cb.m(); ++j) {
            const std::size_t d = hamming(cb.row(i), cb.row(j));
            if (d > best.distance) {
                best = {d, i, j};
            }
        }
    }
    return best;
}

PairSet greedy_pair_set(const Codebook& cb) {
    const std::size_t m = cb.m();
    if (m < 4) {
        throw std::invalid_argument("greedy_pair_set: need m >= 4");
    }
    struct Entry {
        std::size_t d;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Entry> all;
    all.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            all.push_back({hamming(cb.row(i), cb.row(j)), i, j});
        }
    }
    // Sorted sweep with endpoint retirement is equivalent to repeated
    // closest-pair extraction: after removing two rows, the next minimum
    // over the survivors is the next admissible entry in sorted order.
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.d, a.i, a.j) < std::tie(b.d, b.i, b.j);
    });
    const std::size_t want = (m + 3) / 4;
    std::vector<char> used(m, 0);
    PairSet out;
    for (const Entry& e : all) {
        if (out.pairs.size() == want) {
            break;
        }
        if (used[e.i] || used[e.j]) {
            continue;
        }
        used[e.i] = 1;
        used[e.j] = 1;
        out.pairs.emplace_back(e.i, e.j);
        out.source_distances.push_back(e.d);
    }
    return out;
}

std::size_t permuted_distance(const Codebook& cb,
                              std::span<const std::size_t> sigma) {
    const std::size_t m = cb.m();
    if (sigma.size() != m) {
        throw std::invalid_argument("permuted_distance: size mismatch");
    }
    std::vector<char> seen(m, 0);
    for (std::size_t v : sigma) {
        if (v >= m || seen[v]) {
            throw std::invalid_argument("permuted_distance: not a bijection");
        }
        seen[v] = 1;
    }
    std::size_t acc = 0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += hamming(cb.row(i), cb.row(sigma[i]));
    }
    return acc;
}

void save_codebook(const Codebook& cb, std::ostream& os) {
    os << cb.m() << ' ' << cb.n() << '\n';
    std::string line(cb.n(), '0');
    for (std::size_t r = 0; r < cb.m(); ++r) {
        for (std::size_t c = 0; c < cb.n(); ++c) {
            line[c] = cb.bit(r, c) ? '1' : '0';
        }
        os << line << '\n';
    }
    if (!os) {
        throw std::runtime_error("save_codebook: write failure");
    }
}

void save_codebook(const Codebook& cb, const std::string& path) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("save_codebook: cannot open " + path);
    }
    save_codebook(cb, os);
}

Codebook load_codebook(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) {
        throw std::runtime_error("load_codebook: missing header line");
    }
    std::istringstream hs(header);
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::string extra;
    if (!(hs >> m >> n) || (hs >> extra) || m == 0 || n == 0) {
        throw std::runtime_error("load_codebook: malformed header \"" + header +
                                 "\"");
    }
    Codebook cb(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    std::string line;
    for (std::size_t r = 0; r < m; ++r) {
        if (!std::getline(is, line)) {
            throw std::runtime_error("load_codebook: truncated matrix");
        }
        if (line.size() != n) {
            throw std::runtime_error("load_codebook: row has wrong length");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (line[c] == '1') {
                cb.set_bit(r, c, true);
            } else if (line[c] != '0') {
                throw std::runtime_error(
                    "load_codebook: row contains a non-binary character");
            }
        }
    }
    return cb;
}

Codebook load_codebook(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("load_codebook: cannot open " + path);
    }
    return load_codebook(is);
}

}  // namespace bee
