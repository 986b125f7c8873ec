#include "bee/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bee/exponents.hpp"
#include "bee/rng.hpp"

namespace bee {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

bool is_bijection(const std::vector<std::size_t>& nu) {
    std::vector<char> seen(nu.size(), 0);
    for (std::size_t v : nu) {
        if (v >= nu.size() || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

bool matches_truth(const std::vector<std::size_t>& nu,
                   const PermutationMap& truth) {
    for (std::size_t i = 0; i < nu.size(); ++i) {
        // Received row truth(i) carries codeword i, so exact recovery means
        // nu[truth(i)] = i for every source index i.
        if (nu[truth(i)] != i) {
            return false;
        }
    }
    return true;
}

// Nearest codewords for one received row: minimum distance and the full
// argmin set in ascending index order.
std::pair<std::size_t, std::vector<std::size_t>> nearest_set(
    const Codebook& code, const Codebook& received, std::size_t j) {
    std::size_t best = code.n() + 1;
    std::vector<std::size_t> argmin;
    for (std::size_t k = 0; k < code.m(); ++k) {
        const std::size_t d = hamming(received.row(j), code.row(k));
        if (d < best) {
            best = d;
            argmin.assign(1, k);
        } else if (d == best) {
            argmin.push_back(k);
        }
    }
    return {best, std::move(argmin)};
}

void check_shapes(const Codebook& code, const ChannelOutput& y,
                  const char* who) {
    if (code.m() != y.received.m() || code.n() != y.received.n() ||
        y.truth.size() != code.m()) {
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
    }
}

}  // namespace

CostMatrix build_cost_matrix(const Codebook& code, const Codebook& received) {
    if (code.m() != received.m() || code.n() != received.n()) {
        throw std::invalid_argument("build_cost_matrix: shape mismatch");
    }
    const std::size_t m = code.m();
    CostMatrix cm;
    cm.m = m;
    cm.entries.resize(m * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            cm.entries[j * m + k] = static_cast<std::int64_t>(
                hamming(received.row(j), code.row(k)));
        }
    }
    return cm;
}

Assignment min_cost_assignment(const CostMatrix& cm) {
    const std::size_t m = cm.m;
    if (m == 0 || cm.entries.size() != m * m) {
        throw std::invalid_argument("min_cost_assignment: bad matrix");
    }
    // Shortest augmenting paths with row/column potentials, 1-based with a
    // virtual column 0. col_row[j] is the row currently matched to column j.
    std::vector<std::int64_t> pot_row(m + 1, 0);
    std::vector<std::int64_t> pot_col(m + 1, 0);
    std::vector<std::size_t> col_row(m + 1, 0);
    std::vector<std::size_t> back(m + 1, 0);
    for (std::size_t r = 1; r <= m; ++r) {
        col_row[0] = r;
        std::size_t j0 = 0;
        std::vector<std::int64_t> slack(m + 1, kInf);
        std::vector<char> visited(m + 1, 0);
        do {
            visited[j0] = 1;
            const std::size_t r0 = col_row[j0];
            std::int64_t delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (visited[j]) {
                    continue;
                }
                const std::int64_t cur = cm.at(r0 - 1, j - 1) -
                                         pot_row[r0] - pot_col[j];
                if (cur < slack[j]) {
                    slack[j] = cur;
                    back[j] = j0;
                }
                if (slack[j] < delta) {
                    delta = slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (visited[j]) {
                    pot_row[col_row[j]] += delta;
                    pot_col[j] -= delta;
                } else {
                    slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_row[j0] != 0);
        do {
            const std::size_t j1 = back[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Assignment out;
    out.row_to_col.assign(m, 0);
    for (std::size_t j = 1; j <= m; ++j) {
        out.row_to_col[col_row[j] - 1] = j - 1;
    }
    for (std::size_t r = 0; r < m; ++r) {
        out.total_cost += cm.at(r, out.row_to_col[r]);
    }
    return out;
}

DecoderVerdict decode_independent(const Codebook& code, const ChannelOutput& y,
                                  std::uint64_t tie_seed) {
    check_shapes(code, y, "decode_independent");
    const std::size_t m = code.m();
    DecoderVerdict v;
    v.nu.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto [dist, argmin] = nearest_set(code, y.received, j);
        (void)dist;
        if (argmin.size() == 1) {
            v.nu[j] = argmin.front();
        } else {
            v.ties_broken += 1;
            SplitMix64 rng(hash2(tie_seed, j));
            v.nu[j] = argmin[rng.next_below(argmin.size())];
        }
    }
    v.is_permutation = is_bijection(v.nu);
    v.exact_recovery = v.is_permutation && matches_truth(v.nu, y.truth);
    return v;
}

DecoderVerdict decode_joint_assignment(const Codebook& code,
                                       const ChannelOutput& y) {
    check_shapes(code, y, "decode_joint_assignment");
    const CostMatrix cm = build_cost_matrix(code, y.received);
    const Assignment asg = min_cost_assignment(cm);
    DecoderVerdict v;
    v.nu = asg.row_to_col;
    v.is_permutation = true;
    v.total_cost = asg.total_cost;
    v.exact_recovery = matches_truth(v.nu, y.truth);
    return v;
}

DecoderVerdict decode_joint_bruteforce(const Codebook& code,
                                       const ChannelOutput& y) {
    check_shapes(code, y, "decode_joint_bruteforce");
    const std::size_t m = code.m();
    if (m > 8) {
        throw std::invalid_argument("decode_joint_bruteforce: m > 8");
    }
    const CostMatrix cm = build_cost_matrix(code, y.received);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best_perm;
    std::int64_t best_cost = kInf;
    std::size_t optima = 0;
    do {
        std::int64_t cost = 0;
        for (std::size_t j = 0; j < m; ++j) {
            cost += cm.at(j, perm[j]);
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_perm = perm;
            optima = 1;
        } else if (cost == best_cost) {
            optima += 1;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    DecoderVerdict v;
    v.nu = std::move(best_perm);
    v.is_permutation = true;
    v.total_cost = best_cost;
    v.ties_broken = optima - 1;
    v.exact_recovery = matches_truth(v.nu, y.truth);
    return v;
}

DecoderVerdict decode_gmd(const Codebook& code, const ChannelOutput& y,
                          std::size_t threshold, std::uint64_t tie_seed) {
    check_shapes(code, y, "decode_gmd");
    if (threshold > code.n()) {
        throw std::invalid_argument("decode_gmd: threshold above blocklength");
    }
    const std::size_t m = code.m();
    DecoderVerdict v;
    v.nu.assign(m, m);  // m = still undecided
    std::vector<char> erased(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        auto [dist, argmin] = nearest_set(code, y.received, j);
        if (dist > threshold) {
            erased[j] = 1;
            continue;
        }
        if (argmin.size() == 1) {
            v.nu[j] = argmin.front();
        } else {
            v.ties_broken += 1;
            SplitMix64 rng(hash2(tie_seed, j));
            v.nu[j] = argmin[rng.next_below(argmin.size())];
        }
    }
    // Rows that claim the same codeword cannot all be right; demote every
    // member of a collision group so stage two re-decides them jointly.
    std::vector<std::size_t> claims(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        if (!erased[j]) {
            claims[v.nu[j]] += 1;
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!erased[j] && claims[v.nu[j]] > 1) {
            erased[j] = 1;
            v.nu[j] = m;
        }
    }
    std::vector<char> claimed(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        if (!erased[j]) {
            claimed[v.nu[j]] = 1;
        }
    }
    std::vector<std::size_t> open_rows;
    std::vector<std::size_t> open_codewords;
    for (std::size_t j = 0; j < m; ++j) {
        if (erased[j]) {
            open_rows.push_back(j);
        }
        if (!claimed[j]) {
            open_codewords.push_back(j);
        }
    }
    if (!open_rows.empty()) {
        CostMatrix sub;
        sub.m = open_rows.size();
        sub.entries.resize(sub.m * sub.m);
        for (std::size_t a = 0; a < sub.m; ++a) {
            for (std::size_t b = 0; b < sub.m; ++b) {
                sub.entries[a * sub.m + b] = static_cast<std::int64_t>(hamming(
                    y.received.row(open_rows[a]), code.row(open_codewords[b])));
            }
        }
        const Assignment asg = min_cost_assignment(sub);
        for (std::size_t a = 0; a < sub.m; ++a) {
            v.nu[open_rows[a]] = open_codewords[asg.row_to_col[a]];
        }
    }
    v.erased = std::move(open_rows);
    v.is_permutation = true;
    v.exact_recovery = matches_truth(v.nu, y.truth);
    return v;
}

std::size_t default_gmd_threshold(std::size_t n, double rate, double p) {
    if (n == 0 || !(rate >= 0.0) || !(p > 0.0) || !(p < 0.5)) {
        throw std::invalid_argument("default_gmd_threshold: bad arguments");
    }
    const double gv = gv_distance(std::min(1.0, 2.0 * rate));
    const double raw = static_cast<double>(n) * (p + gv / 2.0) / 2.0;
    return static_cast<std::size_t>(std::floor(raw));
}

}  // namespace bee
