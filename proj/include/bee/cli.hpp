#ifndef BEE_CLI_HPP
#define BEE_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bee {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct BoundsArgs {
    double p = 0.01;
    double r_min = 0.0;
    double r_max = 0.6;
    std::size_t steps = 121;
    std::string out_path;
};

struct SimulateArgs {
    std::vector<std::size_t> n_list;
    double rate = 0.1;
    double p = 0.1;
    std::string decoder = "joint";  // independent | joint | gmd | bruteforce
    std::string ensemble = "rce";   // rce | trc
    double epsilon = 0.0;           // 0 = derived default (TRC)
    std::optional<std::size_t> threshold;  // GMD; absent = derived default
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> seed;  // absent = entropy seed, echoed
    bool fix_identity = false;
    bool fixed_codebook = false;
    std::string out_path;  // empty = standard output
};

struct VerifyArgs {
    std::size_t p_points = 500;
    std::size_t rate_points = 100;
    std::optional<double> p;  // restrict the grid to a single p
    std::uint64_t seed = 1;
    double r1_offset = 0.0;
};

struct CodebookArgs {
    std::string action;  // generate | inspect
    std::size_t n = 16;
    std::size_t m = 8;
    std::string ensemble = "rce";  // rce | trc
    double epsilon = 0.0;          // 0 = derived default
    std::optional<std::uint64_t> seed;
    std::string out_path;  // generate target
    std::string in_path;   // inspect source
};

int cmd_bounds(const BoundsArgs& args);
int cmd_simulate(const SimulateArgs& args);
int cmd_verify(const VerifyArgs& args);
int cmd_codebook(const CodebookArgs& args);

// "%.10g" rendering used for every numeric CSV cell.
std::string format_sig10(double v);

}  // namespace bee

#endif
