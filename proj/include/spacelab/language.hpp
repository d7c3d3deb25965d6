#pragma once

// Exact language enumeration for a spacing shift: a word is admissible iff every
// pairwise distance between its 1-positions lies in P. Equivalently, the 1-positions
// of an admissible length-n word form a clique (or the empty set) in the distance
// graph on {0..n-1}, where i ~ j iff |i - j| is in P.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spacelab/pset.hpp"
#include "spacelab/structure.hpp"

namespace spacelab {

using BigInt = boost::multiprecision::cpp_int;

// A finite 0/1 word stored as its 1-positions. Positions are 0-based.
struct Configuration {
    Int length = 0;
    std::vector<Int> ones;

    static Configuration from_word(const std::string& word);
    std::string to_word() const;
    // Throws ValidationError if ones are not strictly increasing inside [0, length).
    void validate() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Throws OutOfRangeError if some pairwise difference exceeds the view horizon.
bool is_admissible(const Configuration& config, const PSetView& view);

enum class CountMode { Naive, Optimized };

inline constexpr Int kNaiveMaxLength = 24;

struct CountResult {
    std::optional<BigInt> count;  // empty iff the node budget ran out
    std::uint64_t nodes = 0;

    bool exhausted() const { return !count.has_value(); }
};

// Number of admissible words of length n, all-zero word included.
// Naive mode enumerates all 2^n words (n <= 24). Optimized mode runs clique-counting
// branch and bound over bit rows; `workers` > 1 splits the root across threads.
CountResult count_words(const PSetView& view, Int n, CountMode mode, std::uint64_t budget = kDefaultBudget,
                        unsigned workers = 1);

struct MaxOnesResult {
    std::optional<Int> omega;  // empty iff the node budget ran out
    Configuration witness;     // lexicographically least maximum configuration
    std::uint64_t nodes = 0;
};

MaxOnesResult max_ones(const PSetView& view, Int n, std::uint64_t budget = kDefaultBudget);

struct LanguageRecord {
    Int n = 0;
    BigInt count;
    double h = 0.0;  // log2(count) / n
    Int omega = 0;
    Rational omega_over_n;
};

struct LanguageProfile {
    std::vector<LanguageRecord> records;

    const LanguageRecord& at(Int n) const;
};

// Throws BudgetExhausted if any count or max-ones search runs out of budget.
LanguageProfile entropy_profile(const PSetView& view, const std::vector<Int>& n_grid,
                                std::uint64_t budget = kDefaultBudget);

// CSV with columns n,c_n,h_n,omega_n,omega_over_n.
std::string to_csv(const LanguageProfile& profile);

double log2_big(const BigInt& x);
std::string to_string(const BigInt& x);

// Scan 0..horizon-1, keeping each position compatible with every kept one.
Configuration greedy_point(const PSetView& view, Int horizon);

struct TransitiveReport {
    Int word_len_cap = 0;
    Int gap_cap = 0;
    std::uint64_t joinable = 0;
    std::uint64_t total = 0;
    std::optional<std::pair<Configuration, Configuration>> least_failing;

    bool all_joinable() const { return joinable == total; }
};

inline constexpr Int kTransitiveMaxWordLength = 16;

// For every ordered pair (u, v) of admissible words of length 1..L, checks whether
// u 0^g v is admissible for some g in [0, G]. Requires 2L + G <= H.
TransitiveReport transitive_gap_check(const PSetView& view, Int word_len_cap, Int gap_cap);

// Is u 0^g v admissible? (Only cross pairs are checked; u and v are assumed admissible.)
bool joinable_with_gap(const Configuration& u, const Configuration& v, Int gap, const PSetView& view);

}  // namespace spacelab
