#pragma once

// Finite certificates for the combinatorial structures of a set of naturals:
// Delta-chains, IP generators, IP-IP generators, syndetic gaps, thick runs,
// and intersectivity hits. Every search is bounded; "not found" only ever
// means "not found within (depth, bound)".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spacelab/pset.hpp"

namespace spacelab {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

enum class WitnessKind { DeltaChain, IPGenerator, SyndeticGap, ThickRun, IPminusIP, IntersectiveHit };

std::string to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(const std::string& s);

struct StructureWitness {
    WitnessKind kind = WitnessKind::DeltaChain;
    std::vector<Int> payload;  // single element for the scalar kinds
    bool verified = false;
    Int depth = 0;
    Int bound = 0;
    // IntersectiveHit only: the pair (a, a') in A with a - a' = payload[0].
    std::vector<Int> support;
};

enum class SearchStatus { Found, NoneInBound, BudgetExhausted };

std::string to_string(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::NoneInBound;
    std::optional<StructureWitness> witness;
    Int depth = 0;
    Int bound = 0;
    std::uint64_t nodes = 0;
    // Longest partial certificate met during the search (useful when the budget runs out).
    std::vector<Int> deepest;

    bool found() const { return status == SearchStatus::Found; }
};

// Lexicographically least S = (s_1 < ... < s_depth <= bound) with all s_i - s_j in the view.
SearchResult find_delta_chain(const PSetView& view, Int depth, Int bound, std::uint64_t budget = kDefaultBudget);

// Lexicographically least A = (a_1 < ... < a_depth) whose 2^depth - 1 subset sums are
// pairwise distinct, all in the view, and at most bound.
SearchResult find_ip_generator(const PSetView& view, Int depth, Int bound, std::uint64_t budget = kDefaultBudget);

// As find_ip_generator, but requires every positive difference u - v of FS(A) to be in the view.
SearchResult find_ip_ip_generator(const PSetView& view, Int depth, Int bound, std::uint64_t budget = kDefaultBudget);

struct GapReport {
    std::optional<Int> interior_gap;  // none iff the set misses [1..H] entirely
    Int censored_tail = 0;            // length of the non-member run ending at H
};

// Longest run of non-members bounded on the right by a member. The run ending at H is censored.
GapReport syndetic_gap(const PSetView& view);

// Longest run of consecutive members inside [1..H].
Int thick_run(const PSetView& view);

// Least e in E with e = a - a' for a, a' in A. Views must share a horizon.
std::optional<StructureWitness> intersective_refute(const PSetView& e_view, const PSetView& a_view);

// Re-derives the certificate property by direct arithmetic against the view.
// For IntersectiveHit this checks e in E only; use the three-argument form for the A side.
bool verify_witness(const StructureWitness& w, const PSetView& view);
bool verify_witness(const StructureWitness& w, const PSetView& e_view, const PSetView& a_view);

// Sorted distinct nonempty subset sums; nullopt when two subsets collide.
std::optional<std::vector<Int>> distinct_subset_sums(const std::vector<Int>& gens);

nlohmann::json to_json(const StructureWitness& w);
StructureWitness witness_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchResult& r);

}  // namespace spacelab
