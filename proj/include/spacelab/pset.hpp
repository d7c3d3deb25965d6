#pragma once

// Symbolic descriptions of subsets P of N = {1, 2, ...}, their materialization
// over a finite horizon [1..H], and exact density estimates.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "spacelab/bits.hpp"
#include "spacelab/errors.hpp"

namespace spacelab {

using Int = std::int64_t;
using Rational = boost::rational<Int>;

class PSetSpec;

namespace node {

struct Explicit {
    std::vector<Int> elems;
};
struct Multiples {
    Int k = 1;
};
struct Squares {};
// FS of a finite generator list: every nonempty subset sum.
struct FiniteSums {
    std::vector<Int> gens;
};
// {s_i - s_j : i > j} for a strictly increasing sequence.
struct DeltaOf {
    std::vector<Int> seq;
};
// {a - a' : a > a'} for a strictly increasing base set.
struct DiffSet {
    std::vector<Int> base;
};
// {n : frac(n * alpha) in (lo, hi)}, shrunk by kBohrMargin at both ends.
struct Bohr {
    double alpha = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};
struct Complement {
    std::shared_ptr<const PSetSpec> of;
};
struct Union {
    std::vector<PSetSpec> parts;
};
struct Intersect {
    std::vector<PSetSpec> parts;
};

}  // namespace node

inline constexpr double kBohrMargin = 1e-9;

class PSetSpec {
public:
    using Node = std::variant<node::Explicit, node::Multiples, node::Squares, node::FiniteSums,
                              node::DeltaOf, node::DiffSet, node::Bohr, node::Complement,
                              node::Union, node::Intersect>;

    PSetSpec() : node_(node::Explicit{}) {}
    PSetSpec(Node n) : node_(std::move(n)) {}  // NOLINT(google-explicit-constructor)

    static PSetSpec naturals_upto(Int horizon);
    static PSetSpec explicit_set(std::vector<Int> elems) { return PSetSpec(node::Explicit{std::move(elems)}); }
    static PSetSpec multiples(Int k) { return PSetSpec(node::Multiples{k}); }
    static PSetSpec squares() { return PSetSpec(node::Squares{}); }
    static PSetSpec finite_sums(std::vector<Int> gens) { return PSetSpec(node::FiniteSums{std::move(gens)}); }
    static PSetSpec delta_of(std::vector<Int> seq) { return PSetSpec(node::DeltaOf{std::move(seq)}); }
    static PSetSpec diff_set(std::vector<Int> base) { return PSetSpec(node::DiffSet{std::move(base)}); }
    static PSetSpec bohr(double alpha, double lo, double hi) { return PSetSpec(node::Bohr{alpha, lo, hi}); }
    static PSetSpec complement(PSetSpec of);
    static PSetSpec union_of(std::vector<PSetSpec> parts) { return PSetSpec(node::Union{std::move(parts)}); }
    static PSetSpec intersect(std::vector<PSetSpec> parts) { return PSetSpec(node::Intersect{std::move(parts)}); }

    const Node& node() const { return node_; }

    // Throws ValidationError naming the offending node path, e.g. "root.of[1]".
    void validate() const;

    // Pointwise membership by recursive evaluation; the reference that views are checked against.
    bool contains(Int n) const;

    nlohmann::json to_json() const;
    static PSetSpec from_json(const nlohmann::json& j);

    // Canonical JSON text (sorted keys, no whitespace).
    std::string canonical() const { return to_json().dump(); }
    // FNV-1a 64 over the canonical text, as 16 hex digits.
    std::string digest() const;

private:
    void validate_at(const std::string& path) const;

    Node node_;
};

// Membership table of P over [1..H]: bit n-1 is set iff n is in P.
class PSetView {
public:
    PSetView(Int horizon, Bits membership, std::string spec_digest);

    Int horizon() const { return horizon_; }
    const std::string& spec_digest() const { return digest_; }

    // Throws OutOfRangeError unless 1 <= n <= horizon.
    bool member(Int n) const;
    // Unchecked variant for hot loops; n must be in [1..H].
    bool test(Int n) const { return bits_.test(static_cast<std::size_t>(n - 1)); }

    // Bit d-1 set iff d in P; length H.
    const Bits& bits() const { return bits_; }
    std::vector<Int> elements() const;
    Int count() const { return static_cast<Int>(bits_.count()); }

    friend bool operator==(const PSetView& a, const PSetView& b) {
        return a.horizon_ == b.horizon_ && a.bits_ == b.bits_ && a.digest_ == b.digest_;
    }

private:
    Int horizon_;
    Bits bits_;
    std::string digest_;
};

PSetView build_pset(const PSetSpec& spec, Int horizon);

bool member(const PSetView& view, Int n);

struct DensityReport {
    Int horizon = 0;
    Int n0 = 0;
    std::vector<std::pair<Int, Rational>> prefix_densities;  // n = 1..H
    Rational lower_est;
    Rational upper_est;
    std::vector<std::pair<Int, Rational>> banach_profile;  // (W, best window density)

    Rational prefix_at(Int n) const { return prefix_densities.at(static_cast<std::size_t>(n - 1)).second; }
};

// Exact prefix/lower/upper/Banach estimates. lower/upper range over n >= n0.
DensityReport density_report(const PSetView& view, Int n0, const std::vector<Int>& window_grid);

// Densest window of length W inside [1..H], as an exact count.
Int max_window_count(const PSetView& view, Int window);

std::string to_string(const Rational& r);

}  // namespace spacelab
