#pragma once

// Orbit-level probes on truncated points of a spacing shift. The metric is the
// cylinder metric d(x, y) = 2^-min{i : x_i != y_i}, so d(s^m x, s^m y) < 2^-l exactly
// when x and y agree on coordinates m..m+l.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spacelab/language.hpp"

namespace spacelab {

struct OrbitPoint {
    Configuration config;
    bool admissible = false;
    std::string source;       // generator name, e.g. "greedy", "periodic:3"
    std::string view_digest;  // spec digest of the view the flag refers to

    Int length() const { return config.length; }
    bool at(Int i) const;  // coordinate value
};

OrbitPoint make_orbit_point(Configuration config, const PSetView& view, std::string source);

// Same point shifted right by `shift` zeros (and truncated to `length`).
OrbitPoint shifted(const OrbitPoint& p, Int shift, Int length, const PSetView& view);

// First index where x and y differ; nullopt stands for "equal on the whole window".
std::optional<Int> cylinder_distance_exponent(const OrbitPoint& x, const OrbitPoint& y);

struct FStatReport {
    Int l = 0;
    std::vector<std::pair<Int, Rational>> values;  // (n, F_n)
    Rational tail_min;                               // min over the last quarter of the grid
    std::string x_source;
    std::string y_source;
};

// F_n = |{0 <= m < n : x, y agree on m..m+l}| / n.
FStatReport f_statistic(const OrbitPoint& x, const OrbitPoint& y, Int l, const std::vector<Int>& n_grid);

std::string to_csv(const FStatReport& r);

// Least m with x and y equal on [m, m + block), or nullopt inside the window.
std::optional<Int> proximal_probe(const OrbitPoint& x, const OrbitPoint& y, Int block);

struct PeriodicResult {
    std::optional<OrbitPoint> point;      // (1 0^{k-1})^oo truncated to the horizon
    std::optional<Int> failing_multiple;  // least multiple of k not in P
};

// Succeeds iff every multiple of k up to `horizon` is in P.
PeriodicResult periodic_point_check(const PSetView& view, Int k, Int horizon);

// Seeded random admissible point: scans positions left to right, proposing a 1 with
// probability `p_one` whenever it stays admissible.
OrbitPoint random_point(const PSetView& view, Int horizon, std::uint64_t seed, double p_one = 0.5);

// The named generator points used by the experiments: greedy, periodic (k = 1..max_k),
// max-ones witness padded with zeros, the zero point, and right shifts of each.
std::vector<OrbitPoint> generator_points(const PSetView& view, Int horizon, Int witness_len, Int max_k,
                                         const std::vector<Int>& shifts, std::uint64_t budget);

}  // namespace spacelab
