#include "spacelab/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace spacelab {

namespace {

std::vector<char> dense(const OrbitPoint& p) {
    std::vector<char> v(static_cast<std::size_t>(p.length()), 0);
    for (Int i : p.config.ones) v[static_cast<std::size_t>(i)] = 1;
    return v;
}

// prefix[i] = number of disagreeing coordinates among 0..i-1.
std::vector<Int> disagreement_prefix(const OrbitPoint& x, const OrbitPoint& y) {
    if (x.length() != y.length()) throw ValidationError("orbit points must have equal length");
    const auto a = dense(x);
    const auto b = dense(y);
    std::vector<Int> prefix(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) prefix[i + 1] = prefix[i] + (a[i] != b[i]);
    return prefix;
}

}  // namespace

bool OrbitPoint::at(Int i) const { return std::binary_search(config.ones.begin(), config.ones.end(), i); }

OrbitPoint make_orbit_point(Configuration config, const PSetView& view, std::string source) {
    OrbitPoint p;
    p.admissible = is_admissible(config, view);
    p.config = std::move(config);
    p.source = std::move(source);
    p.view_digest = view.spec_digest();
    return p;
}

OrbitPoint shifted(const OrbitPoint& p, Int shift, Int length, const PSetView& view) {
    Configuration c{length, {}};
    for (Int i : p.config.ones)
        if (i + shift < length) c.ones.push_back(i + shift);
    return make_orbit_point(std::move(c), view, p.source + "+" + std::to_string(shift));
}

std::optional<Int> cylinder_distance_exponent(const OrbitPoint& x, const OrbitPoint& y) {
    if (x.length() != y.length()) throw ValidationError("cylinder distance: length mismatch");
    const auto a = dense(x);
    const auto b = dense(y);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return static_cast<Int>(i);
    return std::nullopt;
}

FStatReport f_statistic(const OrbitPoint& x, const OrbitPoint& y, Int l, const std::vector<Int>& n_grid) {
    if (l < 0) throw ValidationError("f_statistic: l must be >= 0");
    if (n_grid.empty()) throw ValidationError("f_statistic: empty grid");
    const auto prefix = disagreement_prefix(x, y);
    const Int H = x.length();
    FStatReport r;
    r.l = l;
    r.x_source = x.source;
    r.y_source = y.source;
    for (Int n : n_grid) {
        if (n < 1 || n + l >= H) throw ValidationError("f_statistic: grid value " + std::to_string(n) + " needs coordinates beyond the window");
        Int close = 0;
        for (Int m = 0; m < n; ++m)
            close += prefix[static_cast<std::size_t>(m + l + 1)] == prefix[static_cast<std::size_t>(m)];
        r.values.emplace_back(n, Rational(close, n));
    }
    const std::size_t tail = (r.values.size() + 3) / 4;
    r.tail_min = r.values.back().second;
    for (std::size_t i = r.values.size() - tail; i < r.values.size(); ++i)
        r.tail_min = std::min(r.tail_min, r.values[i].second);
    return r;
}

std::string to_csv(const FStatReport& r) {
    std::ostringstream os;
    os << "# l=" << r.l << "\n# x=" << r.x_source << "\n# y=" << r.y_source << "\n";
    os << "n,F_n\n";
    for (const auto& [n, f] : r.values) os << n << ',' << to_string(f) << '\n';
    return os.str();
}

std::optional<Int> proximal_probe(const OrbitPoint& x, const OrbitPoint& y, Int block) {
    if (block < 1) throw ValidationError("proximal_probe: block must be >= 1");
    const auto prefix = disagreement_prefix(x, y);
    const Int H = x.length();
    for (Int m = 0; m + block <= H; ++m)
        if (prefix[static_cast<std::size_t>(m + block)] == prefix[static_cast<std::size_t>(m)]) return m;
    return std::nullopt;
}

PeriodicResult periodic_point_check(const PSetView& view, Int k, Int horizon) {
    if (k < 1) throw ValidationError("periodic_point_check: k must be >= 1");
    if (horizon < 1) throw ValidationError("periodic_point_check: horizon must be >= 1");
    if (k * (horizon / k) > view.horizon())
        throw ValidationError("periodic_point_check: multiples of k up to the horizon exceed the view");
    PeriodicResult r;
    for (Int m = k; m <= horizon; m += k)
        if (!view.test(m)) {
            r.failing_multiple = m;
            return r;
        }
    Configuration c{horizon, {}};
    for (Int i = 0; i < horizon; i += k) c.ones.push_back(i);
    r.point = make_orbit_point(std::move(c), view, "periodic:" + std::to_string(k));
    return r;
}

OrbitPoint random_point(const PSetView& view, Int horizon, std::uint64_t seed, double p_one) {
    if (horizon > view.horizon() + 1) throw OutOfRangeError("random_point: horizon exceeds view");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p_one);
    Configuration c{horizon, {}};
    for (Int pos = 0; pos < horizon; ++pos) {
        if (!coin(rng)) continue;
        if (std::all_of(c.ones.begin(), c.ones.end(), [&](Int q) { return view.test(pos - q); })) c.ones.push_back(pos);
    }
    return make_orbit_point(std::move(c), view, "random:" + std::to_string(seed));
}

std::vector<OrbitPoint> generator_points(const PSetView& view, Int horizon, Int witness_len, Int max_k,
                                         const std::vector<Int>& shifts, std::uint64_t budget) {
    std::vector<OrbitPoint> base;
    base.push_back(make_orbit_point(Configuration{horizon, {}}, view, "zero"));
    base.push_back(make_orbit_point(greedy_point(view, horizon), view, "greedy"));
    for (Int k = 1; k <= max_k; ++k) {
        auto r = periodic_point_check(view, k, horizon);
        if (r.point) base.push_back(*r.point);
    }
    auto m = max_ones(view, witness_len, budget);
    if (!m.omega) throw BudgetExhausted("generator_points: max_ones budget exhausted");
    base.push_back(make_orbit_point(Configuration{horizon, m.witness.ones}, view, "maxones:" + std::to_string(witness_len)));

    std::vector<OrbitPoint> out = base;
    for (Int s : shifts)
        for (const auto& p : base)
            if (s > 0 && !p.config.ones.empty()) out.push_back(shifted(p, s, horizon, view));
    return out;
}

}  // namespace spacelab
