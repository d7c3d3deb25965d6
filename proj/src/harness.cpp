#include "spacelab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#ifndef SPACELAB_VERSION
#define SPACELAB_VERSION "0.0.0"
#endif
#ifndef SPACELAB_CORPUS_DIR
#define SPACELAB_CORPUS_DIR "corpus"
#endif

namespace spacelab {

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

BigInt binomial_prefix_sum(Int n, Int k) {
    // sum_{j=0}^{k} C(n, j)
    BigInt total = 0;
    BigInt term = 1;
    for (Int j = 0; j <= std::min(k, n); ++j) {
        total += term;
        term = term * (n - j) / (j + 1);
    }
    return total;
}

BigInt pow_big(const BigInt& base, Int e) {
    BigInt r = 1;
    for (Int i = 0; i < e; ++i) r *= base;
    return r;
}

BigInt pow2(Int e) {
    BigInt r = 1;
    r <<= static_cast<unsigned>(e);
    return r;
}

std::vector<Int> int_vec(const json& j) { return j.get<std::vector<Int>>(); }

Int max_of(const std::vector<Int>& v) {
    if (v.empty()) throw ValidationError("empty grid");
    return *std::max_element(v.begin(), v.end());
}

const CorpusEntry& find_member(const Corpus& corpus, const std::string& name) {
    for (const auto& e : corpus)
        if (e.name == name) return e;
    throw ValidationError("corpus has no member \"" + name + "\"");
}

std::vector<double> rational_values(const std::vector<Rational>& v) {
    std::vector<double> out;
    for (const auto& r : v) out.push_back(boost::rational_cast<double>(r));
    return out;
}

class Recorder {
public:
    explicit Recorder(ExperimentReport& r) : r_(r) {}
    bool check(const std::string& name, bool ok, const std::string& detail = {}) {
        r_.checks.push_back({name, ok, detail});
        return ok;
    }

private:
    ExperimentReport& r_;
};

std::uint64_t budget_of(const json& p) { return p.at("budget").get<std::uint64_t>(); }

MaxOnesResult max_ones_or_throw(const PSetView& view, Int n, std::uint64_t budget) {
    auto m = max_ones(view, n, budget);
    if (!m.omega) throw BudgetExhausted("max_ones budget exhausted at n=" + std::to_string(n));
    return m;
}

BigInt count_or_throw(const PSetView& view, Int n, std::uint64_t budget) {
    auto c = count_words(view, n, CountMode::Optimized, budget);
    if (!c.count) throw BudgetExhausted("count_words budget exhausted at n=" + std::to_string(n));
    return *c.count;
}

// ---------------------------------------------------------------------------
// Experiments

void delta_kills_density(ExperimentReport& r, const json& p, const Corpus&) {
    const Int k = p.at("k").get<Int>();
    const Int n_max = p.at("n_max").get<Int>();
    const auto grid = int_vec(p.at("grid"));
    const auto windows = int_vec(p.at("windows"));
    const Int horizon = p.at("horizon").get<Int>();
    const auto budget = budget_of(p);
    if (k < 2) throw ValidationError("delta-kills-density: k must be >= 2");
    if (n_max > horizon || max_of(grid) > n_max) throw ValidationError("delta-kills-density: grid exceeds n_max/horizon");
    Recorder rec(r);

    const auto spec = PSetSpec::complement(PSetSpec::multiples(k));
    const auto view = build_pset(spec, horizon);
    r.observations["spec"] = spec.to_json();

    r.header = {"n", "omega_n", "omega_over_n"};
    bool capped = true;
    std::map<Int, Rational> gamma;
    for (Int n = 1; n <= n_max; ++n) {
        auto m = max_ones_or_throw(view, n, budget);
        capped = capped && *m.omega <= k;
        gamma[n] = Rational(*m.omega, n);
        r.rows.push_back({std::to_string(n), std::to_string(*m.omega), to_string(gamma[n])});
    }
    rec.check("omega(n) <= k for n in [1..n_max]", capped);

    std::vector<Rational> g;
    std::vector<std::pair<double, double>> pts;
    for (Int n : grid) {
        g.push_back(gamma.at(n));
        pts.emplace_back(static_cast<double>(n), boost::rational_cast<double>(gamma.at(n)));
    }
    r.series.emplace_back("omega/n", pts);
    rec.check("omega(n)/n decreasing toward 0 on grid", decreasing_toward_zero(grid, rational_values(g)));

    // Upper Banach profile of the max-ones witness, padded with zeros to the horizon.
    auto m = max_ones_or_throw(view, n_max, budget);
    std::vector<Int> support;
    for (Int i : m.witness.ones) support.push_back(i + 1);
    const auto witness_view = build_pset(PSetSpec::explicit_set(support), horizon);
    const auto dr = density_report(witness_view, std::max<Int>(1, horizon / 2), windows);
    json prof = json::array();
    std::vector<double> wvals;
    for (const auto& [w, d] : dr.banach_profile) {
        prof.push_back({{"W", w}, {"density", to_string(d)}});
        wvals.push_back(boost::rational_cast<double>(d));
    }
    r.observations["witness"] = m.witness.ones;
    r.observations["witness_banach_profile"] = prof;
    r.observations["omega_at_n_max"] = *m.omega;
    rec.check("witness window density decreasing toward 0", decreasing_toward_zero(windows, wvals));
}

void zero_density_zero_entropy(ExperimentReport& r, const json& p, const Corpus&) {
    const Int k = p.at("k").get<Int>();
    const auto grid = int_vec(p.at("grid"));
    const auto budget = budget_of(p);
    Recorder rec(r);
    const auto spec = PSetSpec::complement(PSetSpec::multiples(k));
    const auto view = build_pset(spec, max_of(grid));
    r.observations["spec"] = spec.to_json();

    r.header = {"n", "c_n", "poly_bound", "h_n"};
    bool bounded = true;
    std::vector<double> h;
    std::vector<std::pair<double, double>> pts;
    for (Int n : grid) {
        const BigInt c = count_or_throw(view, n, budget);
        const BigInt bound = binomial_prefix_sum(n, k);
        bounded = bounded && c <= bound;
        h.push_back(log2_big(c) / static_cast<double>(n));
        pts.emplace_back(static_cast<double>(n), h.back());
        r.rows.push_back({std::to_string(n), to_string(c), to_string(bound), fmt_double(h.back())});
    }
    r.series.emplace_back("h_n", pts);
    rec.check("c(n) <= sum_{j<=k} C(n,j) on grid", bounded);
    rec.check("h_n decreasing toward 0 on grid", decreasing_toward_zero(grid, h));
}

void density_entropy_bound(ExperimentReport& r, const json& p, const Corpus&) {
    const Int n_min = p.at("n_min").get<Int>();
    const Int n_max = p.at("n_max").get<Int>();
    const Int l = p.at("l").get<Int>();
    const auto budget = budget_of(p);
    if (l < 0 || n_min < 1 || n_max < n_min) throw ValidationError("density-entropy-bound: bad n range or l");
    Recorder rec(r);
    r.header = {"case", "k", "n", "c_n", "h_n", "omega_n", "gamma", "lower_bound"};
    std::size_t idx = 0;
    for (const auto& c : p.at("cases")) {
        const Int k = c.at("k").get<Int>();
        const auto spec = spec_from_json(c.at("spec"));
        const auto view = build_pset(spec, n_max);
        for (Int m = k; m <= n_max; m += k)
            if (!view.test(m))
                throw ValidationError("density-entropy-bound: case " + std::to_string(idx) + " does not contain " +
                                      std::to_string(k) + "N on the horizon");
        bool ok = true;
        std::vector<std::pair<double, double>> pts;
        for (Int n = n_min; n <= n_max; ++n) {
            const BigInt cn = count_or_throw(view, n, budget);
            const Int omega = *max_ones_or_throw(view, n, budget).omega;
            // h_n >= (omega/n)/(l+1) - log2(n+1)/n  <=>  (c_n (n+1))^(l+1) >= 2^omega
            const bool holds = pow_big(cn * (n + 1), l + 1) >= pow2(omega);
            ok = ok && holds;
            const double h = log2_big(cn) / static_cast<double>(n);
            const double lb = static_cast<double>(omega) / static_cast<double>(n) / static_cast<double>(l + 1) - slack(n);
            pts.emplace_back(static_cast<double>(n), h);
            r.rows.push_back({std::to_string(idx), std::to_string(k), std::to_string(n), to_string(cn), fmt_double(h),
                              std::to_string(omega), to_string(Rational(omega, n)), fmt_double(lb)});
        }
        r.series.emplace_back("h_n (k=" + std::to_string(k) + ")", pts);
        rec.check("case " + std::to_string(idx) + " (k=" + std::to_string(k) + "): h_n >= gamma/(l+1) - log2(n+1)/n",
                  ok);
        ++idx;
    }
}

void entropy_iff_banach(ExperimentReport& r, const json& p, const Corpus& corpus) {
    const auto grid = int_vec(p.at("grid"));
    const auto budget = budget_of(p);
    Recorder rec(r);
    std::vector<std::string> names = p.at("members").get<std::vector<std::string>>();
    if (names.empty())
        for (const auto& e : corpus) names.push_back(e.name);

    r.header = {"member", "n", "c_n", "h_n", "omega_n", "omega_over_n", "binomial_cap"};
    json members = json::array();
    for (const auto& name : names) {
        const auto& entry = find_member(corpus, name);
        const auto view = build_pset(entry.spec, max_of(grid));
        bool lower = true;
        bool upper = true;
        std::vector<double> h;
        std::vector<double> gamma;
        for (Int n : grid) {
            const BigInt c = count_or_throw(view, n, budget);
            const Int omega = *max_ones_or_throw(view, n, budget).omega;
            const BigInt cap = binomial_prefix_sum(n, omega);
            lower = lower && pow2(omega) <= c;
            upper = upper && c <= cap;
            h.push_back(log2_big(c) / static_cast<double>(n));
            gamma.push_back(static_cast<double>(omega) / static_cast<double>(n));
            r.rows.push_back({name, std::to_string(n), to_string(c), fmt_double(h.back()), std::to_string(omega),
                              to_string(Rational(omega, n)), to_string(cap)});
        }
        rec.check(name + ": 2^omega(n) <= c(n)", lower);
        rec.check(name + ": c(n) <= sum_{j<=omega(n)} C(n,j)", upper);
        const bool h_vanish = decreasing_toward_zero(grid, h);
        const bool g_vanish = decreasing_toward_zero(grid, gamma);
        members.push_back({{"member", name},
                           {"theory", entry.entropy},
                           {"h_trend", h_vanish ? "vanishing" : "persistent"},
                           {"density_trend", g_vanish ? "vanishing" : "persistent"}});
    }
    r.observations["trends"] = members;
    r.notes.push_back(
        "Asserted: 2^omega <= c(n) <= sum_{j<=omega} C(n,j), so gamma_n <= h_n <= H2(gamma_n) for gamma_n <= 1/2; "
        "h_n and gamma_n therefore vanish together. Trend labels on a finite grid are reported, not asserted.");
}

void zero_entropy_proximal(ExperimentReport& r, const json& p, const Corpus& corpus) {
    const Int horizon = p.at("horizon").get<Int>();
    const Int block_max = p.at("block_max").get<Int>();
    const Int witness_len = p.at("witness_len").get<Int>();
    const Int max_k = p.at("max_k").get<Int>();
    const auto shifts = int_vec(p.at("shifts"));
    const auto budget = budget_of(p);
    Recorder rec(r);
    r.header = {"member", "points", "pairs", "failing_pairs", "latest_hit_at_block_max"};
    for (const auto& name : p.at("members").get<std::vector<std::string>>()) {
        const auto& entry = find_member(corpus, name);
        if (entry.entropy != "zero")
            throw ValidationError("zero-entropy-proximal: member \"" + name + "\" is not a zero-entropy member");
        const auto view = build_pset(entry.spec, horizon);
        const auto pts = generator_points(view, horizon, witness_len, max_k, shifts, budget);
        std::uint64_t pairs = 0;
        std::uint64_t failing = 0;
        Int latest = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i; j < pts.size(); ++j) {
                ++pairs;
                bool ok = true;
                for (Int b = 1; b <= block_max && ok; ++b) {
                    auto hit = proximal_probe(pts[i], pts[j], b);
                    if (!hit) ok = false;
                    else if (b == block_max) latest = std::max(latest, *hit);
                }
                failing += !ok;
            }
        r.rows.push_back({name, std::to_string(pts.size()), std::to_string(pairs), std::to_string(failing),
                          std::to_string(latest)});
        rec.check(name + ": every generator pair hits every block <= " + std::to_string(block_max), failing == 0);
    }
    r.observations["excluded"] = p.at("excluded");
}

std::vector<Int> subset_sum_set(const std::vector<Int>& gens) {
    std::set<Int> sums;
    for (Int g : gens) {
        std::vector<Int> add{g};
        for (Int s : sums) add.push_back(s + g);
        sums.insert(add.begin(), add.end());
    }
    return {sums.begin(), sums.end()};
}

void transitive_needs_ipip(ExperimentReport& r, const json& p, const Corpus&) {
    const Int L = p.at("word_len_cap").get<Int>();
    const Int G = p.at("gap_cap").get<Int>();
    const Int horizon = p.at("horizon").get<Int>();
    const auto budget = budget_of(p);
    Recorder rec(r);
    r.header = {"instance", "joinable", "total", "least_failing_u", "least_failing_v", "ipip_status", "ipip_A"};
    for (const auto& gens_j : p.at("ipip_generators")) {
        const auto gens = int_vec(gens_j);
        const auto spec = PSetSpec::diff_set(subset_sum_set(gens));
        const auto view = build_pset(spec, horizon);
        const auto t = transitive_gap_check(view, L, G);
        const auto ip = find_ip_ip_generator(view, static_cast<Int>(gens.size()), horizon, budget);
        if (ip.status == SearchStatus::BudgetExhausted) throw BudgetExhausted("ip-ip search budget exhausted");
        std::string label = "DiffSet(FS(" + json(gens).dump() + "))";
        r.rows.push_back({label, std::to_string(t.joinable), std::to_string(t.total),
                          t.least_failing ? t.least_failing->first.to_word() : "",
                          t.least_failing ? t.least_failing->second.to_word() : "", to_string(ip.status),
                          ip.witness ? json(ip.witness->payload).dump() : ""});
        rec.check(label + ": all word pairs joinable by a zero gap", t.all_joinable());
        rec.check(label + ": IP-IP generator found and verified", ip.found() && ip.witness->verified);
    }
    json defects = json::array();
    for (const auto& c : p.at("non_transitive")) {
        const Int k = c.at("k").get<Int>();
        const auto extra = int_vec(c.at("extra"));
        if (extra.size() != 2 || (extra[1] - extra[0]) % k == 0)
            throw ValidationError("transitive-needs-ipip: extra must be {p1, p2} with p2 - p1 not a multiple of k");
        const auto spec = PSetSpec::union_of({PSetSpec::multiples(k), PSetSpec::explicit_set(extra)});
        const auto view = build_pset(spec, horizon);
        const auto t = transitive_gap_check(view, L, G);
        const auto ip = find_ip_ip_generator(view, 2, horizon, budget);
        std::string label = std::to_string(k) + "N+" + json(extra).dump();
        r.rows.push_back({label, std::to_string(t.joinable), std::to_string(t.total),
                          t.least_failing ? t.least_failing->first.to_word() : "",
                          t.least_failing ? t.least_failing->second.to_word() : "", to_string(ip.status),
                          ip.witness ? json(ip.witness->payload).dump() : ""});
        defects.push_back({{"instance", label}, {"defects", t.total - t.joinable}});
    }
    r.observations["non_transitive_defects"] = defects;
    r.notes.push_back("kN+{p1,p2} rows are recorded, not asserted: a zero-gap failure is evidence, not proof.");
}

void squares_zero_entropy(ExperimentReport& r, const json& p, const Corpus&) {
    const auto grid = int_vec(p.at("grid"));
    const auto budget = budget_of(p);
    Recorder rec(r);
    const auto spec = PSetSpec::complement(PSetSpec::squares());
    const auto view = build_pset(spec, max_of(grid));
    r.header = {"n", "c_n", "h_n", "omega_n", "omega_over_n"};
    std::vector<double> h;
    std::vector<double> gamma;
    std::vector<std::pair<double, double>> hs;
    std::vector<std::pair<double, double>> gs;
    for (Int n : grid) {
        const BigInt c = count_or_throw(view, n, budget);
        const Int omega = *max_ones_or_throw(view, n, budget).omega;
        h.push_back(log2_big(c) / static_cast<double>(n));
        gamma.push_back(static_cast<double>(omega) / static_cast<double>(n));
        hs.emplace_back(static_cast<double>(n), h.back());
        gs.emplace_back(static_cast<double>(n), gamma.back());
        r.rows.push_back({std::to_string(n), to_string(c), fmt_double(h.back()), std::to_string(omega),
                          to_string(Rational(omega, n))});
    }
    r.series.emplace_back("h_n", hs);
    r.series.emplace_back("omega/n", gs);
    rec.check("h_n decreasing on grid", decreasing_with_slack(grid, h));
    rec.check("omega(n)/n decreasing on grid", decreasing_with_slack(grid, gamma));

    const Int chain_bound = p.at("chain_bound").get<Int>();
    const auto squares = build_pset(PSetSpec::squares(), std::max(chain_bound, p.at("deep_bound").get<Int>()));
    const auto chain = find_delta_chain(squares, 3, chain_bound, budget);
    bool square_diffs = chain.found() && chain.witness->verified;
    r.observations["delta_chain_depth3"] = to_json(chain);
    rec.check("Delta-chain of depth 3 in the squares within bound", square_diffs);

    json deep = json::array();
    for (const auto& d : p.at("deep_depths")) {
        auto res = find_delta_chain(squares, d.get<Int>(), p.at("deep_bound").get<Int>(),
                                    p.at("deep_budget").get<std::uint64_t>());
        deep.push_back(to_json(res));
    }
    r.observations["deep_chains"] = deep;
    r.notes.push_back("Deeper Delta-chain searches in the squares are reported only; none results are bounded outcomes.");
}

void positive_entropy_no_periodic(ExperimentReport& r, const json& p, const Corpus&) {
    std::vector<Int> base = int_vec(p.at("base"));
    if (base.empty()) {
        const auto base_view = build_pset(spec_from_json(p.at("base_spec")), p.at("base_horizon").get<Int>());
        base = base_view.elements();
    }
    const auto grid = int_vec(p.at("grid"));
    const Int K = p.at("max_k").get<Int>();
    const Int horizon = p.at("horizon").get<Int>();
    const auto budget = budget_of(p);
    if (max_of(grid) > horizon) throw ValidationError("positive-entropy-no-periodic: grid exceeds horizon");
    Recorder rec(r);
    const auto spec = PSetSpec::diff_set(base);
    const auto view = build_pset(spec, horizon);
    r.observations["base"] = base;

    r.header = {"n", "omega_n", "omega_over_n"};
    std::vector<Int> omegas;
    std::vector<std::pair<double, double>> pts;
    for (Int n : grid) {
        omegas.push_back(*max_ones_or_throw(view, n, budget).omega);
        pts.emplace_back(static_cast<double>(n), static_cast<double>(omegas.back()) / static_cast<double>(n));
        r.rows.push_back({std::to_string(n), std::to_string(omegas.back()), to_string(Rational(omegas.back(), n))});
    }
    r.series.emplace_back("omega/n", pts);
    const bool nondecreasing = std::is_sorted(omegas.begin(), omegas.end()) && omegas.back() > omegas.front();
    // linear growth: the last density keeps at least half of the first
    const bool linear = 2 * Rational(omegas.back(), grid.back()) >= Rational(omegas.front(), grid.front());
    rec.check("omega(n) grows on grid", nondecreasing);
    rec.check("omega(n)/n stays above half its first value", linear);

    json periodic = json::array();
    bool none = true;
    for (Int k = 1; k <= K; ++k) {
        auto res = periodic_point_check(view, k, horizon);
        none = none && !res.point;
        periodic.push_back({{"k", k}, {"failing_multiple", res.failing_multiple ? json(*res.failing_multiple) : json()}});
    }
    r.observations["periodic"] = periodic;
    rec.check("no non-zero periodic point of period <= max_k", none);
    r.notes.push_back("The base set is a user-supplied candidate; it is not certified to have a Bohr-free difference set.");
}

void high_density_trivial_dynamics(ExperimentReport& r, const json& p, const Corpus&) {
    const Int k = p.at("k").get<Int>();
    const double eps = p.at("epsilon").get<double>();
    const Int horizon = p.at("horizon").get<Int>();
    if (k < 2 || !(1.0 / static_cast<double>(k) < eps))
        throw ValidationError("high-density-trivial-dynamics: needs k >= 2 and 1/k < epsilon");
    Recorder rec(r);
    const auto spec = PSetSpec::complement(PSetSpec::multiples(k));
    const auto view = build_pset(spec, horizon);
    const auto dr = density_report(view, std::max<Int>(1, horizon / 2), {horizon});
    const Rational floor_density = Rational(1) - Rational(1, k);
    const auto g = greedy_point(view, horizon);
    r.header = {"quantity", "value"};
    r.rows = {{"prefix_density_at_H", to_string(dr.prefix_at(horizon))},
              {"lower_est", to_string(dr.lower_est)},
              {"upper_est", to_string(dr.upper_est)},
              {"greedy_ones", std::to_string(g.ones.size())}};
    r.observations["greedy_ones"] = g.ones;
    rec.check("prefix density of P at H >= 1 - 1/k", dr.prefix_at(horizon) >= floor_density);
    rec.check("lower density estimate >= 1 - 1/k", dr.lower_est >= floor_density);
    rec.check("greedy point has at most k ones", static_cast<Int>(g.ones.size()) <= k);
}

using Runner = std::function<void(ExperimentReport&, const json&, const Corpus&)>;

const std::map<std::string, std::pair<Runner, json>>& registry() {
    static const std::map<std::string, std::pair<Runner, json>> reg = [] {
        std::map<std::string, std::pair<Runner, json>> m;
        m["delta-kills-density"] = {delta_kills_density,
                                    {{"k", 3},
                                     {"n_max", 24},
                                     {"grid", {8, 12, 16, 20, 24}},
                                     {"windows", {8, 16, 32, 64, 128}},
                                     {"horizon", 256}}};
        m["zero-density-zero-entropy"] = {zero_density_zero_entropy, {{"k", 3}, {"grid", {8, 12, 16, 24, 32, 48, 64}}}};
        m["density-entropy-bound"] = {density_entropy_bound,
                                      {{"cases",
                                        {{{"k", 1}, {"spec", {{"type", "multiples"}, {"k", 1}}}},
                                         {{"k", 2}, {"spec", {{"type", "multiples"}, {"k", 2}}}},
                                         {{"k", 3}, {"spec", {{"type", "multiples"}, {"k", 3}}}},
                                         {{"k", 3},
                                          {"spec",
                                           {{"type", "union"},
                                            {"of",
                                             {{{"type", "multiples"}, {"k", 3}},
                                              {{"type", "explicit"}, {"elems", {1, 2}}}}}}}}}},
                                       {"n_min", 8},
                                       {"n_max", 24},
                                       {"l", 0}}};
        m["entropy-iff-banach"] = {entropy_iff_banach,
                                   {{"grid", {8, 12, 16, 20, 24, 28, 32}}, {"members", json::array()}}};
        m["zero-entropy-proximal"] = {
            zero_entropy_proximal,
            {{"members",
              {"complement_multiples2", "complement_multiples3", "complement_multiples5", "squares", "fs_1_3_9",
               "delta_squares", "diffset_fs_1_4_16", "bohr_golden"}},
             {"excluded",
              {{{"member", "complement_squares"},
                {"reason", "zero entropy shows only beyond this horizon: its greedy point keeps 45 ones in [0,256)"}}}},
             {"horizon", 256},
             {"block_max", 32},
             {"witness_len", 24},
             {"max_k", 6},
             {"shifts", {1, 2, 3, 5, 8, 13}}}};
        m["transitive-needs-ipip"] = {transitive_needs_ipip,
                                      {{"ipip_generators", {{1, 3, 9}, {1, 4, 16}, {2, 6, 18}}},
                                       {"non_transitive",
                                        {{{"k", 3}, {"extra", {1, 2}}}, {{"k", 4}, {"extra", {1, 3}}}}},
                                       {"word_len_cap", 4},
                                       {"gap_cap", 16},
                                       {"horizon", 64}}};
        m["squares-zero-entropy"] = {squares_zero_entropy,
                                     {{"grid", {8, 12, 16, 20, 24, 28, 32}},
                                      {"chain_bound", 100},
                                      {"deep_depths", {4, 5, 6}},
                                      {"deep_bound", 2000},
                                      {"deep_budget", 1000000}}};
        m["positive-entropy-no-periodic"] = {
            positive_entropy_no_periodic,
            {{"base", json::array()},
             {"base_spec", {{"type", "bohr"}, {"alpha", 0.41421356237}, {"interval", {0.0, 0.12}}}},
             {"base_horizon", 240},
             {"grid", {16, 32, 48, 64, 96}},
             {"max_k", 6},
             {"horizon", 128}}};
        m["high-density-trivial-dynamics"] = {high_density_trivial_dynamics,
                                              {{"k", 10}, {"epsilon", 0.15}, {"horizon", 1000}}};
        for (auto& [id, entry] : m) entry.second["budget"] = kDefaultBudget;
        return m;
    }();
    return reg;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string tool_version() { return SPACELAB_VERSION; }

std::filesystem::path default_corpus_dir() {
    if (const char* env = std::getenv("SPACELAB_CORPUS")) return env;
    return SPACELAB_CORPUS_DIR;
}

PSetSpec spec_from_json(const json& j) {
    if (j.is_object() && j.contains("spec") && !j.contains("type")) return PSetSpec::from_json(j.at("spec"));
    return PSetSpec::from_json(j);
}

Corpus load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ValidationError("corpus directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    Corpus corpus;
    for (const auto& f : files) {
        std::ifstream in(f);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& ex) {
            throw ValidationError("corpus file " + f.filename().string() + ": " + ex.what());
        }
        CorpusEntry e;
        e.name = j.value("name", f.stem().string());
        e.spec = spec_from_json(j);
        e.spec.validate();
        e.entropy = j.value("entropy", "unknown");
        e.note = j.value("note", "");
        corpus.push_back(std::move(e));
    }
    return corpus;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Violation: return "violation";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

json ExperimentReport::to_json() const {
    json checks_j = json::array();
    for (const auto& c : checks) {
        json cj = {{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks_j.push_back(cj);
    }
    return {{"id", id},           {"params", params},         {"verdict", spacelab::to_string(verdict)},
            {"checks", checks_j}, {"observations", observations}, {"notes", notes}};
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            const auto& c = cells[i];
            if (c.find_first_of(",\"\n") != std::string::npos) {
                os << '"';
                for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
                os << '"';
            } else {
                os << c;
            }
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = {
        "delta-kills-density",    "zero-density-zero-entropy", "density-entropy-bound",
        "entropy-iff-banach",     "zero-entropy-proximal",     "transitive-needs-ipip",
        "squares-zero-entropy",   "positive-entropy-no-periodic", "high-density-trivial-dynamics"};
    return ids;
}

json default_params(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw ValidationError("unknown experiment id \"" + id + "\"");
    return it->second.second;
}

ExperimentReport run_experiment(const std::string& id, const json& params, const Corpus& corpus) {
    auto it = registry().find(id);
    if (it == registry().end()) throw ValidationError("unknown experiment id \"" + id + "\"");
    json merged = it->second.second;
    if (!params.is_null()) {
        if (!params.is_object()) throw ValidationError("experiment params must be a JSON object");
        for (const auto& [key, value] : params.items()) {
            if (!merged.contains(key)) throw ValidationError("experiment " + id + ": unknown parameter \"" + key + "\"");
            merged[key] = value;
        }
    }
    ExperimentReport r;
    r.id = id;
    r.params = merged;
    try {
        it->second.first(r, merged, corpus);
        const bool ok = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
        r.verdict = ok ? Verdict::Consistent : Verdict::Violation;
    } catch (const BudgetExhausted& e) {
        r.verdict = Verdict::Inconclusive;
        r.notes.push_back(std::string("budget exhausted: ") + e.what());
    } catch (const json::exception& e) {
        throw ValidationError("experiment " + id + ": bad parameter: " + e.what());
    }
    return r;
}

double slack(Int n) { return std::log2(static_cast<double>(n) + 1.0) / static_cast<double>(n); }

bool decreasing_with_slack(const std::vector<Int>& grid, const std::vector<double>& values) {
    if (grid.size() != values.size() || values.size() < 2) throw ValidationError("trend check needs >= 2 aligned values");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > slack(grid[i])) return false;
    return values.back() < values.front();
}

bool decreasing_toward_zero(const std::vector<Int>& grid, const std::vector<double>& values) {
    return decreasing_with_slack(grid, values) && values.back() <= values.front() / 2.0;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

std::string render_svg(const std::string& title,
                       const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series) {
    constexpr double W = 640, H = 400, M = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 0, ymax = 1e-12;
    for (const auto& [name, pts] : series)
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    if (xmin >= xmax) xmax = xmin + 1;
    auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << M << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << M - 5 << "\" y=\"" << M << "\" font-size=\"10\" text-anchor=\"end\">" << fmt_double(ymax)
       << "</text>\n";
    std::size_t ci = 0;
    for (const auto& [name, pts] : series) {
        const char* color = colors[ci % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& [x, y] : pts) os << sx(x) << ',' << sy(y) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << W - M << "\" y=\"" << M + 14 * ci << "\" font-size=\"11\" text-anchor=\"end\" fill=\""
           << color << "\">" << name << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<ExperimentReport> run_all(const Corpus& corpus, const RunAllOptions& opts) {
    std::filesystem::create_directories(opts.out_dir);
    const auto& ids = experiment_ids();
    std::vector<ExperimentReport> reports(ids.size());
    const json params = {{"budget", opts.budget}};
    if (opts.workers <= 1) {
        for (std::size_t i = 0; i < ids.size(); ++i) reports[i] = run_experiment(ids[i], params, corpus);
    } else {
        std::vector<std::future<ExperimentReport>> futs;
        for (const auto& id : ids)
            futs.push_back(std::async(std::launch::async, [&, id] { return run_experiment(id, params, corpus); }));
        for (std::size_t i = 0; i < ids.size(); ++i) reports[i] = futs[i].get();
    }

    json index = json::array();
    for (const auto& r : reports) {
        write_atomic(opts.out_dir / (r.id + ".json"), r.to_json().dump(2) + "\n");
        write_atomic(opts.out_dir / (r.id + ".csv"), r.to_csv());
        if (opts.plot && !r.series.empty()) write_atomic(opts.out_dir / (r.id + ".svg"), render_svg(r.id, r.series));
        const auto passed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
        index.push_back({{"id", r.id},
                         {"verdict", to_string(r.verdict)},
                         {"checks_passed", passed},
                         {"checks_total", r.checks.size()}});
    }
    json corpus_j = json::array();
    for (const auto& e : corpus) corpus_j.push_back({{"name", e.name}, {"digest", e.spec.digest()}});
    write_atomic(opts.out_dir / "index.json", json{{"experiments", index}, {"corpus", corpus_j}}.dump(2) + "\n");
    json manifest = {{"tool", "spacelab"},
                     {"version", tool_version()},
                     {"command", "corpus run-all"},
                     {"parameters", {{"budget", opts.budget}, {"plot", opts.plot}}},
                     {"corpus", corpus_j},
                     {"timestamp", timestamp_utc()}};
    write_atomic(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
    return reports;
}

}  // namespace spacelab
