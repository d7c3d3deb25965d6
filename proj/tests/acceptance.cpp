// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
//
//   spacelab_acceptance <path-to-spacelab-cli>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "spacelab/harness.hpp"

using namespace spacelab;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

const Corpus& corpus() {
    static const Corpus c = load_corpus(default_corpus_dir());
    return c;
}

BigInt count(const PSetView& v, Int n, CountMode mode) {
    auto r = count_words(v, n, mode);
    if (!r.count) throw BudgetExhausted("count budget exhausted");
    return *r.count;
}

BigInt pow2(Int e) {
    BigInt r = 1;
    r <<= static_cast<unsigned>(e);
    return r;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& e : corpus()) {
        const auto v = build_pset(e.spec, 18);
        for (Int n = 0; n <= 18; ++n) {
            ++checked;
            if (count(v, n, CountMode::Optimized) != count(v, n, CountMode::Naive))
                o.fail(e.name + " n=" + std::to_string(n));
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " (member, n) pairs";
    return o;
}

Outcome closed_forms() {
    Outcome o;
    const auto nat = build_pset(PSetSpec::multiples(1), 30);
    const auto even = build_pset(PSetSpec::multiples(2), 30);
    for (Int n = 0; n <= 30; ++n) {
        if (count(nat, n, CountMode::Optimized) != pow2(n)) o.fail("N at n=" + std::to_string(n));
        const BigInt want = pow2((n + 1) / 2) + pow2(n / 2) - 1;
        if (count(even, n, CountMode::Optimized) != want) o.fail("2N at n=" + std::to_string(n));
        if (n <= 18 && BigInt(oracle::count_words(oracle::multiples(2), n)) != want)
            o.fail("2N brute force at n=" + std::to_string(n));
    }
    return o;
}

Outcome pigeonhole_cap() {
    Outcome o;
    for (Int k : {2, 3, 5}) {
        const auto v = build_pset(PSetSpec::complement(PSetSpec::multiples(k)), 200);
        for (Int n = 1; n <= 24; ++n) {
            auto m = max_ones(v, n);
            if (m.omega != std::min(k, n)) o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
        }
        const auto g = greedy_point(v, 200);
        if (static_cast<Int>(g.ones.size()) != k) o.fail("greedy for k=" + std::to_string(k));
    }
    return o;
}

Outcome entropy_bound() {
    // h_n >= gamma/(l+1) - log2(n+1)/n at l = 0  <=>  c(n) * (n+1) >= 2^omega(n).
    Outcome o;
    const std::vector<std::pair<Int, PSetSpec>> cases{
        {1, PSetSpec::multiples(1)},
        {2, PSetSpec::multiples(2)},
        {3, PSetSpec::multiples(3)},
        {2, PSetSpec::union_of({PSetSpec::multiples(2), PSetSpec::squares()})},
        {3, PSetSpec::union_of({PSetSpec::multiples(3), PSetSpec::explicit_set({1, 2})})}};
    for (const auto& [k, spec] : cases) {
        const auto v = build_pset(spec, 24);
        for (Int m = k; m <= 24; m += k)
            if (!v.test(m)) o.fail("case does not contain kN");
        for (Int n = 8; n <= 24; ++n) {
            const BigInt c = count(v, n, CountMode::Optimized);
            const Int omega = *max_ones(v, n).omega;
            if (c * (n + 1) < pow2(omega)) o.fail(spec.canonical() + " n=" + std::to_string(n));
        }
    }
    return o;
}

Outcome submultiplicativity() {
    Outcome o;
    for (const auto& e : corpus()) {
        const auto v = build_pset(e.spec, 24);
        std::vector<BigInt> c;
        for (Int n = 0; n <= 24; ++n) c.push_back(count(v, n, CountMode::Optimized));
        for (Int m = 1; m <= 23; ++m)
            for (Int n = 1; m + n <= 24; ++n)
                if (c[m + n] > c[m] * c[n]) o.fail(e.name + " m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
    return o;
}

Outcome structure_witnesses() {
    Outcome o;
    const auto sq = build_pset(PSetSpec::squares(), 100);
    auto d = find_delta_chain(sq, 3, 100);
    if (!d.found() || d.witness->payload != std::vector<Int>{1, 10, 26}) o.fail("delta chain");
    else if (oracle::differences(d.witness->payload) != std::vector<Int>{9, 16, 25}) o.fail("delta differences");
    else if (!verify_witness(*d.witness, sq) || !d.witness->verified) o.fail("delta verify");
    const auto even = build_pset(PSetSpec::multiples(2), 10);
    auto ip = find_ip_generator(even, 2, 10);
    if (!ip.found() || ip.witness->payload != std::vector<Int>{2, 4}) o.fail("ip generator");
    else if (!verify_witness(*ip.witness, even) || !ip.witness->verified) o.fail("ip verify");
    return o;
}

Outcome squares_trend() {
    // h_24 < h_8  <=>  c(24) < c(8)^3, and omega(24)/24 < omega(8)/8  <=>  omega(24) < 3 omega(8).
    Outcome o;
    const auto v = build_pset(PSetSpec::complement(PSetSpec::squares()), 24);
    const BigInt c8 = count(v, 8, CountMode::Optimized);
    const BigInt c24 = count(v, 24, CountMode::Optimized);
    const Int w8 = *max_ones(v, 8).omega;
    const Int w24 = *max_ones(v, 24).omega;
    if (!(c24 < c8 * c8 * c8)) o.fail("h_24 >= h_8");
    if (!(w24 < 3 * w8)) o.fail("omega/n did not decrease");
    o.detail = "c8=" + to_string(c8) + " c24=" + to_string(c24) + " omega8=" + std::to_string(w8) +
               " omega24=" + std::to_string(w24);
    return o;
}

Outcome proximality() {
    Outcome o;
    const Int H = 256;
    const auto v = build_pset(PSetSpec::complement(PSetSpec::multiples(2)), H);
    const auto pts = generator_points(v, H, 24, 6, {1, 2, 3, 5, 8, 13}, kDefaultBudget);
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            ++pairs;
            for (Int b = 1; b <= 32; ++b)
                if (!proximal_probe(pts[i], pts[j], b)) o.fail(pts[i].source + " vs " + pts[j].source);
        }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs";
    return o;
}

Outcome periodic_criterion() {
    Outcome o;
    const Int H = 60;
    for (const auto& e : corpus()) {
        const auto v = build_pset(e.spec, H);
        for (Int k = 1; k <= 6; ++k) {
            bool contains = true;
            for (Int m = k; m <= H; m += k) contains = contains && e.spec.contains(m);
            const auto r = periodic_point_check(v, k, H);
            if (r.point.has_value() != contains) o.fail(e.name + " k=" + std::to_string(k));
            if (r.point && !is_admissible(r.point->config, v)) o.fail(e.name + " point not admissible");
        }
    }
    return o;
}

Outcome f_statistic_sanity() {
    Outcome o;
    const Int H = 64;
    const std::vector<Int> grid{8, 16, 24, 32, 40, 48, 56};
    std::vector<std::pair<OrbitPoint, OrbitPoint>> pairs;
    for (const auto& e : corpus()) {
        const auto v = build_pset(e.spec, H);
        const auto pts = generator_points(v, H, 12, 6, {1, 3}, kDefaultBudget);
        for (std::size_t i = 0; i < pts.size() && pairs.size() < 100; ++i)
            for (std::size_t j = i + 1; j < pts.size() && j <= i + 2 && pairs.size() < 100; ++j)
                pairs.emplace_back(pts[i], pts[j]);
    }
    if (pairs.size() < 100) o.fail("only " + std::to_string(pairs.size()) + " pairs");
    for (const auto& [x, y] : pairs)
        for (Int l = 0; l <= 6; ++l) {
            const auto xx = f_statistic(x, x, l, grid);
            const auto xy = f_statistic(x, y, l, grid);
            const auto yx = f_statistic(y, x, l, grid);
            const auto next = f_statistic(x, y, l + 1, grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (xx.values[i].second != Rational(1)) o.fail("F(x,x) != 1");
                if (xy.values[i].second != yx.values[i].second) o.fail("asymmetric");
                if (next.values[i].second > xy.values[i].second) o.fail("not monotone in l");
            }
        }
    if (o.pass) o.detail = std::to_string(pairs.size()) + " pairs";
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.fail("no CLI path given");
        return o;
    }
    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path() / "spacelab_acceptance";
    fs::remove_all(base);
    for (const char* run : {"a", "b"}) {
        const std::string cmd = "\"" + cli + "\" corpus run-all --out \"" + (base / run).string() + "\" > \"" +
                                (base.string() + "_" + run + ".log") + "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) o.fail(std::string("run ") + run + " exited non-zero");
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
        const auto name = entry.path().filename();
        if (!fs::exists(base / "b" / name)) {
            o.fail("missing " + name.string());
            continue;
        }
        ++files;
        if (name == "manifest.json") {
            auto ma = json::parse(slurp(entry.path()));
            auto mb = json::parse(slurp(base / "b" / name));
            ma.erase("timestamp");
            mb.erase("timestamp");
            if (ma != mb) o.fail("manifest differs beyond the timestamp");
        } else if (slurp(entry.path()) != slurp(base / "b" / name)) {
            o.fail(name.string() + " differs");
        }
    }
    const auto index = json::parse(slurp(base / "a" / "index.json"));
    std::size_t experiments = 0;
    for (const auto& e : index.at("experiments")) {
        ++experiments;
        if (e.at("verdict") != "consistent") o.fail(e.at("id").get<std::string>() + " is " + e.at("verdict").get<std::string>());
    }
    if (experiments != experiment_ids().size()) o.fail("index lists the wrong number of experiments");
    if (o.pass) o.detail = std::to_string(files) + " files, " + std::to_string(experiments) + " experiments consistent";
    fs::remove_all(base);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 oracle equivalence (n <= 18, corpus)", oracle_equivalence},
        {"2 closed forms for N and 2N (n <= 30)", closed_forms},
        {"3 pigeonhole cap for complements of kN", pigeonhole_cap},
        {"4 entropy lower bound for P containing kN", entropy_bound},
        {"5 submultiplicativity (m + n <= 24, corpus)", submultiplicativity},
        {"6 structure witnesses", structure_witnesses},
        {"7 complement of squares trend", squares_trend},
        {"8 proximality for odd differences", proximality},
        {"9 periodic criterion (corpus x k <= 6)", periodic_criterion},
        {"10 F-statistic sanity (100 pairs)", f_statistic_sanity},
        {"11 run-all determinism and verdicts", [&] { return cli_determinism(cli); }},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  [" << timing << "]";
        if (!o.detail.empty()) std::cout << "  " << o.detail;
        std::cout << "\n";
        failures += !o.pass;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures;
}
