#include <doctest.h>

#include "oracles.hpp"
#include "spacelab/structure.hpp"

using namespace spacelab;

namespace {

std::vector<Int> payload(const SearchResult& r) {
    REQUIRE(r.witness.has_value());
    return r.witness->payload;
}

}  // namespace

TEST_CASE("delta chain examples") {
    const auto sq = build_pset(PSetSpec::squares(), 1000);
    auto r = find_delta_chain(sq, 3, 100);
    CHECK(r.found());
    CHECK(payload(r) == std::vector<Int>{1, 10, 26});
    CHECK(r.witness->verified);
    CHECK(oracle::differences(payload(r)) == std::vector<Int>{9, 16, 25});

    // Chains are translation invariant, so the least one starts at 1.
    const auto even = build_pset(PSetSpec::multiples(2), 10);
    auto e = find_delta_chain(even, 4, 10);
    CHECK(payload(e) == std::vector<Int>{1, 3, 5, 7});
    CHECK(oracle::differences(payload(e)) == std::vector<Int>{2, 4, 6});

    const auto one = build_pset(PSetSpec::explicit_set({1}), 1000);
    auto none = find_delta_chain(one, 3, 1000);
    CHECK(none.status == SearchStatus::NoneInBound);
    CHECK(none.depth == 3);
    CHECK(none.bound == 1000);
    CHECK_THROWS_AS(find_delta_chain(one, 1, 10), ValidationError);
}

TEST_CASE("delta chain matches lexicographic enumeration") {
    struct Case {
        PSetSpec spec;
        oracle::Pred pred;
    };
    std::vector<Case> cases{{PSetSpec::squares(), oracle::squares()},
                            {PSetSpec::multiples(3), oracle::multiples(3)},
                            {PSetSpec::complement(PSetSpec::multiples(3)), oracle::not_(oracle::multiples(3))},
                            {PSetSpec::explicit_set({2, 3, 5, 7, 8, 10}), oracle::finite_set({2, 3, 5, 7, 8, 10})}};
    for (const auto& c : cases) {
        const auto v = build_pset(c.spec, 60);
        for (Int depth = 2; depth <= 4; ++depth) {
            const auto want = oracle::delta_chain(c.pred, depth, 40);
            const auto got = find_delta_chain(v, depth, 40);
            REQUIRE(got.status != SearchStatus::BudgetExhausted);
            CHECK(got.found() == want.has_value());
            if (want) CHECK(payload(got) == *want);
        }
    }
}

TEST_CASE("ip generator examples") {
    const auto nat = build_pset(PSetSpec::multiples(1), 100);
    CHECK(payload(find_ip_generator(nat, 3, 10)) == std::vector<Int>{1, 2, 4});
    const auto even = build_pset(PSetSpec::multiples(2), 10);
    auto r = find_ip_generator(even, 2, 10);
    CHECK(payload(r) == std::vector<Int>{2, 4});
    CHECK(oracle::subset_sums(payload(r)) == std::vector<Int>{2, 4, 6});
    CHECK(r.witness->verified);
    // 9 + 16 = 25: the squares do contain a depth-2 generator.
    const auto sq = build_pset(PSetSpec::squares(), 10000);
    CHECK(payload(find_ip_generator(sq, 2, 10000)) == std::vector<Int>{9, 16});
    CHECK(*oracle::ip_generator(oracle::squares(), 2, 100) == std::vector<Int>{9, 16});
    CHECK(find_ip_generator(sq, 2, 24).status == SearchStatus::NoneInBound);
    CHECK_THROWS_AS(find_ip_generator(sq, 0, 10), ValidationError);
}

TEST_CASE("ip and ip-ip generators match lexicographic enumeration") {
    const std::vector<std::pair<PSetSpec, oracle::Pred>> cases{
        {PSetSpec::multiples(3), oracle::multiples(3)},
        {PSetSpec::finite_sums({1, 3, 9}), oracle::finite_set(oracle::subset_sums({1, 3, 9}))},
        {PSetSpec::diff_set(oracle::subset_sums({1, 4, 16})),
         oracle::finite_set(oracle::differences(oracle::subset_sums({1, 4, 16})))},
        {PSetSpec::complement(PSetSpec::squares()), oracle::not_(oracle::squares())}};
    for (const auto& [spec, pred] : cases) {
        const auto v = build_pset(spec, 60);
        for (Int depth = 1; depth <= 3; ++depth) {
            const auto want = oracle::ip_generator(pred, depth, 30);
            const auto got = find_ip_generator(v, depth, 30);
            CHECK(got.found() == want.has_value());
            if (want) CHECK(payload(got) == *want);
            const auto want2 = oracle::ip_ip_generator(pred, depth, 30);
            const auto got2 = find_ip_ip_generator(v, depth, 30);
            CHECK(got2.found() == want2.has_value());
            if (want2) CHECK(payload(got2) == *want2);
        }
    }
}

TEST_CASE("ip-ip examples") {
    CHECK(payload(find_ip_ip_generator(build_pset(PSetSpec::multiples(3), 30), 2, 30)) == std::vector<Int>{3, 6});
    CHECK(payload(find_ip_ip_generator(build_pset(PSetSpec::multiples(1), 20), 3, 20)) == std::vector<Int>{1, 2, 4});
    CHECK(find_ip_ip_generator(build_pset(PSetSpec::explicit_set({5}), 100), 2, 100).status ==
          SearchStatus::NoneInBound);
}

TEST_CASE("an ip generator yields a delta chain one deeper") {
    for (const auto& spec : {PSetSpec::multiples(2), PSetSpec::finite_sums({2, 7, 20}), PSetSpec::multiples(1)}) {
        const auto v = build_pset(spec, 200);
        for (Int d = 1; d <= 3; ++d) {
            auto ip = find_ip_generator(v, d, 100);
            if (!ip.found()) continue;
            // S = (s0, s0 + a1, s0 + a1 + a2, ...): differences are sums of consecutive a_i.
            std::vector<Int> s{1};
            for (Int a : ip.witness->payload) s.push_back(s.back() + a);
            StructureWitness w{WitnessKind::DeltaChain, s, false, d + 1, s.back(), {}};
            CHECK(verify_witness(w, v));
            CHECK(find_delta_chain(v, d + 1, s.back()).found());
        }
    }
}

TEST_CASE("witnesses are stable as the bound grows") {
    const auto sq = build_pset(PSetSpec::squares(), 500);
    const auto first = payload(find_delta_chain(sq, 3, 26));
    for (Int b : {30, 100, 250, 500}) CHECK(payload(find_delta_chain(sq, 3, b)) == first);
    CHECK_FALSE(find_delta_chain(sq, 3, 25).found());
}

TEST_CASE("budget exhaustion is distinct from a bounded none") {
    const auto sq = build_pset(PSetSpec::squares(), 5000);
    auto r = find_delta_chain(sq, 5, 5000, 50);
    CHECK(r.status == SearchStatus::BudgetExhausted);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.nodes >= 50);
}

TEST_CASE("syndetic gap and thick run") {
    const auto even = build_pset(PSetSpec::multiples(2), 100);
    CHECK(syndetic_gap(even).interior_gap == 1);
    CHECK(thick_run(even) == 1);

    // 100 is a square, so 82..99 is interior and nothing is censored.
    const auto sq = build_pset(PSetSpec::squares(), 100);
    auto g = syndetic_gap(sq);
    CHECK(g.interior_gap == 18);
    CHECK(g.censored_tail == 0);
    auto g99 = syndetic_gap(build_pset(PSetSpec::squares(), 99));
    CHECK(g99.interior_gap == 16);
    CHECK(g99.censored_tail == 18);

    const auto nat = build_pset(PSetSpec::multiples(1), 50);
    CHECK(syndetic_gap(nat).interior_gap == 0);
    CHECK(thick_run(nat) == 50);
    CHECK(thick_run(build_pset(PSetSpec::complement(PSetSpec::squares()), 100)) == 18);
    CHECK_FALSE(syndetic_gap(build_pset(PSetSpec::explicit_set({200}), 100)).interior_gap.has_value());

    for (Int h : {37, 150, 333}) {
        const auto p = oracle::not_(oracle::finite_set(oracle::subset_sums({2, 9, 30, 31})));
        const auto v = build_pset(PSetSpec::complement(PSetSpec::finite_sums({2, 9, 30, 31})), h);
        auto [interior, tail] = oracle::gaps(p, h);
        auto rep = syndetic_gap(v);
        CHECK(rep.censored_tail == tail);
        if (rep.interior_gap) CHECK(*rep.interior_gap == interior);
        CHECK(thick_run(v) == oracle::longest_run(p, h));
    }
}

TEST_CASE("intersective refutation") {
    const auto sq = build_pset(PSetSpec::squares(), 100);
    const auto even = build_pset(PSetSpec::multiples(2), 100);
    auto w = intersective_refute(sq, even);
    REQUIRE(w.has_value());
    CHECK(w->payload == std::vector<Int>{4});
    CHECK(w->support.size() == 2);
    CHECK(w->support[0] - w->support[1] == 4);
    CHECK(verify_witness(*w, sq, even));

    CHECK_FALSE(intersective_refute(build_pset(PSetSpec::explicit_set({1}), 1000),
                                    build_pset(PSetSpec::multiples(2), 1000)));
    auto least = intersective_refute(build_pset(PSetSpec::multiples(1), 60),
                                     build_pset(PSetSpec::explicit_set({10, 17, 40}), 60));
    REQUIRE(least.has_value());
    CHECK(least->payload == std::vector<Int>{7});
    CHECK_THROWS(intersective_refute(sq, build_pset(PSetSpec::multiples(2), 50)));
}

TEST_CASE("tampered witnesses fail verification and json round-trips") {
    const auto sq = build_pset(PSetSpec::squares(), 200);
    auto w = *find_delta_chain(sq, 3, 100).witness;
    auto back = witness_from_json(to_json(w));
    CHECK(back.payload == w.payload);
    CHECK(back.kind == w.kind);
    CHECK(verify_witness(back, sq));
    back.payload[2] = 27;
    CHECK_FALSE(verify_witness(back, sq));
    CHECK(to_string(WitnessKind::IPminusIP) == "ip_minus_ip");
    CHECK(witness_kind_from_string("syndetic_gap") == WitnessKind::SyndeticGap);
}

TEST_CASE("distinct subset sums") {
    CHECK(distinct_subset_sums({1, 2, 4}) == std::vector<Int>{1, 2, 3, 4, 5, 6, 7});
    CHECK_FALSE(distinct_subset_sums({1, 2, 3}).has_value());
}
