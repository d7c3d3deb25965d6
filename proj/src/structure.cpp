#include "spacelab/structure.hpp"

#include <algorithm>
#include <set>

namespace spacelab {

namespace {

struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;
    bool exhausted = false;

    // false once the node cap has been hit.
    bool tick() {
        if (used >= limit) {
            exhausted = true;
            return false;
        }
        ++used;
        return true;
    }
};

void check_search_args(const PSetView& view, Int depth, Int min_depth, Int bound, const char* op) {
    if (depth < min_depth)
        throw ValidationError(std::string(op) + ": depth must be >= " + std::to_string(min_depth));
    if (bound < 1 || bound > view.horizon())
        throw ValidationError(std::string(op) + ": bound must lie in [1..H]");
}

SearchResult finish(SearchResult r, WitnessKind kind, std::optional<std::vector<Int>> found, const Budget& budget,
                    const PSetView& view) {
    r.nodes = budget.used;
    if (found) {
        StructureWitness w{kind, std::move(*found), false, r.depth, r.bound, {}};
        w.verified = verify_witness(w, view);
        r.witness = std::move(w);
        r.status = SearchStatus::Found;
    } else {
        r.status = budget.exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NoneInBound;
    }
    return r;
}

// Depth-first search in lexicographic order over chains starting at 1. Any chain can be
// translated to start at 1 without leaving the bound, so this yields the global lex-least one.
class DeltaSearch {
public:
    DeltaSearch(const PSetView& view, Int depth, Int bound, Budget& budget)
        : diffs_(view.bits().slice(0, static_cast<std::size_t>(bound))), depth_(depth), bound_(bound),
          budget_(budget) {}

    std::optional<std::vector<Int>> run(std::vector<Int>& deepest) {
        chain_ = {1};
        Bits cand(static_cast<std::size_t>(bound_));
        cand.or_shifted_up(diffs_, 1);  // positions 1 + d, stored at index (1 + d) - 1
        deepest = chain_;
        if (dfs(cand, deepest)) return chain_;
        return std::nullopt;
    }

private:
    bool dfs(const Bits& cand, std::vector<Int>& deepest) {
        if (static_cast<Int>(chain_.size()) == depth_) return true;
        if (static_cast<Int>(cand.count()) < depth_ - static_cast<Int>(chain_.size())) return false;
        for (std::size_t i = cand.find_first(); i < cand.size(); i = cand.find_next(i + 1)) {
            if (!budget_.tick()) return false;
            const Int s = static_cast<Int>(i) + 1;
            Bits next(cand.size());
            next.or_shifted_up(diffs_, static_cast<std::size_t>(s));
            next &= cand;
            chain_.push_back(s);
            if (chain_.size() > deepest.size()) deepest = chain_;
            if (dfs(next, deepest)) return true;
            chain_.pop_back();
            if (budget_.exhausted) return false;
        }
        return false;
    }

    Bits diffs_;
    Int depth_;
    Int bound_;
    Budget& budget_;
    std::vector<Int> chain_;
};

// Lex-ordered DFS over generator lists with distinct subset sums.
// The differences flag switches the admissibility test from FS(A) to FS(A) - FS(A).
class GeneratorSearch {
public:
    GeneratorSearch(const PSetView& view, Int depth, Int bound, bool differences, Budget& budget)
        : view_(view), depth_(depth), bound_(bound), differences_(differences), budget_(budget) {}

    std::optional<std::vector<Int>> run(std::vector<Int>& deepest) {
        if (dfs(0, deepest)) return gens_;
        return std::nullopt;
    }

private:
    bool in_set(Int n) const { return n >= 1 && n <= view_.horizon() && view_.test(n); }

    bool dfs(Int total, std::vector<Int>& deepest) {
        const auto placed = static_cast<Int>(gens_.size());
        if (placed == depth_) return true;
        const Int remaining = depth_ - placed;
        const Int start = gens_.empty() ? 1 : gens_.back() + 1;
        // remaining generators a, a+1, ..., a+remaining-1 at minimum
        for (Int a = start; total + a * remaining + remaining * (remaining - 1) / 2 <= bound_; ++a) {
            if (!differences_ && !in_set(a)) continue;
            if (!budget_.tick()) return false;
            std::vector<Int> fresh;
            if (!extend(a, fresh)) continue;
            const std::size_t old = sums_.size();
            sums_.insert(sums_.end(), fresh.begin(), fresh.end());
            gens_.push_back(a);
            if (gens_.size() > deepest.size()) deepest = gens_;
            if (dfs(total + a, deepest)) return true;
            gens_.pop_back();
            sums_.resize(old);
            if (budget_.exhausted) return false;
        }
        return false;
    }

    // New subset sums {a} U (sums + a); false if any collides or breaks the target property.
    bool extend(Int a, std::vector<Int>& fresh) const {
        std::set<Int> existing(sums_.begin(), sums_.end());
        fresh.push_back(a);
        for (Int s : sums_) fresh.push_back(s + a);
        for (Int f : fresh) {
            if (existing.count(f)) return false;
            if (!differences_ && !in_set(f)) return false;
        }
        if (differences_) {
            // Differences inside `fresh` repeat differences of the old sums, already checked.
            // New ones: fresh - old (either sign) and (s + a) - a = s.
            for (Int s : sums_)
                if (!in_set(s)) return false;
            for (Int f : fresh)
                for (Int s : sums_)
                    if (f != s && !in_set(f > s ? f - s : s - f)) return false;
        }
        return true;
    }

    const PSetView& view_;
    Int depth_;
    Int bound_;
    bool differences_;
    Budget& budget_;
    std::vector<Int> gens_;
    std::vector<Int> sums_;
};

SearchResult run_generator_search(const PSetView& view, Int depth, Int bound, std::uint64_t budget, bool differences) {
    Budget b{budget};
    SearchResult r;
    r.depth = depth;
    r.bound = bound;
    GeneratorSearch search(view, depth, bound, differences, b);
    auto found = search.run(r.deepest);
    return finish(std::move(r), differences ? WitnessKind::IPminusIP : WitnessKind::IPGenerator, std::move(found), b,
                  view);
}

bool strictly_increasing(const std::vector<Int>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](Int a, Int b) { return a >= b; }) == v.end();
}

}  // namespace

std::string to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::DeltaChain: return "delta_chain";
        case WitnessKind::IPGenerator: return "ip_generator";
        case WitnessKind::SyndeticGap: return "syndetic_gap";
        case WitnessKind::ThickRun: return "thick_run";
        case WitnessKind::IPminusIP: return "ip_minus_ip";
        case WitnessKind::IntersectiveHit: return "intersective_hit";
    }
    return "unknown";
}

WitnessKind witness_kind_from_string(const std::string& s) {
    for (auto k : {WitnessKind::DeltaChain, WitnessKind::IPGenerator, WitnessKind::SyndeticGap, WitnessKind::ThickRun,
                   WitnessKind::IPminusIP, WitnessKind::IntersectiveHit})
        if (to_string(k) == s) return k;
    throw ValidationError("unknown witness kind \"" + s + "\"");
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NoneInBound: return "none_in_bound";
        case SearchStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "unknown";
}

std::optional<std::vector<Int>> distinct_subset_sums(const std::vector<Int>& gens) {
    std::vector<Int> sums;
    for (Int g : gens) {
        const std::size_t old = sums.size();
        sums.push_back(g);
        for (std::size_t i = 0; i < old; ++i) sums.push_back(sums[i] + g);
    }
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) return std::nullopt;
    return sums;
}

SearchResult find_delta_chain(const PSetView& view, Int depth, Int bound, std::uint64_t budget) {
    check_search_args(view, depth, 2, bound, "find_delta_chain");
    Budget b{budget};
    SearchResult r;
    r.depth = depth;
    r.bound = bound;
    DeltaSearch search(view, depth, bound, b);
    auto found = search.run(r.deepest);
    return finish(std::move(r), WitnessKind::DeltaChain, std::move(found), b, view);
}

SearchResult find_ip_generator(const PSetView& view, Int depth, Int bound, std::uint64_t budget) {
    check_search_args(view, depth, 1, bound, "find_ip_generator");
    return run_generator_search(view, depth, bound, budget, false);
}

SearchResult find_ip_ip_generator(const PSetView& view, Int depth, Int bound, std::uint64_t budget) {
    check_search_args(view, depth, 1, bound, "find_ip_ip_generator");
    return run_generator_search(view, depth, bound, budget, true);
}

GapReport syndetic_gap(const PSetView& view) {
    GapReport g;
    Int run = 0;
    for (Int n = 1; n <= view.horizon(); ++n) {
        if (view.test(n)) {
            g.interior_gap = std::max(g.interior_gap.value_or(0), run);
            run = 0;
        } else {
            ++run;
        }
    }
    g.censored_tail = run;
    return g;
}

Int thick_run(const PSetView& view) {
    Int best = 0;
    Int run = 0;
    for (Int n = 1; n <= view.horizon(); ++n) {
        run = view.test(n) ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

std::optional<StructureWitness> intersective_refute(const PSetView& e_view, const PSetView& a_view) {
    if (e_view.horizon() != a_view.horizon()) throw ValidationError("intersective_refute: horizons differ");
    const Int H = a_view.horizon();
    const auto size = static_cast<std::size_t>(H);
    // diffs bit d-1 set iff d = a' - a for members a < a'.
    Bits diffs(size);
    a_view.bits().for_each_set([&](std::size_t i) { diffs |= a_view.bits().slice(i + 1, size); });
    diffs &= e_view.bits();
    const std::size_t first = diffs.find_first();
    if (first >= size) return std::nullopt;
    const Int e = static_cast<Int>(first) + 1;
    StructureWitness w{WitnessKind::IntersectiveHit, {e}, false, 0, H, {}};
    for (Int a = 1; a + e <= H; ++a)
        if (a_view.test(a) && a_view.test(a + e)) {
            w.support = {a + e, a};
            break;
        }
    w.verified = verify_witness(w, e_view, a_view);
    return w;
}

bool verify_witness(const StructureWitness& w, const PSetView& view) {
    auto in = [&](Int n) { return n >= 1 && n <= view.horizon() && view.test(n); };
    const auto& p = w.payload;
    switch (w.kind) {
        case WitnessKind::DeltaChain: {
            if (p.size() < 2 || p.front() < 1 || !strictly_increasing(p)) return false;
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (!in(p[i] - p[j])) return false;
            return true;
        }
        case WitnessKind::IPGenerator:
        case WitnessKind::IPminusIP: {
            if (p.empty() || p.front() < 1 || !strictly_increasing(p)) return false;
            auto sums = distinct_subset_sums(p);
            if (!sums) return false;
            if (w.kind == WitnessKind::IPGenerator)
                return std::all_of(sums->begin(), sums->end(), in);
            for (std::size_t i = 0; i < sums->size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (!in((*sums)[i] - (*sums)[j])) return false;
            return true;
        }
        case WitnessKind::SyndeticGap: {
            auto g = syndetic_gap(view);
            return p.size() == 1 && g.interior_gap && *g.interior_gap == p[0];
        }
        case WitnessKind::ThickRun: return p.size() == 1 && thick_run(view) == p[0];
        case WitnessKind::IntersectiveHit: return p.size() == 1 && in(p[0]);
    }
    return false;
}

bool verify_witness(const StructureWitness& w, const PSetView& e_view, const PSetView& a_view) {
    if (w.kind != WitnessKind::IntersectiveHit) return verify_witness(w, e_view);
    if (!verify_witness(w, e_view) || w.support.size() != 2) return false;
    auto in_a = [&](Int n) { return n >= 1 && n <= a_view.horizon() && a_view.test(n); };
    return in_a(w.support[0]) && in_a(w.support[1]) && w.support[0] - w.support[1] == w.payload[0];
}

nlohmann::json to_json(const StructureWitness& w) {
    nlohmann::json j;
    j["kind"] = to_string(w.kind);
    switch (w.kind) {
        case WitnessKind::DeltaChain: j["S"] = w.payload; break;
        case WitnessKind::IPGenerator:
        case WitnessKind::IPminusIP: j["A"] = w.payload; break;
        default: j["value"] = w.payload.empty() ? Int{0} : w.payload[0]; break;
    }
    if (!w.support.empty()) j["pair"] = w.support;
    j["verified"] = w.verified;
    j["depth"] = w.depth;
    j["bound"] = w.bound;
    return j;
}

StructureWitness witness_from_json(const nlohmann::json& j) {
    try {
        StructureWitness w;
        w.kind = witness_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("S")) w.payload = j.at("S").get<std::vector<Int>>();
        else if (j.contains("A")) w.payload = j.at("A").get<std::vector<Int>>();
        else w.payload = {j.at("value").get<Int>()};
        if (j.contains("pair")) w.support = j.at("pair").get<std::vector<Int>>();
        w.verified = j.value("verified", false);
        w.depth = j.value("depth", Int{0});
        w.bound = j.value("bound", Int{0});
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("witness json: ") + e.what());
    }
}

nlohmann::json to_json(const SearchResult& r) {
    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["depth"] = r.depth;
    j["bound"] = r.bound;
    j["nodes"] = r.nodes;
    if (r.witness) j["witness"] = to_json(*r.witness);
    if (!r.found()) j["deepest"] = r.deepest;
    return j;
}

}  // namespace spacelab
