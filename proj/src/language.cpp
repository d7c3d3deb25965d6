#include "spacelab/language.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

namespace spacelab {

namespace {

__extension__ using U128 = unsigned __int128;

// Vertices 0..n-1, upper[i] = {j > i : j - i in P}, full[i] = upper[i] plus the symmetric lower part.
struct DistanceGraph {
    std::size_t n;
    std::vector<Bits> upper;
    std::vector<Bits> full;

    DistanceGraph(const PSetView& view, Int len) : n(static_cast<std::size_t>(len)) {
        if (len < 0) throw ValidationError("word length must be >= 0");
        if (len - 1 > view.horizon())
            throw OutOfRangeError("word length " + std::to_string(len) + " needs differences beyond horizon " +
                                  std::to_string(view.horizon()));
        const Bits p = view.bits().slice(0, n);  // index d-1 <-> distance d
        upper.assign(n, Bits(n));
        full.assign(n, Bits(n));
        for (std::size_t i = 0; i < n; ++i) upper[i].or_shifted_up(p, i + 1);
        for (std::size_t i = 0; i < n; ++i) {
            full[i] |= upper[i];
            upper[i].for_each_set([&](std::size_t j) { full[j].set(i); });
        }
    }
};

class SharedBudget {
public:
    explicit SharedBudget(std::uint64_t limit) : limit_(limit) {}
    bool tick() {
        if (used_.fetch_add(1, std::memory_order_relaxed) >= limit_) {
            exhausted_.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
    bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
    std::uint64_t used() const { return std::min(used_.load(), limit_); }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
    std::atomic<bool> exhausted_{false};
};

// Clique counting: count(allowed) = 1 + sum over v in allowed of count(allowed & upper[v]),
// short-circuited to 2^|allowed| when allowed is itself a clique.
template <class Acc>
class CliqueCounter {
public:
    // Recursion depth never exceeds n, so the scratch rows are never reallocated mid-search.
    CliqueCounter(const DistanceGraph& g, SharedBudget& budget)
        : g_(g), budget_(budget), scratch_(g.n + 1, Bits(g.n)) {}

    // Count of cliques (incl. empty) inside `allowed`; nullopt on budget exhaustion.
    std::optional<Acc> count(const Bits& allowed, std::size_t depth = 0) {
        if (!budget_.tick()) return std::nullopt;
        const std::size_t k = allowed.count();
        if (k == 0) return Acc{1};
        if (is_clique(allowed)) return pow2(k);
        Acc total{1};
        for (std::size_t v = allowed.find_first(); v < g_.n; v = allowed.find_next(v + 1)) {
            Bits& next = scratch_[depth];
            next = allowed;
            next &= g_.upper[v];
            auto sub = count(next, depth + 1);
            if (!sub) return std::nullopt;
            total += *sub;
        }
        return total;
    }

    // Same, restricted to cliques whose least vertex is v.
    std::optional<Acc> count_rooted(std::size_t v, const Bits& allowed) {
        Bits next = allowed;
        next &= g_.upper[v];
        return count(next, 0);
    }

private:
    static Acc pow2(std::size_t k) {
        Acc one{1};
        return one << k;
    }

    bool is_clique(const Bits& allowed) const {
        for (std::size_t v = allowed.find_first(); v < g_.n; v = allowed.find_next(v + 1)) {
            // every later member of allowed must be adjacent to v
            const std::size_t wv = v / Bits::kWordBits;
            const Bits::Word* a = allowed.data();
            const Bits::Word* r = g_.upper[v].data();
            const Bits::Word above = (v % Bits::kWordBits == Bits::kWordBits - 1)
                                         ? 0
                                         : (~Bits::Word{0} << (v % Bits::kWordBits + 1));
            if ((a[wv] & above) & ~r[wv]) return false;
            for (std::size_t w = wv + 1; w < allowed.word_count(); ++w)
                if (a[w] & ~r[w]) return false;
        }
        return true;
    }

    const DistanceGraph& g_;
    SharedBudget& budget_;
    std::vector<Bits> scratch_;
};

template <class Acc>
std::optional<BigInt> count_cliques(const DistanceGraph& g, SharedBudget& budget, unsigned workers) {
    Bits all(g.n);
    all.set_all();
    auto to_big = [](const Acc& a) -> BigInt {
        if constexpr (std::is_same_v<Acc, BigInt>) {
            return a;
        } else {
            BigInt out = static_cast<std::uint64_t>(a >> 64);
            out <<= 64;
            out += static_cast<std::uint64_t>(a);
            return out;
        }
    };
    if (workers <= 1 || g.n < 2) {
        CliqueCounter<Acc> counter(g, budget);
        auto c = counter.count(all);
        if (!c) return std::nullopt;
        return to_big(*c);
    }
    if (!budget.tick()) return std::nullopt;
    // Root split: worker w handles least vertices v with v % workers == w. The sum is exact.
    std::vector<std::future<std::optional<Acc>>> parts;
    for (unsigned w = 0; w < workers; ++w) {
        parts.push_back(std::async(std::launch::async, [&, w]() -> std::optional<Acc> {
            CliqueCounter<Acc> counter(g, budget);
            Acc sum{0};
            for (std::size_t v = w; v < g.n; v += workers) {
                auto c = counter.count_rooted(v, all);
                if (!c) return std::nullopt;
                sum += *c;
            }
            return sum;
        }));
    }
    BigInt total = 1;
    bool ok = true;
    for (auto& f : parts) {
        auto c = f.get();
        if (!c) ok = false;
        else total += to_big(*c);
    }
    if (!ok) return std::nullopt;
    return total;
}

// Independent oracle: every 2^n word, checked by the distance table of the view.
BigInt count_naive(const PSetView& view, Int n) {
    // bad bit d set iff d is not an allowed distance (d >= 1).
    std::uint32_t bad = 0;
    for (Int d = 1; d < n; ++d)
        if (!view.member(d)) bad |= std::uint32_t{1} << d;
    std::uint64_t total = 0;
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        bool ok = true;
        for (std::uint32_t rest = mask; rest != 0 && ok; rest &= rest - 1) {
            const int i = std::countr_zero(rest);
            if ((mask >> i) & bad) ok = false;
        }
        total += ok;
    }
    return BigInt(total);
}

class MaxCliqueSearch {
public:
    MaxCliqueSearch(const DistanceGraph& g, SharedBudget& budget) : g_(g), budget_(budget) {}

    bool run() {
        Bits all(g_.n);
        all.set_all();
        search(all);
        return !budget_.exhausted();
    }
    const std::vector<Int>& best() const { return best_; }

private:
    std::size_t color_bound(const Bits& allowed) const {
        Bits uncolored = allowed;
        std::size_t colors = 0;
        while (uncolored.any()) {
            ++colors;
            Bits q = uncolored;
            for (std::size_t v = q.find_first(); v < g_.n; v = q.find_next(v + 1)) {
                uncolored.reset(v);
                q = q & ~g_.full[v];
            }
        }
        return colors;
    }

    void search(const Bits& allowed) {
        if (!budget_.tick()) return;
        if (cur_.size() > best_.size() || (best_.empty() && cur_.empty())) best_ = cur_;
        const std::size_t k = allowed.count();
        if (k == 0 || cur_.size() + k <= best_.size()) return;
        if (cur_.size() + color_bound(allowed) <= best_.size()) return;
        std::size_t left = k;
        for (std::size_t v = allowed.find_first(); v < g_.n; v = allowed.find_next(v + 1), --left) {
            if (cur_.size() + left <= best_.size()) return;
            Bits next = allowed & g_.upper[v];
            cur_.push_back(static_cast<Int>(v));
            search(next);
            cur_.pop_back();
            if (budget_.exhausted()) return;
        }
    }

    const DistanceGraph& g_;
    SharedBudget& budget_;
    std::vector<Int> cur_;
    std::vector<Int> best_;
};

}  // namespace

Configuration Configuration::from_word(const std::string& word) {
    Configuration c;
    c.length = static_cast<Int>(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == '1') c.ones.push_back(static_cast<Int>(i));
        else if (word[i] != '0') throw ValidationError("word must contain only 0 and 1: \"" + word + "\"");
    }
    return c;
}

std::string Configuration::to_word() const {
    std::string s(static_cast<std::size_t>(length), '0');
    for (Int i : ones) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

void Configuration::validate() const {
    if (length < 0) throw ValidationError("configuration length must be >= 0");
    for (std::size_t i = 0; i < ones.size(); ++i) {
        if (ones[i] < 0 || ones[i] >= length) throw ValidationError("configuration position outside [0, length)");
        if (i > 0 && ones[i] <= ones[i - 1]) throw ValidationError("configuration positions must be strictly increasing");
    }
}

bool is_admissible(const Configuration& config, const PSetView& view) {
    config.validate();
    bool ok = true;
    for (std::size_t i = 0; i < config.ones.size(); ++i)
        for (std::size_t j = i + 1; j < config.ones.size(); ++j) {
            const Int d = config.ones[j] - config.ones[i];
            if (d > view.horizon())
                throw OutOfRangeError("difference " + std::to_string(d) + " exceeds horizon " +
                                      std::to_string(view.horizon()));
            ok = ok && view.test(d);
        }
    return ok;
}

CountResult count_words(const PSetView& view, Int n, CountMode mode, std::uint64_t budget, unsigned workers) {
    if (n < 0) throw ValidationError("count_words: n must be >= 0");
    if (n > view.horizon()) throw OutOfRangeError("count_words: n exceeds horizon");
    CountResult r;
    if (mode == CountMode::Naive) {
        if (n > kNaiveMaxLength) throw ValidationError("count_words: naive mode needs n <= 24");
        r.count = count_naive(view, n);
        r.nodes = std::uint64_t{1} << n;
        return r;
    }
    DistanceGraph g(view, n);
    SharedBudget b(budget);
    // Counts are at most 2^n, so n <= 126 fits a 128-bit accumulator.
    r.count = n <= 126 ? count_cliques<U128>(g, b, workers) : count_cliques<BigInt>(g, b, workers);
    r.nodes = b.used();
    if (b.exhausted()) r.count.reset();
    return r;
}

MaxOnesResult max_ones(const PSetView& view, Int n, std::uint64_t budget) {
    if (n < 0) throw ValidationError("max_ones: n must be >= 0");
    if (n > view.horizon()) throw OutOfRangeError("max_ones: n exceeds horizon");
    DistanceGraph g(view, n);
    SharedBudget b(budget);
    MaxCliqueSearch search(g, b);
    MaxOnesResult r;
    const bool done = search.run();
    r.nodes = b.used();
    if (done) {
        r.omega = static_cast<Int>(search.best().size());
        r.witness = Configuration{n, search.best()};
    }
    return r;
}

const LanguageRecord& LanguageProfile::at(Int n) const {
    for (const auto& r : records)
        if (r.n == n) return r;
    throw OutOfRangeError("language profile has no record for n=" + std::to_string(n));
}

LanguageProfile entropy_profile(const PSetView& view, const std::vector<Int>& n_grid, std::uint64_t budget) {
    LanguageProfile p;
    for (Int n : n_grid) {
        if (n < 1) throw ValidationError("entropy_profile: grid values must be >= 1");
        auto c = count_words(view, n, CountMode::Optimized, budget);
        if (!c.count) throw BudgetExhausted("count_words budget exhausted at n=" + std::to_string(n));
        auto m = max_ones(view, n, budget);
        if (!m.omega) throw BudgetExhausted("max_ones budget exhausted at n=" + std::to_string(n));
        LanguageRecord rec;
        rec.n = n;
        rec.count = *c.count;
        rec.h = log2_big(rec.count) / static_cast<double>(n);
        rec.omega = *m.omega;
        rec.omega_over_n = Rational(*m.omega, n);
        p.records.push_back(std::move(rec));
    }
    return p;
}

double log2_big(const BigInt& x) {
    if (x <= 0) throw ValidationError("log2 of a non-positive integer");
    const auto top = static_cast<long>(boost::multiprecision::msb(x));
    if (top < 53) return std::log2(x.convert_to<double>());
    const long shift = top - 52;
    const BigInt head = x >> shift;
    return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_csv(const LanguageProfile& profile) {
    std::ostringstream os;
    os << "n,c_n,h_n,omega_n,omega_over_n\n";
    char buf[64];
    for (const auto& r : profile.records) {
        std::snprintf(buf, sizeof buf, "%.17g", r.h);
        os << r.n << ',' << to_string(r.count) << ',' << buf << ',' << r.omega << ',' << to_string(r.omega_over_n)
           << '\n';
    }
    return os.str();
}

Configuration greedy_point(const PSetView& view, Int horizon) {
    if (horizon < 0) throw ValidationError("greedy_point: horizon must be >= 0");
    if (horizon > view.horizon()) throw OutOfRangeError("greedy_point: horizon exceeds view horizon");
    Configuration c{horizon, {}};
    for (Int pos = 0; pos < horizon; ++pos) {
        const bool fits = std::all_of(c.ones.begin(), c.ones.end(), [&](Int q) { return view.test(pos - q); });
        if (fits) c.ones.push_back(pos);
    }
    return c;
}

bool joinable_with_gap(const Configuration& u, const Configuration& v, Int gap, const PSetView& view) {
    for (Int i : u.ones)
        for (Int j : v.ones) {
            const Int d = u.length + gap + j - i;
            if (d > view.horizon()) throw OutOfRangeError("join distance exceeds horizon");
            if (!view.test(d)) return false;
        }
    return true;
}

TransitiveReport transitive_gap_check(const PSetView& view, Int word_len_cap, Int gap_cap) {
    if (word_len_cap < 1 || word_len_cap > kTransitiveMaxWordLength)
        throw ValidationError("transitive_gap_check: word length cap must lie in [1..16]");
    if (gap_cap < 0) throw ValidationError("transitive_gap_check: gap cap must be >= 0");
    if (2 * word_len_cap + gap_cap > view.horizon())
        throw ValidationError("transitive_gap_check: 2L + G exceeds horizon");

    // All admissible words, ordered by length and then lexicographically as strings.
    std::vector<Configuration> words;
    for (Int len = 1; len <= word_len_cap; ++len) {
        const std::uint32_t limit = std::uint32_t{1} << len;
        for (std::uint32_t code = 0; code < limit; ++code) {
            Configuration c{len, {}};
            for (Int i = 0; i < len; ++i)
                if ((code >> (len - 1 - i)) & 1U) c.ones.push_back(i);
            if (is_admissible(c, view)) words.push_back(std::move(c));
        }
    }

    // window[d] has bit g set iff d + g is in P, for g in [0, G].
    const auto gaps = static_cast<std::size_t>(gap_cap + 1);
    std::vector<Bits> window(static_cast<std::size_t>(2 * word_len_cap));
    for (std::size_t d = 1; d < window.size(); ++d) window[d] = view.bits().slice(d - 1, gaps);

    TransitiveReport r;
    r.word_len_cap = word_len_cap;
    r.gap_cap = gap_cap;
    Bits ok(gaps);
    for (const auto& u : words)
        for (const auto& v : words) {
            ++r.total;
            ok.set_all();
            for (Int i : u.ones)
                for (Int j : v.ones) ok &= window[static_cast<std::size_t>(u.length + j - i)];
            if (ok.any()) ++r.joinable;
            else if (!r.least_failing) r.least_failing = std::make_pair(u, v);
        }
    return r;
}

}  // namespace spacelab
