#include <doctest.h>

#include <random>

#include "spacelab/bits.hpp"

using spacelab::Bits;

namespace {

Bits from(const std::vector<bool>& v) {
    Bits b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b.assign(i, v[i]);
    return b;
}

std::vector<bool> to_vec(const Bits& b) {
    std::vector<bool> v(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) v[i] = b.test(i);
    return v;
}

std::vector<bool> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng() & 1U;
    return v;
}

}  // namespace

TEST_CASE("bit operations agree with vector<bool>") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 63u, 64u, 65u, 130u, 257u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_vec(rng, n);
            const auto b = random_vec(rng, n);
            const Bits ba = from(a);
            const Bits bb = from(b);

            std::vector<bool> band(n), bor(n), bnot(n);
            std::size_t pop = 0;
            bool subset = true;
            for (std::size_t i = 0; i < n; ++i) {
                band[i] = a[i] && b[i];
                bor[i] = a[i] || b[i];
                bnot[i] = !a[i];
                pop += a[i];
                subset = subset && (!a[i] || b[i]);
            }
            CHECK(to_vec(ba & bb) == band);
            CHECK(to_vec(ba | bb) == bor);
            CHECK(to_vec(~ba) == bnot);
            CHECK(ba.count() == pop);
            CHECK((~ba).count() == n - pop);
            CHECK(ba.is_subset_of(bb) == subset);
            CHECK((ba & bb).is_subset_of(bb));

            std::size_t first = n;
            for (std::size_t i = 0; i < n; ++i)
                if (a[i]) {
                    first = i;
                    break;
                }
            CHECK(ba.find_first() == first);

            std::vector<std::size_t> seen;
            ba.for_each_set([&](std::size_t i) { seen.push_back(i); });
            CHECK(seen.size() == pop);
            for (std::size_t i : seen) CHECK(a[i]);

            const std::size_t shift = rng() % (n + 3);
            Bits up(n);
            up.or_shifted_up(ba, shift);
            for (std::size_t i = 0; i < n; ++i) CHECK(up.test(i) == (i >= shift && a[i - shift]));

            const std::size_t off = rng() % n;
            const std::size_t len = 1 + rng() % n;
            const Bits s = ba.slice(off, len);
            for (std::size_t i = 0; i < len; ++i) CHECK(s.test(i) == (off + i < n && a[off + i]));
        }
    }
}

TEST_CASE("set_all keeps the tail clear") {
    Bits b(70);
    b.set_all();
    CHECK(b.count() == 70);
    b.clear();
    CHECK(b.none());
    b.set(69);
    CHECK(b.find_next(0) == 69);
    CHECK(b.find_next(70) == 70);
}
