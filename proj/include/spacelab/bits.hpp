#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace spacelab {

// Fixed-length bit vector backed by 64-bit words. Bits past size() are kept zero.
class Bits {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Bits() = default;
    explicit Bits(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    const Word* data() const { return words_.data(); }
    Word* data() { return words_.data(); }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    void set_all() {
        std::fill(words_.begin(), words_.end(), ~Word{0});
        trim();
    }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }
    bool any() const { return !none(); }

    // Index of the first set bit at or after `from`, or size() when there is none.
    std::size_t find_next(std::size_t from) const {
        if (from >= size_) return size_;
        std::size_t wi = from / kWordBits;
        Word w = words_[wi] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= words_.size()) return size_;
            w = words_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    // Bits [offset, offset + len) as a new vector; positions beyond size() read as zero.
    Bits slice(std::size_t offset, std::size_t len) const {
        Bits out(len);
        const std::size_t shift = offset % kWordBits;
        const std::size_t base = offset / kWordBits;
        for (std::size_t i = 0; i < out.words_.size(); ++i) {
            Word lo = word_or_zero(base + i);
            Word hi = word_or_zero(base + i + 1);
            out.words_[i] = shift == 0 ? lo : (lo >> shift) | (hi << (kWordBits - shift));
        }
        out.trim();
        return out;
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bits operator~() const {
        Bits out = *this;
        for (Word& w : out.words_) w = ~w;
        out.trim();
        return out;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    // this |= (o << shift), truncated to size().
    void or_shifted_up(const Bits& o, std::size_t shift) {
        const std::size_t ws = shift / kWordBits;
        const std::size_t bs = shift % kWordBits;
        for (std::size_t i = words_.size(); i-- > ws;) {
            const std::size_t src = i - ws;
            Word v = src < o.words_.size() ? o.words_[src] << bs : 0;
            if (bs != 0 && src >= 1 && src - 1 < o.words_.size()) v |= o.words_[src - 1] >> (kWordBits - bs);
            words_[i] |= v;
        }
        trim();
    }

    bool is_subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w != 0) {
                f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const Bits& a, const Bits& b) { return a.size_ == b.size_ && a.words_ == b.words_; }

private:
    Word word_or_zero(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }
    void trim() {
        if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

}  // namespace spacelab
