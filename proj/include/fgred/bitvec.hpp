#pragma once

#include <cstdint>
#include <cstddef>
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgred {

// Packed bit vector. Bit i lives in words[i/64] at position i%64 (LSB first).
// Trailing bits of the last word are kept zero so popcount-based ops need no masking.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static BitVec from_string(const std::string& s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') v.set(i, true);
            else if (s[i] != '0') throw std::invalid_argument("BitVec: expected '0'/'1', got '" + std::string(1, s[i]) + "'");
        }
        return v;
    }

    std::size_t size() const { return nbits_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool b) {
        if (b) words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else   words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    // Appends the low `nbits` of another vector-free source: single bit.
    void push_back(bool b) {
        if ((nbits_ & 63) == 0) words_.push_back(0);
        if (b) words_.back() |= (std::uint64_t{1} << (nbits_ & 63));
        ++nbits_;
    }

    void append(const BitVec& other) {
        for (std::size_t i = 0; i < other.nbits_; ++i) push_back(other.get(i));
    }

    // Appends `count` copies of the same bit.
    void append_run(bool b, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) push_back(b);
    }

    std::uint64_t count_ones() const {
        std::uint64_t c = 0;
        for (auto w : words_) c += std::uint64_t(std::popcount(w));
        return c;
    }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i) if (get(i)) s[i] = '1';
        return s;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // <a,b> over {0,1}: popcount of the AND.
    friend std::uint64_t inner_product(const BitVec& a, const BitVec& b) {
        if (a.nbits_ != b.nbits_) throw std::invalid_argument("inner_product: dimension mismatch");
        std::uint64_t c = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            c += std::uint64_t(std::popcount(a.words_[k] & b.words_[k]));
        return c;
    }

    friend std::uint64_t hamming_distance(const BitVec& a, const BitVec& b) {
        if (a.nbits_ != b.nbits_) throw std::invalid_argument("hamming_distance: dimension mismatch");
        std::uint64_t c = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            c += std::uint64_t(std::popcount(a.words_[k] ^ b.words_[k]));
        return c;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace fgred
