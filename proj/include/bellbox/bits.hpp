#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace bellbox {

// Soft default for the party count; generators take an override. Costs of the
// rank and LP certifications grow as 8^n, so the default keeps runs at desk
// scale.
inline constexpr int kDefaultPartyLimit = 5;
// Hard cap: event indices (s,a) are packed into 2n bits of a uint32_t.
inline constexpr int kHardPartyCap = 12;

// An n-component vector over {0,1}. Component k (observers are 1-indexed)
// lives at bit k-1. The same type serves as a setting vector, an outcome
// vector, and a subset of observers via its support. Text form prints
// observer 1 leftmost.
class BinaryVector {
public:
    BinaryVector(int n, std::uint32_t bits) : n_(n), bits_(bits) {
        if (n < 1 || n > kHardPartyCap)
            throw OutOfRangeError("party count " + std::to_string(n) + " outside [1, " +
                                  std::to_string(kHardPartyCap) + "]");
        if (bits_ >> n_)
            throw DimensionError("bit pattern wider than " + std::to_string(n) + " components");
    }

    static BinaryVector zero(int n) { return {n, 0}; }
    static BinaryVector ones(int n) { return {n, (std::uint32_t{1} << n) - 1}; }
    // Indicator vector of observer k.
    static BinaryVector unit(int n, int k) {
        BinaryVector v = zero(n);
        v.require_party(k);
        v.bits_ = std::uint32_t{1} << (k - 1);
        return v;
    }

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] std::uint32_t bits() const { return bits_; }
    [[nodiscard]] bool component(int k) const {
        require_party(k);
        return (bits_ >> (k - 1)) & 1u;
    }
    [[nodiscard]] int weight() const { return std::popcount(bits_); }
    [[nodiscard]] bool is_zero() const { return bits_ == 0; }

    [[nodiscard]] bool subset_of(const BinaryVector& c) const {
        require_same_n(c);
        return (bits_ & ~c.bits_) == 0;
    }

    [[nodiscard]] BinaryVector with_component(int k, bool value) const {
        require_party(k);
        BinaryVector v = *this;
        const std::uint32_t mask = std::uint32_t{1} << (k - 1);
        v.bits_ = value ? (v.bits_ | mask) : (v.bits_ & ~mask);
        return v;
    }

    friend BinaryVector operator&(const BinaryVector& a, const BinaryVector& b) {
        a.require_same_n(b);
        return {a.n_, a.bits_ & b.bits_};
    }
    friend BinaryVector operator^(const BinaryVector& a, const BinaryVector& b) {
        a.require_same_n(b);
        return {a.n_, a.bits_ ^ b.bits_};
    }
    [[nodiscard]] BinaryVector complement() const {
        return {n_, ~bits_ & ((std::uint32_t{1} << n_) - 1)};
    }

    friend bool operator==(const BinaryVector& a, const BinaryVector& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int k = 1; k <= n_; ++k)
            if ((bits_ >> (k - 1)) & 1u) s[static_cast<std::size_t>(k - 1)] = '1';
        return s;
    }

    static BinaryVector parse(std::string_view text) {
        if (text.empty() || text.size() > kHardPartyCap)
            throw ParseError("bad bitstring '" + std::string(text) + "'");
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1')
                bits |= std::uint32_t{1} << i;
            else if (text[i] != '0')
                throw ParseError("bad bitstring '" + std::string(text) + "'");
        }
        return {static_cast<int>(text.size()), bits};
    }

    void require_same_n(const BinaryVector& other) const {
        if (n_ != other.n_)
            throw DimensionError("binary vectors of unequal length: " + std::to_string(n_) +
                                 " vs " + std::to_string(other.n_));
    }

private:
    void require_party(int k) const {
        if (k < 1 || k > n_)
            throw OutOfRangeError("observer index " + std::to_string(k) + " outside [1, " +
                                  std::to_string(n_) + "]");
    }

    int n_;
    std::uint32_t bits_;
};

// Componentwise product a ∧ b.
inline BinaryVector wedge(const BinaryVector& a, const BinaryVector& b) { return a & b; }

// Σ_k a_k b_k mod 2.
inline int dot_parity(const BinaryVector& a, const BinaryVector& b) {
    a.require_same_n(b);
    return std::popcount(a.bits() & b.bits()) & 1;
}

// (-1)^{a·b} as a plain int.
inline int parity_sign(std::uint32_t a, std::uint32_t b) {
    return (std::popcount(a & b) & 1) ? -1 : 1;
}

// Order of the printed bitstring (observer 1 compared first). This is the
// order every serialized document and enumeration uses.
inline bool lex_less(const BinaryVector& a, const BinaryVector& b) {
    a.require_same_n(b);
    for (int k = 1; k <= a.size(); ++k) {
        const bool x = (a.bits() >> (k - 1)) & 1u;
        const bool y = (b.bits() >> (k - 1)) & 1u;
        if (x != y) return y;
    }
    return false;
}

// All 2^n vectors in printed-lex order.
inline std::vector<BinaryVector> all_vectors_lex(int n) {
    std::vector<BinaryVector> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) out.emplace_back(n, m);
    std::sort(out.begin(), out.end(),
              [](const BinaryVector& a, const BinaryVector& b) { return lex_less(a, b); });
    return out;
}

// Inserts `value` at bit position `pos` (0-based), shifting higher bits left.
inline std::uint32_t insert_bit(std::uint32_t mask, int pos, bool value) {
    const std::uint32_t low = mask & ((std::uint32_t{1} << pos) - 1);
    const std::uint32_t high = mask >> pos;
    return low | (std::uint32_t{value} << pos) | (high << (pos + 1));
}

// Packs the bits of `sub` that lie inside `mask` into a contiguous low word
// (ranks a submask among the submasks of `mask`).
inline std::uint32_t pack_into_mask(std::uint32_t sub, std::uint32_t mask) {
    std::uint32_t out = 0;
    int shift = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) {
        const std::uint32_t low = m & ~(m - 1);
        if (sub & low) out |= std::uint32_t{1} << shift;
        ++shift;
    }
    return out;
}

}  // namespace bellbox
