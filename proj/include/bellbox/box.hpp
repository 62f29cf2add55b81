#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bits.hpp"
#include "rational.hpp"

namespace bellbox {

// A behavior in the (n,2,2) scenario: the dense table of 4^n conditional
// probabilities P(a|s) over joint settings s and joint outcomes a. Stored as
// exact rationals; validity (non-negativity, per-setting normalization) is a
// property checked on demand so that intermediate tables, e.g. the inverse
// correlation chart of an unphysical table, can be represented and flagged
// by the caller.
class Box {
public:
    explicit Box(int n) : n_(check_n(n)), entries_(std::size_t{1} << (2 * n)) {}

    static Box uniform(int n) {
        Box box(n);
        const Rational p = rat(1, long{1} << n);
        for (auto& e : box.entries_) e = p;
        return box;
    }

    [[nodiscard]] int parties() const { return n_; }
    [[nodiscard]] std::size_t events() const { return entries_.size(); }

    [[nodiscard]] const Rational& at(const BinaryVector& s, const BinaryVector& a) const {
        return entries_[index(s, a)];
    }
    Rational& at(const BinaryVector& s, const BinaryVector& a) { return entries_[index(s, a)]; }

    // Raw views keyed by (setting << n) | outcome; loops on masks use these.
    [[nodiscard]] const Rational& at_raw(std::uint32_t setting, std::uint32_t outcome) const {
        return entries_[(std::size_t{setting} << n_) | outcome];
    }
    Rational& at_raw(std::uint32_t setting, std::uint32_t outcome) {
        return entries_[(std::size_t{setting} << n_) | outcome];
    }
    [[nodiscard]] std::span<const Rational> flat() const { return entries_; }

    [[nodiscard]] bool is_nonnegative() const {
        for (const auto& e : entries_)
            if (sign(e) < 0) return false;
        return true;
    }

    [[nodiscard]] bool is_normalized() const {
        for (std::uint32_t s = 0; s < (std::uint32_t{1} << n_); ++s) {
            Rational sum = 0;
            for (std::uint32_t a = 0; a < (std::uint32_t{1} << n_); ++a) sum += at_raw(s, a);
            if (sum != 1) return false;
        }
        return true;
    }

    void require_normalized() const {
        if (!is_normalized()) throw InvalidBoxError("box rows do not each sum to 1");
    }

    void require_same_n(const Box& other) const {
        if (n_ != other.n_)
            throw DimensionError("boxes over different party counts: " + std::to_string(n_) +
                                 " vs " + std::to_string(other.n_));
    }

    friend bool operator==(const Box& a, const Box& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    static int check_n(int n) {
        if (n < 1 || n > kHardPartyCap)
            throw OutOfRangeError("party count " + std::to_string(n) + " outside [1, " +
                                  std::to_string(kHardPartyCap) + "]");
        return n;
    }
    [[nodiscard]] std::size_t index(const BinaryVector& s, const BinaryVector& a) const {
        if (s.size() != n_ || a.size() != n_)
            throw DimensionError("event vectors do not match box party count");
        return (std::size_t{s.bits()} << n_) | a.bits();
    }

    int n_;
    std::vector<Rational> entries_;
};

// Storage shared by the two 3^n-entry coordinate charts: one rational per
// pair (c, s) with s ⊆ c, packed blockwise by c. CorrelationTable (box
// coordinates) and CorrelationFunctional (inequality coefficients) are
// strong aliases over this grid.
class CorrelationGrid {
public:
    explicit CorrelationGrid(int n) : n_(n), offsets_(std::size_t{1} << n) {
        std::size_t total = 0;
        for (std::uint32_t c = 0; c < (std::uint32_t{1} << n); ++c) {
            offsets_[c] = total;
            total += std::size_t{1} << std::popcount(c);
        }
        entries_.resize(total);
    }

    [[nodiscard]] int parties() const { return n_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

    [[nodiscard]] const Rational& at(const BinaryVector& c, const BinaryVector& s) const {
        return entries_[index(c, s)];
    }
    Rational& at(const BinaryVector& c, const BinaryVector& s) { return entries_[index(c, s)]; }

    [[nodiscard]] const Rational& at_raw(std::uint32_t c, std::uint32_t s) const {
        return entries_[offsets_[c] + pack_into_mask(s, c)];
    }
    Rational& at_raw(std::uint32_t c, std::uint32_t s) {
        return entries_[offsets_[c] + pack_into_mask(s, c)];
    }

    friend bool operator==(const CorrelationGrid& a, const CorrelationGrid& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    [[nodiscard]] std::size_t index(const BinaryVector& c, const BinaryVector& s) const {
        if (c.size() != n_ || s.size() != n_)
            throw DimensionError("chart keys do not match party count");
        if (!s.subset_of(c))
            throw DimensionError("chart key s=" + s.to_string() + " is not a subset of c=" +
                                 c.to_string());
        return offsets_[c.bits()] + pack_into_mask(s.bits(), c.bits());
    }

    int n_;
    std::vector<std::size_t> offsets_;
    std::vector<Rational> entries_;
};

// The 3^n correlation coordinates A^c_s = Σ_a (-1)^{a·c} P(a|s), s ⊆ c, that
// chart a non-signaling box. A^0_0 = 1 expresses normalization.
class CorrelationTable : public CorrelationGrid {
public:
    using CorrelationGrid::CorrelationGrid;
};

CorrelationTable correlations_of_box(const Box& box);
Box box_from_correlations(const CorrelationTable& table);

// In-place unnormalized Walsh transform: f(x) <- Σ_y (-1)^{x·y} f(y).
// Self-inverse up to the factor 2^n.
inline void walsh_transform(std::span<Rational> values) {
    for (std::size_t h = 1; h < values.size(); h <<= 1) {
        for (std::size_t i = 0; i < values.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                Rational u = values[j];
                Rational v = values[j + h];
                values[j] = u + v;
                values[j + h] = u - v;
            }
        }
    }
}

inline CorrelationTable correlations_of_box(const Box& box) {
    const int n = box.parties();
    CorrelationTable table(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t c = 0; c <= full; ++c) {
        // Walk s over the submasks of c.
        std::uint32_t s = 0;
        while (true) {
            Rational sum = 0;
            for (std::uint32_t a = 0; a <= full; ++a) {
                if (parity_sign(a, c) > 0)
                    sum += box.at_raw(s, a);
                else
                    sum -= box.at_raw(s, a);
            }
            table.at_raw(c, s) = sum;
            if (s == c) break;
            s = (s - c) & c;
        }
    }
    return table;
}

// Inverse chart. Settings outside c are completed non-signaling-style via
// A^c_s := A^c_{s∧c}; if the table is not the chart of a physical box the
// result can carry negative entries, which the caller must check.
inline Box box_from_correlations(const CorrelationTable& table) {
    const int n = table.parties();
    if (table.at(BinaryVector::zero(n), BinaryVector::zero(n)) != 1)
        throw InvalidBoxError("correlation chart is not normalized: A^0_0 != 1");
    Box box(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const Rational scale = rat(1, long{1} << n);
    std::vector<Rational> row(std::size_t{1} << n);
    for (std::uint32_t s = 0; s <= full; ++s) {
        for (std::uint32_t c = 0; c <= full; ++c) row[c] = table.at_raw(c, s & c);
        walsh_transform(row);
        for (std::uint32_t a = 0; a <= full; ++a) box.at_raw(s, a) = row[a] * scale;
    }
    return box;
}

// Probability that observer k alone, measuring with setting s_k, sees
// `outcome`, with every other observer's setting fixed to 0. In strict mode
// the sum is recomputed under every completion of the other settings and a
// mismatch raises SignalingError; on a non-signaling box all completions
// agree.
inline Rational marginal(const Box& box, int party, int setting, int outcome,
                         bool strict = false) {
    const int n = box.parties();
    if (party < 1 || party > n)
        throw OutOfRangeError("observer index " + std::to_string(party) + " outside [1, " +
                              std::to_string(n) + "]");
    box.require_normalized();

    const int pos = party - 1;
    auto sum_for = [&](std::uint32_t others_setting) {
        const std::uint32_t s = insert_bit(others_setting, pos, setting != 0);
        Rational sum = 0;
        for (std::uint32_t rest = 0; rest < (std::uint32_t{1} << (n - 1)); ++rest) {
            const std::uint32_t a = insert_bit(rest, pos, outcome != 0);
            sum += box.at_raw(s, a);
        }
        return sum;
    };

    const Rational value = sum_for(0);
    if (strict) {
        for (std::uint32_t u = 1; u < (std::uint32_t{1} << (n - 1)); ++u) {
            if (sum_for(u) != value)
                throw SignalingError("marginal of observer " + std::to_string(party) +
                                     " depends on the other observers' settings");
        }
    }
    return value;
}

}  // namespace bellbox
