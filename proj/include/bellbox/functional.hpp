#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "box.hpp"

namespace bellbox {

// 2^k for possibly negative k, as an exact rational.
inline Rational pow2(int k) {
    return k >= 0 ? Rational(long{1} << k) : rat(1, long{1} << (-k));
}

// A Bell functional: one coefficient B(a,s) per event, so that a box P is
// scored as Σ_{s,a} B(a,s) P(a|s). No sign or normalization constraint is
// imposed; being an inequality (>= 0 on every deterministic strategy) and
// being in standard form are properties checked on demand.
class BellFunctional {
public:
    explicit BellFunctional(int n) : n_(check_n(n)), coeffs_(std::size_t{1} << (2 * n)) {}

    [[nodiscard]] int parties() const { return n_; }
    [[nodiscard]] std::size_t events() const { return coeffs_.size(); }

    [[nodiscard]] const Rational& at(const BinaryVector& s, const BinaryVector& a) const {
        return coeffs_[index(s, a)];
    }
    Rational& at(const BinaryVector& s, const BinaryVector& a) { return coeffs_[index(s, a)]; }

    [[nodiscard]] const Rational& at_raw(std::uint32_t setting, std::uint32_t outcome) const {
        return coeffs_[(std::size_t{setting} << n_) | outcome];
    }
    Rational& at_raw(std::uint32_t setting, std::uint32_t outcome) {
        return coeffs_[(std::size_t{setting} << n_) | outcome];
    }

    void require_same_n(const Box& box) const {
        if (n_ != box.parties())
            throw DimensionError("functional over " + std::to_string(n_) +
                                 " parties applied to a box over " +
                                 std::to_string(box.parties()));
    }

    friend bool operator==(const BellFunctional& a, const BellFunctional& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
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
            throw DimensionError("event vectors do not match functional party count");
        return (std::size_t{s.bits()} << n_) | a.bits();
    }

    int n_;
    std::vector<Rational> coeffs_;
};

// Correlation-side coefficients B^c_s (s ⊆ c) of a functional, normalized so
// that Σ_{c} Σ_{s⊆c} B^c_s A^c_s reproduces the functional's value on every
// non-signaling box.
class CorrelationFunctional : public CorrelationGrid {
public:
    using CorrelationGrid::CorrelationGrid;
};

inline Rational evaluate(const BellFunctional& f, const Box& box) {
    f.require_same_n(box);
    Rational sum = 0;
    const std::uint32_t full = (std::uint32_t{1} << f.parties()) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        for (std::uint32_t a = 0; a <= full; ++a) {
            if (sign(f.at_raw(s, a)) != 0) sum += f.at_raw(s, a) * box.at_raw(s, a);
        }
    return sum;
}

// Sum of all coefficients: the pairing of the functional with the all-ones
// box-space vector. Positive for every nonzero Bell inequality, and equal to
// 2^-n times the sum of the functional's values over all deterministic
// strategies.
inline Rational theta_value(const BellFunctional& f) {
    Rational sum = 0;
    const std::uint32_t full = (std::uint32_t{1} << f.parties()) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        for (std::uint32_t a = 0; a <= full; ++a) sum += f.at_raw(s, a);
    return sum;
}

// Value of the functional on the deterministic strategy that answers a_k
// under setting 0 and b_k under setting 1: Σ_s B(a ⊕ (s ∧ (a⊕b)), s).
inline Rational vertex_value(const BellFunctional& f, const BinaryVector& a,
                             const BinaryVector& b) {
    a.require_same_n(b);
    if (a.size() != f.parties())
        throw DimensionError("strategy vectors do not match functional party count");
    const std::uint32_t diff = a.bits() ^ b.bits();
    const std::uint32_t full = (std::uint32_t{1} << f.parties()) - 1;
    Rational sum = 0;
    for (std::uint32_t s = 0; s <= full; ++s) sum += f.at_raw(s, a.bits() ^ (s & diff));
    return sum;
}

// First deterministic strategy (in printed-lex order) on which the
// functional is negative, if any. A functional is a Bell inequality iff this
// returns nothing.
inline std::optional<std::pair<BinaryVector, BinaryVector>> find_negative_vertex(
    const BellFunctional& f) {
    const int n = f.parties();
    for (const BinaryVector& a : all_vectors_lex(n))
        for (const BinaryVector& b : all_vectors_lex(n))
            if (sign(vertex_value(f, a, b)) < 0) return std::make_pair(a, b);
    return std::nullopt;
}

// Correlation coefficients with the non-signaling reduction baked in:
//
//   B^c_s = 2^-n Σ_{t : t∧c = s} Σ_a (-1)^{a·c} B(a,t)      (s ⊆ c)
//
// For a standard-form functional the inner fold is constant in the summed
// components and this reduces to the plain parity transform 2^-|c| Σ_a
// (-1)^{a·c} B(a,s); for a raw functional the fold redistributes the
// off-chart mass the way the standardization does.
inline CorrelationFunctional correlation_coeffs(const BellFunctional& f) {
    const int n = f.parties();
    CorrelationFunctional out(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const Rational scale = pow2(-n);
    for (std::uint32_t c = 0; c <= full; ++c) {
        for (std::uint32_t t = 0; t <= full; ++t) {
            Rational parity_sum = 0;
            for (std::uint32_t a = 0; a <= full; ++a) {
                if (sign(f.at_raw(t, a)) == 0) continue;
                if (parity_sign(a, c) > 0)
                    parity_sum += f.at_raw(t, a);
                else
                    parity_sum -= f.at_raw(t, a);
            }
            out.at_raw(c, t & c) += parity_sum;
        }
        std::uint32_t s = 0;
        while (true) {
            out.at_raw(c, s) *= scale;
            if (s == c) break;
            s = (s - c) & c;
        }
    }
    return out;
}

// Both standard-form conditions: coefficients sum to 1, and for every
// observer the coefficient marginal over that observer's outcome does not
// depend on that observer's setting.
inline bool is_standard_form(const BellFunctional& f) {
    if (theta_value(f) != 1) return false;
    const int n = f.parties();
    for (int k = 1; k <= n; ++k) {
        const int pos = k - 1;
        for (std::uint32_t srest = 0; srest < (std::uint32_t{1} << (n - 1)); ++srest) {
            const std::uint32_t s0 = insert_bit(srest, pos, false);
            const std::uint32_t s1 = insert_bit(srest, pos, true);
            for (std::uint32_t arest = 0; arest < (std::uint32_t{1} << (n - 1)); ++arest) {
                Rational m0 = 0, m1 = 0;
                for (int ak = 0; ak < 2; ++ak) {
                    const std::uint32_t a = insert_bit(arest, pos, ak != 0);
                    m0 += f.at_raw(s0, a);
                    m1 += f.at_raw(s1, a);
                }
                if (m0 != m1) return false;
            }
        }
    }
    return true;
}

// Casts a Bell inequality into the standard form: divides by the coefficient
// sum, folds the correlation coefficients onto the chart s ⊆ c, and expands
// back to probability coefficients
//
//   B~(a,s) = (1/θ) Σ_c (-1)^{a·c} 2^{|c|-n} B^c_{s∧c}.
//
// The result scores every non-signaling box exactly 1/θ times the input's
// score, satisfies both standard-form conditions, and is a fixed point of
// this map.
inline BellFunctional standardize(const BellFunctional& f) {
    const Rational theta = theta_value(f);
    if (sign(theta) <= 0)
        throw NotNormalizableError("coefficient sum " + to_string(theta) +
                                   " is not positive; cannot standardize");
    if (auto bad = find_negative_vertex(f))
        throw NotAnInequalityError("functional is negative on the deterministic strategy (a=" +
                                   bad->first.to_string() + ", b=" + bad->second.to_string() +
                                   ")");

    const int n = f.parties();
    const CorrelationFunctional folded = correlation_coeffs(f);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    BellFunctional out(n);
    for (std::uint32_t s = 0; s <= full; ++s) {
        for (std::uint32_t a = 0; a <= full; ++a) {
            Rational sum = 0;
            for (std::uint32_t c = 0; c <= full; ++c) {
                const Rational term = pow2(std::popcount(c) - n) * folded.at_raw(c, s & c);
                if (parity_sign(a, c) > 0)
                    sum += term;
                else
                    sum -= term;
            }
            out.at_raw(s, a) = sum / theta;
        }
    }
    return out;
}

// The Bell functional of Hardy's n-party test: +1 on the n events
// (s=1_j, a=1), +1 on (s=1, a=0), -1 on (s=0, a=1). Scores every
// deterministic strategy non-negatively; its coefficient sum is n.
inline BellFunctional hardy_functional(int n, int limit = kDefaultPartyLimit) {
    if (n < 1 || n > limit)
        throw OutOfRangeError("party count " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit) + "]");
    BellFunctional f(n);
    const BinaryVector all = BinaryVector::ones(n);
    const BinaryVector none = BinaryVector::zero(n);
    for (int j = 1; j <= n; ++j) f.at(BinaryVector::unit(n, j), all) += 1;
    f.at(all, none) += 1;
    f.at(none, all) -= 1;
    return f;
}

struct HardyTestResult {
    bool pass = false;
    std::vector<std::string> failing;  // human-readable failed conditions
};

// Hardy's n+2 conditions: P(1|0) > 0 while P(0|1) and every P(1|1_j)
// vanish. No local box satisfies all of them at once.
inline HardyTestResult hardy_test(const Box& box) {
    box.require_normalized();
    const int n = box.parties();
    const BinaryVector all = BinaryVector::ones(n);
    const BinaryVector none = BinaryVector::zero(n);

    HardyTestResult result;
    auto note = [&](const std::string& text) { result.failing.push_back(text); };

    if (sign(box.at(none, all)) <= 0)
        note("P(" + all.to_string() + "|" + none.to_string() + ") = " +
             to_string(box.at(none, all)) + ", want > 0");
    if (sign(box.at(all, none)) != 0)
        note("P(" + none.to_string() + "|" + all.to_string() + ") = " +
             to_string(box.at(all, none)) + ", want 0");
    for (int j = 1; j <= n; ++j) {
        const BinaryVector s = BinaryVector::unit(n, j);
        if (sign(box.at(s, all)) != 0)
            note("P(" + all.to_string() + "|" + s.to_string() + ") = " +
                 to_string(box.at(s, all)) + ", want 0");
    }
    result.pass = result.failing.empty();
    return result;
}

}  // namespace bellbox
