#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "functional.hpp"
#include "nonsignaling.hpp"

namespace bellbox {

// The two directions of the facet/vertex duality for the (n,2,2) scenario:
// a standard-form Bell functional B and a non-signaling box P correspond via
//
//   P(b|t) = Σ_s B(b ⊕ (s∧t), s)          (functional -> box)
//   B(a,s) = Σ_{t,b} 3^n P(b|t) / (8^n (-3)^{|a⊕b⊕(s∧t)|})   (box -> functional)
//
// with <B|a;b> = P(a | a⊕b) on every deterministic strategy. Tight
// functionals map to extremal boxes and back.

// Evaluates the box dual to a standard-form inequality. A non-standard
// inequality is standardized first (the duality formula is only valid in
// standard form); `auto_standardized`, when non-null, reports whether that
// happened.
inline Box box_from_functional(const BellFunctional& f, bool* auto_standardized = nullptr) {
    if (auto bad = find_negative_vertex(f))
        throw NotAnInequalityError("functional is negative on the deterministic strategy (a=" +
                                   bad->first.to_string() + ", b=" + bad->second.to_string() +
                                   ")");
    const bool standard = is_standard_form(f);
    if (auto_standardized) *auto_standardized = !standard;
    const BellFunctional& ready = standard ? f : standardize(f);

    const int n = ready.parties();
    Box box(n);
    for (const BinaryVector& t : all_vectors_lex(n))
        for (const BinaryVector& b : all_vectors_lex(n)) box.at(t, b) = vertex_value(ready, b, b ^ t);

    // The construction guarantees all three; a failure here is a library
    // bug, not bad input.
    if (!box.is_nonnegative() || !box.is_normalized() || !is_nonsignaling(box))
        throw Error("dual box failed its non-signaling validation");
    return box;
}

// The inverse direction: every non-signaling box defines a standard-form
// Bell inequality through the (-3)-kernel above. The double sum runs over
// integers (probabilities are cleared to a common denominator first).
inline BellFunctional functional_from_box(const Box& box) {
    box.require_normalized();
    require_nonsignaling(box);

    const int n = box.parties();
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;

    Int common_den = 1;
    for (const Rational& e : box.flat()) common_den = lcm(common_den, e.get_den());
    std::vector<Int> numerators(box.events());
    {
        const auto flat = box.flat();
        for (std::size_t i = 0; i < flat.size(); ++i)
            numerators[i] = flat[i].get_num() * (common_den / flat[i].get_den());
    }

    std::vector<Int> pow3_signed(n + 1);  // (-1)^w 3^(n-w)
    for (int w = 0; w <= n; ++w) {
        Int v = 1;
        for (int i = 0; i < n - w; ++i) v *= 3;
        pow3_signed[w] = (w & 1) ? -v : v;
    }
    Int scale_den = common_den;
    for (int i = 0; i < n; ++i) scale_den *= 8;

    BellFunctional out(n);
    for (std::uint32_t s = 0; s <= full; ++s)
        for (std::uint32_t a = 0; a <= full; ++a) {
            Int acc = 0;
            for (std::uint32_t t = 0; t <= full; ++t) {
                const std::uint32_t st = s & t;
                for (std::uint32_t b = 0; b <= full; ++b) {
                    const Int& num = numerators[(std::size_t{t} << n) | b];
                    if (num == 0) continue;
                    const int w = std::popcount(a ^ b ^ st);
                    acc += num * pow3_signed[w];
                }
            }
            out.at_raw(s, a) = rat(acc, scale_den);
        }
    return out;
}

// Correlation coordinates of the dual box from standard-form correlation
// coefficients: Ã^c_t = 2^n Σ_{s⊆c} (-1)^{s·t} B^c_s.
inline CorrelationTable nscorr_from_functional(const CorrelationFunctional& coeffs) {
    const int n = coeffs.parties();
    CorrelationTable out(n);
    const Rational two_n = pow2(n);
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << n); ++c) {
        std::uint32_t t = 0;
        while (true) {
            Rational sum = 0;
            std::uint32_t s = 0;
            while (true) {
                if (parity_sign(s, t) > 0)
                    sum += coeffs.at_raw(c, s);
                else
                    sum -= coeffs.at_raw(c, s);
                if (s == c) break;
                s = (s - c) & c;
            }
            out.at_raw(c, t) = sum * two_n;
            if (t == c) break;
            t = (t - c) & c;
        }
    }
    return out;
}

// Inverse of the above: B^c_s = 2^-(n+|c|) Σ_{t⊆c} (-1)^{s·t} Ã^c_t.
inline CorrelationFunctional corrfunctional_from_nsbox(const CorrelationTable& table) {
    const int n = table.parties();
    CorrelationFunctional out(n);
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << n); ++c) {
        const Rational scale = pow2(-(n + std::popcount(c)));
        std::uint32_t s = 0;
        while (true) {
            Rational sum = 0;
            std::uint32_t t = 0;
            while (true) {
                if (parity_sign(s, t) > 0)
                    sum += table.at_raw(c, t);
                else
                    sum -= table.at_raw(c, t);
                if (t == c) break;
                t = (t - c) & c;
            }
            out.at_raw(c, s) = sum * scale;
            if (s == c) break;
            s = (s - c) & c;
        }
    }
    return out;
}

// The extremal non-signaling box dual to the Hardy inequality:
//
//   P(b|t) = (Σ_j δ_{b,t_j} + δ_{b,t} - δ_{b,1}) / n,   t_j = 1 ⊕ (t ∧ 1_j),
//
// i.e. all-ones with observer j's component negated. Validated non-negative,
// normalized and non-signaling before return. n=1 degenerates to the
// deterministic all-zeros box.
inline Box hardy_box(int n, int limit = kDefaultPartyLimit) {
    if (n < 1 || n > limit)
        throw OutOfRangeError("party count " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit) + "]");
    Box box(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const Rational unit = rat(1, n);
    for (std::uint32_t t = 0; t <= full; ++t) {
        for (int j = 0; j < n; ++j) {
            const std::uint32_t tj = full ^ (t & (std::uint32_t{1} << j));
            box.at_raw(t, tj) += unit;
        }
        box.at_raw(t, t) += unit;
        box.at_raw(t, full) -= unit;
    }
    if (!box.is_nonnegative() || !box.is_normalized() || !is_nonsignaling(box))
        throw Error("Hardy box failed its validation");
    return box;
}

// Reference Popescu-Rohrlich box: two parties, uniform marginals, outcome
// parity equal to the product of the settings.
inline Box pr_box() {
    Box box(2);
    const Rational half = rat(1, 2);
    for (std::uint32_t t = 0; t < 4; ++t) {
        const int prod = (t & 1) && (t & 2) ? 1 : 0;
        for (std::uint32_t b = 0; b < 4; ++b)
            if ((std::popcount(b) & 1) == prod) box.at_raw(t, b) = half;
    }
    return box;
}

// A local symmetry of the (n,2,2) scenario: permute parties, optionally swap
// each party's two settings, and flip each party's outcome by an affine rule
// b_k -> b_k ⊕ α_k ⊕ β_k·t_k. These maps form a group and preserve
// non-signaling, locality/nonlocality, and extremality.
struct Relabeling {
    std::vector<int> perm;  // new party j reads old party perm[j-1] (1-based)
    BinaryVector setting_swap;
    BinaryVector outcome_flip;          // α
    BinaryVector outcome_flip_setting;  // β

    Relabeling(std::vector<int> perm_, BinaryVector sigma, BinaryVector alpha, BinaryVector beta)
        : perm(std::move(perm_)),
          setting_swap(sigma),
          outcome_flip(alpha),
          outcome_flip_setting(beta) {
        const int n = setting_swap.size();
        outcome_flip.require_same_n(setting_swap);
        outcome_flip_setting.require_same_n(setting_swap);
        if (static_cast<int>(perm.size()) != n)
            throw DimensionError("relabeling permutation has wrong length");
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int v : perm) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                throw DimensionError("relabeling permutation is not a permutation of 1..n");
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }

    [[nodiscard]] int parties() const { return setting_swap.size(); }

    static Relabeling identity(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 1);
        return {std::move(p), BinaryVector::zero(n), BinaryVector::zero(n),
                BinaryVector::zero(n)};
    }
};

// apply(compose(outer, inner), P) = apply(outer, apply(inner, P)).
inline Relabeling compose(const Relabeling& outer, const Relabeling& inner) {
    if (outer.parties() != inner.parties())
        throw DimensionError("composing relabelings over different party counts");
    const int n = outer.parties();
    std::vector<int> perm(static_cast<std::size_t>(n));
    BinaryVector sigma = BinaryVector::zero(n);
    BinaryVector alpha = BinaryVector::zero(n);
    BinaryVector beta = BinaryVector::zero(n);
    for (int j = 1; j <= n; ++j) {
        const int mid = outer.perm[static_cast<std::size_t>(j - 1)];
        perm[static_cast<std::size_t>(j - 1)] = inner.perm[static_cast<std::size_t>(mid - 1)];
        const bool s2 = outer.setting_swap.component(j);
        const bool a2 = outer.outcome_flip.component(j);
        const bool b2 = outer.outcome_flip_setting.component(j);
        const bool s1 = inner.setting_swap.component(mid);
        const bool a1 = inner.outcome_flip.component(mid);
        const bool b1 = inner.outcome_flip_setting.component(mid);
        sigma = sigma.with_component(j, s2 ^ s1);
        beta = beta.with_component(j, b2 ^ b1);
        alpha = alpha.with_component(j, a2 ^ a1 ^ (b1 && s2));
    }
    return {std::move(perm), sigma, alpha, beta};
}

inline Relabeling inverse(const Relabeling& r) {
    const int n = r.parties();
    std::vector<int> perm(static_cast<std::size_t>(n));
    BinaryVector sigma = BinaryVector::zero(n);
    BinaryVector alpha = BinaryVector::zero(n);
    BinaryVector beta = BinaryVector::zero(n);
    for (int j = 1; j <= n; ++j) {
        const int image = r.perm[static_cast<std::size_t>(j - 1)];
        perm[static_cast<std::size_t>(image - 1)] = j;
        const bool s = r.setting_swap.component(j);
        const bool a = r.outcome_flip.component(j);
        const bool b = r.outcome_flip_setting.component(j);
        sigma = sigma.with_component(image, s);
        beta = beta.with_component(image, b);
        alpha = alpha.with_component(image, a ^ (b && s));
    }
    return {std::move(perm), sigma, alpha, beta};
}

inline Box apply_relabeling(const Relabeling& r, const Box& box) {
    if (r.parties() != box.parties())
        throw DimensionError("relabeling and box party counts differ");
    const int n = box.parties();
    Box out(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t t = 0; t <= full; ++t)
        for (std::uint32_t b = 0; b <= full; ++b) {
            std::uint32_t t_old = 0, b_old = 0;
            for (int j = 1; j <= n; ++j) {
                const int i = r.perm[static_cast<std::size_t>(j - 1)];
                const bool tj = (t >> (j - 1)) & 1u;
                const bool bj = (b >> (j - 1)) & 1u;
                const bool ti = tj ^ r.setting_swap.component(j);
                const bool bi = bj ^ r.outcome_flip.component(j) ^
                                (r.outcome_flip_setting.component(j) && tj);
                if (ti) t_old |= std::uint32_t{1} << (i - 1);
                if (bi) b_old |= std::uint32_t{1} << (i - 1);
            }
            out.at_raw(t, b) = box.at_raw(t_old, b_old);
        }
    return out;
}

}  // namespace bellbox
