#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "functional.hpp"
#include "linalg.hpp"
#include "nonsignaling.hpp"
#include "simplex.hpp"

namespace bellbox {

// A local deterministic strategy: observer k answers a_k under setting 0 and
// b_k under setting 1. These are the 4^n vertices of the Bell polytope.
struct DeterministicStrategy {
    BinaryVector a;
    BinaryVector b;

    DeterministicStrategy(BinaryVector a_, BinaryVector b_) : a(a_), b(b_) {
        a.require_same_n(b);
    }

    [[nodiscard]] int parties() const { return a.size(); }
    [[nodiscard]] std::string to_string() const {
        return "(a=" + a.to_string() + ", b=" + b.to_string() + ")";
    }

    friend bool operator==(const DeterministicStrategy& x, const DeterministicStrategy& y) {
        return x.a == y.a && x.b == y.b;
    }
};

inline Box deterministic_box(const DeterministicStrategy& d) {
    const int n = d.parties();
    Box box(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 0; s <= full; ++s) {
        const std::uint32_t outcome = (d.a.bits() & ~s) | (d.b.bits() & s);
        box.at_raw(s, outcome & full) = 1;
    }
    return box;
}

// All 4^n strategies in lexicographic (a, b) order of the printed
// bitstrings; (a=0...0, b=0...0) comes first.
inline std::vector<DeterministicStrategy> enumerate_vertices(int n,
                                                             int limit = kDefaultPartyLimit) {
    if (n < 1 || n > limit)
        throw OutOfRangeError("party count " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit) + "]");
    std::vector<DeterministicStrategy> out;
    out.reserve(std::size_t{1} << (2 * n));
    const auto order = all_vectors_lex(n);
    for (const BinaryVector& a : order)
        for (const BinaryVector& b : order) out.emplace_back(a, b);
    return out;
}

// Rank over Q of a family of boxes viewed as vectors in the 4^n-dimensional
// box space.
inline std::size_t span_dimension(const std::vector<Box>& boxes) {
    if (boxes.empty()) return 0;
    const int n = boxes.front().parties();
    RationalMatrix m(boxes.size(), std::size_t{1} << (2 * n));
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        boxes.front().require_same_n(boxes[i]);
        const auto flat = boxes[i].flat();
        for (std::size_t j = 0; j < flat.size(); ++j) m.at(i, j) = flat[j];
    }
    return exact_rank(std::move(m));
}

// Strategies on which the functional vanishes exactly (no tolerance; all
// inputs are rational).
inline std::vector<DeterministicStrategy> saturating_vertices(const BellFunctional& f) {
    std::vector<DeterministicStrategy> out;
    for (const BinaryVector& a : all_vectors_lex(f.parties()))
        for (const BinaryVector& b : all_vectors_lex(f.parties()))
            if (sign(vertex_value(f, a, b)) == 0) out.emplace_back(a, b);
    return out;
}

struct TightnessReport {
    bool tight = false;
    std::size_t rank = 0;        // rank of the saturating vertices
    std::size_t required = 0;    // 3^n - 1
    std::size_t saturating = 0;  // how many vertices saturate
};

inline std::size_t pow3(int n) {
    std::size_t v = 1;
    for (int i = 0; i < n; ++i) v *= 3;
    return v;
}

// A Bell inequality is tight (a facet of the Bell polytope) iff its
// saturating vertices span 3^n - 1 independent directions. Verifies the
// inequality property first.
inline TightnessReport is_tight(const BellFunctional& f) {
    if (auto bad = find_negative_vertex(f))
        throw NotAnInequalityError("functional is negative on the deterministic strategy (a=" +
                                   bad->first.to_string() + ", b=" + bad->second.to_string() +
                                   ")");
    const auto sat = saturating_vertices(f);
    std::vector<Box> boxes;
    boxes.reserve(sat.size());
    for (const auto& d : sat) boxes.push_back(deterministic_box(d));

    TightnessReport report;
    report.saturating = sat.size();
    report.required = pow3(f.parties()) - 1;
    report.rank = span_dimension(boxes);
    report.tight = report.rank == report.required;
    return report;
}

// Constructive answer to Bell-polytope membership: convex weights over
// deterministic strategies when the box is local, a separating Bell
// functional when it is not. Either witness is verified before it is
// returned.
struct Certificate {
    enum class Verdict { local, nonlocal };

    Verdict verdict = Verdict::local;
    std::vector<std::pair<DeterministicStrategy, Rational>> weights;  // local only
    std::optional<BellFunctional> separator;                          // nonlocal only

    [[nodiscard]] bool is_local() const { return verdict == Verdict::local; }
};

// Exact check of a certificate against the box it was issued for.
inline bool verify_certificate(const Certificate& cert, const Box& box) {
    const int n = box.parties();
    if (cert.verdict == Certificate::Verdict::local) {
        Rational total = 0;
        Box mix(n);
        for (const auto& [strategy, weight] : cert.weights) {
            if (sign(weight) < 0) return false;
            total += weight;
            const Box vertex = deterministic_box(strategy);
            const std::uint32_t full = (std::uint32_t{1} << n) - 1;
            for (std::uint32_t s = 0; s <= full; ++s)
                for (std::uint32_t a = 0; a <= full; ++a)
                    if (sign(vertex.at_raw(s, a)) != 0)
                        mix.at_raw(s, a) += weight * vertex.at_raw(s, a);
        }
        return total == 1 && mix == box;
    }
    if (!cert.separator) return false;
    if (find_negative_vertex(*cert.separator)) return false;
    return sign(evaluate(*cert.separator, box)) < 0;
}

// Membership of a normalized box in the Bell polytope, decided by exact LP
// feasibility over the vertex weights. Infeasibility converts the Farkas
// dual into a separating functional, canonicalized through standardization
// whenever the queried box is non-signaling (standardization preserves
// values on non-signaling boxes, so the separation survives; on a signaling
// box the raw separator is returned unchanged).
inline Certificate is_local(const Box& box) {
    box.require_normalized();
    const int n = box.parties();
    const std::size_t events = std::size_t{1} << (2 * n);
    const auto vertices = enumerate_vertices(n, kHardPartyCap);

    // Rows: one per event plus the convexity row; columns: one weight per
    // deterministic strategy.
    RationalMatrix a(events + 1, vertices.size());
    std::vector<Rational> b(events + 1);
    for (std::size_t col = 0; col < vertices.size(); ++col) {
        const Box vertex = deterministic_box(vertices[col]);
        const auto flat = vertex.flat();
        for (std::size_t row = 0; row < events; ++row)
            if (sign(flat[row]) != 0) a.at(row, col) = flat[row];
        a.at(events, col) = 1;
    }
    {
        const auto flat = box.flat();
        for (std::size_t row = 0; row < events; ++row) b[row] = flat[row];
        b[events] = 1;
    }

    const LpFeasibility lp = solve_equality_feasibility(a, b);

    Certificate cert;
    if (lp.feasible) {
        cert.verdict = Certificate::Verdict::local;
        for (std::size_t col = 0; col < vertices.size(); ++col)
            if (sign(lp.point[col]) != 0) cert.weights.emplace_back(vertices[col], lp.point[col]);
        if (!verify_certificate(cert, box)) throw Error("locality certificate failed verification");
        return cert;
    }

    // Farkas vector y: y·column <= 0 for every vertex, y·(P,1) > 0. The
    // separating functional is its negation, with the convexity multiplier
    // spread uniformly over the 4^n events so it acts on normalized boxes.
    BellFunctional separator(n);
    const Rational shift = lp.farkas[events] * pow2(-n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        for (std::uint32_t outcome = 0; outcome <= full; ++outcome) {
            const std::size_t row = (std::size_t{s} << n) | outcome;
            separator.at_raw(s, outcome) = -lp.farkas[row] - shift;
        }

    cert.verdict = Certificate::Verdict::nonlocal;
    if (is_nonsignaling(box))
        cert.separator = standardize(separator);
    else
        cert.separator = std::move(separator);
    if (!verify_certificate(cert, box)) throw Error("separating functional failed verification");
    return cert;
}

}  // namespace bellbox
