#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "box.hpp"
#include "linalg.hpp"

namespace bellbox {

// Where a signaling check failed: summing out observer `party`'s outcomes
// left a dependence on that observer's setting, in the context of the other
// observers' settings and outcomes below (vectors over n-1 parties, packed).
struct SignalingWitness {
    int party = 0;
    std::uint32_t other_settings = 0;
    std::uint32_t other_outcomes = 0;
};

// Checks every (party, context) pair directly, so arbitrary tables are
// handled, not only ones already on the non-signaling chart. Several parties
// can signal at once; the witness returned is the one with the
// lexicographically smallest (context settings, context outcomes, party).
inline std::optional<SignalingWitness> find_signaling(const Box& box) {
    const int n = box.parties();
    for (std::uint32_t srest = 0; srest < (std::uint32_t{1} << (n - 1)); ++srest) {
        for (std::uint32_t arest = 0; arest < (std::uint32_t{1} << (n - 1)); ++arest) {
            for (int k = 1; k <= n; ++k) {
                const int pos = k - 1;
                const std::uint32_t s0 = insert_bit(srest, pos, false);
                const std::uint32_t s1 = insert_bit(srest, pos, true);
                Rational m0 = 0, m1 = 0;
                for (int bk = 0; bk < 2; ++bk) {
                    const std::uint32_t a = insert_bit(arest, pos, bk != 0);
                    m0 += box.at_raw(s0, a);
                    m1 += box.at_raw(s1, a);
                }
                if (m0 != m1) return SignalingWitness{k, srest, arest};
            }
        }
    }
    return std::nullopt;
}

inline bool is_nonsignaling(const Box& box) { return !find_signaling(box).has_value(); }

inline void require_nonsignaling(const Box& box) {
    if (auto w = find_signaling(box))
        throw SignalingError("box signals: observer " + std::to_string(w->party) +
                             "'s setting leaks into the other observers' statistics");
}

// All events with exactly zero probability, in printed-lex (t, b) order.
struct ZeroSet {
    std::vector<std::pair<BinaryVector, BinaryVector>> events;

    [[nodiscard]] std::size_t size() const { return events.size(); }
};

inline ZeroSet zeros(const Box& box) {
    ZeroSet set;
    for (const BinaryVector& t : all_vectors_lex(box.parties()))
        for (const BinaryVector& b : all_vectors_lex(box.parties()))
            if (sign(box.at(t, b)) == 0) set.events.emplace_back(t, b);
    return set;
}

namespace detail {

// Rows: per-setting normalization (2^n) then the non-signaling balance rows
// (n * 4^(n-1)). Unknowns are the 4^n event probabilities.
inline RationalMatrix nonsignaling_system(int n) {
    const std::size_t events = std::size_t{1} << (2 * n);
    const std::size_t norm_rows = std::size_t{1} << n;
    const std::size_t ns_rows = std::size_t(n) << (2 * (n - 1));
    RationalMatrix m(norm_rows + ns_rows, events);

    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s)
        for (std::uint32_t a = 0; a < (std::uint32_t{1} << n); ++a)
            m.at(s, (std::size_t{s} << n) | a) = 1;

    std::size_t row = norm_rows;
    for (int k = 1; k <= n; ++k) {
        const int pos = k - 1;
        for (std::uint32_t srest = 0; srest < (std::uint32_t{1} << (n - 1)); ++srest) {
            const std::uint32_t s0 = insert_bit(srest, pos, false);
            const std::uint32_t s1 = insert_bit(srest, pos, true);
            for (std::uint32_t arest = 0; arest < (std::uint32_t{1} << (n - 1)); ++arest) {
                for (int bk = 0; bk < 2; ++bk) {
                    const std::uint32_t a = insert_bit(arest, pos, bk != 0);
                    m.at(row, (std::size_t{s0} << n) | a) += 1;
                    m.at(row, (std::size_t{s1} << n) | a) -= 1;
                }
                ++row;
            }
        }
    }
    return m;
}

}  // namespace detail

struct ExtremalityReport {
    bool extremal = false;
    std::size_t defect = 0;      // dimension of the solution space cut by the zeros
    std::size_t chart_dim = 0;   // dimension of the non-signaling affine chart, 3^n - 1
    std::size_t zero_rank = 0;   // independent zero constraints inside the chart
    std::size_t zero_count = 0;
};

// A non-signaling box is extremal iff its zero events, together with
// normalization and the non-signaling balance, pin the box down uniquely:
// the combined linear system has full rank 4^n over the event unknowns.
inline ExtremalityReport is_extremal(const Box& box) {
    box.require_normalized();
    require_nonsignaling(box);

    const int n = box.parties();
    const std::size_t events = std::size_t{1} << (2 * n);
    const RationalMatrix base = detail::nonsignaling_system(n);
    const ZeroSet zero_set = zeros(box);

    RationalMatrix full(base.rows() + zero_set.size(), events);
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t j = 0; j < events; ++j) full.at(i, j) = base.at(i, j);
    for (std::size_t z = 0; z < zero_set.size(); ++z) {
        const auto& [t, b] = zero_set.events[z];
        full.at(base.rows() + z, (std::size_t{t.bits()} << n) | b.bits()) = 1;
    }

    const std::size_t base_rank = exact_rank(base);
    const std::size_t full_rank = exact_rank(std::move(full));

    ExtremalityReport report;
    report.zero_count = zero_set.size();
    report.chart_dim = events - base_rank;
    report.defect = events - full_rank;
    report.zero_rank = full_rank - base_rank;
    report.extremal = report.defect == 0;
    return report;
}

}  // namespace bellbox
