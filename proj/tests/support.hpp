#pragma once

// Deterministic generators shared by the test suites. Seeds are fixed so
// every run exercises the same cases.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "bellbox/bellbox.hpp"

namespace testutil {

using namespace bellbox;

using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, int max_abs_num = 6, int max_den = 6) {
    return rat(rand_int(rng, -max_abs_num, max_abs_num), rand_int(rng, 1, max_den));
}

// Convex mixture of a few deterministic strategies with random positive
// integer weights: always a local (hence non-signaling) box.
inline Box random_vertex_mixture(Rng& rng, int n, int terms = 6) {
    const auto vertices = enumerate_vertices(n);
    std::vector<long> weight(vertices.size(), 0);
    long total = 0;
    for (int i = 0; i < terms; ++i) {
        const auto v = static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(vertices.size()) - 1));
        const long w = rand_int(rng, 1, 9);
        weight[v] += w;
        total += w;
    }
    Box box(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (weight[v] == 0) continue;
        const Box vertex = deterministic_box(vertices[v]);
        const Rational w = rat(weight[v], total);
        for (std::uint32_t s = 0; s <= full; ++s)
            for (std::uint32_t a = 0; a <= full; ++a)
                if (sign(vertex.at_raw(s, a)) != 0) box.at_raw(s, a) += w;
    }
    return box;
}

// Normalized but otherwise arbitrary table; usually signaling.
inline Box random_normalized_table(Rng& rng, int n) {
    Box box(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 0; s <= full; ++s) {
        std::vector<long> row(std::size_t{full} + 1);
        long total = 0;
        for (auto& v : row) {
            v = rand_int(rng, 0, 4);
            total += v;
        }
        if (total == 0) {
            row[0] = 1;
            total = 1;
        }
        for (std::uint32_t a = 0; a <= full; ++a) box.at_raw(s, a) = rat(row[a], total);
    }
    return box;
}

inline BellFunctional random_functional(Rng& rng, int n, int nonzero = 8) {
    BellFunctional f(n);
    const int full = (1 << n) - 1;
    for (int i = 0; i < nonzero; ++i)
        f.at_raw(static_cast<std::uint32_t>(rand_int(rng, 0, full)),
                 static_cast<std::uint32_t>(rand_int(rng, 0, full))) = random_rational(rng);
    return f;
}

// Random Bell inequality with positive coefficient sum: shift a random
// functional so its minimum vertex value is zero, resampling when the shift
// kills the coefficient sum.
inline BellFunctional random_inequality(Rng& rng, int n) {
    while (true) {
        BellFunctional f = random_functional(rng, n);
        Rational min_value;
        bool first = true;
        for (const auto& a : all_vectors_lex(n))
            for (const auto& b : all_vectors_lex(n)) {
                const Rational v = vertex_value(f, a, b);
                if (first || v < min_value) min_value = v;
                first = false;
            }
        const Rational shift = min_value * pow2(-n);
        const std::uint32_t full = (std::uint32_t{1} << n) - 1;
        for (std::uint32_t s = 0; s <= full; ++s)
            for (std::uint32_t a = 0; a <= full; ++a) f.at_raw(s, a) -= shift;
        if (sign(theta_value(f)) > 0) return f;
    }
}

inline Relabeling random_relabeling(Rng& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto bitsvec = [&] {
        return BinaryVector(n, static_cast<std::uint32_t>(rand_int(rng, 0, (1 << n) - 1)));
    };
    return Relabeling(std::move(perm), bitsvec(), bitsvec(), bitsvec());
}

// A nonlocal non-signaling box: a relabeled Hardy box, optionally mixed with
// local noise as long as the mixture stays nonlocal.
inline Box random_nonlocal_box(Rng& rng, int n) {
    const Box seed = apply_relabeling(random_relabeling(rng, n), hardy_box(n));
    const Box noise = random_vertex_mixture(rng, n);
    const long num = rand_int(rng, 0, 3);  // noise weight num/16
    Box mix(n);
    const Rational w = rat(num, 16);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        for (std::uint32_t a = 0; a <= full; ++a)
            mix.at_raw(s, a) = (Rational(1) - w) * seed.at_raw(s, a) + w * noise.at_raw(s, a);
    if (is_local(mix).is_local()) return seed;  // mixture fell inside; use the vertex itself
    return mix;
}

// Separating functional of a random nonlocal box; standard form because the
// box is non-signaling.
inline BellFunctional random_separator(Rng& rng, int n) {
    const Certificate cert = is_local(random_nonlocal_box(rng, n));
    if (cert.is_local()) throw Error("random_nonlocal_box returned a local box");
    return *cert.separator;
}

}  // namespace testutil
