#include <catch2/catch.hpp>

#include "bellbox/bellbox.hpp"
#include "support.hpp"

using namespace bellbox;

namespace {

Box one_way_signaling_box() {
    Box box(2);
    box.at(BinaryVector::parse("00"), BinaryVector::parse("00")) = 1;
    box.at(BinaryVector::parse("01"), BinaryVector::parse("11")) = 1;
    box.at(BinaryVector::parse("10"), BinaryVector::parse("00")) = 1;
    box.at(BinaryVector::parse("11"), BinaryVector::parse("00")) = 1;
    return box;
}

}  // namespace

TEST_CASE("non-signaling detection") {
    SECTION("local boxes are non-signaling") {
        for (int n = 1; n <= 3; ++n)
            for (const auto& d : enumerate_vertices(n))
                REQUIRE(is_nonsignaling(deterministic_box(d)));
        testutil::Rng rng(5001);
        for (int rep = 0; rep < 5; ++rep)
            REQUIRE(is_nonsignaling(testutil::random_vertex_mixture(rng, 3)));
    }
    SECTION("hardy boxes are non-signaling for n = 1..4") {
        for (int n = 1; n <= 4; ++n) REQUIRE(is_nonsignaling(hardy_box(n)));
    }
    SECTION("the one-sided signaling box is caught with witness party 2") {
        const auto witness = find_signaling(one_way_signaling_box());
        REQUIRE(witness.has_value());
        CHECK(witness->party == 2);
        CHECK(witness->other_settings == 0);  // observer 1 measuring setting 0
        CHECK(witness->other_outcomes == 0);  // ... and answering 0
        CHECK_THROWS_AS(require_nonsignaling(one_way_signaling_box()), SignalingError);
    }
}

TEST_CASE("zero sets") {
    CHECK(zeros(Box::uniform(2)).size() == 0);
    CHECK(zeros(hardy_box(2)).size() == 8);  // two support points per setting
    CHECK(zeros(deterministic_box({BinaryVector::parse("01"), BinaryVector::parse("10")})).size() ==
          12);

    SECTION("events come out in printed-lex order") {
        const auto set = zeros(hardy_box(2));
        for (std::size_t i = 1; i < set.events.size(); ++i) {
            const auto& [t0, b0] = set.events[i - 1];
            const auto& [t1, b1] = set.events[i];
            const bool ordered = lex_less(t0, t1) || (t0 == t1 && lex_less(b0, b1));
            REQUIRE(ordered);
        }
    }
    SECTION("every listed event is exactly zero") {
        const Box hb = hardy_box(3);
        for (const auto& [t, b] : zeros(hb).events) REQUIRE(hb.at(t, b) == 0);
    }
}

TEST_CASE("extremality certification") {
    SECTION("hardy boxes are extremal: zeros cut the chart to a point") {
        for (int n = 2; n <= 4; ++n) {
            const auto report = is_extremal(hardy_box(n));
            REQUIRE(report.extremal);
            REQUIRE(report.defect == 0);
            REQUIRE(report.chart_dim == pow3(n) - 1);
            REQUIRE(report.zero_rank == pow3(n) - 1);
        }
    }
    SECTION("the uniform box has no zeros and full defect") {
        for (int n = 1; n <= 3; ++n) {
            const auto report = is_extremal(Box::uniform(n));
            CHECK(!report.extremal);
            CHECK(report.zero_count == 0);
            CHECK(report.defect == pow3(n) - 1);
            CHECK(report.chart_dim == pow3(n) - 1);
        }
    }
    SECTION("the non-signaling chart has dimension 3^n - 1 for n = 1..4") {
        for (int n = 1; n <= 4; ++n)
            REQUIRE(is_extremal(Box::uniform(n)).chart_dim == pow3(n) - 1);
    }
    SECTION("deterministic boxes are extremal") {
        for (const auto& d : enumerate_vertices(2))
            REQUIRE(is_extremal(deterministic_box(d)).extremal);
    }
    SECTION("proper mixtures are never extremal") {
        testutil::Rng rng(5002);
        for (int n = 2; n <= 3; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const Box p = hardy_box(n);
                const Box q = testutil::random_vertex_mixture(rng, n);
                if (p == q) continue;
                const Rational w = rat(testutil::rand_int(rng, 1, 7), 8);
                Box mix(n);
                for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s)
                    for (std::uint32_t a = 0; a < (std::uint32_t{1} << n); ++a)
                        mix.at_raw(s, a) =
                            w * p.at_raw(s, a) + (Rational(1) - w) * q.at_raw(s, a);
                REQUIRE(!is_extremal(mix).extremal);
            }
    }
    SECTION("signaling input is a precondition error") {
        CHECK_THROWS_AS(is_extremal(one_way_signaling_box()), SignalingError);
    }
    SECTION("pr box is extremal") {
        CHECK(is_extremal(pr_box()).extremal);
    }
}
