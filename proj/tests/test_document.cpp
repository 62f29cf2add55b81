#include <catch2/catch.hpp>

#include "bellbox/bellbox.hpp"
#include "support.hpp"

using namespace bellbox;

TEST_CASE("document round trips") {
    SECTION("box") {
        const Box hb = hardy_box(2);
        const std::string text = serialize_document(hb, {{"origin", "unit-test"}});
        const Document doc = parse_document(text);
        REQUIRE(doc.kind == DocKind::box);
        REQUIRE(doc.n == 2);
        REQUIRE(doc.box.has_value());
        CHECK(*doc.box == hb);
        CHECK(doc.metadata.at("origin") == "unit-test");
        CHECK(serialize_document(*doc.box, doc.metadata) == text);
    }
    SECTION("functional") {
        const auto f = standardize(hardy_functional(3));
        const Document doc = parse_document(serialize_document(f), true);
        REQUIRE(doc.functional.has_value());
        CHECK(*doc.functional == f);
    }
    SECTION("correlations") {
        const auto chart = correlations_of_box(hardy_box(2));
        const Document doc = parse_document(serialize_correlations(chart));
        REQUIRE(doc.correlations.has_value());
        CHECK(*doc.correlations == static_cast<const CorrelationGrid&>(chart));
    }
    SECTION("local certificate") {
        testutil::Rng rng(7001);
        const Box mix = testutil::random_vertex_mixture(rng, 2);
        const Certificate cert = is_local(mix);
        REQUIRE(cert.is_local());
        const Document doc = parse_document(serialize_document(cert));
        REQUIRE(doc.certificate.has_value());
        REQUIRE(doc.certificate->is_local());
        CHECK(verify_certificate(*doc.certificate, mix));
        CHECK(doc.metadata.at("verdict") == "local");
    }
    SECTION("nonlocal certificate") {
        const Certificate cert = is_local(hardy_box(2));
        REQUIRE(!cert.is_local());
        const Document doc = parse_document(serialize_document(cert), true);
        REQUIRE(doc.certificate.has_value());
        REQUIRE(!doc.certificate->is_local());
        CHECK(*doc.certificate->separator == *cert.separator);
        CHECK(verify_certificate(*doc.certificate, hardy_box(2)));
    }
}

TEST_CASE("serialization is deterministic and dense") {
    const std::string a = serialize_document(hardy_box(2));
    const std::string b = serialize_document(hardy_box(2));
    CHECK(a == b);
    CHECK(a.find("0.") == std::string::npos);  // no floats ever
    // 16 entries, observer-1-leftmost keys, lexicographic order
    CHECK(a.find("\"s\": \"00\"") < a.find("\"s\": \"01\""));
    CHECK(a.find("\"s\": \"01\"") < a.find("\"s\": \"10\""));
}

TEST_CASE("sparse input fills zeros in lenient mode only") {
    const std::string text = R"({
      "kind": "functional", "n": 1,
      "entries": [ {"s": "1", "a": "1", "value": "1/2"} ],
      "metadata": {}
    })";
    const Document doc = parse_document(text);
    REQUIRE(doc.functional.has_value());
    CHECK(doc.functional->at(BinaryVector::parse("1"), BinaryVector::parse("1")) == rat(1, 2));
    CHECK(doc.functional->at(BinaryVector::parse("0"), BinaryVector::parse("0")) == 0);
    CHECK_THROWS_AS(parse_document(text, true), IncompleteTableError);
}

TEST_CASE("correlation documents must be complete") {
    const std::string text = R"({
      "kind": "correlations", "n": 1,
      "entries": [ {"c": "0", "s": "0", "value": "1"} ],
      "metadata": {}
    })";
    CHECK_THROWS_AS(parse_document(text), IncompleteTableError);
}

TEST_CASE("malformed documents are named precisely") {
    auto expect_parse_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_document(text);
            FAIL("expected a ParseError for: " << text);
        } catch (const ParseError& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_parse_error("not json at all", "invalid JSON");
    expect_parse_error("[1,2,3]", "must be a JSON object");
    expect_parse_error(R"({"n": 2, "entries": []})", "missing field 'kind'");
    expect_parse_error(R"({"kind": "widget", "n": 2, "entries": []})", "unknown document kind");
    expect_parse_error(R"({"kind": "box", "n": "2", "entries": []})", "must be an integer");
    expect_parse_error(
        R"({"kind": "box", "n": 2, "entries": [{"s": "001", "a": "00", "value": "1"}]})",
        "entries[0]");
    expect_parse_error(
        R"({"kind": "box", "n": 2, "entries": [{"s": "00", "a": "00", "value": "0.5"}]})",
        "not a rational");
    expect_parse_error(
        R"({"kind": "box", "n": 2, "entries": [{"s": "00", "a": "00", "value": "1"},
                                                {"s": "00", "a": "00", "value": "1"}]})",
        "duplicate");
    expect_parse_error(R"({"kind": "box", "n": 2, "entries": [], "metadata": {"k": 1}})",
                       "must be a string");
    expect_parse_error(R"({"kind": "certificate", "n": 1, "entries": [], "metadata": {}})",
                       "verdict");

    CHECK_THROWS_AS(parse_document(R"({"kind": "box", "n": 9, "entries": []})"),
                    OutOfRangeError);
    CHECK(parse_document(R"({"kind": "box", "n": 6, "entries": []})", false, 6).n == 6);
}

TEST_CASE("strict mode rejects non-canonical rationals") {
    const std::string text = R"({
      "kind": "box", "n": 1,
      "entries": [
        {"s": "0", "a": "0", "value": "2/4"}, {"s": "0", "a": "1", "value": "1/2"},
        {"s": "1", "a": "0", "value": "1/2"}, {"s": "1", "a": "1", "value": "1/2"}
      ],
      "metadata": {}
    })";
    CHECK(parse_document(text).box->at(BinaryVector::parse("0"), BinaryVector::parse("0")) ==
          rat(1, 2));
    CHECK_THROWS_AS(parse_document(text, true), ParseError);
}

TEST_CASE("serialized pipelines agree with in-process objects") {
    // The CLI path hardy -> standardize -> dualize must equal hardy-box; the
    // document layer must not perturb a single byte of it.
    const std::string via_duality =
        serialize_document(box_from_functional(standardize(hardy_functional(2))));
    const std::string direct = serialize_document(hardy_box(2));
    CHECK(via_duality == direct);
}
