#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polytope.hpp"

namespace bellbox {

// Documents are JSON with one fixed shape:
//
//   { "kind": "box" | "functional" | "correlations" | "certificate",
//     "n": <int>, "entries": [ {bitstring keys..., "value": "p/q"}, ... ],
//     "metadata": { ... } }
//
// Bitstrings print observer 1 leftmost; rationals are reduced with positive
// denominators. Entry order is lexicographic in the printed keys, and no
// float ever appears, so identical objects serialize to identical bytes.

using Metadata = std::map<std::string, std::string>;

enum class DocKind { box, functional, correlations, certificate };

inline std::string kind_name(DocKind kind) {
    switch (kind) {
        case DocKind::box: return "box";
        case DocKind::functional: return "functional";
        case DocKind::correlations: return "correlations";
        case DocKind::certificate: return "certificate";
    }
    return "?";
}

struct Document {
    DocKind kind = DocKind::box;
    int n = 0;
    Metadata metadata;
    std::optional<Box> box;
    std::optional<BellFunctional> functional;
    std::optional<CorrelationGrid> correlations;
    std::optional<Certificate> certificate;
};

namespace detail {

inline nlohmann::ordered_json document_skeleton(DocKind kind, int n, const Metadata& metadata) {
    nlohmann::ordered_json doc;
    doc["kind"] = kind_name(kind);
    doc["n"] = n;
    doc["entries"] = nlohmann::ordered_json::array();
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : metadata) doc["metadata"][key] = value;
    return doc;
}

inline std::string finish(nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace detail

inline std::string serialize_document(const Box& box, const Metadata& metadata = {}) {
    const int n = box.parties();
    auto doc = detail::document_skeleton(DocKind::box, n, metadata);
    for (const BinaryVector& s : all_vectors_lex(n))
        for (const BinaryVector& a : all_vectors_lex(n)) {
            nlohmann::ordered_json entry;
            entry["s"] = s.to_string();
            entry["a"] = a.to_string();
            entry["value"] = to_string(box.at(s, a));
            doc["entries"].push_back(std::move(entry));
        }
    return detail::finish(doc);
}

inline std::string serialize_document(const BellFunctional& f, const Metadata& metadata = {}) {
    const int n = f.parties();
    auto doc = detail::document_skeleton(DocKind::functional, n, metadata);
    for (const BinaryVector& s : all_vectors_lex(n))
        for (const BinaryVector& a : all_vectors_lex(n)) {
            nlohmann::ordered_json entry;
            entry["s"] = s.to_string();
            entry["a"] = a.to_string();
            entry["value"] = to_string(f.at(s, a));
            doc["entries"].push_back(std::move(entry));
        }
    return detail::finish(doc);
}

// Serializes either correlation chart (box coordinates A^c_t or functional
// coefficients B^c_s); both are 3^n grids keyed by (c, s ⊆ c).
inline std::string serialize_correlations(const CorrelationGrid& grid,
                                          const Metadata& metadata = {}) {
    const int n = grid.parties();
    auto doc = detail::document_skeleton(DocKind::correlations, n, metadata);
    for (const BinaryVector& c : all_vectors_lex(n))
        for (const BinaryVector& s : all_vectors_lex(n)) {
            if (!s.subset_of(c)) continue;
            nlohmann::ordered_json entry;
            entry["c"] = c.to_string();
            entry["s"] = s.to_string();
            entry["value"] = to_string(grid.at(c, s));
            doc["entries"].push_back(std::move(entry));
        }
    return detail::finish(doc);
}

inline int certificate_parties(const Certificate& cert) {
    if (cert.is_local()) {
        if (cert.weights.empty()) throw Error("local certificate without weights");
        return cert.weights.front().first.parties();
    }
    if (!cert.separator) throw Error("nonlocal certificate without separator");
    return cert.separator->parties();
}

// Certificates carry their verdict in metadata["verdict"]; entries are the
// convex weights (keys a, b) for a local verdict and the separating
// functional's coefficients (keys s, a) for a nonlocal one.
inline std::string serialize_document(const Certificate& cert, const Metadata& metadata = {}) {
    const int n = certificate_parties(cert);
    Metadata merged = metadata;
    merged["verdict"] = cert.is_local() ? "local" : "nonlocal";
    auto doc = detail::document_skeleton(DocKind::certificate, n, merged);

    if (cert.is_local()) {
        auto sorted = cert.weights;
        std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
            if (!(x.first.a == y.first.a)) return lex_less(x.first.a, y.first.a);
            return lex_less(x.first.b, y.first.b);
        });
        for (const auto& [strategy, weight] : sorted) {
            nlohmann::ordered_json entry;
            entry["a"] = strategy.a.to_string();
            entry["b"] = strategy.b.to_string();
            entry["value"] = to_string(weight);
            doc["entries"].push_back(std::move(entry));
        }
    } else {
        for (const BinaryVector& s : all_vectors_lex(n))
            for (const BinaryVector& a : all_vectors_lex(n)) {
                nlohmann::ordered_json entry;
                entry["s"] = s.to_string();
                entry["a"] = a.to_string();
                entry["value"] = to_string(cert.separator->at(s, a));
                doc["entries"].push_back(std::move(entry));
            }
    }
    return detail::finish(doc);
}

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& obj, const char* name,
                                   const std::string& where) {
    if (!obj.is_object() || !obj.contains(name))
        throw ParseError(where + ": missing field '" + name + "'");
    return obj.at(name);
}

inline std::string string_field(const nlohmann::json& obj, const char* name,
                                const std::string& where) {
    const auto& v = field(obj, name, where);
    if (!v.is_string()) throw ParseError(where + ": field '" + name + "' must be a string");
    return v.get<std::string>();
}

inline BinaryVector bits_field(const nlohmann::json& obj, const char* name, int n,
                               const std::string& where) {
    const std::string text = string_field(obj, name, where);
    if (static_cast<int>(text.size()) != n)
        throw ParseError(where + ": field '" + name + "' must be a bitstring of length " +
                         std::to_string(n) + ", got '" + text + "'");
    try {
        return BinaryVector::parse(text);
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline Rational value_field(const nlohmann::json& obj, bool strict, const std::string& where) {
    const std::string text = string_field(obj, "value", where);
    try {
        return parse_rational(text, strict);
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace detail

// Parses any document. Strict mode requires dense tables and canonical
// rational text; otherwise missing box/functional entries default to zero.
// Correlations must always be complete (they are a 3^n chart, not a sparse
// table).
inline Document parse_document(std::string_view text, bool strict = false,
                               int limit = kDefaultPartyLimit) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("document must be a JSON object");

    const std::string kind_text = detail::string_field(root, "kind", "document");
    const auto& n_field = detail::field(root, "n", "document");
    if (!n_field.is_number_integer())
        throw ParseError("document: field 'n' must be an integer");
    const int n = n_field.get<int>();
    if (n < 1 || n > limit)
        throw OutOfRangeError("document: party count " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit) + "]");

    Document doc;
    doc.n = n;
    if (root.contains("metadata")) {
        const auto& meta = root.at("metadata");
        if (!meta.is_object()) throw ParseError("document: 'metadata' must be an object");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string())
                throw ParseError("document: metadata value for '" + key + "' must be a string");
            doc.metadata[key] = value.get<std::string>();
        }
    }

    const auto& entries = detail::field(root, "entries", "document");
    if (!entries.is_array()) throw ParseError("document: 'entries' must be an array");

    auto entry_name = [](std::size_t i) { return "entries[" + std::to_string(i) + "]"; };

    if (kind_text == "box" || kind_text == "functional") {
        const bool is_box = kind_text == "box";
        doc.kind = is_box ? DocKind::box : DocKind::functional;
        std::vector<bool> seen(std::size_t{1} << (2 * n), false);
        Box box(n);
        BellFunctional fun(n);
        std::size_t count = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string where = entry_name(i);
            const BinaryVector s = detail::bits_field(entries[i], "s", n, where);
            const BinaryVector a = detail::bits_field(entries[i], "a", n, where);
            const Rational v = detail::value_field(entries[i], strict, where);
            const std::size_t idx = (std::size_t{s.bits()} << n) | a.bits();
            if (seen[idx])
                throw ParseError(where + ": duplicate entry (s=" + s.to_string() + ", a=" +
                                 a.to_string() + ")");
            seen[idx] = true;
            ++count;
            if (is_box)
                box.at(s, a) = v;
            else
                fun.at(s, a) = v;
        }
        if (strict && count != (std::size_t{1} << (2 * n)))
            throw IncompleteTableError("document lists " + std::to_string(count) + " of " +
                                       std::to_string(std::size_t{1} << (2 * n)) + " events");
        if (is_box)
            doc.box = std::move(box);
        else
            doc.functional = std::move(fun);
        return doc;
    }

    if (kind_text == "correlations") {
        doc.kind = DocKind::correlations;
        CorrelationGrid grid(n);
        std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string where = entry_name(i);
            const BinaryVector c = detail::bits_field(entries[i], "c", n, where);
            const BinaryVector s = detail::bits_field(entries[i], "s", n, where);
            if (!s.subset_of(c))
                throw ParseError(where + ": s=" + s.to_string() + " is not a subset of c=" +
                                 c.to_string());
            const Rational v = detail::value_field(entries[i], strict, where);
            if (!seen.emplace(std::make_pair(c.bits(), s.bits()), true).second)
                throw ParseError(where + ": duplicate entry (c=" + c.to_string() + ", s=" +
                                 s.to_string() + ")");
            grid.at(c, s) = v;
        }
        if (seen.size() != grid.size())
            throw IncompleteTableError("correlation chart lists " + std::to_string(seen.size()) +
                                       " of " + std::to_string(grid.size()) + " coordinates");
        doc.correlations = std::move(grid);
        return doc;
    }

    if (kind_text == "certificate") {
        doc.kind = DocKind::certificate;
        const auto verdict_it = doc.metadata.find("verdict");
        if (verdict_it == doc.metadata.end())
            throw ParseError("certificate document: metadata lacks 'verdict'");
        Certificate cert;
        if (verdict_it->second == "local") {
            cert.verdict = Certificate::Verdict::local;
            std::vector<bool> seen(std::size_t{1} << (2 * n), false);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const std::string where = entry_name(i);
                const BinaryVector a = detail::bits_field(entries[i], "a", n, where);
                const BinaryVector b = detail::bits_field(entries[i], "b", n, where);
                const Rational v = detail::value_field(entries[i], strict, where);
                const std::size_t idx = (std::size_t{a.bits()} << n) | b.bits();
                if (seen[idx])
                    throw ParseError(where + ": duplicate weight (a=" + a.to_string() + ", b=" +
                                     b.to_string() + ")");
                seen[idx] = true;
                cert.weights.emplace_back(DeterministicStrategy(a, b), v);
            }
            if (cert.weights.empty())
                throw IncompleteTableError("local certificate lists no weights");
        } else if (verdict_it->second == "nonlocal") {
            cert.verdict = Certificate::Verdict::nonlocal;
            BellFunctional separator(n);
            std::vector<bool> seen(std::size_t{1} << (2 * n), false);
            std::size_t count = 0;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const std::string where = entry_name(i);
                const BinaryVector s = detail::bits_field(entries[i], "s", n, where);
                const BinaryVector a = detail::bits_field(entries[i], "a", n, where);
                const Rational v = detail::value_field(entries[i], strict, where);
                const std::size_t idx = (std::size_t{s.bits()} << n) | a.bits();
                if (seen[idx])
                    throw ParseError(where + ": duplicate entry (s=" + s.to_string() + ", a=" +
                                     a.to_string() + ")");
                seen[idx] = true;
                ++count;
                separator.at(s, a) = v;
            }
            if (strict && count != (std::size_t{1} << (2 * n)))
                throw IncompleteTableError("separator lists " + std::to_string(count) + " of " +
                                           std::to_string(std::size_t{1} << (2 * n)) + " events");
            cert.separator = std::move(separator);
        } else {
            throw ParseError("certificate document: unknown verdict '" + verdict_it->second +
                             "'");
        }
        doc.certificate = std::move(cert);
        return doc;
    }

    throw ParseError("unknown document kind '" + kind_text + "'");
}

}  // namespace bellbox
