// Command-line surface over the bellbox library. Every command reads and
// writes the JSON document format; `-` stands for stdin/stdout so commands
// compose in pipelines. Verdict lines go to stderr, documents and reports to
// stdout (or --out). Exit status: 0 success or true verdict, 1 false
// verdict, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bellbox/bellbox.hpp"

namespace {

using namespace bellbox;
using nlohmann::ordered_json;

struct Opts {
    int n = 0;
    int limit = kDefaultPartyLimit;
    bool strict = false;
    bool standardize_first = false;
    std::string out = "-";
    std::string file;
    std::string file2;
    std::string perm;
    std::string swap_settings;
    std::string flip;
    std::string flip_setting;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out) {
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw ParseError("cannot open output file '" + out + "'");
    file << text;
}

void verdict_line(const std::string& text) { std::cerr << text << "\n"; }

std::string report_text(const ordered_json& report) { return report.dump(2) + "\n"; }

Document load(const Opts& opts, const std::string& path) {
    Document doc = parse_document(read_input(path), opts.strict, opts.limit);
    if (opts.n != 0 && opts.n != doc.n)
        throw DimensionError("--n " + std::to_string(opts.n) + " does not match document n=" +
                             std::to_string(doc.n));
    return doc;
}

Box need_box(Document& doc, const std::string& cmd) {
    if (!doc.box) throw ParseError(cmd + " expects a box document, got " + kind_name(doc.kind));
    return std::move(*doc.box);
}

BellFunctional need_functional(Document& doc, const std::string& cmd) {
    if (!doc.functional)
        throw ParseError(cmd + " expects a functional document, got " + kind_name(doc.kind));
    return std::move(*doc.functional);
}

int require_n(const Opts& opts) {
    if (opts.n < 1) throw OutOfRangeError("this command needs --n");
    return opts.n;
}

Relabeling relabeling_from_flags(const Opts& opts, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    if (!opts.perm.empty()) {
        perm.clear();
        std::stringstream ss(opts.perm);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                perm.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw ParseError("bad --perm entry '" + item + "'");
            }
        }
    }
    auto bits_or_zero = [&](const std::string& text, const char* flag) {
        if (text.empty()) return BinaryVector::zero(n);
        const BinaryVector v = BinaryVector::parse(text);
        if (v.size() != n)
            throw ParseError(std::string(flag) + " must be a bitstring of length " +
                             std::to_string(n));
        return v;
    };
    return Relabeling(std::move(perm), bits_or_zero(opts.swap_settings, "--swap"),
                      bits_or_zero(opts.flip, "--flip"),
                      bits_or_zero(opts.flip_setting, "--flip-setting"));
}

int run_hardy(const Opts& opts) {
    const int n = require_n(opts);
    BellFunctional f = hardy_functional(n, opts.limit);
    if (opts.standardize_first) f = standardize(f);
    write_output(serialize_document(f), opts.out);
    verdict_line("hardy: functional document, n=" + std::to_string(n) +
                 (opts.standardize_first ? " (standardized)" : ""));
    return 0;
}

int run_hardy_box(const Opts& opts) {
    const int n = require_n(opts);
    write_output(serialize_document(hardy_box(n, opts.limit)), opts.out);
    verdict_line("hardy-box: box document, n=" + std::to_string(n));
    return 0;
}

int run_vertices(const Opts& opts) {
    const int n = require_n(opts);
    const auto strategies = enumerate_vertices(n, opts.limit);
    ordered_json report;
    report["command"] = "vertices";
    report["n"] = n;
    report["count"] = strategies.size();
    report["strategies"] = ordered_json::array();
    for (const auto& d : strategies) {
        ordered_json item;
        item["a"] = d.a.to_string();
        item["b"] = d.b.to_string();
        report["strategies"].push_back(std::move(item));
    }
    write_output(report_text(report), opts.out);
    verdict_line("vertices: " + std::to_string(strategies.size()) + " deterministic strategies");
    return 0;
}

int run_standardize(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const BellFunctional f = need_functional(doc, "standardize");
    write_output(serialize_document(standardize(f)), opts.out);
    verdict_line("standardize: functional document, n=" + std::to_string(f.parties()));
    return 0;
}

int run_dualize(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const BellFunctional f = need_functional(doc, "dualize");
    bool standardized = false;
    const Box box = box_from_functional(f, &standardized);
    if (standardized)
        verdict_line("dualize: input was not in standard form; standardized first");
    write_output(serialize_document(box), opts.out);
    verdict_line("dualize: box document, n=" + std::to_string(box.parties()));
    return 0;
}

int run_undualize(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "undualize");
    write_output(serialize_document(functional_from_box(box)), opts.out);
    verdict_line("undualize: functional document, n=" + std::to_string(box.parties()));
    return 0;
}

int run_eval(const Opts& opts) {
    if (opts.file == "-" && opts.file2 == "-")
        throw ParseError("eval: only one input may be '-'");
    Document fdoc = load(opts, opts.file);
    Document bdoc = load(opts, opts.file2);
    const BellFunctional f = need_functional(fdoc, "eval");
    const Box box = need_box(bdoc, "eval");
    const Rational value = evaluate(f, box);
    ordered_json report;
    report["command"] = "eval";
    report["n"] = f.parties();
    report["value"] = to_string(value);
    report["theta"] = to_string(theta_value(f));
    write_output(report_text(report), opts.out);
    verdict_line("eval: " + to_string(value));
    return 0;
}

int run_corr(const Opts& opts) {
    Document doc = load(opts, opts.file);
    if (doc.box) {
        // The chart only determines a box on the non-signaling slice; in
        // strict mode refuse inputs it would silently project.
        if (opts.strict) require_nonsignaling(*doc.box);
        write_output(serialize_correlations(correlations_of_box(*doc.box)), opts.out);
        verdict_line("corr: correlation chart of a box, n=" + std::to_string(doc.n));
        return 0;
    }
    if (doc.functional) {
        write_output(serialize_correlations(correlation_coeffs(*doc.functional)), opts.out);
        verdict_line("corr: correlation coefficients of a functional, n=" +
                     std::to_string(doc.n));
        return 0;
    }
    throw ParseError("corr expects a box or functional document, got " + kind_name(doc.kind));
}

int run_check_ns(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "check-ns");
    box.require_normalized();
    const auto witness = find_signaling(box);
    ordered_json report;
    report["command"] = "check-ns";
    report["n"] = box.parties();
    report["nonsignaling"] = !witness.has_value();
    if (witness) {
        ordered_json w;
        w["party"] = witness->party;
        const int rest = box.parties() - 1;
        if (rest > 0) {
            w["context_settings"] = BinaryVector(rest, witness->other_settings).to_string();
            w["context_outcomes"] = BinaryVector(rest, witness->other_outcomes).to_string();
        }
        report["witness"] = std::move(w);
    }
    write_output(report_text(report), opts.out);
    verdict_line(witness ? "signaling (witness: observer " + std::to_string(witness->party) + ")"
                         : "non-signaling");
    return witness ? 1 : 0;
}

int run_check_tight(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const BellFunctional f = need_functional(doc, "check-tight");
    const TightnessReport tight = is_tight(f);
    ordered_json report;
    report["command"] = "check-tight";
    report["n"] = f.parties();
    report["tight"] = tight.tight;
    report["rank"] = tight.rank;
    report["required"] = tight.required;
    report["saturating"] = tight.saturating;
    report["theta"] = to_string(theta_value(f));
    write_output(report_text(report), opts.out);
    verdict_line((tight.tight ? "tight" : "not tight") + std::string(": rank ") +
                 std::to_string(tight.rank) + " of required " + std::to_string(tight.required));
    return tight.tight ? 0 : 1;
}

int run_check_extremal(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "check-extremal");
    const ExtremalityReport ext = is_extremal(box);
    ordered_json report;
    report["command"] = "check-extremal";
    report["n"] = box.parties();
    report["extremal"] = ext.extremal;
    report["defect"] = ext.defect;
    report["chart_dim"] = ext.chart_dim;
    report["zero_rank"] = ext.zero_rank;
    report["zeros"] = ext.zero_count;
    write_output(report_text(report), opts.out);
    verdict_line(ext.extremal
                     ? "extremal: " + std::to_string(ext.zero_rank) + " independent zeros cut " +
                           std::to_string(ext.chart_dim) + " chart dimensions to a point"
                     : "not extremal: defect " + std::to_string(ext.defect));
    return ext.extremal ? 0 : 1;
}

int run_membership(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "membership");
    const Certificate cert = is_local(box);
    write_output(serialize_document(cert), opts.out);
    if (cert.is_local()) {
        verdict_line("local: mixture of " + std::to_string(cert.weights.size()) +
                     " deterministic strategies");
        return 0;
    }
    verdict_line("nonlocal: separating functional evaluates to " +
                 to_string(evaluate(*cert.separator, box)));
    return 1;
}

int run_hardy_test(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "hardy-test");
    const HardyTestResult result = hardy_test(box);
    ordered_json report;
    report["command"] = "hardy-test";
    report["n"] = box.parties();
    report["pass"] = result.pass;
    report["failing"] = result.failing;
    write_output(report_text(report), opts.out);
    verdict_line(result.pass ? "pass: all Hardy conditions hold"
                             : "fail: " + std::to_string(result.failing.size()) +
                                   " condition(s) violated");
    return result.pass ? 0 : 1;
}

int run_relabel(const Opts& opts) {
    Document doc = load(opts, opts.file);
    const Box box = need_box(doc, "relabel");
    const Relabeling r = relabeling_from_flags(opts, box.parties());
    write_output(serialize_document(apply_relabeling(r, box)), opts.out);
    verdict_line("relabel: box document, n=" + std::to_string(box.parties()));
    return 0;
}

void add_common(CLI::App* cmd, Opts& opts, bool with_n) {
    if (with_n) cmd->add_option("--n", opts.n, "party count");
    cmd->add_option("--limit", opts.limit, "party-count limit (default 5)");
    cmd->add_flag("--strict", opts.strict, "strict parsing and signaling checks");
    cmd->add_option("--out", opts.out, "output file ('-' = stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Bell-polytope and non-signaling-box toolkit for the (n,2,2) scenario"};
    app.require_subcommand(1);

    Opts opts;
    std::function<int(const Opts&)> action;

    auto make = [&](const std::string& name, const std::string& desc, bool with_n,
                    int(*fn)(const Opts&)) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, opts, with_n);
        cmd->callback([&action, fn]() { action = fn; });
        return cmd;
    };

    CLI::App* hardy = make("hardy", "emit the n-party Hardy inequality", true, run_hardy);
    hardy->add_flag("--standardize", opts.standardize_first, "standardize before writing");

    make("hardy-box", "emit the n-party Hardy box", true, run_hardy_box);
    make("vertices", "list all deterministic strategies", true, run_vertices);

    make("standardize", "cast a Bell inequality into standard form", true, run_standardize)
        ->add_option("file", opts.file, "functional document")->required();
    make("dualize", "map a Bell inequality to its non-signaling box", true, run_dualize)
        ->add_option("file", opts.file, "functional document")->required();
    make("undualize", "map a non-signaling box to its Bell inequality", true, run_undualize)
        ->add_option("file", opts.file, "box document")->required();

    CLI::App* eval_cmd = make("eval", "pair a functional with a box", true, run_eval);
    eval_cmd->add_option("functional", opts.file, "functional document")->required();
    eval_cmd->add_option("box", opts.file2, "box document")->required();

    make("corr", "correlation coordinates of a box or functional", true, run_corr)
        ->add_option("file", opts.file, "box or functional document")->required();
    make("check-ns", "verify the non-signaling conditions", true, run_check_ns)
        ->add_option("file", opts.file, "box document")->required();
    make("check-tight", "certify tightness of a Bell inequality", true, run_check_tight)
        ->add_option("file", opts.file, "functional document")->required();
    make("check-extremal", "certify extremality of a non-signaling box", true,
         run_check_extremal)
        ->add_option("file", opts.file, "box document")->required();
    make("membership", "decide Bell-polytope membership with a certificate", true,
         run_membership)
        ->add_option("file", opts.file, "box document")->required();
    make("hardy-test", "run Hardy's n+2 conditions on a box", true, run_hardy_test)
        ->add_option("file", opts.file, "box document")->required();

    CLI::App* relabel = make("relabel", "apply a local relabeling to a box", true, run_relabel);
    relabel->add_option("file", opts.file, "box document")->required();
    relabel->add_option("--perm", opts.perm, "party permutation, e.g. 2,1 (new <- old)");
    relabel->add_option("--swap", opts.swap_settings, "per-party setting swap bitstring");
    relabel->add_option("--flip", opts.flip, "per-party outcome flip bitstring (alpha)");
    relabel->add_option("--flip-setting", opts.flip_setting,
                        "per-party setting-conditioned outcome flip bitstring (beta)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action(opts) : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
