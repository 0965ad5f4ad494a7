// sigma-groups: analyze finite groups, verify the sigma-theory check
// catalog over a corpus, and export subgroup lattices.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigma/corpus.hpp"
#include "sigma/dot_export.hpp"
#include "sigma/group.hpp"
#include "sigma/io.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"
#include "sigma/subnormality.hpp"
#include "sigma/verifier.hpp"

using nlohmann::json;

namespace {

std::vector<int64_t> parse_prime_list(const std::string& s) {
    std::vector<int64_t> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

sigma::PartitionSelector parse_selector(const std::string& tok) {
    using PS = sigma::PartitionSelector;
    if (tok == "finest") return PS::finest();
    if (tok == "all-two-blocks") return PS::all_two_blocks();
    if (tok.rfind("two-block:", 0) == 0) return PS::two_block(parse_prime_list(tok.substr(10)));
    if (tok.rfind("file:", 0) == 0) return PS::from_file(tok.substr(5));
    throw sigma::Error(sigma::Errc::ValidationError, "unknown sigma selector \"" + tok + "\"");
}

std::vector<sigma::PartitionSelector> parse_selectors(const std::string& csv) {
    // comma-separated selectors; a bare numeric token continues the prime
    // list of a preceding two-block selector
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch != ',') {
            cur += ch;
            continue;
        }
        if (!cur.empty()) {
            bool numeric = cur.find_first_not_of("0123456789") == std::string::npos;
            if (numeric && !toks.empty() && toks.back().rfind("two-block:", 0) == 0)
                toks.back() += "," + cur;
            else
                toks.push_back(cur);
        }
        cur.clear();
    }
    std::vector<sigma::PartitionSelector> out;
    for (auto& t : toks) out.push_back(parse_selector(t));
    return out;
}

sigma::SigmaPartition parse_single_sigma(const std::string& tok) {
    using K = sigma::PartitionSelector::Kind;
    sigma::PartitionSelector sel = parse_selector(tok);
    switch (sel.kind) {
        case K::Finest: return sigma::SigmaPartition::finest();
        case K::TwoBlock: return sigma::SigmaPartition::two_block(sel.pi);
        case K::FromFile: return sigma::load_partition_file(sel.path);
        default:
            throw sigma::Error(sigma::Errc::ValidationError,
                               "this command needs a single partition, not a family");
    }
}

sigma::Group resolve_group(const std::string& arg) {
    if (arg.rfind("builtin:", 0) == 0) {
        std::string name = arg.substr(8);
        for (auto& e : sigma::builtin_corpus(/*with_tags=*/false))
            if (e.name == name) return sigma::construct(*e.recipe, e.name);
        throw sigma::Error(sigma::Errc::ValidationError, "no builtin group named \"" + name + "\"");
    }
    return sigma::load_group_file(arg);
}

int cmd_analyze(const std::string& group_arg, const std::string& sigma_arg, bool as_json) {
    sigma::Group g = resolve_group(group_arg);
    sigma::SigmaPartition sig = parse_single_sigma(sigma_arg);
    sigma::Lattice lat = sigma::enumerate_subgroups(g);
    json inv;
    sigma::verify_group(g, lat, sig, {}, &inv);  // reuse invariant assembly
    inv["group"] = g.name;
    inv["sigma"] = sig.label();
    if (as_json) {
        std::cout << inv.dump(2) << "\n";
        return 0;
    }
    std::cout << "group " << g.name << "  order " << g.n << "  subgroups " << lat.size() << "\n";
    std::cout << "sigma: " << sig.label() << "\n";
    std::cout << "pi(G): " << json(inv["pi"]).dump() << "\n";
    std::cout << "sigma(G): " << json(inv["sigma_g"]).dump() << "\n";
    for (const char* k : {"abelian", "nilpotent", "soluble", "supersoluble", "schmidt",
                          "sigma_primary", "sigma_nilpotent", "sigma_soluble"})
        std::cout << "  " << k << ": " << (inv[k].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "m_sigma = " << inv["m_sigma"] << ", m_sigma_q = " << inv["m_sigma_q"] << "\n";
    if (inv.contains("h_sigma")) std::cout << "h_sigma = " << inv["h_sigma"] << "\n";
    if (inv.contains("l_sigma")) std::cout << "l_sigma = " << inv["l_sigma"] << "\n";
    if (inv.contains("rank")) std::cout << "rank = " << inv["rank"] << "\n";
    std::cout << "sigma-residual order = " << inv["sigma_residual_order"] << "\n";
    return 0;
}

int cmd_verify(const std::string& corpus_arg, const std::string& sigma_csv, int max_order, int jobs,
               const std::string& report_path, bool extended) {
    sigma::CorpusLoad corpus;
    if (corpus_arg == "builtin") {
        corpus = sigma::load_builtin_corpus(extended, max_order);
    } else if (corpus_arg.rfind("dir:", 0) == 0) {
        corpus = sigma::load_corpus_dir(corpus_arg.substr(4), max_order);
    } else {
        throw sigma::Error(sigma::Errc::ValidationError,
                           "corpus must be \"builtin\" or \"dir:<path>\"");
    }
    auto sels = parse_selectors(sigma_csv);
    json config{{"corpus", corpus_arg}, {"sigma", sigma_csv},     {"max_order", max_order},
                {"jobs", jobs},         {"extended", extended}};
    sigma::Report rep = sigma::verify_corpus(corpus, sels, {}, jobs, config);

    const json& summary = rep.doc["summary"];
    std::cout << "groups: " << corpus.groups.size() << "  pass: " << summary["pass"]
              << "  fail: " << summary["fail"] << "  skipped: " << summary["skipped"]
              << "  capped: " << summary["capped"] << "\n";
    for (const auto& e : rep.doc["errors"])
        std::cerr << "error: " << e["entry"].get<std::string>() << ": "
                  << e["error"].get<std::string>() << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw sigma::Error(sigma::Errc::ParseError, report_path + ": cannot write");
        out << rep.doc.dump(1) << "\n";
    }
    if (rep.had_errors) return 2;
    return rep.fails ? 1 : 0;
}

int cmd_lattice(const std::string& group_arg, const std::string& dot_path,
                const std::string& sigma_arg, const std::string& marks_csv) {
    sigma::Group g = resolve_group(group_arg);
    sigma::SigmaPartition sig = parse_single_sigma(sigma_arg);
    sigma::Lattice lat = sigma::enumerate_subgroups(g);
    sigma::DotMarks marks;
    std::string cur;
    for (char ch : marks_csv + ",") {
        if (ch != ',') {
            cur += ch;
            continue;
        }
        if (cur == "normal") marks.normal = true;
        else if (cur == "sigma-subnormal") marks.sigma_subnormal = true;
        else if (cur == "sigma-quasinormal") marks.sigma_quasinormal = true;
        else if (!cur.empty())
            throw sigma::Error(sigma::Errc::ValidationError, "unknown mark \"" + cur + "\"");
        cur.clear();
    }
    std::string dot = sigma::export_dot(g, lat, sig, marks);
    if (dot_path == "-") {
        std::cout << dot;
    } else {
        std::ofstream out(dot_path);
        if (!out) throw sigma::Error(sigma::Errc::ParseError, dot_path + ": cannot write");
        out << dot;
    }
    return 0;
}

int cmd_list_corpus(bool as_json) {
    auto entries = sigma::builtin_corpus();
    if (as_json) {
        json arr = json::array();
        for (auto& e : entries) {
            sigma::Group g = sigma::construct(*e.recipe, e.name);
            arr.push_back(json{{"name", e.name},
                               {"order", g.n},
                               {"tags", e.tags},
                               {"extended", e.extended}});
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    for (auto& e : entries) {
        sigma::Group g = sigma::construct(*e.recipe, e.name);
        std::printf("%-12s order %3d ", e.name.c_str(), g.n);
        for (auto& t : e.tags) std::printf(" %s", t.c_str());
        if (e.extended) std::printf(" [extended]");
        std::printf("\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite group sigma-theory calculator and verification harness"};
    app.require_subcommand(1);

    std::string group_arg, sigma_arg = "finest", report_path, marks_csv, dot_path = "-";
    std::string corpus_arg = "builtin", sigma_csv = "finest";
    int max_order = 120, jobs = 1;
    bool as_json = false, extended = false;

    auto* analyze = app.add_subcommand("analyze", "invariants of one group under one partition");
    analyze->add_option("group", group_arg, "group file or builtin:NAME")->required();
    analyze->add_option("--sigma", sigma_arg, "finest | two-block:p,q | file:<path>");
    analyze->add_flag("--json", as_json, "emit JSON");

    auto* verify = app.add_subcommand("verify", "run the check catalog over a corpus");
    verify->add_option("--corpus", corpus_arg, "builtin | dir:<path>");
    verify->add_option("--sigma", sigma_csv, "comma list: finest,all-two-blocks,two-block:p's,file:<p>");
    verify->add_option("--max-order", max_order, "skip groups larger than this");
    verify->add_option("--jobs", jobs, "worker threads");
    verify->add_option("--report", report_path, "write the JSON report here");
    verify->add_flag("--extended", extended, "include extended (larger) builtin entries");

    auto* lattice = app.add_subcommand("lattice", "export the Hasse diagram as DOT");
    lattice->add_option("group", group_arg, "group file or builtin:NAME")->required();
    lattice->add_option("--dot", dot_path, "output path, or - for stdout");
    lattice->add_option("--sigma", sigma_arg, "partition for the sigma marks");
    lattice->add_option("--mark", marks_csv, "comma list: normal,sigma-subnormal,sigma-quasinormal");

    auto* list = app.add_subcommand("list-corpus", "show the builtin corpus");
    list->add_flag("--json", as_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(group_arg, sigma_arg, as_json);
        if (app.got_subcommand(verify))
            return cmd_verify(corpus_arg, sigma_csv, max_order, jobs, report_path, extended);
        if (app.got_subcommand(lattice)) return cmd_lattice(group_arg, dot_path, sigma_arg, marks_csv);
        if (app.got_subcommand(list)) return cmd_list_corpus(as_json);
    } catch (const sigma::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
