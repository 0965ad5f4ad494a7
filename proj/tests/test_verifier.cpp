#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "sigma/corpus.hpp"
#include "sigma/dot_export.hpp"
#include "sigma/group.hpp"
#include "sigma/group_spec.hpp"
#include "sigma/verifier.hpp"

using namespace sigma;
namespace fs = std::filesystem;

namespace {

const SigmaPartition kFinest = SigmaPartition::finest();

std::map<std::string, CheckResult> by_check_name(const std::vector<CheckResult>& rs) {
    std::map<std::string, CheckResult> out;
    for (auto& r : rs) out[check_name(r.check)] = r;
    return out;
}

int count_substr(const std::string& s, const std::string& needle) {
    int n = 0;
    for (size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("verify_group on A5 under the finest partition") {
    Group g = construct({Alternating{5}}, "A5");
    Lattice lat = enumerate_subgroups(g);
    json inv;
    auto rs = verify_group(g, lat, kFinest, {}, &inv);
    CHECK(rs.size() == all_checks().size());
    auto m = by_check_name(rs);

    CHECK(m["T1.4.ii"].status == Status::Skipped);
    CHECK(m["T1.4.ii"].precondition == "1<m_sigma<=3");
    CHECK(m["P3.4"].status == Status::Pass);
    CHECK(m["P3.4"].details["value"] == false);
    CHECK(m["P3.2.i"].status == Status::Skipped);
    CHECK(m["P3.2.i"].precondition == "sigma-soluble");
    CHECK(m["L4.2.1"].status == Status::Pass);

    CHECK(inv["m_sigma_q"] == 4);
    CHECK(inv["m_sigma"] == 4);
    CHECK(inv["h_sigma"] == 4);
    CHECK(inv["sigma_residual_order"] == 60);
    CHECK(inv["pi_minus_m_sigma"] == -1);
}

TEST_CASE("verify_group on S3 and C12") {
    Group s3 = construct({Symmetric{3}}, "S3");
    Lattice lat3 = enumerate_subgroups(s3);
    auto m3 = by_check_name(verify_group(s3, lat3, kFinest));
    CHECK(m3["C1.7"].status == Status::Pass);
    CHECK(m3["C1.7"].details["both_sides"] == true);
    CHECK(m3["C3.9"].status == Status::Pass);
    CHECK(m3["L3.7"].status == Status::Pass);
    CHECK(m3["T1.10.fwd"].status == Status::Pass);

    Group c12 = construct({Cyclic{12}}, "C12");
    Lattice lat12 = enumerate_subgroups(c12);
    json inv;
    auto m12 = by_check_name(verify_group(c12, lat12, kFinest, {}, &inv));
    CHECK(m12["P3.4"].status == Status::Pass);
    CHECK(m12["P3.4"].details["value"] == true);
    CHECK(inv["m_sigma"] == 1);
    CHECK(m12["C1.9"].status == Status::Pass);
    CHECK(m12["T1.10.fwd"].status == Status::Skipped);  // m_sigma=1 < |pi|=2
}

TEST_CASE("no check ever fails across the default corpus with finest sigma") {
    CorpusLoad corpus = load_builtin_corpus(false, 24);  // order cap keeps this test quick
    Report rep = verify_corpus(corpus, {PartitionSelector::finest()});
    CHECK(rep.fails == 0);
    CHECK(!rep.had_errors);
    for (auto& r : rep.doc["results"]) CHECK(r["status"] != "fail");
}

TEST_CASE("skipped results name a precondition that is genuinely false") {
    VerifyConfig cfg;
    for (auto& name : {std::string("A5"), std::string("S3"), std::string("F20"), std::string("Q8")}) {
        Group g;
        for (auto& e : builtin_corpus(false))
            if (e.name == name) g = construct(*e.recipe, e.name);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            for (auto& r : verify_group(g, lat, sig, cfg)) {
                if (r.status != Status::Skipped) continue;
                CAPTURE(name);
                CAPTURE(r.precondition);
                CHECK(!evaluate_precondition(r.precondition, g, lat, sig, cfg));
            }
        }
    }
}

TEST_CASE("failures would carry witnesses") {
    // the corpus is expected to stay green; the invariant "fail => witness
    // present" is enforced structurally over whatever the run produced
    CorpusLoad corpus = load_builtin_corpus(false, 30);
    Report rep = verify_corpus(corpus, {PartitionSelector::finest()});
    for (auto& r : rep.doc["results"])
        if (r["status"] == "fail") CHECK(r.contains("witness"));
}

TEST_CASE("resource caps surface as capped, never as silent truncation") {
    Group s3 = construct({Symmetric{3}}, "S3");
    Lattice lat = enumerate_subgroups(s3);
    VerifyConfig tight;
    tight.hall_budget = 2;  // S3 has 3 complete Hall sigma-sets
    auto m = by_check_name(verify_group(s3, lat, kFinest, tight));
    CHECK(m["P3.2.iii"].status == Status::Capped);
    CHECK(m["T1.2.i"].status == Status::Capped);

    Group s4 = construct({Symmetric{4}}, "S4");
    Lattice lat4 = enumerate_subgroups(s4);
    VerifyConfig tiny;
    tiny.chain_budget = 3;
    auto m4 = by_check_name(verify_group(s4, lat4, kFinest, tiny));
    CHECK(m4["T1.4.i"].status == Status::Capped);
}

TEST_CASE("verify_corpus: empty corpus and malformed entries") {
    CorpusLoad empty;
    Report rep = verify_corpus(empty, {PartitionSelector::finest()});
    CHECK(rep.doc["results"].empty());
    CHECK(rep.doc["summary"]["pass"] == 0);
    CHECK(rep.doc["summary"]["fail"] == 0);
    CHECK(rep.fails == 0);

    fs::path dir = fs::temp_directory_path() / "sigma_verify_dir";
    fs::create_directories(dir);
    {
        std::ofstream(dir / "good.json") << R"({"name":"C6","kind":"cayley",
            "table":[[0,1,2,3,4,5],[1,2,3,4,5,0],[2,3,4,5,0,1],[3,4,5,0,1,2],[4,5,0,1,2,3],[5,0,1,2,3,4]]})";
        std::ofstream(dir / "bad.json") << "{broken";
    }
    CorpusLoad load = load_corpus_dir(dir.string(), 120);
    Report rep2 = verify_corpus(load, {PartitionSelector::finest()});
    CHECK(rep2.had_errors);
    CHECK(rep2.doc["errors"].size() == 1);
    CHECK(!rep2.doc["results"].empty());
    CHECK(rep2.fails == 0);
    fs::remove_all(dir);
}

TEST_CASE("report determinism (jobs do not affect bytes)") {
    CorpusLoad corpus = load_builtin_corpus(false, 24);
    json cfg_echo{{"corpus", "builtin"}, {"sigma", "finest"}};
    Report a = verify_corpus(corpus, {PartitionSelector::finest()}, {}, 1, cfg_echo);
    Report b = verify_corpus(corpus, {PartitionSelector::finest()}, {}, 2, cfg_echo);
    CHECK(a.doc.dump() == b.doc.dump());
    Report c = verify_corpus(corpus, {PartitionSelector::finest()}, {}, 2, cfg_echo);
    CHECK(b.doc.dump() == c.doc.dump());
}

TEST_CASE("report structure") {
    CorpusLoad corpus = load_builtin_corpus(false, 12);
    Report rep = verify_corpus(corpus, {PartitionSelector::finest()}, {}, 1,
                               json{{"corpus", "builtin"}});
    CHECK(rep.doc["schema"] == 1);
    CHECK(rep.doc["tool"]["name"] == "sigma-groups");
    CHECK(rep.doc.contains("summary"));
    CHECK(rep.doc.contains("invariants"));
    // results sorted by (group, sigma, check ordinal)
    std::string prev_group;
    for (auto& r : rep.doc["results"]) {
        std::string g = r["group"];
        CHECK(prev_group <= g);
        if (prev_group != g) prev_group = g;
    }
    // every invariant row tabulates the pi-delta columns
    for (auto& inv : rep.doc["invariants"]) {
        CHECK(inv.contains("pi_minus_m_sigma"));
        if (inv["order"] > 1) CHECK(inv.contains("pi_minus_h_sigma"));
    }
}

TEST_CASE("dot export") {
    Group s3 = construct({Symmetric{3}}, "S3");
    Lattice lat3 = enumerate_subgroups(s3);
    DotMarks marks;
    marks.sigma_subnormal = true;
    std::string dot = export_dot(s3, lat3, kFinest, marks);
    CHECK(count_substr(dot, "label=") == 6);
    CHECK(count_substr(dot, "fillcolor=lightblue") == 3);  // 1, C3, S3
    CHECK(dot.find("rankdir=BT") != std::string::npos);

    Group trivial = build_from_cayley({{0}}, "1");
    Lattice latt = enumerate_subgroups(trivial);
    std::string dott = export_dot(trivial, latt, kFinest, marks);
    CHECK(count_substr(dott, "label=") == 1);
    CHECK(count_substr(dott, "->") == 0);

    Group a5 = construct({Alternating{5}}, "A5");
    Lattice lat5 = enumerate_subgroups(a5);
    std::string dot5 = export_dot(a5, lat5, kFinest, marks);
    CHECK(count_substr(dot5, "label=") == 59);
    CHECK(count_substr(dot5, "fillcolor=lightblue") == 2);

    // deterministic output
    CHECK(export_dot(a5, lat5, kFinest, marks) == dot5);

    // normal marks use a second periphery
    DotMarks nm;
    nm.normal = true;
    std::string dotn = export_dot(s3, lat3, kFinest, nm);
    CHECK(count_substr(dotn, "peripheries=2") == 3);  // 1, C3, S3
}
