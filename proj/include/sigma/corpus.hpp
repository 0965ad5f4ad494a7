#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "sigma/group.hpp"
#include "sigma/group_spec.hpp"
#include "sigma/io.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"

namespace sigma {

struct CorpusEntry {
    std::string name;
    SpecPtr recipe;
    std::set<std::string> tags;  // report grouping only
    bool extended = false;       // excluded from default verification runs
};

inline std::set<std::string> compute_tags(const Group& g, const Lattice& lat) {
    std::set<std::string> t;
    Bitset whole = Bitset::full(g.n);
    if (is_abelian_mask(g, whole)) t.insert("abelian");
    if (is_nilpotent_mask(g, whole)) t.insert("nilpotent");
    if (is_soluble_mask(g, whole)) t.insert("soluble");
    if (is_supersoluble(lat, lat.top())) t.insert("supersoluble");
    if (is_schmidt(lat)) t.insert("schmidt");
    if (g.n > 1 && normal_in_ambient(lat, lat.top()).count() == 2) t.insert("simple");
    return t;
}

namespace detail {

inline SpecPtr cyc(int n) { return spec({Cyclic{n}}); }

inline SpecPtr sl23_spec() {
    // SL(2,3) acting on the 8 nonzero vectors of F_3^2
    std::vector<std::pair<int, int>> vecs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) vecs.push_back({a, b});
    auto vidx = [&](int a, int b) {
        for (size_t i = 0; i < vecs.size(); ++i)
            if (vecs[i] == std::make_pair(a, b)) return (int)i;
        return -1;
    };
    auto mat = [&](int p, int q, int r, int s) {
        Permutation perm(8);
        for (size_t i = 0; i < vecs.size(); ++i) {
            auto [a, b] = vecs[i];
            perm[i] = vidx((p * a + q * b) % 3, (r * a + s * b) % 3);
        }
        return perm;
    };
    return spec({PermGens{8, {mat(1, 1, 0, 1), mat(0, 2, 1, 0)}}});
}

} // namespace detail

// Builtin catalog. Every entry constructs, has order <= 120, and survives
// lattice enumeration under the default caps.
inline std::vector<CorpusEntry> builtin_corpus(bool with_tags = true) {
    using detail::cyc;
    std::vector<CorpusEntry> out;
    auto add = [&](std::string name, SpecPtr sp, bool extended = false) {
        out.push_back({std::move(name), std::move(sp), {}, extended});
    };

    for (int n : {2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30}) add("C" + std::to_string(n), cyc(n));

    add("V4", spec({DirectProduct{cyc(2), cyc(2)}}));
    add("E8", spec({DirectProduct{spec({DirectProduct{cyc(2), cyc(2)}}), cyc(2)}}));
    add("E9", spec({DirectProduct{cyc(3), cyc(3)}}));
    add("C2xC4", spec({DirectProduct{cyc(2), cyc(4)}}));

    for (int m : {4, 5, 6, 7, 8, 9, 10, 12}) add("D" + std::to_string(2 * m), spec({Dihedral{m}}));

    add("Q8", spec({Dicyclic{2}}));
    add("Dic16", spec({Dicyclic{4}}));
    add("M16", spec({Semidirect{cyc(8), cyc(2), power_action(8, 2, 5)}}));
    add("C9:C3", spec({Semidirect{cyc(9), cyc(3), power_action(9, 3, 4)}}));
    add("D8xC3", spec({DirectProduct{spec({Dihedral{4}}), cyc(3)}}));
    add("Q8xC3", spec({DirectProduct{spec({Dicyclic{2}}), cyc(3)}}));
    add("C5xS3", spec({DirectProduct{cyc(5), spec({Symmetric{3}})}}));
    add("F42", spec({Semidirect{cyc(7), cyc(6), power_action(7, 6, 3)}}));

    add("S3", spec({Symmetric{3}}));
    add("A4", spec({Alternating{4}}));
    add("S4", spec({Symmetric{4}}));
    add("A5", spec({Alternating{5}}));
    add("SL(2,3)", detail::sl23_spec());

    add("F20", spec({Semidirect{cyc(5), cyc(4), power_action(5, 4, 2)}}));
    add("C7:C3", spec({Semidirect{cyc(7), cyc(3), power_action(7, 3, 2)}}));
    add("C13:C3", spec({Semidirect{cyc(13), cyc(3), power_action(13, 3, 3)}}));
    add("C3:C4", spec({Semidirect{cyc(3), cyc(4), power_action(3, 4, 2)}}));

    add("C2xA4", spec({DirectProduct{cyc(2), spec({Alternating{4}})}}));
    add("C3xS3", spec({DirectProduct{cyc(3), spec({Symmetric{3}})}}));
    {
        Group e9 = construct({DirectProduct{cyc(3), cyc(3)}});
        add("(C3xC3):C2",
            spec({Semidirect{spec({DirectProduct{cyc(3), cyc(3)}}), cyc(2), inversion_action(e9, 2)}}));
    }

    add("S5", spec({Symmetric{5}}), /*extended=*/true);

    if (with_tags) {
        for (auto& e : out) {
            Group g = construct(*e.recipe, e.name);
            Lattice lat = enumerate_subgroups(g);
            e.tags = compute_tags(g, lat);
        }
    }
    return out;
}

// ---- partition selection --------------------------------------------------

struct PartitionSelector {
    enum class Kind { Finest, TwoBlock, AllTwoBlocks, FromFile };
    Kind kind = Kind::Finest;
    std::vector<int64_t> pi;  // TwoBlock
    std::string path;         // FromFile

    static PartitionSelector finest() { return {Kind::Finest, {}, {}}; }
    static PartitionSelector two_block(std::vector<int64_t> pi) {
        return {Kind::TwoBlock, std::move(pi), {}};
    }
    static PartitionSelector all_two_blocks() { return {Kind::AllTwoBlocks, {}, {}}; }
    static PartitionSelector from_file(std::string path) {
        return {Kind::FromFile, {}, std::move(path)};
    }
};

// expand selectors for one group, deduplicated by the induced partition of
// pi(G); on a group with no primes at all this degenerates to [finest]
inline std::vector<SigmaPartition> partitions_for(const Group& g,
                                                  const std::vector<PartitionSelector>& sels) {
    std::vector<int64_t> primes = prime_divisors(g.n);
    std::vector<SigmaPartition> out;
    std::set<std::vector<std::vector<int64_t>>> seen;
    auto add = [&](SigmaPartition s) {
        if (seen.insert(s.induced_on(primes)).second) out.push_back(std::move(s));
    };
    for (const auto& sel : sels) {
        switch (sel.kind) {
            case PartitionSelector::Kind::Finest:
                add(SigmaPartition::finest());
                break;
            case PartitionSelector::Kind::TwoBlock:
                add(SigmaPartition::two_block(sel.pi));
                break;
            case PartitionSelector::Kind::AllTwoBlocks: {
                size_t k = primes.size();
                if (k == 0) break;
                if (k <= 3) {
                    for (unsigned sub = 1; sub < (1u << k); ++sub) {
                        std::vector<int64_t> pi;
                        for (size_t i = 0; i < k; ++i)
                            if (sub & (1u << i)) pi.push_back(primes[i]);
                        add(SigmaPartition::two_block(pi));
                    }
                } else {
                    for (int64_t p : primes) add(SigmaPartition::two_block({p}));
                }
                break;
            }
            case PartitionSelector::Kind::FromFile:
                add(load_partition_file(sel.path));
                break;
        }
    }
    if (out.empty()) out.push_back(SigmaPartition::finest());
    return out;
}

// ---- external corpora ------------------------------------------------------

struct LoadedGroup {
    std::string name;
    Group group;
};

struct CorpusLoad {
    std::vector<LoadedGroup> groups;
    std::vector<std::pair<std::string, std::string>> errors;  // (entry, message)
};

inline CorpusLoad load_builtin_corpus(bool include_extended, int max_order) {
    CorpusLoad load;
    for (auto& e : builtin_corpus(/*with_tags=*/false)) {
        if (e.extended && !include_extended) continue;
        try {
            Group g = construct(*e.recipe, e.name);
            if (g.n > max_order) continue;
            load.groups.push_back({e.name, std::move(g)});
        } catch (const Error& err) {
            load.errors.push_back({e.name, err.what()});
        }
    }
    return load;
}

inline CorpusLoad load_corpus_dir(const std::string& dir, int max_order, int order_cap = 2000) {
    CorpusLoad load;
    std::vector<std::string> files;
    std::error_code ec;
    for (auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    }
    if (ec) {
        load.errors.push_back({dir, "cannot read directory: " + ec.message()});
        return load;
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            Group g = load_group_file(f, order_cap);
            if (g.n > max_order) continue;
            std::string name = g.name.empty() ? std::filesystem::path(f).stem().string() : g.name;
            g.name = name;
            load.groups.push_back({name, std::move(g)});
        } catch (const Error& err) {
            load.errors.push_back({f, err.what()});
        }
    }
    return load;
}

} // namespace sigma
