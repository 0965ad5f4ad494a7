#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sigma/group.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"

namespace sigma {

inline bool is_sigma_primary(const SigmaPartition& sig, int64_t n) { return sig.primary(n); }
inline bool is_sigma_primary(const SigmaPartition& sig, const Group& g) { return sig.primary(g.n); }

inline bool is_sigma_coprime(const SigmaPartition& sig, int64_t m, int64_t n) {
    return sig.coprime(m, n);
}

inline bool is_sigma_fiber(const SigmaPartition& sig, const Group& g) {
    return sig.sigma_of(g.n).size() == prime_divisors(g.n).size();
}

// ---- Hall subgroups ------------------------------------------------------

// Hall Pi-subgroups of `ambient`: order a Pi-number, index a Pi'-number
inline std::vector<int> hall_subgroups(const Lattice& lat, int ambient, const BlockSet& pi,
                                       const SigmaPartition& sig) {
    int64_t target = sig.pi_part(lat.order(ambient), pi);
    std::vector<int> out;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == target && lat.mask(i).subset_of(lat.mask(ambient))) out.push_back(i);
    return out;
}

inline std::vector<int> hall_block_subgroups(const Lattice& lat, int ambient, BlockId b,
                                             const SigmaPartition& sig) {
    return hall_subgroups(lat, ambient, BlockSet{b}, sig);
}

// subgroups that are Hall Pi-subgroups for some Pi
inline bool is_sigma_hall_subgroup(const Lattice& lat, int ambient, int i, const SigmaPartition& sig) {
    int64_t h = lat.order(i);
    return sig.coprime(h, lat.order(ambient) / h);
}

// every complete Hall sigma-set, each as one Hall subgroup per block of
// sigma(G) in block order; the cross product is capped
inline std::vector<std::vector<int>> complete_hall_sigma_sets(const Lattice& lat,
                                                              const SigmaPartition& sig,
                                                              long long cap = 1000000) {
    BlockSet sg = sig.sigma_of(lat.order(lat.top()));
    std::vector<std::vector<int>> per_block;
    long long total = 1;
    for (BlockId b : sg) {
        per_block.push_back(hall_block_subgroups(lat, lat.top(), b, sig));
        if (per_block.back().empty()) return {};
        total *= (long long)per_block.back().size();
        if (total > cap) throw Error(Errc::CapExceeded, "complete Hall sigma-set enumeration exceeds cap");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur(per_block.size());
    auto rec = [&](auto&& self, size_t level) -> void {
        if (level == per_block.size()) {
            out.push_back(cur);
            return;
        }
        for (int i : per_block[level]) {
            cur[level] = i;
            self(self, level + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// complete Hall sigma-sets whose members pairwise permute
inline std::vector<std::vector<int>> sigma_basis_sets(const Lattice& lat, const SigmaPartition& sig,
                                                      long long cap = 1000000) {
    std::vector<std::vector<int>> out;
    for (auto& hs : complete_hall_sigma_sets(lat, sig, cap)) {
        bool ok = true;
        for (size_t i = 0; i < hs.size() && ok; ++i)
            for (size_t j = i + 1; j < hs.size() && ok; ++j) ok = permutes(lat, hs[i], hs[j]);
        if (ok) out.push_back(hs);
    }
    return out;
}

// A sigma-permutes with B inside R if A B^x = B^x A for some x in R;
// conjugates of B are its lattice conjugacy class when R = G
inline bool g_permutes(const Lattice& lat, int a, int b) {
    for (int b2 : lat.classes[lat.conj_class[b]])
        if (permutes(lat, a, b2)) return true;
    return false;
}

// ---- sigma-nilpotency and sigma-solubility -------------------------------

// the subgroup is the direct product of its Hall block-subgroups iff for
// every block the elements of block-order generate a full Hall subgroup
inline bool is_sigma_nilpotent(const Group& g, const SigmaPartition& sig, const Bitset& h) {
    int64_t n = h.count();
    for (BlockId b : sig.sigma_of(n)) {
        Bitset seed(g.n);
        for (int a = h.next(0); a >= 0; a = h.next(a + 1)) {
            int64_t o = g.element_order(a);
            if (sig.block_part(o, b) == o) seed.set(a);
        }
        if (generated_subgroup(g, seed).count() != sig.block_part(n, b)) return false;
    }
    return true;
}

inline bool is_sigma_nilpotent(const Group& g, const SigmaPartition& sig) {
    return is_sigma_nilpotent(g, sig, Bitset::full(g.n));
}

inline bool is_sigma_soluble(const Lattice& lat, const SigmaPartition& sig, int ambient) {
    for (int64_t f : chief_series(lat, ambient).factor_orders)
        if (!sig.primary(f)) return false;
    return true;
}

inline bool is_sigma_soluble(const Lattice& lat, const SigmaPartition& sig) {
    return is_sigma_soluble(lat, sig, lat.top());
}

// H/K sigma-central in G: the factor together with G/C_G(H/K) spans at most
// one block (only the order of the virtual semidirect product matters)
inline bool is_sigma_central(const Lattice& lat, const SigmaPartition& sig, int upper, int lower) {
    const Group& g = *lat.g;
    Bitset nrm = normal_in_ambient(lat, lat.top());
    if (!nrm.test(upper) || !nrm.test(lower) || !lat.contains_index(lower, upper))
        throw Error(Errc::NotChiefFactor, "endpoints are not a normal section");
    bool mid = false;
    lat.below[upper].for_each([&](int j) {
        if (j != lower && nrm.test(j) && lat.contains_index(lower, j)) mid = true;
    });
    if (mid) throw Error(Errc::NotChiefFactor, "a normal subgroup lies strictly between");
    Bitset c = centralizer_of_section(g, lat.mask(upper), lat.mask(lower));
    int64_t factor = lat.order(upper) / lat.order(lower);
    int64_t gc = (int64_t)g.n / c.count();
    return sig.primary(factor * gc);
}

// ---- O_Pi, O^{sigma_i}, Pi-closedness ------------------------------------

// join of all normal Pi-subgroups of `ambient`
inline int o_pi(const Lattice& lat, int ambient, const BlockSet& pi, const SigmaPartition& sig) {
    Bitset nrm = normal_in_ambient(lat, ambient);
    Bitset acc = lat.mask(lat.trivial());
    nrm.for_each([&](int i) {
        BlockSet s = sig.sigma_of(lat.order(i));
        bool in_pi = true;
        for (BlockId b : s) in_pi = in_pi && pi.count(b);
        if (in_pi) acc = join_masks(*lat.g, acc, lat.mask(i));
    });
    return lat.index_of(acc);
}

// smallest normal subgroup with sigma_i-group quotient
inline int o_upper(const Lattice& lat, BlockId b, const SigmaPartition& sig) {
    Bitset nrm = normal_in_ambient(lat, lat.top());
    Bitset acc = lat.mask(lat.top());
    int64_t n = lat.order(lat.top());
    nrm.for_each([&](int i) {
        int64_t q = n / lat.order(i);
        BlockSet s = sig.sigma_of(q);
        if (s.empty() || (s.size() == 1 && *s.begin() == b)) acc &= lat.mask(i);
    });
    return lat.index_of(acc);
}

inline bool is_pi_closed(const Lattice& lat, int ambient, const BlockSet& pi,
                         const SigmaPartition& sig) {
    return lat.order(o_pi(lat, ambient, pi, sig)) == sig.pi_part(lat.order(ambient), pi);
}

// ---- F_sigma, the upper series, l_sigma, the residual ---------------------

// product of all normal sigma-nilpotent subgroups
inline int f_sigma(const Lattice& lat, const SigmaPartition& sig) {
    Bitset nrm = normal_in_ambient(lat, lat.top());
    Bitset acc = lat.mask(lat.trivial());
    nrm.for_each([&](int i) {
        if (is_sigma_nilpotent(*lat.g, sig, lat.mask(i))) acc = join_masks(*lat.g, acc, lat.mask(i));
    });
    if (!is_sigma_nilpotent(*lat.g, sig, acc))
        throw Error(Errc::ValidationError, "product of normal sigma-nilpotent subgroups failed to be sigma-nilpotent");
    return lat.index_of(acc);
}

// ascending series 1 <= F_1 <= F_2 <= ... with F_{i+1}/F_i = F_sigma(G/F_i);
// returned as lattice indices starting at the trivial subgroup
inline std::vector<int> upper_sigma_series(const Lattice& lat, const SigmaPartition& sig) {
    const Group& g = *lat.g;
    std::vector<int> series{lat.trivial()};
    Bitset g_normals = normal_in_ambient(lat, lat.top());
    while (series.back() != lat.top()) {
        int cur = series.back();
        auto section = section_group(g, Bitset::full(g.n), lat.mask(cur));
        const Group& q = section.first;
        const std::vector<int>& proj = section.second;
        // normal subgroups of the quotient are images of normals above cur
        Bitset acc_q(q.n);
        acc_q.set(0);
        g_normals.for_each([&](int i) {
            if (i != cur && !lat.contains_index(cur, i)) return;
            Bitset img(q.n);
            lat.mask(i).for_each([&](int x) { img.set(proj[x]); });
            if (is_sigma_nilpotent(q, sig, img)) acc_q = join_masks(q, acc_q, img);
        });
        Bitset pre(g.n);
        for (int x = 0; x < g.n; ++x)
            if (acc_q.test(proj[x])) pre.set(x);
        int next = lat.index_of(pre);
        if (next == cur) break;  // stalled: G is not sigma-soluble
        series.push_back(next);
    }
    return series;
}

inline int l_sigma(const Lattice& lat, const SigmaPartition& sig) {
    if (!is_sigma_soluble(lat, sig))
        throw Error(Errc::NotSigmaSoluble, "sigma-nilpotent length needs a sigma-soluble group");
    if (lat.order(lat.top()) == 1) return 0;
    return (int)upper_sigma_series(lat, sig).size() - 1;
}

// intersection of all normal subgroups with sigma-nilpotent quotient
inline int sigma_residual(const Lattice& lat, const SigmaPartition& sig) {
    const Group& g = *lat.g;
    Bitset nrm = normal_in_ambient(lat, lat.top());
    Bitset acc = Bitset::full(g.n);
    nrm.for_each([&](int i) {
        auto [q, proj] = section_group(g, Bitset::full(g.n), lat.mask(i));
        if (is_sigma_nilpotent(q, sig)) acc &= lat.mask(i);
    });
    return lat.index_of(acc);
}

} // namespace sigma
