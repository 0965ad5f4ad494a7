#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sigma/bitset.hpp"
#include "sigma/errors.hpp"
#include "sigma/group.hpp"
#include "sigma/numbers.hpp"

namespace sigma {

struct Subgroup {
    Bitset members;
    int order = 0;
};

inline Subgroup make_subgroup(Bitset members) {
    Subgroup s;
    s.order = members.count();
    s.members = std::move(members);
    return s;
}

// ---- mask-level subgroup calculus -------------------------------------

// subgroup generated by the elements of seed (product closure; inverses
// come for free in a finite group)
inline Bitset generated_subgroup(const Group& g, const Bitset& seed) {
    Bitset mask(g.n);
    mask.set(0);
    std::vector<int> elems{0};
    std::vector<int> fresh;
    seed.for_each([&](int x) {
        if (!mask.test(x)) {
            mask.set(x);
            elems.push_back(x);
        }
    });
    size_t done = 1;  // products among {0} alone are known
    while (done < elems.size()) {
        size_t old = elems.size();
        for (size_t i = done; i < old; ++i)
            for (size_t j = 0; j < old; ++j) {
                int a = elems[i], b = elems[j];
                int ab = g.at(a, b);
                if (!mask.test(ab)) {
                    mask.set(ab);
                    elems.push_back(ab);
                }
                int ba = g.at(b, a);
                if (!mask.test(ba)) {
                    mask.set(ba);
                    elems.push_back(ba);
                }
            }
        done = old;
    }
    return mask;
}

inline Bitset cyclic_subgroup(const Group& g, int x) {
    Bitset mask(g.n);
    int y = 0;
    do {
        mask.set(y);
        y = g.at(y, x);
    } while (y != 0);
    return mask;
}

inline Bitset conjugate_mask(const Group& g, const Bitset& h, int x) {
    Bitset r(g.n);
    h.for_each([&](int a) { r.set(g.conj(x, a)); });
    return r;
}

inline bool is_normal_in(const Group& g, const Bitset& h, const Bitset& k) {
    if (!h.subset_of(k)) throw Error(Errc::NotContained, "subgroup not contained in ambient");
    for (int x = k.next(0); x >= 0; x = k.next(x + 1))
        for (int a = h.next(0); a >= 0; a = h.next(a + 1))
            if (!h.test(g.conj(x, a))) return false;
    return true;
}

// largest subgroup of H normal in K: the intersection of the K-conjugates
inline Bitset core_in(const Group& g, const Bitset& h, const Bitset& k) {
    if (!h.subset_of(k)) throw Error(Errc::NotContained, "subgroup not contained in ambient");
    Bitset c = h;
    for (int x = k.next(0); x >= 0; x = k.next(x + 1)) {
        c &= conjugate_mask(g, h, x);
        if (c.count() == 1) break;
    }
    return c;
}

inline Bitset normal_closure_in(const Group& g, const Bitset& h, const Bitset& k) {
    if (!h.subset_of(k)) throw Error(Errc::NotContained, "subgroup not contained in ambient");
    Bitset seed(g.n);
    for (int x = k.next(0); x >= 0; x = k.next(x + 1)) seed |= conjugate_mask(g, h, x);
    return generated_subgroup(g, seed);
}

inline Bitset normalizer_in(const Group& g, const Bitset& ambient, const Bitset& h) {
    Bitset r(g.n);
    for (int x = ambient.next(0); x >= 0; x = ambient.next(x + 1))
        if (conjugate_mask(g, h, x) == h) r.set(x);
    return r;
}

// C_G(H/K) = {x : [x,h] in K for all h in H}; K must be normal in H
inline Bitset centralizer_of_section(const Group& g, const Bitset& h, const Bitset& k) {
    if (!k.subset_of(h) || !is_normal_in(g, k, h))
        throw Error(Errc::NotNormalSection, "section denominator is not normal in the numerator");
    Bitset r(g.n);
    for (int x = 0; x < g.n; ++x) {
        bool ok = true;
        for (int a = h.next(0); ok && a >= 0; a = h.next(a + 1)) {
            int comm = g.at(g.at(g.inv[x], g.inv[a]), g.at(x, a));
            ok = k.test(comm);
        }
        if (ok) r.set(x);
    }
    return r;
}

inline Bitset product_set(const Group& g, const Bitset& a, const Bitset& b) {
    Bitset r(g.n);
    for (int x = a.next(0); x >= 0; x = a.next(x + 1))
        for (int y = b.next(0); y >= 0; y = b.next(y + 1)) r.set(g.at(x, y));
    return r;
}

// AB together with whether AB = BA (equivalently, AB is a subgroup)
inline std::pair<Bitset, bool> product_and_permutes(const Group& g, const Bitset& a, const Bitset& b) {
    Bitset ab = product_set(g, a, b);
    Bitset ba = product_set(g, b, a);
    return {ab, ab == ba};
}

inline Bitset join_masks(const Group& g, const Bitset& a, const Bitset& b) {
    if (b.subset_of(a)) return a;
    if (a.subset_of(b)) return b;
    return generated_subgroup(g, a | b);
}

inline Bitset meet_masks(const Bitset& a, const Bitset& b) { return a & b; }

inline Bitset derived_subgroup_of(const Group& g, const Bitset& h) {
    Bitset seed(g.n);
    for (int a = h.next(0); a >= 0; a = h.next(a + 1))
        for (int b = h.next(0); b >= 0; b = h.next(b + 1))
            seed.set(g.at(g.at(g.inv[a], g.inv[b]), g.at(a, b)));
    return generated_subgroup(g, seed);
}

inline bool is_abelian_mask(const Group& g, const Bitset& h) {
    for (int a = h.next(0); a >= 0; a = h.next(a + 1))
        for (int b = h.next(a + 1); b >= 0; b = h.next(b + 1))
            if (g.at(a, b) != g.at(b, a)) return false;
    return true;
}

inline bool is_cyclic_mask(const Group& g, const Bitset& h) {
    int n = h.count();
    for (int a = h.next(0); a >= 0; a = h.next(a + 1))
        if (g.element_order(a) == n) return true;
    return n == 1;
}

inline bool is_elementary_abelian_mask(const Group& g, const Bitset& h) {
    if (!is_abelian_mask(g, h)) return false;
    int n = h.count();
    if (n == 1) return true;
    int64_t p = prime_divisors(n).front();
    if (p_part(n, p) != n) return false;
    for (int a = h.next(0); a >= 0; a = h.next(a + 1))
        if (a != 0 && g.element_order(a) != p) return false;
    return true;
}

inline bool is_soluble_mask(const Group& g, const Bitset& h) {
    Bitset d = h;
    while (d.count() > 1) {
        Bitset next = derived_subgroup_of(g, d);
        if (next == d) return false;
        d = next;
    }
    return true;
}

// nilpotent iff for each prime the p-elements generate a full Sylow subgroup
inline bool is_nilpotent_mask(const Group& g, const Bitset& h) {
    int64_t n = h.count();
    for (int64_t p : prime_divisors(n)) {
        Bitset seed(g.n);
        for (int a = h.next(0); a >= 0; a = h.next(a + 1))
            if (p_part(g.element_order(a), p) == g.element_order(a)) seed.set(a);
        if (generated_subgroup(g, seed).count() != p_part(n, p)) return false;
    }
    return true;
}

inline Bitset center_of(const Group& g, const Bitset& h) {
    Bitset r(g.n);
    for (int a = h.next(0); a >= 0; a = h.next(a + 1)) {
        bool ok = true;
        for (int b = h.next(0); ok && b >= 0; b = h.next(b + 1)) ok = g.at(a, b) == g.at(b, a);
        if (ok) r.set(a);
    }
    return r;
}

inline int64_t exponent_of(const Group& g, const Bitset& h) {
    int64_t e = 1;
    for (int a = h.next(0); a >= 0; a = h.next(a + 1)) {
        int64_t o = g.element_order(a);
        e = std::lcm(e, o);
    }
    return e;
}

// iterated normal-closure descent
inline bool is_subnormal_in(const Group& g, const Bitset& h, const Bitset& k) {
    if (!h.subset_of(k)) throw Error(Errc::NotContained, "subgroup not contained in ambient");
    Bitset x = k;
    while (true) {
        if (x == h) return true;
        Bitset next = normal_closure_in(g, h, x);
        if (next == x) return false;
        x = next;
    }
}

// ---- the subgroup lattice ----------------------------------------------

struct Lattice {
    std::shared_ptr<const Group> group;          // owns the ambient group's tables
    const Group* g = nullptr;                    // == group.get()
    std::vector<Subgroup> subs;                  // sorted by (order, mask)
    std::vector<std::vector<int>> maximal_subs;  // Hasse: maximal subgroups of each entry
    std::vector<char> normal_in_g;
    std::vector<int> conj_class;                 // class id per subgroup
    std::vector<std::vector<int>> classes;       // class id -> member indices
    std::vector<Bitset> below;                   // below[i]: indices of proper subgroups of i

    int top() const { return (int)subs.size() - 1; }
    int trivial() const { return 0; }
    int size() const { return (int)subs.size(); }
    const Bitset& mask(int i) const { return subs[i].members; }
    int order(int i) const { return subs[i].order; }

    int index_of(const Bitset& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) throw Error(Errc::ValidationError, "mask is not a subgroup of the lattice");
        return it->second;
    }
    bool contains_index(int sub, int super) const { return below[super].test(sub); }

    std::map<Bitset, int> index_;
};

inline Lattice enumerate_subgroups(const Group& group_in, int cap = 20000) {
    auto holder = std::make_shared<const Group>(group_in);
    const Group& g = *holder;
    std::vector<Bitset> masks;
    std::map<Bitset, int> index;
    auto add = [&](const Bitset& m) {
        if (index.emplace(m, (int)masks.size()).second) {
            masks.push_back(m);
            if ((int)masks.size() > cap)
                throw Error(Errc::SubgroupCapExceeded, "more than " + std::to_string(cap) + " subgroups");
        }
    };

    for (int x = 0; x < g.n; ++x) add(cyclic_subgroup(g, x));

    // close the collection under pairwise join; pairs are processed once
    for (size_t i = 0; i < masks.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            Bitset a = masks[i], b = masks[j];  // copies: masks may reallocate
            if (a.subset_of(b) || b.subset_of(a)) continue;
            add(generated_subgroup(g, a | b));
        }

    Lattice lat;
    lat.group = holder;
    lat.g = holder.get();
    std::sort(masks.begin(), masks.end(), [](const Bitset& a, const Bitset& b) {
        int ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return a < b;
    });
    lat.subs.reserve(masks.size());
    for (auto& m : masks) lat.subs.push_back(make_subgroup(m));
    for (int i = 0; i < (int)lat.subs.size(); ++i) lat.index_[lat.subs[i].members] = i;

    int s = lat.size();
    lat.below.assign(s, Bitset(s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < i; ++j)
            if (lat.subs[j].order < lat.subs[i].order && lat.subs[j].members.subset_of(lat.subs[i].members))
                lat.below[i].set(j);

    // Hasse: maximal subgroups of i are proper subgroups below i not below
    // any other proper subgroup of i
    lat.maximal_subs.assign(s, {});
    for (int i = 0; i < s; ++i) {
        Bitset shadowed(s);
        lat.below[i].for_each([&](int j) { shadowed |= lat.below[j]; });
        lat.below[i].for_each([&](int j) {
            if (!shadowed.test(j)) lat.maximal_subs[i].push_back(j);
        });
    }

    lat.normal_in_g.assign(s, 0);
    Bitset whole = Bitset::full(g.n);
    for (int i = 0; i < s; ++i) lat.normal_in_g[i] = is_normal_in(g, lat.subs[i].members, whole);

    lat.conj_class.assign(s, -1);
    for (int i = 0; i < s; ++i) {
        if (lat.conj_class[i] >= 0) continue;
        int cls = (int)lat.classes.size();
        lat.classes.push_back({});
        std::vector<int> work{i};
        lat.conj_class[i] = cls;
        lat.classes[cls].push_back(i);
        while (!work.empty()) {
            int cur = work.back();
            work.pop_back();
            for (int x = 0; x < g.n; ++x) {
                int c = lat.index_of(conjugate_mask(g, lat.subs[cur].members, x));
                if (lat.conj_class[c] < 0) {
                    lat.conj_class[c] = cls;
                    lat.classes[cls].push_back(c);
                    work.push_back(c);
                }
            }
        }
        std::sort(lat.classes[cls].begin(), lat.classes[cls].end());
    }
    return lat;
}

// ---- lattice-level operations ------------------------------------------

inline int join_index(const Lattice& lat, int a, int b) {
    if (lat.contains_index(a, b) || a == b) return b;
    if (lat.contains_index(b, a)) return a;
    return lat.index_of(generated_subgroup(*lat.g, lat.mask(a) | lat.mask(b)));
}

inline int meet_index(const Lattice& lat, int a, int b) {
    return lat.index_of(lat.mask(a) & lat.mask(b));
}

// all subgroups reachable from the top by exactly n Hasse steps
inline Bitset n_maximal_set(const Lattice& lat, int n) {
    Bitset cur(lat.size());
    cur.set(lat.top());
    for (int step = 0; step < n; ++step) {
        Bitset next(lat.size());
        cur.for_each([&](int i) {
            for (int m : lat.maximal_subs[i]) next.set(m);
        });
        cur = next;
        if (cur.empty()) break;
    }
    return cur;
}

inline std::vector<int> n_maximal_subgroups(const Lattice& lat, int n) {
    return n_maximal_set(lat, n).to_vector();
}

// longest descending chain of maximal steps from the top
inline int lattice_height(const Lattice& lat) {
    std::vector<int> depth(lat.size(), 0);
    for (int i = 0; i < lat.size(); ++i)  // ascending order is topological
        for (int m : lat.maximal_subs[i]) depth[i] = std::max(depth[i], depth[m] + 1);
    return depth[lat.top()];
}

// visit every maximal chain top = M_0 > M_1 > ... > M_n; the callback gets
// the chain as lattice indices; budget counts edge extensions
template <typename F>
inline void for_each_maximal_chain(const Lattice& lat, int n, F visit, long long* budget = nullptr) {
    std::vector<int> chain{lat.top()};
    auto rec = [&](auto&& self, int node) -> void {
        if ((int)chain.size() == n + 1) {
            visit(chain);
            return;
        }
        for (int m : lat.maximal_subs[node]) {
            if (budget && --*budget < 0)
                throw Error(Errc::CapExceeded, "chain enumeration budget exhausted");
            chain.push_back(m);
            self(self, m);
            chain.pop_back();
        }
    };
    if (n >= 0) rec(rec, lat.top());
}

inline std::vector<std::vector<int>> maximal_chains(const Lattice& lat, int n,
                                                    long long* budget = nullptr) {
    std::vector<std::vector<int>> out;
    for_each_maximal_chain(lat, n, [&](const std::vector<int>& c) { out.push_back(c); }, budget);
    return out;
}

// indices of subgroups of `ambient` that are normal in `ambient` (including
// the trivial subgroup and ambient itself)
inline Bitset normal_in_ambient(const Lattice& lat, int ambient) {
    Bitset r(lat.size());
    r.set(ambient);
    r.set(lat.trivial());
    if (ambient == lat.top()) {
        for (int i = 0; i < lat.size(); ++i)
            if (lat.normal_in_g[i]) r.set(i);
        return r;
    }
    const Bitset& amb = lat.mask(ambient);
    lat.below[ambient].for_each([&](int j) {
        if (is_normal_in(*lat.g, lat.mask(j), amb)) r.set(j);
    });
    return r;
}

inline std::vector<int> minimal_normal_subgroups(const Lattice& lat, int ambient) {
    Bitset nrm = normal_in_ambient(lat, ambient);
    std::vector<int> out;
    nrm.for_each([&](int i) {
        if (i == lat.trivial()) return;
        bool minimal = true;
        lat.below[i].for_each([&](int j) {
            if (j != lat.trivial() && nrm.test(j)) minimal = false;
        });
        if (minimal) out.push_back(i);
    });
    return out;
}

struct ChiefSeries {
    std::vector<int> chain;            // lattice indices, ascending: 1 = N_0 < ... < N_r = ambient
    std::vector<int64_t> factor_orders;
};

// one chief series of the given ambient subgroup; pick_last selects a
// different minimal choice at each step (used to exercise Jordan-Hoelder
// independence in tests)
inline ChiefSeries chief_series(const Lattice& lat, int ambient, bool pick_last = false) {
    Bitset nrm = normal_in_ambient(lat, ambient);
    ChiefSeries cs;
    int cur = lat.trivial();
    cs.chain.push_back(cur);
    while (cur != ambient) {
        // minimal normal subgroups of ambient/cur: normals i > cur with no
        // normal strictly between
        std::vector<int> minimal;
        nrm.for_each([&](int i) {
            if (i == cur || !lat.contains_index(cur, i)) return;
            bool has_mid = false;
            lat.below[i].for_each([&](int j) {
                if (j != cur && nrm.test(j) && lat.contains_index(cur, j)) has_mid = true;
            });
            if (!has_mid) minimal.push_back(i);
        });
        int next = pick_last ? minimal.back() : minimal.front();
        cs.factor_orders.push_back(lat.order(next) / lat.order(cur));
        cs.chain.push_back(next);
        cur = next;
    }
    return cs;
}

// chief factors as (lower, upper) index pairs
inline std::vector<std::pair<int, int>> chief_factors(const Lattice& lat, int ambient,
                                                      bool pick_last = false) {
    ChiefSeries cs = chief_series(lat, ambient, pick_last);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i + 1 < cs.chain.size(); ++i) out.push_back({cs.chain[i], cs.chain[i + 1]});
    return out;
}

inline bool is_supersoluble(const Lattice& lat, int ambient) {
    for (int64_t f : chief_series(lat, ambient).factor_orders) {
        auto fac = factorize(f);
        if (fac.size() != 1 || fac[0].second != 1) return false;
    }
    return true;
}

// rank of a soluble subgroup: the largest k with a chief factor of order p^k
inline int rank(const Lattice& lat, int ambient) {
    if (lat.order(ambient) == 1) throw Error(Errc::TrivialGroup, "rank of the trivial group");
    if (!is_soluble_mask(*lat.g, lat.mask(ambient)))
        throw Error(Errc::NotSoluble, "rank is defined for soluble groups");
    int r = 0;
    for (int64_t f : chief_series(lat, ambient).factor_orders)
        r = std::max(r, factorize(f)[0].second);
    return r;
}

inline int frattini(const Lattice& lat, int ambient) {
    if (lat.maximal_subs[ambient].empty()) return ambient;
    Bitset m = lat.mask(lat.maximal_subs[ambient][0]);
    for (int i : lat.maximal_subs[ambient]) m &= lat.mask(i);
    return lat.index_of(m);
}

inline std::vector<int> sylow_subgroups(const Lattice& lat, int ambient, int64_t p) {
    int64_t target = p_part(lat.order(ambient), p);
    std::vector<int> out;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == target && lat.mask(i).subset_of(lat.mask(ambient))) out.push_back(i);
    return out;
}

inline bool permutes(const Lattice& lat, int a, int b) {
    return product_and_permutes(*lat.g, lat.mask(a), lat.mask(b)).second;
}

// one pairwise-permuting family of Sylow subgroups, one per prime, found by
// backtracking; nullopt when none exists
inline std::optional<std::vector<int>> sylow_basis(const Lattice& lat, long long* budget = nullptr) {
    std::vector<int64_t> primes = prime_divisors(lat.order(lat.top()));
    std::vector<std::vector<int>> choices;
    for (int64_t p : primes) choices.push_back(sylow_subgroups(lat, lat.top(), p));
    std::vector<int> picked;
    auto rec = [&](auto&& self, size_t level) -> bool {
        if (level == choices.size()) return true;
        for (int cand : choices[level]) {
            if (budget && --*budget < 0) throw Error(Errc::CapExceeded, "sylow basis budget exhausted");
            bool ok = true;
            for (int prev : picked)
                if (!permutes(lat, prev, cand)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            picked.push_back(cand);
            if (self(self, level + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return picked;
}

// every pairwise-permuting full Sylow family (used by checks that quantify
// over Sylow bases)
inline std::vector<std::vector<int>> all_sylow_bases(const Lattice& lat, long long* budget = nullptr) {
    std::vector<int64_t> primes = prime_divisors(lat.order(lat.top()));
    std::vector<std::vector<int>> choices;
    for (int64_t p : primes) choices.push_back(sylow_subgroups(lat, lat.top(), p));
    std::vector<std::vector<int>> out;
    std::vector<int> picked;
    auto rec = [&](auto&& self, size_t level) -> void {
        if (level == choices.size()) {
            out.push_back(picked);
            return;
        }
        for (int cand : choices[level]) {
            if (budget && --*budget < 0) throw Error(Errc::CapExceeded, "sylow basis budget exhausted");
            bool ok = true;
            for (int prev : picked)
                if (!permutes(lat, prev, cand)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            picked.push_back(cand);
            self(self, level + 1);
            picked.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<int> complements(const Lattice& lat, int n_idx) {
    if (!lat.normal_in_g[n_idx]) throw Error(Errc::NotNormal, "complement target must be normal");
    std::vector<int> out;
    int64_t need = lat.order(lat.top()) / lat.order(n_idx);
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == need && (lat.mask(i) & lat.mask(n_idx)).count() == 1) out.push_back(i);
    return out;
}

inline bool is_schmidt(const Lattice& lat) {
    if (is_nilpotent_mask(*lat.g, lat.mask(lat.top()))) return false;
    for (int i = 0; i < lat.top(); ++i)
        if (!is_nilpotent_mask(*lat.g, lat.mask(i))) return false;
    return true;
}

inline bool is_irreducible_pair(const Lattice& lat, int a, int b) {
    auto [prod, perm] = product_and_permutes(*lat.g, lat.mask(a), lat.mask(b));
    if (!perm) return false;
    int p = lat.index_of(prod);
    if (p == a) return false;
    const auto& maxes = lat.maximal_subs[p];
    return std::find(maxes.begin(), maxes.end(), a) != maxes.end();
}

} // namespace sigma
