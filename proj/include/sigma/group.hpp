#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sigma/bitset.hpp"
#include "sigma/errors.hpp"
#include "sigma/numbers.hpp"

namespace sigma {

// A permutation of [0, degree) given by its image array.
using Permutation = std::vector<int>;

inline bool is_valid_permutation(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= (int)p.size() || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

inline Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
}

// Finite group as a validated multiplication table over dense element
// indices. The identity is always element 0; constructors relabel.
struct Group {
    int n = 1;
    std::vector<int> mul;  // n*n, row-major: mul[a*n+b] = a.b
    std::vector<int> inv;
    std::string name;

    int at(int a, int b) const { return mul[a * n + b]; }

    int conj(int g, int x) const {  // g x g^-1
        return at(at(g, x), inv[g]);
    }

    int element_order(int x) const {
        int o = 1, y = x;
        while (y != 0) {
            y = at(y, x);
            ++o;
        }
        return o;
    }

    int64_t order() const { return n; }
};

namespace detail {

// identity must already sit at index 0 when trusted=true (recipe output);
// untrusted tables get the full associativity scan
inline Group finish_table(int n, std::vector<int> mul, std::string name, bool trusted) {
    if (n <= 0) throw Error(Errc::MalformedTable, "empty table");
    if ((int64_t)mul.size() != (int64_t)n * n)
        throw Error(Errc::MalformedTable, "table is not " + std::to_string(n) + "x" + std::to_string(n));
    for (int64_t i = 0; i < (int64_t)n * n; ++i)
        if (mul[i] < 0 || mul[i] >= n)
            throw Error(Errc::MalformedTable,
                        "entry out of range at (" + std::to_string(i / n) + "," + std::to_string(i % n) + ")");

    // locate the (necessarily unique) two-sided identity
    int id = -1;
    for (int e = 0; e < n && id < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = mul[e * n + x] == x && mul[x * n + e] == x;
        if (ok) id = e;
    }
    if (id < 0) throw Error(Errc::NoIdentity, "no two-sided identity element");

    if (id != 0) {
        // relabel by swapping element ids 0 and id
        std::vector<int> relab(n);
        for (int i = 0; i < n; ++i) relab[i] = i;
        relab[0] = id;
        relab[id] = 0;
        std::vector<int> m2((int64_t)n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                m2[a * n + b] = relab[mul[relab[a] * n + relab[b]]];  // relab is an involution
        mul.swap(m2);
    }

    Group g;
    g.n = n;
    g.mul = std::move(mul);
    g.name = std::move(name);

    g.inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul[a * n + b] == 0 && g.mul[b * n + a] == 0) {
                g.inv[a] = b;
                break;
            }
        }
        if (g.inv[a] < 0)
            throw Error(Errc::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }

    // rows and columns must be permutations
    for (int a = 0; a < n; ++a) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int b = 0; b < n; ++b) {
            if (row[g.mul[a * n + b]]++)
                throw Error(Errc::MalformedTable, "row " + std::to_string(a) + " is not a permutation");
            if (col[g.mul[b * n + a]]++)
                throw Error(Errc::MalformedTable, "column " + std::to_string(a) + " is not a permutation");
        }
    }

    if (!trusted) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = g.at(a, b);
                for (int c = 0; c < n; ++c)
                    if (g.at(ab, c) != g.at(a, g.at(b, c)))
                        throw Error(Errc::NotAssociative,
                                    "triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                        std::to_string(c) + ")");
            }
    }
    return g;
}

} // namespace detail

inline Group build_from_cayley(const std::vector<std::vector<int>>& table, const std::string& name = "G") {
    int n = (int)table.size();
    if (n == 0) throw Error(Errc::MalformedTable, "empty table");
    std::vector<int> mul;
    mul.reserve((size_t)n * n);
    for (auto& row : table) {
        if ((int)row.size() != n) throw Error(Errc::MalformedTable, "table is not square");
        for (int x : row) {
            if (x < 0 || x >= n) throw Error(Errc::MalformedTable, "entry out of range");
            mul.push_back(x);
        }
    }
    return detail::finish_table(n, std::move(mul), name, /*trusted=*/false);
}

// Closure of a permutation generating set under composition, as a Cayley
// table. Element 0 is the identity permutation.
inline Group generate_from_permutations(int degree, const std::vector<Permutation>& gens,
                                        const std::string& name = "G", int order_cap = 2000) {
    if (degree < 0) throw Error(Errc::InvalidPermutation, "negative degree");
    for (auto& p : gens) {
        if ((int)p.size() != degree || !is_valid_permutation(p))
            throw Error(Errc::InvalidPermutation, "generator is not a permutation of the degree");
    }

    Permutation id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;

    std::vector<Permutation> elems{id};
    std::map<Permutation, int> index{{id, 0}};
    for (size_t i = 0; i < elems.size(); ++i) {
        for (auto& g : gens) {
            Permutation q = compose(elems[i], g);
            if (index.emplace(q, (int)elems.size()).second) {
                elems.push_back(std::move(q));
                if ((int)elems.size() > order_cap)
                    throw Error(Errc::OrderCapExceeded,
                                "generated order exceeds cap " + std::to_string(order_cap));
            }
        }
    }

    int n = (int)elems.size();
    std::vector<int> mul((int64_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            mul[a * n + b] = index.at(compose(elems[a], elems[b]));
    return detail::finish_table(n, std::move(mul), name, /*trusted=*/true);
}

// Group on the cosets of a normal subgroup (given as a membership mask),
// inside an ambient subgroup H <= G. Returns the quotient H/N and the
// projection H -> coset index (-1 outside H).
inline std::pair<Group, std::vector<int>> section_group(const Group& g, const Bitset& h_mask,
                                                        const Bitset& n_mask,
                                                        const std::string& name = "Q") {
    if (!n_mask.subset_of(h_mask)) throw Error(Errc::NotContained, "N is not contained in H");
    // normality of N in H
    for (int a = h_mask.next(0); a >= 0; a = h_mask.next(a + 1))
        for (int x = n_mask.next(0); x >= 0; x = n_mask.next(x + 1))
            if (!n_mask.test(g.conj(a, x)))
                throw Error(Errc::NotNormal, "subgroup is not normal (conjugating element " +
                                                 std::to_string(a) + ")");

    std::vector<int> proj(g.n, -1);
    std::vector<int> reps;
    for (int a = h_mask.next(0); a >= 0; a = h_mask.next(a + 1)) {
        if (proj[a] >= 0) continue;
        int c = (int)reps.size();
        reps.push_back(a);
        for (int x = n_mask.next(0); x >= 0; x = n_mask.next(x + 1)) proj[g.at(a, x)] = c;
    }

    int q = (int)reps.size();
    std::vector<int> mul((int64_t)q * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            mul[a * q + b] = proj[g.at(reps[a], reps[b])];
    return {detail::finish_table(q, std::move(mul), name, /*trusted=*/true), std::move(proj)};
}

inline std::pair<Group, std::vector<int>> quotient(const Group& g, const Bitset& n_mask,
                                                   const std::string& name = "Q") {
    return section_group(g, Bitset::full(g.n), n_mask, name);
}

// Sorted multiset of element orders; isomorphism-invariant.
inline std::vector<int> order_fingerprint(const Group& g) {
    std::vector<int> f(g.n);
    for (int x = 0; x < g.n; ++x) f[x] = g.element_order(x);
    std::sort(f.begin(), f.end());
    return f;
}

inline std::vector<int64_t> primes_of(const Group& g) { return prime_divisors(g.n); }

} // namespace sigma
