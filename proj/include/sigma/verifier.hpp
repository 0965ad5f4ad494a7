#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sigma/corpus.hpp"
#include "sigma/group.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"
#include "sigma/subnormality.hpp"

namespace sigma {

using nlohmann::json;

enum class CheckId {
    P2_5, C2_6, L2_2_9,
    P3_2_i, P3_2_ii, P3_2_iii, P3_2_iv, P3_2_v,
    P3_4, L3_6, L3_7, C3_9,
    L4_1_4, L4_1_5, TB_quotient, L4_2_1,
    T1_2_i, T1_2_ii, T1_2_iii,
    T1_4_i, T1_4_ii,
    C1_7, C1_8, C1_9,
    T1_10_fwd, T1_10_conv,
    T7_1_i, T7_1_ii,
};

inline const std::vector<CheckId>& all_checks() {
    static const std::vector<CheckId> v = {
        CheckId::P2_5,      CheckId::C2_6,    CheckId::L2_2_9,  CheckId::P3_2_i,
        CheckId::P3_2_ii,   CheckId::P3_2_iii, CheckId::P3_2_iv, CheckId::P3_2_v,
        CheckId::P3_4,      CheckId::L3_6,    CheckId::L3_7,    CheckId::C3_9,
        CheckId::L4_1_4,    CheckId::L4_1_5,  CheckId::TB_quotient, CheckId::L4_2_1,
        CheckId::T1_2_i,    CheckId::T1_2_ii, CheckId::T1_2_iii, CheckId::T1_4_i,
        CheckId::T1_4_ii,   CheckId::C1_7,    CheckId::C1_8,    CheckId::C1_9,
        CheckId::T1_10_fwd, CheckId::T1_10_conv, CheckId::T7_1_i, CheckId::T7_1_ii,
    };
    return v;
}

inline const char* check_name(CheckId c) {
    switch (c) {
        case CheckId::P2_5: return "P2.5";
        case CheckId::C2_6: return "C2.6";
        case CheckId::L2_2_9: return "L2.2.9";
        case CheckId::P3_2_i: return "P3.2.i";
        case CheckId::P3_2_ii: return "P3.2.ii";
        case CheckId::P3_2_iii: return "P3.2.iii";
        case CheckId::P3_2_iv: return "P3.2.iv";
        case CheckId::P3_2_v: return "P3.2.v";
        case CheckId::P3_4: return "P3.4";
        case CheckId::L3_6: return "L3.6";
        case CheckId::L3_7: return "L3.7";
        case CheckId::C3_9: return "C3.9";
        case CheckId::L4_1_4: return "L4.1.4";
        case CheckId::L4_1_5: return "L4.1.5";
        case CheckId::TB_quotient: return "TB-quotient";
        case CheckId::L4_2_1: return "L4.2.1";
        case CheckId::T1_2_i: return "T1.2.i";
        case CheckId::T1_2_ii: return "T1.2.ii";
        case CheckId::T1_2_iii: return "T1.2.iii";
        case CheckId::T1_4_i: return "T1.4.i";
        case CheckId::T1_4_ii: return "T1.4.ii";
        case CheckId::C1_7: return "C1.7";
        case CheckId::C1_8: return "C1.8";
        case CheckId::C1_9: return "C1.9";
        case CheckId::T1_10_fwd: return "T1.10.fwd";
        case CheckId::T1_10_conv: return "T1.10.conv";
        case CheckId::T7_1_i: return "T7.1.i";
        case CheckId::T7_1_ii: return "T7.1.ii";
    }
    return "?";
}

enum class Status { Pass, Fail, Skipped, Capped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
        case Status::Capped: return "capped";
    }
    return "?";
}

struct CheckResult {
    CheckId check;
    std::string group;
    std::string sigma;
    Status status = Status::Pass;
    std::string precondition;  // named unmet precondition when skipped
    json witness;              // structured counterexample when failed
    json details;              // extra observations (quantifier readings etc.)
};

struct VerifyConfig {
    long long chain_budget = 10000000;  // chain extensions per group
    long long hall_budget = 1000000;    // Hall-set tuples / basis backtracking steps per group
};

// ---- analysis context ------------------------------------------------------

namespace detail {

struct CheckCtx {
    const Group& g;
    const Lattice& lat;
    const SigmaPartition& sig;
    const VerifyConfig& cfg;
    SubnormalContext sub;

    // classical facts, computed once
    bool soluble, nilpotent, sigma_nilpotent, sigma_soluble_flag, supersoluble_flag, schmidt_flag;
    std::vector<std::pair<int, int>> factors;  // chief factors of G as (lower, upper)
    std::vector<int64_t> pi;                   // primes of |G|
    BlockSet sigma_g;
    std::vector<int> sylow_rep;                // one Sylow subgroup index per prime in pi
    Bitset subnormal_set;                      // classical subnormal subgroups

    std::map<BlockSet, int> o_pi_cache;
    std::optional<std::vector<std::vector<int>>> hall_sets;  // nullopt = capped
    bool hall_sets_done = false;

    CheckCtx(const Group& g_, const Lattice& lat_, const SigmaPartition& sig_,
             const VerifyConfig& cfg_)
        : g(g_), lat(lat_), sig(sig_), cfg(cfg_), sub(lat_, sig_), subnormal_set(lat_.size()) {
        Bitset whole = Bitset::full(g.n);
        soluble = is_soluble_mask(g, whole);
        nilpotent = is_nilpotent_mask(g, whole);
        sigma_nilpotent = is_sigma_nilpotent(g, sig, whole);
        factors = chief_factors(lat, lat.top());
        sigma_soluble_flag = true;
        for (auto& [lo, up] : factors)
            sigma_soluble_flag = sigma_soluble_flag && sig.primary(lat.order(up) / lat.order(lo));
        supersoluble_flag = is_supersoluble(lat, lat.top());
        schmidt_flag = is_schmidt(lat);
        pi = prime_divisors(g.n);
        sigma_g = sig.sigma_of(g.n);
        for (int64_t p : pi) sylow_rep.push_back(sylow_subgroups(lat, lat.top(), p).front());
        for (int i = 0; i < lat.size(); ++i)
            if (is_subnormal_in(g, lat.mask(i), whole)) subnormal_set.set(i);
    }

    int o_pi_idx(const BlockSet& pi_set) {
        auto it = o_pi_cache.find(pi_set);
        if (it == o_pi_cache.end()) it = o_pi_cache.emplace(pi_set, o_pi(lat, lat.top(), pi_set, sig)).first;
        return it->second;
    }

    // all complete Hall sigma-sets, or nullopt when the enumeration tripped
    const std::optional<std::vector<std::vector<int>>>& hall_sigma_sets() {
        if (!hall_sets_done) {
            hall_sets_done = true;
            try {
                hall_sets = complete_hall_sigma_sets(lat, sig, cfg.hall_budget);
            } catch (const Error& e) {
                if (e.code() != Errc::CapExceeded) throw;
                hall_sets = std::nullopt;
            }
        }
        return hall_sets;
    }

    // nonempty subsets of sigma(G)
    std::vector<BlockSet> pi_subsets() const {
        std::vector<BlockId> ids(sigma_g.begin(), sigma_g.end());
        std::vector<BlockSet> out;
        for (unsigned sub = 1; sub < (1u << ids.size()); ++sub) {
            BlockSet s;
            for (size_t i = 0; i < ids.size(); ++i)
                if (sub & (1u << i)) s.insert(ids[i]);
            out.push_back(std::move(s));
        }
        return out;
    }

    json sub_json(int i) const {
        return json{{"order", lat.order(i)}, {"elements", lat.mask(i).to_vector()}};
    }
};

} // namespace detail

// ---- the checks -------------------------------------------------------------

namespace checks {

using detail::CheckCtx;

inline void pass(CheckResult& r) { r.status = Status::Pass; }
inline void skip(CheckResult& r, const std::string& pre) {
    r.status = Status::Skipped;
    r.precondition = pre;
}
inline void fail(CheckResult& r, json witness) {
    r.status = Status::Fail;
    r.witness = std::move(witness);
}

// join/meet closure of a set of subgroup indices
inline void closure_check(CheckCtx& c, CheckResult& r, const Bitset& set, const char* what) {
    std::vector<int> members = set.to_vector();
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j) {
            int a = members[i], b = members[j];
            int jn = join_index(c.lat, a, b);
            int mt = meet_index(c.lat, a, b);
            if (!set.test(jn) || !set.test(mt)) {
                fail(r, json{{"set", what},
                             {"a", c.sub_json(a)},
                             {"b", c.sub_json(b)},
                             {"join_in_set", (bool)set.test(jn)},
                             {"meet_in_set", (bool)set.test(mt)}});
                return;
            }
        }
    pass(r);
}

inline void p2_5(CheckCtx& c, CheckResult& r) { closure_check(c, r, c.sub.sn_set(), "sigma-subnormal"); }

inline void c2_6(CheckCtx& c, CheckResult& r) { closure_check(c, r, c.subnormal_set, "subnormal"); }

inline void l2_2_9(CheckCtx& c, CheckResult& r) {
    const Bitset& sn = c.sub.sn_set();
    for (int i = sn.next(0); i >= 0; i = sn.next(i + 1)) {
        if (c.lat.order(i) == 1) continue;
        BlockSet s = c.sig.sigma_of(c.lat.order(i));
        if (s.size() != 1) continue;
        int o = c.o_pi_idx(s);
        if (!c.lat.mask(i).subset_of(c.lat.mask(o))) {
            fail(r, json{{"subgroup", c.sub_json(i)}, {"o_block", c.sub_json(o)},
                         {"block", *s.begin()}});
            return;
        }
    }
    pass(r);
}

inline void p3_2_i(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    for (int m : c.lat.maximal_subs[c.lat.top()]) {
        int64_t index = c.g.n / c.lat.order(m);
        if (!c.sig.primary(index)) {
            fail(r, json{{"maximal", c.sub_json(m)}, {"index", index}});
            return;
        }
    }
    pass(r);
}

inline void p3_2_ii(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    for (BlockId b : c.sigma_g) {
        bool found = false;
        for (int m : c.lat.maximal_subs[c.lat.top()]) {
            BlockSet s = c.sig.sigma_of(c.g.n / c.lat.order(m));
            if (s.size() == 1 && *s.begin() == b) {
                found = true;
                break;
            }
        }
        if (!found) {
            fail(r, json{{"block", b}});
            return;
        }
    }
    pass(r);
}

// sigma-basis existence with cross-permuting Sylows, plus the irreducible
// pair consequence: a basis member forming an irreducible pair with another
// member forces the latter to be an elementary abelian Sylow subgroup
inline void p3_2_iii(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    std::vector<std::vector<int>> bases;
    try {
        bases = sigma_basis_sets(c.lat, c.sig, c.cfg.hall_budget);
    } catch (const Error& e) {
        if (e.code() != Errc::CapExceeded) throw;
        r.status = Status::Capped;
        r.details = json{{"reason", "hall set enumeration budget"}};
        return;
    }
    if (bases.empty()) {
        fail(r, json{{"reason", "no sigma-basis found"}});
        return;
    }
    auto member_sylows = [&](int h) {
        std::vector<int> out;
        for (int64_t p : prime_divisors(c.lat.order(h)))
            out.push_back(sylow_subgroups(c.lat, h, p).front());
        return out;
    };
    bool found = false;
    for (auto& basis : bases) {
        bool ok = true;
        for (size_t i = 0; i < basis.size() && ok; ++i)
            for (size_t j = 0; j < basis.size() && ok; ++j) {
                if (i == j) continue;
                for (int p : member_sylows(basis[i]))
                    for (int q : member_sylows(basis[j]))
                        if (!g_permutes(c.lat, p, q)) {
                            ok = false;
                            break;
                        }
            }
        if (ok) {
            found = true;
            break;
        }
    }
    if (!found) {
        fail(r, json{{"reason", "no sigma-basis with cross-permuting Sylow subgroups"}});
        return;
    }
    // irreducible-pair consequence over every basis
    for (auto& basis : bases)
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                if (i == j) continue;
                if (!is_irreducible_pair(c.lat, basis[i], basis[j])) continue;
                int hj = basis[j];
                auto ps = prime_divisors(c.lat.order(hj));
                bool sylow = ps.size() == 1 && c.lat.order(hj) == p_part(c.g.n, ps[0]);
                if (!is_elementary_abelian_mask(c.g, c.lat.mask(hj)) || !sylow) {
                    fail(r, json{{"reason", "irreducible pair member is not an elementary abelian Sylow"},
                                 {"h_i", c.sub_json(basis[i])},
                                 {"h_j", c.sub_json(hj)}});
                    return;
                }
            }
    pass(r);
}

inline void p3_2_iv(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    for (auto& pi_set : c.pi_subsets()) {
        if (hall_subgroups(c.lat, c.lat.top(), pi_set, c.sig).empty()) {
            fail(r, json{{"reason", "missing Hall subgroup"},
                         {"pi", std::vector<BlockId>(pi_set.begin(), pi_set.end())}});
            return;
        }
    }
    for (int h = 0; h < c.lat.size(); ++h) {
        if (!is_sigma_hall_subgroup(c.lat, c.lat.top(), h, c.sig)) continue;
        for (int p : c.sylow_rep)
            if (!g_permutes(c.lat, h, p)) {
                fail(r, json{{"sigma_hall", c.sub_json(h)}, {"sylow", c.sub_json(p)}});
                return;
            }
    }
    pass(r);
}

inline void p3_2_v(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    for (auto& pi_set : c.pi_subsets()) {
        std::vector<int> halls = hall_subgroups(c.lat, c.lat.top(), pi_set, c.sig);
        bool found = false;
        for (int e : halls) {
            bool covers = true;
            for (int w = 0; w < c.lat.size() && covers; ++w) {
                BlockSet s = c.sig.sigma_of(c.lat.order(w));
                bool is_pi = true;
                for (BlockId b : s) is_pi = is_pi && pi_set.count(b);
                if (!is_pi) continue;
                bool inside = false;
                for (int e2 : c.lat.classes[c.lat.conj_class[e]])
                    if (c.lat.mask(w).subset_of(c.lat.mask(e2))) {
                        inside = true;
                        break;
                    }
                covers = inside;
            }
            bool perms = true;
            for (int p : c.sylow_rep) perms = perms && g_permutes(c.lat, e, p);
            if (covers && perms) {
                found = true;
                break;
            }
        }
        if (!found) {
            fail(r, json{{"pi", std::vector<BlockId>(pi_set.begin(), pi_set.end())}});
            return;
        }
    }
    pass(r);
}

inline void p3_4(CheckCtx& c, CheckResult& r) {
    bool i = c.sigma_nilpotent;
    bool ii = true;
    for (auto& [lo, up] : c.factors) ii = ii && is_sigma_central(c.lat, c.sig, up, lo);
    // (iii): per block, some Hall subgroup of the block is sigma-subnormal
    bool iii = true;
    for (BlockId b : c.sigma_g) {
        bool any = false;
        for (int h : hall_block_subgroups(c.lat, c.lat.top(), b, c.sig))
            if (c.sub.is_sigma_subnormal(h)) {
                any = true;
                break;
            }
        iii = iii && any;
    }
    bool iv = c.sub.sn_set().count() == c.lat.size();
    bool v = true;
    for (int m : c.lat.maximal_subs[c.lat.top()]) v = v && c.sub.is_sigma_subnormal(m);
    if (i != ii || i != iii || i != iv || i != v) {
        fail(r, json{{"sigma_nilpotent", i},
                     {"all_chief_factors_sigma_central", ii},
                     {"hall_set_of_sigma_subnormal_members", iii},
                     {"all_subgroups_sigma_subnormal", iv},
                     {"all_maximal_sigma_subnormal", v}});
        return;
    }
    r.details = json{{"value", i}};
    pass(r);
}

inline void l3_6(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    std::vector<BlockSet> index_sigma(c.lat.size());
    for (int i = 0; i < c.lat.size(); ++i) index_sigma[i] = c.sig.sigma_of(c.g.n / c.lat.order(i));
    auto disjoint = [](const BlockSet& a, const BlockSet& b) {
        for (BlockId x : a)
            if (b.count(x)) return false;
        return true;
    };
    for (auto& pi_set : c.pi_subsets()) {
        if (is_pi_closed(c.lat, c.lat.top(), pi_set, c.sig)) continue;  // conclusion holds outright
        std::vector<int> closed;
        for (int i = 0; i < c.lat.size(); ++i)
            if (is_pi_closed(c.lat, i, pi_set, c.sig)) closed.push_back(i);
        for (size_t x = 0; x < closed.size(); ++x)
            for (size_t y = x; y < closed.size(); ++y) {
                if (!disjoint(index_sigma[closed[x]], index_sigma[closed[y]])) continue;
                for (size_t z = y; z < closed.size(); ++z) {
                    if (!disjoint(index_sigma[closed[x]], index_sigma[closed[z]])) continue;
                    if (!disjoint(index_sigma[closed[y]], index_sigma[closed[z]])) continue;
                    fail(r, json{{"pi", std::vector<BlockId>(pi_set.begin(), pi_set.end())},
                                 {"a", c.sub_json(closed[x])},
                                 {"b", c.sub_json(closed[y])},
                                 {"c", c.sub_json(closed[z])}});
                    return;
                }
            }
    }
    pass(r);
}

inline void l3_7(CheckCtx& c, CheckResult& r) {
    if (!c.schmidt_flag) return skip(r, "schmidt");
    // nilpotent residual = sigma-residual under the finest partition
    SigmaPartition finest;
    int p_idx = sigma_residual(c.lat, finest);
    int64_t po = c.lat.order(p_idx);
    auto ps = prime_divisors(po);
    json w{{"residual", c.sub_json(p_idx)}};
    auto fail_with = [&](const std::string& reason) {
        w["reason"] = reason;
        fail(r, w);
    };
    if (ps.size() != 1 || po != p_part(c.g.n, ps[0])) return fail_with("residual is not a Sylow subgroup");
    int64_t p = ps[0];
    std::vector<int> comps = complements(c.lat, p_idx);
    if (comps.empty()) return fail_with("no complement");
    int64_t q = c.g.n / po;
    auto qs = prime_divisors(q);
    int phi_g = frattini(c.lat, c.lat.top());
    for (int m : comps) {
        if (qs.size() != 1 || !is_cyclic_mask(c.g, c.lat.mask(m))) {
            w["complement"] = c.sub_json(m);
            return fail_with("complement is not a cyclic Sylow subgroup");
        }
        // <x^q> is the unique maximal subgroup of the cyclic complement
        if (!c.lat.maximal_subs[m].empty()) {
            int xq = c.lat.maximal_subs[m].front();
            if (!c.lat.mask(xq).subset_of(c.lat.mask(phi_g))) {
                w["complement"] = c.sub_json(m);
                return fail_with("x^q escapes the Frattini subgroup");
            }
        }
    }
    // P/Phi(P) is a chief factor of G
    int phi_p = frattini(c.lat, p_idx);
    Bitset nrm = normal_in_ambient(c.lat, c.lat.top());
    bool chief = nrm.test(phi_p) && nrm.test(p_idx);
    if (chief) {
        c.lat.below[p_idx].for_each([&](int j) {
            if (j != phi_p && nrm.test(j) && c.lat.contains_index(phi_p, j)) chief = false;
        });
    }
    if (!chief) return fail_with("P/Phi(P) is not a chief factor");
    int64_t expo = exponent_of(c.g, c.lat.mask(p_idx));
    bool abelian_p = is_abelian_mask(c.g, c.lat.mask(p_idx));
    if (!(expo == p || (p == 2 && !abelian_p && expo == 4))) {
        w["exponent"] = expo;
        return fail_with("exponent is neither p nor 4");
    }
    if (abelian_p && c.lat.order(phi_p) != 1)
        return fail_with("abelian residual with nontrivial Frattini subgroup");
    pass(r);
}

inline void c3_9(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    bool minimal_non_sn = !c.sigma_nilpotent;
    for (int i = 0; i < c.lat.top() && minimal_non_sn; ++i)
        minimal_non_sn = is_sigma_nilpotent(c.g, c.sig, c.lat.mask(i));
    if (!minimal_non_sn) return skip(r, "minimal-non-sigma-nilpotent");
    bool fiber = is_sigma_fiber(c.sig, c.g);
    if (!c.schmidt_flag || !fiber) {
        fail(r, json{{"schmidt", c.schmidt_flag}, {"sigma_fiber", fiber}});
        return;
    }
    pass(r);
}

inline void l4_1_4(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    const Bitset& qn = c.sub.qn_set();
    for (int h = qn.next(0); h >= 0; h = qn.next(h + 1))
        if (!c.sub.is_sigma_subnormal(h)) {
            fail(r, json{{"subgroup", c.sub_json(h)}});
            return;
        }
    pass(r);
}

inline void l4_1_5(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    const Bitset& qn = c.sub.qn_set();
    for (int h = qn.next(0); h >= 0; h = qn.next(h + 1)) {
        if (c.lat.order(h) == 1) continue;
        BlockSet s = c.sig.sigma_of(c.lat.order(h));
        if (s.size() != 1) continue;
        int ou = o_upper(c.lat, *s.begin(), c.sig);
        Bitset nz = normalizer_in(c.g, Bitset::full(c.g.n), c.lat.mask(h));
        if (!c.lat.mask(ou).subset_of(nz)) {
            fail(r, json{{"subgroup", c.sub_json(h)}, {"o_upper", c.sub_json(ou)}});
            return;
        }
    }
    pass(r);
}

inline void tb_quotient(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    const Bitset& qn = c.sub.qn_set();
    for (int h = qn.next(0); h >= 0; h = qn.next(h + 1)) {
        Bitset core = core_in(c.g, c.lat.mask(h), Bitset::full(c.g.n));
        auto [q, proj] = section_group(c.g, c.lat.mask(h), core);
        if (!is_sigma_nilpotent(q, c.sig)) {
            fail(r, json{{"subgroup", c.sub_json(h)}, {"core_order", core.count()}});
            return;
        }
    }
    pass(r);
}

inline void l4_2_1(CheckCtx& c, CheckResult& r) {
    int ms = c.sub.m_sigma(), msq = c.sub.m_sigma_q();
    if (ms > msq) {
        fail(r, json{{"m_sigma", ms}, {"m_sigma_q", msq}});
        return;
    }
    r.details = json{{"m_sigma", ms}, {"m_sigma_q", msq}};
    pass(r);
}

inline void t1_2_i(CheckCtx& c, CheckResult& r) {
    if (!c.soluble) return skip(r, "soluble");
    if (c.sigma_nilpotent) return skip(r, "not-sigma-nilpotent");
    auto& sets = c.hall_sigma_sets();
    if (!sets) {
        r.status = Status::Capped;
        r.details = json{{"reason", "hall set enumeration budget"}};
        return;
    }
    int rg = rank(c.lat, c.lat.top());
    int msq = c.sub.m_sigma_q();
    for (auto& hs : *sets) {
        int rmax = 0;
        for (int h : hs) rmax = std::max(rmax, rank(c.lat, h));
        if (rg > msq + rmax - 2) {
            json members = json::array();
            for (int h : hs) members.push_back(c.sub_json(h));
            fail(r, json{{"rank", rg}, {"m_sigma_q", msq}, {"member_rank_bound", rmax},
                         {"hall_set", members}});
            return;
        }
    }
    pass(r);
}

inline void t1_2_ii(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    int l = l_sigma(c.lat, c.sig), ms = c.sub.m_sigma();
    if (l > ms) {
        fail(r, json{{"l_sigma", l}, {"m_sigma", ms}});
        return;
    }
    r.details = json{{"l_sigma", l}, {"m_sigma", ms}};
    pass(r);
}

inline void t1_2_iii(CheckCtx& c, CheckResult& r) {
    if (!c.soluble) return skip(r, "soluble");
    if (c.sigma_nilpotent) return skip(r, "not-sigma-nilpotent");
    int ms = c.sub.m_sigma();
    if ((int)c.pi.size() > ms) {
        fail(r, json{{"pi_count", c.pi.size()}, {"m_sigma", ms}});
        return;
    }
    pass(r);
}

inline void t1_4_i(CheckCtx& c, CheckResult& r) {
    long long budget = c.cfg.chain_budget;
    bool hyp = true;
    std::vector<int> bad_chain;
    try {
        for_each_maximal_chain(
            c.lat, 3,
            [&](const std::vector<int>& chain) {
                if (!hyp) return;
                bool hit = false;
                for (size_t i = 1; i < chain.size(); ++i) hit = hit || c.sub.is_sigma_subnormal(chain[i]);
                if (!hit) {
                    hyp = false;
                    bad_chain = chain;
                }
            },
            &budget);
    } catch (const Error& e) {
        if (e.code() != Errc::CapExceeded) throw;
        r.status = Status::Capped;
        r.details = json{{"reason", "chain enumeration budget"}};
        return;
    }
    if (!hyp) return skip(r, "every-length-3-chain-hits-sigma-subnormal");
    if (!c.sigma_soluble_flag) {
        fail(r, json{{"sigma_soluble", false}});
        return;
    }
    pass(r);
}

inline void t1_4_ii(CheckCtx& c, CheckResult& r) {
    int ms = c.sub.m_sigma();
    if (!(ms > 1 && ms <= 3)) return skip(r, "1<m_sigma<=3");
    if (!c.soluble) {
        fail(r, json{{"m_sigma", ms}, {"soluble", false}});
        return;
    }
    pass(r);
}

inline void c1_7(CheckCtx& c, CheckResult& r) {
    bool lhs = c.sub.m_sigma() == 2;
    bool abelian_sylows = true;
    for (int p : c.sylow_rep) abelian_sylows = abelian_sylows && is_abelian_mask(c.g, c.lat.mask(p));
    bool rhs = c.schmidt_flag && abelian_sylows && is_sigma_fiber(c.sig, c.g);
    if (lhs != rhs) {
        fail(r, json{{"m_sigma_is_2", lhs}, {"schmidt", c.schmidt_flag},
                     {"abelian_sylows", abelian_sylows},
                     {"sigma_fiber", is_sigma_fiber(c.sig, c.g)}});
        return;
    }
    r.details = json{{"both_sides", lhs}};
    pass(r);
}

inline void c1_8(CheckCtx& c, CheckResult& r) {
    bool lhs = c.sub.m_sigma_q() == 2;
    bool rhs = c.supersoluble_flag && c.sub.m_sigma() == 2;
    if (lhs != rhs) {
        fail(r, json{{"m_sigma_q_is_2", lhs}, {"supersoluble", c.supersoluble_flag},
                     {"m_sigma", c.sub.m_sigma()}});
        return;
    }
    r.details = json{{"both_sides", lhs}};
    pass(r);
}

inline void c1_9(CheckCtx& c, CheckResult& r) {
    // S-quasinormality only makes sense when sigma splits the primes of G
    for (BlockId b : c.sigma_g)
        if (c.sig.block_primes_in(b, c.g.n).size() != 1) return skip(r, "sigma-finest-on-G");
    Bitset two_max = n_maximal_set(c.lat, 2);
    bool hyp = true;
    for (int i = two_max.next(0); i >= 0 && hyp; i = two_max.next(i + 1))
        hyp = c.sub.is_sigma_quasinormal(i);
    if (!hyp) return skip(r, "all-2-maximal-s-quasinormal");
    if (!c.supersoluble_flag) {
        fail(r, json{{"supersoluble", false}});
        return;
    }
    if (c.pi.size() > 2 && !c.nilpotent) {
        fail(r, json{{"pi_count", c.pi.size()}, {"nilpotent", false}});
        return;
    }
    pass(r);
}

// Structure test for soluble groups with m_sigma = |pi(G)|: either a p-group
// or D x| M with D the abelian Hall sigma-residual, plus clauses (a)-(d).
struct T110Result {
    bool type_i = false;
    bool type_ii = false;
    bool capped = false;
    bool basis_clause_all = true;
    bool basis_clause_exists = false;
    std::string failed_clause;
};

inline T110Result classify_t110(CheckCtx& c) {
    T110Result out;
    if (c.pi.size() == 1) {
        out.type_i = true;
        out.basis_clause_exists = true;  // vacuous for p-groups
        return out;
    }
    const Bitset& sn = c.sub.sn_set();
    auto fail_clause = [&](const std::string& cl) {
        out.type_ii = false;
        if (out.failed_clause.empty()) out.failed_clause = cl;
    };
    out.type_ii = true;

    int d = sigma_residual(c.lat, c.sig);
    int64_t od = c.lat.order(d);
    if (!is_abelian_mask(c.g, c.lat.mask(d))) fail_clause("D-abelian");
    if (std::gcd(od, c.g.n / od) != 1) fail_clause("D-hall");
    std::vector<int> comps;
    if (out.type_ii) {
        comps = complements(c.lat, d);
        if (comps.empty()) fail_clause("D-complemented");
    }

    // non-sigma-subnormal Sylow classes, one representative per prime
    std::vector<int> bad;
    for (int p : c.sylow_rep)
        if (!sn.test(p)) bad.push_back(p);

    // (a) part 1: cyclic, with sigma-subnormal maximal subgroup
    for (int p : bad) {
        if (!is_cyclic_mask(c.g, c.lat.mask(p))) {
            fail_clause("a-cyclic");
            break;
        }
        if (!c.lat.maximal_subs[p].empty() && !sn.test(c.lat.maximal_subs[p].front())) {
            fail_clause("a-maximal-subnormal");
            break;
        }
    }

    // (a) part 2, over every Sylow basis; both quantifier readings recorded
    try {
        long long budget = c.cfg.hall_budget;
        auto bases = all_sylow_bases(c.lat, &budget);
        bool all = true, exists = false;
        for (auto& basis : bases) {
            bool clause = true;
            for (int p1 : basis) {
                if (sn.test(p1)) continue;
                for (int pi : basis) {
                    if (pi == p1) continue;
                    clause = clause && is_elementary_abelian_mask(c.g, c.lat.mask(pi)) &&
                             is_irreducible_pair(c.lat, p1, pi);
                }
            }
            all = all && clause;
            exists = exists || clause;
        }
        out.basis_clause_all = all;
        out.basis_clause_exists = exists || bases.empty();
        if (!all) fail_clause("a-basis");
    } catch (const Error& e) {
        if (e.code() != Errc::CapExceeded) throw;
        out.capped = true;
    }

    // (a) part 3: Hall sets around a non-prime non-subnormal Sylow
    if (const auto& sets = c.hall_sigma_sets(); sets) {
        for (auto& hs : *sets)
            for (int p : bad) {
                for (int p1 : c.lat.classes[c.lat.conj_class[p]]) {
                    auto psz = prime_divisors(c.lat.order(p1));
                    if (c.lat.order(p1) == psz[0]) continue;  // prime order: clause vacuous
                    int container = -1;
                    for (int h : hs)
                        if (c.lat.mask(p1).subset_of(c.lat.mask(h))) container = h;
                    if (container < 0) continue;
                    for (int h : hs)
                        if (h != container && !c.lat.normal_in_g[h]) fail_clause("a-hall-normal");
                }
            }
    } else {
        out.capped = true;
    }

    // (b): some Sylow of M not sigma-subnormal; M acts irreducibly on the
    // Sylow subgroups of D
    for (int m : comps) {
        bool some_bad = false;
        for (int64_t p : prime_divisors(c.lat.order(m)))
            if (!sn.test(sylow_subgroups(c.lat, m, p).front())) some_bad = true;
        if (!some_bad) {
            fail_clause("b-non-subnormal-sylow");
            break;
        }
        for (int64_t q : prime_divisors(od)) {
            int qs = sylow_subgroups(c.lat, d, q).front();
            bool irreducible = true;
            c.lat.below[qs].for_each([&](int w) {
                if (c.lat.order(w) == 1) return;
                bool invariant = true;
                for (int x = c.lat.mask(m).next(0); invariant && x >= 0; x = c.lat.mask(m).next(x + 1))
                    invariant = conjugate_mask(c.g, c.lat.mask(w), x) == c.lat.mask(w);
                if (invariant) irreducible = false;
            });
            if (!irreducible) {
                fail_clause("b-irreducible-action");
                break;
            }
        }
        if (!out.type_ii) break;
    }

    // (c): two non-isomorphic bad Sylows force prime order throughout
    if (bad.size() >= 2) {
        for (int p : bad) {
            auto ps = prime_divisors(c.lat.order(p));
            if (c.lat.order(p) != ps[0]) {
                fail_clause("c-prime-order");
                break;
            }
        }
    }

    // (d): index of the normalizer of the maximal subgroup of a bad Sylow
    for (int p : bad) {
        if (!is_cyclic_mask(c.g, c.lat.mask(p))) continue;  // already failed (a)
        if (c.lat.maximal_subs[p].empty()) continue;
        int v = c.lat.maximal_subs[p].front();
        Bitset nz = normalizer_in(c.g, Bitset::full(c.g.n), c.lat.mask(v));
        int64_t index = (int64_t)c.g.n / nz.count();
        BlockId bi = c.sig.block_of(prime_divisors(c.lat.order(p))[0]);
        BlockSet s = c.sig.sigma_of(index);
        bool ok = s.empty() || (s.size() == 1 && *s.begin() == bi);
        if (!ok) {
            fail_clause("d-normalizer-index");
            break;
        }
    }

    if (bad.empty()) fail_clause("b-non-subnormal-sylow");  // sigma-nilpotent: not type (ii)
    return out;
}

inline void t1_10_fwd(CheckCtx& c, CheckResult& r) {
    if (!c.soluble) return skip(r, "soluble");
    if (c.sub.m_sigma() != (int)c.pi.size()) return skip(r, "m_sigma=|pi|");
    T110Result t = classify_t110(c);
    r.details = json{{"basis_clause_all_bases", t.basis_clause_all},
                     {"basis_clause_some_basis", t.basis_clause_exists}};
    if (t.capped) {
        r.status = Status::Capped;
        return;
    }
    if (!t.type_i && !t.type_ii) {
        fail(r, json{{"failed_clause", t.failed_clause}});
        return;
    }
    pass(r);
}

inline void t1_10_conv(CheckCtx& c, CheckResult& r) {
    if (!c.soluble) return skip(r, "soluble");
    T110Result t = classify_t110(c);
    if (t.capped) {
        r.status = Status::Capped;
        return;
    }
    if (!t.type_i && !t.type_ii) return skip(r, "classified-type");
    r.details = json{{"type", t.type_i ? "i" : "ii"}};
    if (c.sub.m_sigma() != (int)c.pi.size()) {
        fail(r, json{{"m_sigma", c.sub.m_sigma()}, {"pi_count", c.pi.size()},
                     {"type", t.type_i ? "i" : "ii"}});
        return;
    }
    pass(r);
}

inline void t7_1_i(CheckCtx& c, CheckResult& r) {
    if (!c.sigma_soluble_flag) return skip(r, "sigma-soluble");
    if (c.g.n == 1) return skip(r, "nontrivial");
    int l = l_sigma(c.lat, c.sig);
    auto [h, mono] = c.sub.spencer_height();
    if (l > h) {
        fail(r, json{{"l_sigma", l}, {"h_sigma", h}});
        return;
    }
    r.details = json{{"l_sigma", l}, {"h_sigma", h}, {"monotone", mono}};
    pass(r);
}

inline void t7_1_ii(CheckCtx& c, CheckResult& r) {
    if (!c.soluble) return skip(r, "soluble");
    if (c.sigma_nilpotent) return skip(r, "not-sigma-nilpotent");
    auto [h, mono] = c.sub.spencer_height();
    if ((int)c.pi.size() > h) {
        fail(r, json{{"pi_count", c.pi.size()}, {"h_sigma", h}});
        return;
    }
    pass(r);
}

} // namespace checks

// ---- verify_group / verify_corpus -------------------------------------------

inline json group_invariants_json(detail::CheckCtx& c) {
    json inv;
    inv["order"] = c.g.n;
    inv["subgroup_count"] = c.lat.size();
    inv["pi"] = c.pi;
    inv["sigma_g"] = c.sig.induced_on(c.pi);
    inv["sigma_primary"] = c.sigma_g.size() <= 1;
    inv["sigma_nilpotent"] = c.sigma_nilpotent;
    inv["sigma_soluble"] = c.sigma_soluble_flag;
    inv["nilpotent"] = c.nilpotent;
    inv["soluble"] = c.soluble;
    inv["supersoluble"] = c.supersoluble_flag;
    inv["abelian"] = is_abelian_mask(c.g, Bitset::full(c.g.n));
    inv["schmidt"] = c.schmidt_flag;
    MaximalityInvariants mi = c.sub.maximality();
    inv["m_sigma"] = mi.m_sigma;
    inv["m_sigma_q"] = mi.m_sigma_q;
    inv["m_sigma_q_unambiguous"] = mi.m_sigma_q_unambiguous;
    inv["no_complete_hall_sigma_set"] = mi.no_complete_hall_set;
    if (c.g.n > 1) {
        inv["h_sigma"] = mi.spencer_height;
        inv["h_sigma_monotone"] = mi.monotonicity_flag;
        inv["pi_minus_h_sigma"] = (int64_t)c.pi.size() - mi.spencer_height;
    }
    inv["pi_minus_m_sigma"] = (int64_t)c.pi.size() - mi.m_sigma;
    if (c.sigma_soluble_flag) inv["l_sigma"] = l_sigma(c.lat, c.sig);
    if (c.soluble && c.g.n > 1) inv["rank"] = rank(c.lat, c.lat.top());
    inv["sigma_residual_order"] = c.lat.order(sigma_residual(c.lat, c.sig));
    return inv;
}

inline std::vector<CheckResult> verify_group(const Group& g, const Lattice& lat,
                                             const SigmaPartition& sig,
                                             const VerifyConfig& cfg = {},
                                             json* invariants_out = nullptr) {
    detail::CheckCtx ctx(g, lat, sig, cfg);
    using Fn = void (*)(detail::CheckCtx&, CheckResult&);
    static const std::vector<std::pair<CheckId, Fn>> table = {
        {CheckId::P2_5, checks::p2_5},
        {CheckId::C2_6, checks::c2_6},
        {CheckId::L2_2_9, checks::l2_2_9},
        {CheckId::P3_2_i, checks::p3_2_i},
        {CheckId::P3_2_ii, checks::p3_2_ii},
        {CheckId::P3_2_iii, checks::p3_2_iii},
        {CheckId::P3_2_iv, checks::p3_2_iv},
        {CheckId::P3_2_v, checks::p3_2_v},
        {CheckId::P3_4, checks::p3_4},
        {CheckId::L3_6, checks::l3_6},
        {CheckId::L3_7, checks::l3_7},
        {CheckId::C3_9, checks::c3_9},
        {CheckId::L4_1_4, checks::l4_1_4},
        {CheckId::L4_1_5, checks::l4_1_5},
        {CheckId::TB_quotient, checks::tb_quotient},
        {CheckId::L4_2_1, checks::l4_2_1},
        {CheckId::T1_2_i, checks::t1_2_i},
        {CheckId::T1_2_ii, checks::t1_2_ii},
        {CheckId::T1_2_iii, checks::t1_2_iii},
        {CheckId::T1_4_i, checks::t1_4_i},
        {CheckId::T1_4_ii, checks::t1_4_ii},
        {CheckId::C1_7, checks::c1_7},
        {CheckId::C1_8, checks::c1_8},
        {CheckId::C1_9, checks::c1_9},
        {CheckId::T1_10_fwd, checks::t1_10_fwd},
        {CheckId::T1_10_conv, checks::t1_10_conv},
        {CheckId::T7_1_i, checks::t7_1_i},
        {CheckId::T7_1_ii, checks::t7_1_ii},
    };
    std::vector<CheckResult> out;
    for (auto& [id, fn] : table) {
        CheckResult r;
        r.check = id;
        r.group = g.name;
        r.sigma = sig.label();
        fn(ctx, r);
        out.push_back(std::move(r));
    }
    if (invariants_out) *invariants_out = group_invariants_json(ctx);
    return out;
}

struct Report {
    json doc;
    int fails = 0;
    bool had_errors = false;
};

inline json check_result_json(const CheckResult& r) {
    json j;
    j["check"] = check_name(r.check);
    j["group"] = r.group;
    j["sigma"] = r.sigma;
    j["status"] = status_name(r.status);
    if (!r.precondition.empty()) j["precondition"] = r.precondition;
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (!r.details.is_null()) j["details"] = r.details;
    return j;
}

inline Report verify_corpus(const CorpusLoad& corpus, const std::vector<PartitionSelector>& sels,
                            const VerifyConfig& cfg = {}, int jobs = 1,
                            const json& config_echo = json::object()) {
    struct TaskOut {
        std::vector<CheckResult> results;
        std::vector<json> invariants;
        std::string error;
    };
    std::vector<TaskOut> outs(corpus.groups.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= corpus.groups.size()) break;
            const auto& lg = corpus.groups[i];
            try {
                Lattice lat = enumerate_subgroups(lg.group);
                for (const SigmaPartition& sig : partitions_for(lg.group, sels)) {
                    json inv;
                    auto res = verify_group(lg.group, lat, sig, cfg, &inv);
                    for (auto& r : res) outs[i].results.push_back(std::move(r));
                    inv["group"] = lg.name;
                    inv["sigma"] = sig.label();
                    outs[i].invariants.push_back(std::move(inv));
                }
            } catch (const Error& e) {
                outs[i].error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<CheckResult> results;
    std::vector<json> invariants;
    std::vector<std::pair<std::string, std::string>> errors = corpus.errors;
    for (size_t i = 0; i < outs.size(); ++i) {
        for (auto& r : outs[i].results) results.push_back(std::move(r));
        for (auto& inv : outs[i].invariants) invariants.push_back(std::move(inv));
        if (!outs[i].error.empty()) errors.push_back({corpus.groups[i].name, outs[i].error});
    }

    auto ordinal = [](CheckId c) {
        const auto& all = all_checks();
        return std::find(all.begin(), all.end(), c) - all.begin();
    };
    std::sort(results.begin(), results.end(), [&](const CheckResult& a, const CheckResult& b) {
        if (a.group != b.group) return a.group < b.group;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return ordinal(a.check) < ordinal(b.check);
    });
    std::sort(invariants.begin(), invariants.end(), [](const json& a, const json& b) {
        auto ka = std::make_pair(a.at("group").get<std::string>(), a.at("sigma").get<std::string>());
        auto kb = std::make_pair(b.at("group").get<std::string>(), b.at("sigma").get<std::string>());
        return ka < kb;
    });

    Report rep;
    int pass = 0, fail = 0, skipped = 0, capped = 0;
    std::map<std::string, std::map<std::string, int>> by_check;
    json results_json = json::array();
    for (auto& r : results) {
        results_json.push_back(check_result_json(r));
        switch (r.status) {
            case Status::Pass: ++pass; break;
            case Status::Fail: ++fail; break;
            case Status::Skipped: ++skipped; break;
            case Status::Capped: ++capped; break;
        }
        ++by_check[check_name(r.check)][status_name(r.status)];
    }
    rep.fails = fail;
    rep.had_errors = !errors.empty();
    rep.doc["schema"] = 1;
    rep.doc["tool"] = json{{"name", "sigma-groups"}, {"version", "0.1.0"}};
    rep.doc["config"] = config_echo;
    rep.doc["results"] = std::move(results_json);
    rep.doc["invariants"] = json(invariants);
    json errs = json::array();
    for (auto& [entry, msg] : errors) errs.push_back(json{{"entry", entry}, {"error", msg}});
    rep.doc["errors"] = std::move(errs);
    rep.doc["summary"] = json{{"pass", pass}, {"fail", fail}, {"skipped", skipped},
                              {"capped", capped}, {"by_check", by_check}};
    return rep;
}

// named-precondition predicates, used to audit skipped results
inline bool evaluate_precondition(const std::string& name, const Group& g, const Lattice& lat,
                                  const SigmaPartition& sig, const VerifyConfig& cfg = {}) {
    detail::CheckCtx c(g, lat, sig, cfg);
    if (name == "sigma-soluble") return c.sigma_soluble_flag;
    if (name == "soluble") return c.soluble;
    if (name == "not-sigma-nilpotent") return !c.sigma_nilpotent;
    if (name == "schmidt") return c.schmidt_flag;
    if (name == "nontrivial") return g.n > 1;
    if (name == "minimal-non-sigma-nilpotent") {
        bool m = !c.sigma_nilpotent;
        for (int i = 0; i < lat.top() && m; ++i) m = is_sigma_nilpotent(g, sig, lat.mask(i));
        return m;
    }
    if (name == "sigma-finest-on-G") {
        for (BlockId b : c.sigma_g)
            if (sig.block_primes_in(b, g.n).size() != 1) return false;
        return true;
    }
    if (name == "all-2-maximal-s-quasinormal") {
        Bitset two_max = n_maximal_set(lat, 2);
        for (int i = two_max.next(0); i >= 0; i = two_max.next(i + 1))
            if (!c.sub.is_sigma_quasinormal(i)) return false;
        return true;
    }
    if (name == "every-length-3-chain-hits-sigma-subnormal") {
        bool hyp = true;
        for_each_maximal_chain(lat, 3, [&](const std::vector<int>& chain) {
            bool hit = false;
            for (size_t i = 1; i < chain.size(); ++i) hit = hit || c.sub.is_sigma_subnormal(chain[i]);
            hyp = hyp && hit;
        });
        return hyp;
    }
    if (name == "1<m_sigma<=3") {
        int m = c.sub.m_sigma();
        return m > 1 && m <= 3;
    }
    if (name == "m_sigma=|pi|") return c.sub.m_sigma() == (int)c.pi.size();
    if (name == "classified-type") {
        auto t = checks::classify_t110(c);
        return t.type_i || t.type_ii;
    }
    throw Error(Errc::ValidationError, "unknown precondition " + name);
}

} // namespace sigma
