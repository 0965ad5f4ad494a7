#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"

namespace sigma {

struct ChainStep {
    bool normal = false;   // lower is normal in upper
    BlockId block = 0;     // block of the primary quotient when not normal
};

// A qualifying chain ambient = A_t > ... > A_0 = H, stored top-down.
struct ChainWitness {
    std::vector<int> chain;        // lattice indices, chain.front() = ambient
    std::vector<ChainStep> steps;  // steps[i] joins chain[i] (upper) and chain[i+1]
};

struct MaximalityInvariants {
    int m_sigma = 1;
    int m_sigma_q = 1;
    int spencer_height = 1;
    bool monotonicity_flag = true;     // observed monotonicity of the chain predicate behind h_sigma
    bool m_sigma_q_unambiguous = true; // the all-n-maximal predicate stayed monotone past the threshold
    bool no_complete_hall_set = false; // G admits no complete Hall sigma-set
};

// Memoised sigma-subnormality / sigma-quasinormality session for one
// (lattice, partition) pair. Holds its own copy of the partition; the
// lattice must outlive the context. Not thread-safe; use one per task.
class SubnormalContext {
public:
    SubnormalContext(const Lattice& lat, SigmaPartition sig) : lat_(lat), sig_(std::move(sig)) {}

    const Lattice& lattice() const { return lat_; }
    const SigmaPartition& partition() const { return sig_; }

    // does (lower, upper) qualify as a chain step
    bool step_ok(int lower, int upper, ChainStep* kind = nullptr) {
        auto key = std::make_pair(lower, upper);
        auto it = steps_.find(key);
        if (it == steps_.end()) {
            std::optional<ChainStep> val;
            const Group& g = *lat_.g;
            if (is_normal_in(g, lat_.mask(lower), lat_.mask(upper))) {
                val = ChainStep{true, 0};
            } else {
                Bitset core = core_in(g, lat_.mask(lower), lat_.mask(upper));
                BlockSet s = sig_.sigma_of(lat_.order(upper) / core.count());
                if (s.size() <= 1) val = ChainStep{false, s.empty() ? BlockId(0) : *s.begin()};
            }
            it = steps_.emplace(key, val).first;
        }
        if (it->second && kind) *kind = *it->second;
        return it->second.has_value();
    }

    // indices of subgroups sigma-subnormal in `ambient`
    const Bitset& sn_set(int ambient = -1) {
        if (sn_.empty()) compute_sn();
        return sn_[ambient < 0 ? lat_.top() : ambient];
    }

    bool is_sigma_subnormal(int h, int ambient = -1) { return sn_set(ambient).test(h); }

    std::optional<ChainWitness> witness(int h, int ambient = -1) {
        if (ambient < 0) ambient = lat_.top();
        if (!sn_set(ambient).test(h)) return std::nullopt;
        ChainWitness w;
        int cur = ambient;
        w.chain.push_back(cur);
        while (cur != h) {
            // first qualifying step down that keeps h sigma-subnormal
            int found = -1;
            ChainStep kind;
            for (int c = lat_.below[cur].next(0); c >= 0; c = lat_.below[cur].next(c + 1)) {
                if (sn_[c].test(h) && step_ok(c, cur, &kind)) {
                    found = c;
                    break;
                }
            }
            if (found < 0) throw Error(Errc::ValidationError, "witness reconstruction failed");
            w.chain.push_back(found);
            w.steps.push_back(kind);
            cur = found;
        }
        return w;
    }

    // --- sigma-quasinormality (in G) ---

    const Bitset& qn_set() {
        if (!qn_) compute_qn();
        return *qn_;
    }

    bool is_sigma_quasinormal(int h) { return qn_set().test(h); }

    bool no_complete_hall_set() {
        qn_set();
        return no_hall_;
    }

    // one complete Hall sigma-set witnessing quasinormality of h
    std::optional<std::vector<int>> qn_witness(int h) {
        if (!is_sigma_quasinormal(h)) return std::nullopt;
        std::vector<int> out;
        for (auto& cls : hall_classes_) {
            for (const auto& members : cls) {
                bool all = true;
                for (int m : members) all = all && permutes_cached(h, m);
                if (all) {
                    out.push_back(members.front());
                    break;
                }
            }
        }
        return out;
    }

    bool permutes_cached(int a, int b) {
        if (a > b) std::swap(a, b);
        auto key = std::make_pair(a, b);
        auto it = perm_.find(key);
        if (it == perm_.end()) it = perm_.emplace(key, permutes(lat_, a, b)).first;
        return it->second;
    }

    // --- maximality invariants ---

    // for n = 1, 2, ...: is every n-maximal subgroup inside `set`; the vector
    // covers n up to the first vacuous level
    std::vector<bool> frontier_flags(const Bitset& set) {
        std::vector<bool> flags;
        Bitset cur(lat_.size());
        cur.set(lat_.top());
        while (true) {
            Bitset next(lat_.size());
            cur.for_each([&](int i) {
                for (int m : lat_.maximal_subs[i]) next.set(m);
            });
            cur = next;
            flags.push_back(cur.subset_of(set));
            if (cur.empty()) break;
        }
        return flags;
    }

    int m_sigma() {
        if (!m_sigma_) m_sigma_ = least_true(frontier_flags(sn_set()), nullptr);
        return *m_sigma_;
    }

    int m_sigma_q() {
        if (!m_sigma_q_) {
            bool mono = true;
            m_sigma_q_ = least_true(frontier_flags(qn_set()), &mono);
            msq_unambiguous_ = mono;
        }
        return *m_sigma_q_;
    }

    bool m_sigma_q_unambiguous() {
        m_sigma_q();
        return msq_unambiguous_;
    }

    // least n such that every maximal chain of length n passes through a
    // sigma-subnormal proper entry; the flag reports observed monotonicity
    std::pair<int, bool> spencer_height() {
        if (lat_.order(lat_.top()) == 1)
            throw Error(Errc::TrivialGroup, "spencer height of the trivial group");
        const Bitset& sn = sn_set();
        // layer k holds the endpoints of length-k maximal chains whose
        // entries below the top all avoid sigma-subnormal nodes; the layers
        // shrink to empty and stay empty, which is the observed monotonicity
        Bitset cur(lat_.size());
        cur.set(lat_.top());
        int free_len = 0;
        for (int len = 1;; ++len) {
            Bitset next(lat_.size());
            cur.for_each([&](int i) {
                for (int m : lat_.maximal_subs[i])
                    if (!sn.test(m)) next.set(m);
            });
            if (next.empty()) break;
            free_len = len;
            cur = next;
        }
        return {free_len + 1, true};
    }

    MaximalityInvariants maximality() {
        MaximalityInvariants mi;
        mi.m_sigma = m_sigma();
        mi.m_sigma_q = m_sigma_q();
        mi.m_sigma_q_unambiguous = m_sigma_q_unambiguous();
        mi.no_complete_hall_set = no_complete_hall_set();
        if (lat_.order(lat_.top()) > 1) {
            auto [h, mono] = spencer_height();
            mi.spencer_height = h;
            mi.monotonicity_flag = mono;
        }
        return mi;
    }

private:
    void compute_sn() {
        int s = lat_.size();
        sn_.assign(s, Bitset(s));
        for (int b = 0; b < s; ++b) {
            sn_[b].set(b);
            lat_.below[b].for_each([&](int c) {
                if (step_ok(c, b)) sn_[b] |= sn_[c];
            });
        }
    }

    void compute_qn() {
        const int s = lat_.size();
        qn_ = Bitset(s);
        no_hall_ = false;
        hall_classes_.clear();
        BlockSet sg = sig_.sigma_of(lat_.order(lat_.top()));
        for (BlockId b : sg) {
            std::vector<int> halls = hall_block_subgroups(lat_, lat_.top(), b, sig_);
            if (halls.empty()) {
                no_hall_ = true;
                return;  // no complete Hall sigma-set: nothing is sigma-quasinormal
            }
            std::map<int, std::vector<int>> by_class;
            for (int h : halls) by_class[lat_.conj_class[h]].push_back(h);
            std::vector<std::vector<int>> classes;
            for (auto& [cls, members] : by_class) classes.push_back(members);
            hall_classes_.push_back(std::move(classes));
        }
        for (int h = 0; h < s; ++h) {
            bool ok = true;
            for (auto& cls : hall_classes_) {
                bool found = false;
                for (const auto& members : cls) {
                    bool all = true;
                    for (int m : members) all = all && permutes_cached(h, m);
                    if (all) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
            }
            if (ok) qn_->set(h);
        }
    }

    static int least_true(const std::vector<bool>& flags, bool* monotone) {
        int least = (int)flags.size();  // final level is vacuously true
        for (int i = 0; i < (int)flags.size(); ++i)
            if (flags[i]) {
                least = i + 1;
                break;
            }
        if (monotone) {
            *monotone = true;
            for (int i = least - 1; i < (int)flags.size(); ++i)
                if (!flags[i]) *monotone = false;
        }
        return least;
    }

    const Lattice& lat_;
    SigmaPartition sig_;
    std::map<std::pair<int, int>, std::optional<ChainStep>> steps_;
    std::vector<Bitset> sn_;
    std::optional<Bitset> qn_;
    bool no_hall_ = false;
    std::vector<std::vector<std::vector<int>>> hall_classes_;  // per block: conjugacy classes of Hall subgroups
    std::map<std::pair<int, int>, bool> perm_;
    std::optional<int> m_sigma_, m_sigma_q_;
    bool msq_unambiguous_ = true;
};

// standalone forms of the main predicates

inline std::pair<bool, std::optional<ChainWitness>> is_sigma_subnormal(const Lattice& lat,
                                                                       const SigmaPartition& sig,
                                                                       int h, int ambient = -1) {
    if (ambient < 0) ambient = lat.top();
    if (!lat.mask(h).subset_of(lat.mask(ambient)))
        throw Error(Errc::NotContained, "subgroup not contained in ambient");
    SubnormalContext ctx(lat, sig);
    bool ok = ctx.is_sigma_subnormal(h, ambient);
    return {ok, ok ? ctx.witness(h, ambient) : std::nullopt};
}

inline std::vector<int> sigma_subnormal_set(const Lattice& lat, const SigmaPartition& sig) {
    SubnormalContext ctx(lat, sig);
    return ctx.sn_set().to_vector();
}

inline bool is_sigma_quasinormal(const Lattice& lat, const SigmaPartition& sig, int h) {
    SubnormalContext ctx(lat, sig);
    return ctx.is_sigma_quasinormal(h);
}

inline int m_sigma(const Lattice& lat, const SigmaPartition& sig) {
    SubnormalContext ctx(lat, sig);
    return ctx.m_sigma();
}

inline int m_sigma_q(const Lattice& lat, const SigmaPartition& sig) {
    SubnormalContext ctx(lat, sig);
    return ctx.m_sigma_q();
}

inline std::pair<int, bool> spencer_height(const Lattice& lat, const SigmaPartition& sig) {
    SubnormalContext ctx(lat, sig);
    return ctx.spencer_height();
}

// replay a chain witness step by step
inline bool validate_witness(const Lattice& lat, const SigmaPartition& sig, const ChainWitness& w,
                             int h, int ambient = -1) {
    if (ambient < 0) ambient = lat.top();
    if (w.chain.empty() || w.chain.front() != ambient || w.chain.back() != h) return false;
    if (w.steps.size() + 1 != w.chain.size()) return false;
    const Group& g = *lat.g;
    for (size_t i = 0; i + 1 < w.chain.size(); ++i) {
        int upper = w.chain[i], lower = w.chain[i + 1];
        if (!lat.mask(lower).subset_of(lat.mask(upper)) || lower == upper) return false;
        if (w.steps[i].normal) {
            if (!is_normal_in(g, lat.mask(lower), lat.mask(upper))) return false;
        } else {
            Bitset core = core_in(g, lat.mask(lower), lat.mask(upper));
            BlockSet s = sig.sigma_of(lat.order(upper) / core.count());
            if (s.size() != 1 || *s.begin() != w.steps[i].block) return false;
        }
    }
    return true;
}

} // namespace sigma
