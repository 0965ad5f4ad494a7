#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigma/errors.hpp"
#include "sigma/group.hpp"
#include "sigma/numbers.hpp"

namespace sigma {

// A block of a sigma-partition is identified by its least prime; primes not
// listed in any explicit block form implicit singleton blocks.
using BlockId = int64_t;
using BlockSet = std::set<BlockId>;

class SigmaPartition {
public:
    SigmaPartition() = default;  // finest: every prime its own block

    static SigmaPartition finest() { return SigmaPartition(); }

    static SigmaPartition from_blocks(std::vector<std::vector<int64_t>> blocks) {
        SigmaPartition s;
        std::set<int64_t> seen;
        for (auto& b : blocks) {
            if (b.empty()) throw Error(Errc::ValidationError, "empty block");
            std::sort(b.begin(), b.end());
            for (int64_t p : b) {
                if (p < 2 || !is_prime(p))
                    throw Error(Errc::ValidationError, std::to_string(p) + " is not a prime");
                if (!seen.insert(p).second)
                    throw Error(Errc::ValidationError,
                                "prime " + std::to_string(p) + " listed in two blocks");
            }
            if (b.size() > 1) s.blocks_.push_back(std::move(b));  // singleton blocks are the default rule
        }
        std::sort(s.blocks_.begin(), s.blocks_.end());
        return s;
    }

    // sigma = {pi, pi'}
    static SigmaPartition two_block(std::vector<int64_t> pi) {
        if (pi.empty()) throw Error(Errc::ValidationError, "two-block partition needs a nonempty prime set");
        SigmaPartition s = from_blocks({pi});
        s.two_block_pi_ = pi;
        std::sort(s.two_block_pi_.begin(), s.two_block_pi_.end());
        s.two_block_pi_.erase(std::unique(s.two_block_pi_.begin(), s.two_block_pi_.end()),
                              s.two_block_pi_.end());
        return s;
    }

    BlockId block_of(int64_t p) const {
        for (auto& b : blocks_)
            if (std::binary_search(b.begin(), b.end(), p)) return b.front();
        if (two_block_pi_.empty()) return p;
        // complement primes of a two-block partition share one block,
        // identified by the least prime outside pi
        if (std::binary_search(two_block_pi_.begin(), two_block_pi_.end(), p)) return two_block_pi_.front();
        return complement_id();
    }

    // sigma(n): blocks meeting the prime support of n
    BlockSet sigma_of(int64_t n) const {
        BlockSet ids;
        for (int64_t p : prime_divisors(n)) ids.insert(block_of(p));
        return ids;
    }

    BlockSet sigma_of_group(const Group& g) const { return sigma_of(g.n); }

    bool primary(int64_t n) const { return sigma_of(n).size() <= 1; }

    bool coprime(int64_t m, int64_t n) const {
        BlockSet a = sigma_of(m);
        for (BlockId b : sigma_of(n))
            if (a.count(b)) return false;
        return true;
    }

    // largest divisor of n whose primes lie in the given block
    int64_t block_part(int64_t n, BlockId id) const {
        int64_t part = 1;
        for (auto& [p, e] : factorize(n))
            if (block_of(p) == id)
                for (int i = 0; i < e; ++i) part *= p;
        return part;
    }

    // largest divisor of n supported on the given set of blocks
    int64_t pi_part(int64_t n, const BlockSet& pi) const {
        int64_t part = 1;
        for (auto& [p, e] : factorize(n))
            if (pi.count(block_of(p)))
                for (int i = 0; i < e; ++i) part *= p;
        return part;
    }

    std::vector<int64_t> block_primes_in(BlockId id, int64_t n) const {
        std::vector<int64_t> ps;
        for (int64_t p : prime_divisors(n))
            if (block_of(p) == id) ps.push_back(p);
        return ps;
    }

    std::string label() const {
        if (blocks_.empty() && two_block_pi_.empty()) return "finest";
        if (!two_block_pi_.empty()) {
            std::string s = "two-block:";
            for (size_t i = 0; i < two_block_pi_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(two_block_pi_[i]);
            }
            return s;
        }
        std::string s = "blocks:";
        for (size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += "|";
            for (size_t j = 0; j < blocks_[i].size(); ++j) {
                if (j) s += ".";
                s += std::to_string(blocks_[i][j]);
            }
        }
        return s;
    }

    const std::vector<std::vector<int64_t>>& explicit_blocks() const { return blocks_; }

    // blocks restricted to a prime set, as the induced set partition;
    // used to deduplicate selectors per group
    std::vector<std::vector<int64_t>> induced_on(const std::vector<int64_t>& primes) const {
        std::map<BlockId, std::vector<int64_t>> by;
        for (int64_t p : primes) by[block_of(p)].push_back(p);
        std::vector<std::vector<int64_t>> out;
        for (auto& [id, ps] : by) out.push_back(ps);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static bool is_prime(int64_t p) {
        if (p < 2) return false;
        for (int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    BlockId complement_id() const {
        for (int64_t q = 2;; ++q)
            if (is_prime(q) && !std::binary_search(two_block_pi_.begin(), two_block_pi_.end(), q))
                return q;
    }

    std::vector<std::vector<int64_t>> blocks_;  // explicit non-singleton blocks, sorted
    std::vector<int64_t> two_block_pi_;         // nonempty iff sigma = {pi, pi'}
};

} // namespace sigma
