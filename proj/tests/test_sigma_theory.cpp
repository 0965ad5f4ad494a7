#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sigma/group.hpp"
#include "sigma/group_spec.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"

using namespace sigma;

namespace {

const SigmaPartition kFinest = SigmaPartition::finest();

Group s3() { return construct({Symmetric{3}}, "S3"); }
Group a5() { return construct({Alternating{5}}, "A5"); }

std::vector<GroupSpec> small_corpus() {
    return {{Cyclic{12}}, {Cyclic{30}}, {Symmetric{3}}, {Symmetric{4}}, {Alternating{4}},
            {Dihedral{6}}, {Dicyclic{2}}, {Dicyclic{3}},
            {Semidirect{spec({Cyclic{5}}), spec({Cyclic{4}}), power_action(5, 4, 2)}},
            {Alternating{5}}};
}

} // namespace

TEST_CASE("sigma_of and block identities") {
    CHECK(kFinest.sigma_of(12) == BlockSet{2, 3});
    SigmaPartition merged = SigmaPartition::from_blocks({{2, 3}});
    CHECK(merged.sigma_of(12) == BlockSet{2});
    CHECK(kFinest.sigma_of(1).empty());

    // block ids: least prime of the block; two-block complement gets the
    // least prime outside pi
    SigmaPartition tb = SigmaPartition::two_block({3, 5});
    CHECK(tb.block_of(3) == 3);
    CHECK(tb.block_of(5) == 3);
    CHECK(tb.block_of(2) == 2);
    CHECK(tb.block_of(7) == 2);
    SigmaPartition tb2 = SigmaPartition::two_block({2, 3});
    CHECK(tb2.block_of(7) == 5);
    CHECK(tb2.sigma_of(30) == BlockSet{2, 5});

    CHECK_THROWS_AS(SigmaPartition::from_blocks({{4}}), Error);
    CHECK_THROWS_AS(SigmaPartition::from_blocks({{2, 3}, {3, 5}}), Error);
    CHECK_THROWS_AS(SigmaPartition::two_block({}), Error);
}

TEST_CASE("sigma-primary") {
    Group q8 = construct({Dicyclic{2}});
    CHECK(is_sigma_primary(kFinest, q8));
    CHECK(!is_sigma_primary(kFinest, s3()));
    CHECK(is_sigma_primary(SigmaPartition::from_blocks({{2, 3}}), s3()));
    CHECK(is_sigma_primary(kFinest, build_from_cayley({{0}})));
}

TEST_CASE("hall subgroups") {
    Group g = a5();
    Lattice lat = enumerate_subgroups(g);
    auto h23 = hall_subgroups(lat, lat.top(), BlockSet{2, 3}, kFinest);
    CHECK(h23.size() == 5);
    for (int h : h23) CHECK(lat.order(h) == 12);
    CHECK(hall_subgroups(lat, lat.top(), BlockSet{3, 5}, kFinest).empty());
    auto all = hall_subgroups(lat, lat.top(), BlockSet{2, 3, 5}, kFinest);
    CHECK(all == std::vector<int>{lat.top()});
}

TEST_CASE("complete Hall sigma-sets and sigma-bases") {
    Lattice lat3 = enumerate_subgroups(s3());
    auto sets3 = complete_hall_sigma_sets(lat3, kFinest);
    CHECK(sets3.size() == 3);
    auto bases3 = sigma_basis_sets(lat3, kFinest);
    CHECK(bases3.size() == 3);  // the normal C3 permutes with every C2

    SigmaPartition one = SigmaPartition::from_blocks({{2, 3}});
    auto prim = complete_hall_sigma_sets(lat3, one);
    REQUIRE(prim.size() == 1);
    CHECK(prim[0] == std::vector<int>{lat3.top()});

    Lattice lat5 = enumerate_subgroups(a5());
    CHECK(complete_hall_sigma_sets(lat5, kFinest).size() == 300);  // 5 * 10 * 6 Sylow choices

    Lattice lat4 = enumerate_subgroups(construct({Symmetric{4}}));
    CHECK(!sigma_basis_sets(lat4, kFinest).empty());

    CHECK_THROWS_AS(complete_hall_sigma_sets(lat5, kFinest, 100), Error);

    // no complete Hall set when a block has no Hall subgroup
    SigmaPartition tb25 = SigmaPartition::two_block({2, 5});
    CHECK(complete_hall_sigma_sets(lat5, tb25).empty());
}

TEST_CASE("sigma-nilpotency") {
    for (auto sp : std::vector<GroupSpec>{{Cyclic{12}}, {Dicyclic{2}}, {Dihedral{4}}}) {
        Group g = construct(sp);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3})})
            CHECK(is_sigma_nilpotent(g, sig));
    }
    CHECK(!is_sigma_nilpotent(s3(), kFinest));
    CHECK(is_sigma_nilpotent(s3(), SigmaPartition::from_blocks({{2, 3}})));

    // cross-check: sigma-nilpotent iff every block has a unique normal Hall
    // block-subgroup
    for (auto sp : small_corpus()) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3})}) {
            bool expected = true;
            for (BlockId b : sig.sigma_of(g.n)) {
                auto halls = hall_block_subgroups(lat, lat.top(), b, sig);
                expected = expected && halls.size() == 1 && lat.normal_in_g[halls[0]];
            }
            CHECK(is_sigma_nilpotent(g, sig, Bitset::full(g.n)) == expected);
        }
    }
}

TEST_CASE("sigma-solubility") {
    for (auto sp : std::vector<GroupSpec>{{Cyclic{30}}, {Symmetric{4}}, {Dihedral{6}}}) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({3, 5})})
            CHECK(is_sigma_soluble(lat, sig));
    }
    Lattice lat5 = enumerate_subgroups(a5());
    CHECK(!is_sigma_soluble(lat5, kFinest));
    CHECK(is_sigma_soluble(lat5, SigmaPartition::from_blocks({{2, 3, 5}})));
}

TEST_CASE("sigma-central chief factors") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    int c3 = -1;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == 3) c3 = i;
    CHECK(!is_sigma_central(lat, kFinest, c3, lat.trivial()));
    CHECK(is_sigma_central(lat, kFinest, lat.top(), c3));
    SigmaPartition one = SigmaPartition::from_blocks({{2, 3}});
    CHECK(is_sigma_central(lat, one, c3, lat.trivial()));

    int c2 = -1;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == 2) c2 = i;
    CHECK_THROWS_AS(is_sigma_central(lat, kFinest, c2, lat.trivial()), Error);
    CHECK_THROWS_AS(is_sigma_central(lat, kFinest, lat.top(), lat.trivial()), Error);
}

TEST_CASE("O_Pi, O^sigma_i and Pi-closedness") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    CHECK(lat.order(o_pi(lat, lat.top(), BlockSet{3}, kFinest)) == 3);
    CHECK(lat.order(o_pi(lat, lat.top(), BlockSet{2}, kFinest)) == 1);
    CHECK(lat.order(o_upper(lat, 2, kFinest)) == 3);
    CHECK(lat.order(o_upper(lat, 3, kFinest)) == 6);
    CHECK(!is_pi_closed(lat, lat.top(), BlockSet{2}, kFinest));
    CHECK(is_pi_closed(lat, lat.top(), BlockSet{3}, kFinest));
}

TEST_CASE("F_sigma, the upper series and l_sigma") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    CHECK(lat.order(f_sigma(lat, kFinest)) == 3);
    CHECK(l_sigma(lat, kFinest) == 2);

    SigmaPartition one = SigmaPartition::from_blocks({{2, 3}});
    CHECK(l_sigma(lat, one) == 1);

    Group s4 = construct({Symmetric{4}});
    Lattice lat4 = enumerate_subgroups(s4);
    CHECK(l_sigma(lat4, kFinest) == 3);
    auto series = upper_sigma_series(lat4, kFinest);
    REQUIRE(series.size() == 4);
    CHECK(lat4.order(series[0]) == 1);
    CHECK(lat4.order(series[1]) == 4);
    CHECK(lat4.order(series[2]) == 12);
    CHECK(lat4.order(series[3]) == 24);
    // F_sigma contains O over every single block (a normal block-subgroup
    // is sigma-nilpotent; a multi-block O_Pi need not be)
    for (auto pi : {BlockSet{2}, BlockSet{3}})
        CHECK(lat4.mask(o_pi(lat4, lat4.top(), pi, kFinest)).subset_of(lat4.mask(series[1])));

    Lattice lat5 = enumerate_subgroups(a5());
    CHECK_THROWS_AS(l_sigma(lat5, kFinest), Error);

    Lattice lt = enumerate_subgroups(build_from_cayley({{0}}, "1"));
    CHECK(l_sigma(lt, kFinest) == 0);
}

TEST_CASE("sigma-residual") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    int res = sigma_residual(lat, kFinest);
    CHECK(lat.order(res) == 3);

    Group c12 = construct({Cyclic{12}});
    Lattice lat12 = enumerate_subgroups(c12);
    CHECK(lat12.order(sigma_residual(lat12, kFinest)) == 1);

    Lattice lat5 = enumerate_subgroups(a5());
    CHECK(sigma_residual(lat5, kFinest) == lat5.top());

    // residual is normal with sigma-nilpotent quotient; with the finest
    // partition the quotient is nilpotent
    for (auto sp : small_corpus()) {
        Group h = construct(sp);
        Lattice l = enumerate_subgroups(h);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            int r = sigma_residual(l, sig);
            CHECK(l.normal_in_g[r]);
            auto [q, proj] = quotient(h, l.mask(r));
            CHECK(is_sigma_nilpotent(q, sig));
            if (sig.label() == "finest") CHECK(is_nilpotent_mask(q, Bitset::full(q.n)));
        }
    }
}

TEST_CASE("l_sigma agrees with the descending residual route") {
    // the chain G > G^N > (G^N)^N > ... reaches 1 in exactly l_sigma steps;
    // each term is extracted as a standalone group and reprocessed
    auto residual_descent = [](Group g, const SigmaPartition& sig) {
        int len = 0;
        while (g.n > 1) {
            Lattice lat = enumerate_subgroups(g);
            int r = sigma_residual(lat, sig);
            REQUIRE(lat.order(r) < g.n);  // guaranteed by sigma-solubility
            Bitset triv(g.n);
            triv.set(0);
            g = section_group(g, lat.mask(r), triv).first;
            ++len;
        }
        return len;
    };
    for (auto sp : std::vector<GroupSpec>{{Symmetric{3}}, {Symmetric{4}}, {Cyclic{30}},
                                          {Dicyclic{3}}, {Alternating{4}},
                                          {Semidirect{spec({Cyclic{5}}), spec({Cyclic{4}}),
                                                      power_action(5, 4, 2)}}}) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3})})
            CHECK(l_sigma(lat, sig) == residual_descent(g, sig));
    }
}

TEST_CASE("subgroups extract to standalone groups via the trivial section") {
    Group s4 = construct({Symmetric{4}});
    Lattice lat = enumerate_subgroups(s4);
    int a4 = -1;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == 12) a4 = i;
    REQUIRE(a4 >= 0);
    Bitset triv(s4.n);
    triv.set(0);
    Group extracted = section_group(s4, lat.mask(a4), triv).first;
    CHECK(extracted.n == 12);
    CHECK(order_fingerprint(extracted) == order_fingerprint(construct({Alternating{4}})));
}

TEST_CASE("sigma-coprime and sigma-fiber") {
    CHECK(is_sigma_coprime(kFinest, 8, 9));
    CHECK(!is_sigma_coprime(SigmaPartition::from_blocks({{2, 3}}), 8, 9));
    CHECK(is_sigma_fiber(kFinest, s3()));
    CHECK(!is_sigma_fiber(SigmaPartition::from_blocks({{2, 3}}), s3()));
}

TEST_CASE("coarsening monotonicity and finest specialisation") {
    for (auto sp : small_corpus()) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        Bitset whole = Bitset::full(g.n);

        CHECK(is_sigma_nilpotent(g, kFinest, whole) == is_nilpotent_mask(g, whole));
        CHECK(is_sigma_soluble(lat, kFinest) == is_soluble_mask(g, whole));

        // the finest partition refines every other one
        for (auto sig : {SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3}),
                         SigmaPartition::from_blocks({{2, 3, 5}})}) {
            if (is_sigma_nilpotent(g, kFinest, whole)) CHECK(is_sigma_nilpotent(g, sig, whole));
            if (is_sigma_soluble(lat, kFinest)) CHECK(is_sigma_soluble(lat, sig));
        }

        // a one-block partition over pi(G) trivialises every classifier
        std::vector<int64_t> pi = prime_divisors(g.n);
        if (!pi.empty()) {
            SigmaPartition one = SigmaPartition::from_blocks({pi});
            CHECK(is_sigma_primary(one, g));
            CHECK(is_sigma_nilpotent(g, one, whole));
            CHECK(is_sigma_soluble(lat, one));
        }
    }
}

TEST_CASE("partition labels") {
    CHECK(kFinest.label() == "finest");
    CHECK(SigmaPartition::two_block({3, 2}).label() == "two-block:2,3");
    CHECK(SigmaPartition::from_blocks({{5}, {2, 3}}).label() == "blocks:2.3");
}
