#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sigma/group.hpp"
#include "sigma/group_spec.hpp"
#include "sigma/lattice.hpp"
#include "sigma/partition.hpp"
#include "sigma/sigma_theory.hpp"
#include "sigma/subnormality.hpp"

using namespace sigma;

namespace {

const SigmaPartition kFinest = SigmaPartition::finest();

Group s3() { return construct({Symmetric{3}}, "S3"); }
Group s4() { return construct({Symmetric{4}}, "S4"); }
Group a5() { return construct({Alternating{5}}, "A5"); }

int sub_of_order(const Lattice& lat, int order, int nth = 0) {
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == order && nth-- == 0) return i;
    REQUIRE(false);
    return -1;
}

// a transposition subgroup of S4 built from an actual order-2 element that
// fixes two points is hard to pin down by order alone; non-sigma-subnormal
// 2-subgroups are recognised through the oracle instead
std::vector<int> order2_subgroups(const Lattice& lat) {
    std::vector<int> out;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == 2) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("sigma-subnormality on S3") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    int c3 = sub_of_order(lat, 3), c2 = sub_of_order(lat, 2);

    auto [ok3, w3] = is_sigma_subnormal(lat, kFinest, c3);
    CHECK(ok3);
    REQUIRE(w3.has_value());
    CHECK(w3->chain == std::vector<int>{lat.top(), c3});
    REQUIRE(w3->steps.size() == 1);
    CHECK(w3->steps[0].normal);
    CHECK(validate_witness(lat, kFinest, *w3, c3));

    auto [ok2, w2] = is_sigma_subnormal(lat, kFinest, c2);
    CHECK(!ok2);
    CHECK(!w2.has_value());
    CHECK(!oracle::sigma_subnormal(lat, kFinest, c2, lat.top()));

    SigmaPartition one = SigmaPartition::from_blocks({{2, 3}});
    CHECK(is_sigma_subnormal(lat, one, c2).first);

    auto sn = sigma_subnormal_set(lat, kFinest);
    CHECK(sn == std::vector<int>{lat.trivial(), c3, lat.top()});

    CHECK_THROWS_AS(is_sigma_subnormal(lat, kFinest, c3, c2), Error);
}

TEST_CASE("sigma-subnormality on S4: only the A4 route admits a top step") {
    Group g = s4();
    Lattice lat = enumerate_subgroups(g);
    SubnormalContext ctx(lat, kFinest);
    int v4 = -1;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.order(i) == 4 && lat.normal_in_g[i]) v4 = i;
    REQUIRE(v4 >= 0);
    CHECK(ctx.is_sigma_subnormal(v4));

    // transpositions generate order-2 subgroups outside every qualifying
    // chain; the double-transposition subgroups sit inside V4
    int in_v4 = 0, outside = 0;
    for (int i : order2_subgroups(lat)) {
        bool inside = lat.mask(i).subset_of(lat.mask(v4));
        CHECK(ctx.is_sigma_subnormal(i) == inside);
        (inside ? in_v4 : outside)++;
    }
    CHECK(in_v4 == 3);
    CHECK(outside == 6);
}

TEST_CASE("sigma-subnormal sets") {
    Lattice lat5 = enumerate_subgroups(a5());
    auto sn5 = sigma_subnormal_set(lat5, kFinest);
    CHECK(sn5 == std::vector<int>{lat5.trivial(), lat5.top()});

    // sigma-nilpotent groups: every subgroup sigma-subnormal
    Group c12 = construct({Cyclic{12}});
    Lattice lat12 = enumerate_subgroups(c12);
    CHECK((int)sigma_subnormal_set(lat12, kFinest).size() == lat12.size());

    Group q8 = construct({Dicyclic{2}});
    Lattice lat8 = enumerate_subgroups(q8);
    CHECK((int)sigma_subnormal_set(lat8, kFinest).size() == lat8.size());
}

TEST_CASE("sigma-subnormality agrees with the exhaustive chain oracle") {
    std::vector<GroupSpec> corpus = {{Symmetric{3}}, {Alternating{4}}, {Dihedral{4}},
                                     {Dicyclic{3}}, {Cyclic{12}},
                                     {Semidirect{spec({Cyclic{5}}), spec({Cyclic{4}}),
                                                 power_action(5, 4, 2)}}};
    for (auto& sp : corpus) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            SubnormalContext ctx(lat, sig);
            for (int h = 0; h < lat.size(); ++h)
                CHECK(ctx.is_sigma_subnormal(h) == oracle::sigma_subnormal(lat, sig, h, lat.top()));
        }
    }
}

TEST_CASE("witnesses re-validate step by step") {
    for (auto& sp : std::vector<GroupSpec>{{Symmetric{4}}, {Alternating{5}}, {Dicyclic{4}}}) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2, 3})}) {
            SubnormalContext ctx(lat, sig);
            const Bitset& sn = ctx.sn_set();
            for (int h = sn.next(0); h >= 0; h = sn.next(h + 1)) {
                auto w = ctx.witness(h);
                REQUIRE(w.has_value());
                CHECK(validate_witness(lat, sig, *w, h));
            }
        }
    }
    // a doctored witness must not validate: the quotient S3/C3 lives in
    // block 2, so claiming block 3 is wrong, and so is a truncated chain
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    SubnormalContext ctx(lat, kFinest);
    auto w = ctx.witness(sub_of_order(lat, 3));
    REQUIRE(w.has_value());
    ChainWitness bad = *w;
    bad.steps[0].normal = false;
    bad.steps[0].block = 3;
    CHECK(!validate_witness(lat, kFinest, bad, sub_of_order(lat, 3)));
    ChainWitness truncated = *w;
    truncated.chain.pop_back();
    CHECK(!validate_witness(lat, kFinest, truncated, sub_of_order(lat, 3)));
}

TEST_CASE("normal and subnormal imply sigma-subnormal") {
    for (auto& sp : std::vector<GroupSpec>{{Symmetric{4}}, {Alternating{5}}, {Dihedral{6}},
                                           {Cyclic{30}}}) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        Bitset whole = Bitset::full(g.n);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            SubnormalContext ctx(lat, sig);
            for (int i = 0; i < lat.size(); ++i) {
                if (lat.normal_in_g[i]) CHECK(ctx.is_sigma_subnormal(i));
                if (is_subnormal_in(g, lat.mask(i), whole)) CHECK(ctx.is_sigma_subnormal(i));
            }
        }
    }
}

TEST_CASE("sigma-quasinormality") {
    Group g = s3();
    Lattice lat = enumerate_subgroups(g);
    int c3 = sub_of_order(lat, 3), c2 = sub_of_order(lat, 2);
    SubnormalContext ctx(lat, kFinest);
    CHECK(ctx.is_sigma_quasinormal(c3));
    CHECK(!ctx.is_sigma_quasinormal(c2));
    CHECK(ctx.is_sigma_quasinormal(lat.trivial()));
    CHECK(ctx.is_sigma_quasinormal(lat.top()));
    CHECK(!ctx.no_complete_hall_set());

    auto w = ctx.qn_witness(c3);
    REQUIRE(w.has_value());
    REQUIRE(w->size() == 2);  // one Hall subgroup per block of sigma(G)
    for (int a : *w)
        for (int a2 : lat.classes[lat.conj_class[a]])
            CHECK(permutes(lat, c3, a2));

    // no complete Hall sigma-set: nothing is sigma-quasinormal
    Lattice lat5 = enumerate_subgroups(a5());
    SubnormalContext ctx5(lat5, SigmaPartition::two_block({2, 5}));
    CHECK(ctx5.qn_set().empty());
    CHECK(ctx5.no_complete_hall_set());

    // sigma-quasinormal does not force subnormal once sigma coarsens:
    // C3 <= A4 under sigma = {{2,3}, rest}
    Group a4 = construct({Alternating{4}}, "A4");
    Lattice lat4 = enumerate_subgroups(a4);
    SubnormalContext ctx4(lat4, SigmaPartition::two_block({2, 3}));
    int c3a = sub_of_order(lat4, 3);
    CHECK(ctx4.is_sigma_quasinormal(c3a));
    CHECK(!is_subnormal_in(a4, lat4.mask(c3a), Bitset::full(a4.n)));
}

TEST_CASE("m_sigma and m_sigma_q") {
    Lattice lat5 = enumerate_subgroups(a5());
    SubnormalContext ctx5(lat5, kFinest);
    CHECK(ctx5.m_sigma_q() == 4);
    CHECK(ctx5.m_sigma() == 4);
    CHECK(ctx5.m_sigma_q_unambiguous());

    Lattice lat3 = enumerate_subgroups(s3());
    CHECK(m_sigma(lat3, kFinest) == 2);
    CHECK(m_sigma_q(lat3, kFinest) == 2);

    Lattice lat4 = enumerate_subgroups(s4());
    CHECK(m_sigma(lat4, kFinest) == 4);

    // sigma-nilpotent groups sit at threshold 1
    for (auto& sp : std::vector<GroupSpec>{{Cyclic{12}}, {Dicyclic{2}}, {Dihedral{4}}}) {
        Lattice lat = enumerate_subgroups(construct(sp));
        CHECK(m_sigma(lat, kFinest) == 1);
        CHECK(m_sigma_q(lat, kFinest) == 1);
    }
    Group c6 = construct({Cyclic{6}});
    Lattice lat6 = enumerate_subgroups(c6);
    SigmaPartition one = SigmaPartition::from_blocks({{2, 3}});
    CHECK(m_sigma(enumerate_subgroups(s3()), one) == 1);
    CHECK(m_sigma(lat6, kFinest) == 1);

    // trivial group: both thresholds are 1 by convention
    Lattice lt = enumerate_subgroups(build_from_cayley({{0}}, "1"));
    CHECK(m_sigma(lt, kFinest) == 1);
    CHECK(m_sigma_q(lt, kFinest) == 1);
}

TEST_CASE("m values agree with the chain-materialising oracle") {
    std::vector<GroupSpec> corpus = {{Symmetric{3}}, {Alternating{4}}, {Symmetric{4}},
                                     {Dicyclic{3}}, {Dihedral{6}}};
    for (auto& sp : corpus) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({3})}) {
            SubnormalContext ctx(lat, sig);
            std::set<int> sn_good, qn_good;
            for (int i = 0; i < lat.size(); ++i) {
                if (oracle::sigma_subnormal(lat, sig, i, lat.top())) sn_good.insert(i);
                if (ctx.is_sigma_quasinormal(i)) qn_good.insert(i);
            }
            CHECK(ctx.m_sigma() == oracle::least_all_inside(lat, sn_good));
            CHECK(ctx.m_sigma_q() == oracle::least_all_inside(lat, qn_good));
        }
    }
}

TEST_CASE("m_sigma <= m_sigma_q across corpus and partitions") {
    std::vector<GroupSpec> corpus = {{Symmetric{3}}, {Alternating{4}}, {Symmetric{4}},
                                     {Alternating{5}}, {Cyclic{30}}, {Dicyclic{4}}};
    for (auto& sp : corpus) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3})}) {
            SubnormalContext ctx(lat, sig);
            CHECK(ctx.m_sigma() <= ctx.m_sigma_q());
        }
    }
}

TEST_CASE("sigma-subnormal block-subgroups land in O_{sigma_i}") {
    for (auto& sp : std::vector<GroupSpec>{{Symmetric{4}}, {Dicyclic{3}}, {Cyclic{30}}}) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            SubnormalContext ctx(lat, sig);
            const Bitset& sn = ctx.sn_set();
            for (int i = sn.next(0); i >= 0; i = sn.next(i + 1)) {
                if (lat.order(i) == 1) continue;
                BlockSet s = sig.sigma_of(lat.order(i));
                if (s.size() != 1) continue;
                int o = o_pi(lat, lat.top(), s, sig);
                CHECK(lat.mask(i).subset_of(lat.mask(o)));
            }
        }
    }
}

TEST_CASE("sigma-quasinormality agrees with the literal-definition oracle") {
    std::vector<GroupSpec> corpus = {{Symmetric{3}}, {Alternating{4}}, {Dihedral{6}},
                                     {Dicyclic{3}}, {Cyclic{12}},
                                     {Semidirect{spec({Cyclic{5}}), spec({Cyclic{4}}),
                                                 power_action(5, 4, 2)}}};
    for (auto& sp : corpus) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2}), SigmaPartition::two_block({2, 3})}) {
            SubnormalContext ctx(lat, sig);
            for (int h = 0; h < lat.size(); ++h)
                CHECK(ctx.is_sigma_quasinormal(h) == oracle::sigma_quasinormal(lat, sig, h));
        }
    }
}

TEST_CASE("spencer height agrees with the literal two-clause oracle") {
    std::vector<GroupSpec> corpus = {{Symmetric{3}}, {Alternating{4}}, {Symmetric{4}},
                                     {Dicyclic{3}}, {Dihedral{6}}, {Cyclic{12}}};
    for (auto& sp : corpus) {
        Group g = construct(sp);
        Lattice lat = enumerate_subgroups(g);
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            SubnormalContext ctx(lat, sig);
            CHECK(ctx.spencer_height().first == oracle::spencer_height(lat, sig));
        }
    }
}

TEST_CASE("spencer height") {
    Lattice lat3 = enumerate_subgroups(s3());
    auto [h3, mono3] = spencer_height(lat3, kFinest);
    CHECK(h3 == 2);
    CHECK(mono3);

    Lattice lat5 = enumerate_subgroups(a5());
    auto [h5, mono5] = spencer_height(lat5, kFinest);
    CHECK(h5 == 4);
    CHECK(mono5);

    for (auto& sp : std::vector<GroupSpec>{{Cyclic{12}}, {Dicyclic{2}}}) {
        Lattice lat = enumerate_subgroups(construct(sp));
        CHECK(spencer_height(lat, kFinest).first == 1);
    }

    Lattice lt = enumerate_subgroups(build_from_cayley({{0}}, "1"));
    CHECK_THROWS_AS(spencer_height(lt, kFinest), Error);

    // h_sigma never exceeds m_sigma
    for (auto& sp : std::vector<GroupSpec>{{Symmetric{3}}, {Symmetric{4}}, {Alternating{5}},
                                           {Dihedral{6}}}) {
        Lattice lat = enumerate_subgroups(construct(sp));
        for (auto sig : {kFinest, SigmaPartition::two_block({2})}) {
            SubnormalContext ctx(lat, sig);
            CHECK(ctx.spencer_height().first <= ctx.m_sigma());
        }
    }
}

TEST_CASE("maximality invariants bundle") {
    Lattice lat = enumerate_subgroups(s4());
    SubnormalContext ctx(lat, kFinest);
    MaximalityInvariants mi = ctx.maximality();
    CHECK(mi.m_sigma == 4);
    CHECK(mi.m_sigma_q == 4);
    CHECK(mi.spencer_height == 4);
    CHECK(mi.monotonicity_flag);
    CHECK(mi.m_sigma_q_unambiguous);
    CHECK(!mi.no_complete_hall_set);
    CHECK(mi.m_sigma >= 1);
    CHECK(mi.m_sigma <= mi.m_sigma_q);
}
