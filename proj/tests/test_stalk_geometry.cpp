#include "doctest.h"

#include "mnc/errors.hpp"
#include "mnc/stalk_geometry.hpp"

using namespace mnc;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

StalkContext takeuchi_r3() { return make_context({3, {{1, 2, 3}, {2, 3}, {3}}}); }
StalkContext mixed_r3() { return make_context({3, {{1, 2, 3}, {2}, {3}}}); }
StalkContext majima_r3() { return make_context({3, {{1}, {2}, {3}}}); }
StalkContext majima_r2() { return make_context({2, {{1}, {2}}}); }
StalkContext line_origin() { return make_context({1, {{1}}}); }

CovectorPoint cov(std::initializer_list<QVec> blocks) {
    CovectorPoint p;
    p.blocks.push_back({});
    for (const auto& b : blocks) p.blocks.push_back(b);
    return p;
}

CovectorPoint ones3() { return cov({qv({1}), qv({1}), qv({1})}); }

}  // namespace

TEST_CASE("gamma cones reproduce the worked examples") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    // gamma_2 = {(x1, x2, 0) : x2 xi2 > 0}
    auto g2 = gamma(cx, 2, p);
    CHECK_FALSE(g2.empty);
    CHECK(gamma_member(g2, qv({5, 1, 0})));
    CHECK(gamma_member(g2, qv({-7, 2, 0})));
    CHECK_FALSE(gamma_member(g2, qv({0, -1, 0})));
    CHECK_FALSE(gamma_member(g2, qv({0, 1, 1})));  // x3 pinned
    CHECK_FALSE(gamma_member(g2, qv({1, 0, 0})));  // pairing not strict

    // gamma_1 = {(x1,0,0) : x1 > 0}; gamma_3 = {(x1,x2,x3) : x3 > 0}
    auto g1 = gamma(cx, 1, p);
    CHECK(gamma_member(g1, qv({2, 0, 0})));
    CHECK_FALSE(gamma_member(g1, qv({2, 1, 0})));
    auto g3 = gamma(cx, 3, p);
    CHECK(gamma_member(g3, qv({-4, 9, 1})));
    CHECK_FALSE(gamma_member(g3, qv({-4, 9, 0})));

    auto cm = mixed_r3();
    // gamma_3 = {(x1, 0, x3) : x3 xi3 > 0}
    auto gm3 = gamma(cm, 3, p);
    CHECK(gamma_member(gm3, qv({8, 0, 1})));
    CHECK_FALSE(gamma_member(gm3, qv({8, 1, 1})));

    // zero covector block gives the empty cone
    auto gz = gamma(cx, 2, cov({qv({1}), qv({0}), qv({1})}));
    CHECK(gz.empty);
    CHECK_FALSE(gamma_member(gz, qv({0, 1, 0})));
}

TEST_CASE("gamma cones with disjoint supports are disjoint") {
    // for k, k' with neither nested in the other, the supports are pinned
    // against each other
    for (auto cx : {majima_r3(), mixed_r3()}) {
        auto p = cov({qv({1}), qv({1}), qv({1})});
        for (int k = 1; k <= 3; ++k)
            for (int k2 = k + 1; k2 <= 3; ++k2) {
                if (cx.derived.succ[k].count(k2) || cx.derived.succ[k2].count(k)) continue;
                auto g1 = gamma(cx, k, p);
                auto g2 = gamma(cx, k2, p);
                std::vector<LinCon> cons;
                for (const auto& row : g1.closure.ineqs) cons.push_back({row, Rat(0), RelOp::Ge});
                for (const auto& row : g1.closure.eqs) cons.push_back({row, Rat(0), RelOp::Eq});
                for (const auto& row : g2.closure.ineqs) cons.push_back({row, Rat(0), RelOp::Ge});
                for (const auto& row : g2.closure.eqs) cons.push_back({row, Rat(0), RelOp::Eq});
                cons.push_back({g1.strict_row, Rat(0), RelOp::Gt});
                cons.push_back({g2.strict_row, Rat(0), RelOp::Gt});
                CHECK_FALSE(lp_feasible(cx.N, cons));
            }
    }
}

TEST_CASE("sharp sets answer membership exactly") {
    // ell = 1, M = {0} in R, xi = 1: p^# = {eta > 0}
    auto cx = line_origin();
    auto s = sharp(cx, 1, cov({qv({1})}));
    CHECK(sharp_member(s, qv({1})));
    CHECK_FALSE(sharp_member(s, qv({0})));
    CHECK_FALSE(sharp_member(s, qv({-2})));

    // zero block: complement of the tau image only
    auto cx3 = takeuchi_r3();
    auto s2 = sharp(cx3, 2, cov({qv({1}), qv({0}), qv({1})}));
    // I_2 = {2,3}: eta = (eta2, eta3); tau-image = {eta3 = 0}... low block of
    // I_2 is hatI_3 = {3}
    CHECK(sharp_member(s2, qv({0, 1})));       // off the tau image
    CHECK_FALSE(sharp_member(s2, qv({1, 0}))); // in the image, pairing with 0 fails
    CHECK_FALSE(sharp_member(s2, qv({0, 0})));

    // pairing-positive inside the tau image
    auto s3 = sharp(cx3, 2, ones3());
    CHECK(sharp_member(s3, qv({1, 0})));
}

TEST_CASE("g ladder: zero covector collapses, parts stay in gamma") {
    auto cx = takeuchi_r3();
    auto pz = cov({qv({0}), qv({0}), qv({0})});
    auto lz = g_ladder(cx, pz, 3);
    CHECK(cone_equal(lz.G, cone_origin(3)));

    auto p = ones3();
    for (int m = 1; m <= 3; ++m) {
        auto lad = g_ladder(cx, p, m);
        auto next = g_ladder(cx, p, m + 1);
        CHECK(cone_subset(lad.G, next.G));
        CHECK(poly_subset(next.U, lad.U));
        for (int k = 1; k <= 3; ++k) {
            auto gk = gamma(cx, k, p);
            CHECK(gamma_contains_punctured(gk, lad.parts[k - 1]));
        }
    }
    // G_{3,m} has free (x1,x2) bounded by m<x3,xi3>
    auto lad = g_ladder(cx, p, 2);
    CHECK(cone_member(lad.parts[2], qv({2, -2, 1})));
    CHECK_FALSE(cone_member(lad.parts[2], qv({3, 0, 1})));
}

TEST_CASE("majima R^2 ladder grows toward the open quadrant") {
    auto cx = majima_r2();
    auto p = cov({qv({1}), qv({1})});
    auto l1 = g_ladder(cx, p, 1);
    auto l2 = g_ladder(cx, p, 2);
    CHECK(cone_subset(l1.G, l2.G));
    CHECK(cone_member(l2.G, qv({1, 1})));
    CHECK(cone_member(l2.G, qv({1, 0})));
    CHECK_FALSE(cone_member(l2.G, qv({-1, 0})));
}

TEST_CASE("z families satisfy the normal condition by construction") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    auto zfam = make_z_family(cx, p, 2);
    REQUIRE(zfam.size() == 3);
    // J_{<1} = {2,3} so k=1 carries an eps wedge; hatI_3 = I_3 has none
    CHECK_FALSE(zfam[0].z_eps.members.empty());
    CHECK(zfam[2].z_eps.members.empty());
    for (const auto& item : zfam) {
        CHECK(check_normal_condition(cx, p, item.Zk, item.k));
    }
}

TEST_CASE("z family shapes: gamma-only and eps-only cases") {
    auto cx = takeuchi_r3();
    // k = 1 is the innermost member (I_1 maximal): J_{<1} = {2,3}
    auto d = cx.derived;
    CHECK(d.prec[1] == std::set<int>{2, 3});
    CHECK(d.prec[3].empty());

    auto p = ones3();
    auto zfam = make_z_family(cx, p, 2);
    // k = 3: no lower blocks, Z_3 = Z_{3,Gamma} only
    CHECK(zfam[2].z_eps.members.empty());
    // zero block: Gamma = {0}
    auto pz = cov({qv({0}), qv({1}), qv({1})});
    auto zf0 = make_z_family(cx, pz, 2);
    CHECK(cone_equal(zf0[0].cap, cone_origin(3)));

    // whole space fails the normal condition at a nonzero covector
    PolySet whole = polyset_of({poly_full(3)}, 3);
    CHECK_FALSE(check_normal_condition(cx, p, whole, 1));
    // {0} passes
    PolySet origin = polyset_of({poly_from_cone(cone_origin(3))}, 3);
    CHECK(check_normal_condition(cx, p, origin, 1));
}

TEST_CASE("enclose on ell = 1 is a direct polar inclusion") {
    auto cx = line_origin();
    auto p = cov({qv({1})});
    auto zfam = make_z_family(cx, p, 2);
    auto cert = enclose(cx, p, zfam);
    CHECK(cert.ok);
    for (const auto& [pattern, ok] : cert.table) CHECK(ok);
}

TEST_CASE("enclose on takeuchi R^3 verifies all sigma patterns") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    auto zfam = make_z_family(cx, p, 4);
    auto cert = enclose(cx, p, zfam);
    CHECK(cert.ok);
    int admissible = 0;
    for (const auto& [pattern, ok] : cert.table) {
        CHECK(ok);
        ++admissible;
    }
    // J_{<1} = {2,3}, J_{<2} = {3}, J_{<3} = {}: k=3 is Gamma-forced
    CHECK(admissible == 4);
    // the enclosing sum sits inside the gamma data: check_g_condition holds
    CHECK(check_g_condition(cx, p, cert.G));
}

TEST_CASE("enclose with all blocks zero certifies the origin") {
    auto cx = majima_r2();
    auto p = cov({qv({0}), qv({0})});
    auto zfam = make_z_family(cx, p, 3);
    auto cert = enclose(cx, p, zfam);
    CHECK(cert.ok);
    CHECK(cone_equal(cert.G, cone_origin(2)));
}

TEST_CASE("check_g_condition accepts ladders and rejects the full space") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    auto lad = g_ladder(cx, p, 2);
    CHECK(check_g_condition(cx, p, lad.G));
    CHECK_FALSE(check_g_condition(cx, p, cone_full(3)));
    CHECK(check_g_condition(cx, p, cone_origin(3)));
}

TEST_CASE("multicone reproduces the printed cofinal families") {
    auto p = ones3();
    int m = 4;
    Rat eps(1, m);

    // Takeuchi: {|x2|+|x3| <= eps x1, |x3| <= eps x2, x3 >= 0} as the closure
    {
        auto mc = multicone(takeuchi_r3(), p, m);
        std::vector<Polyhedron> pieces;
        for (int s2 : {-1, 1})
            for (int s3 : {-1, 1}) {
                std::vector<QVec> A = {
                    {rat_of(0), rat_of(s2), rat_of(0)},
                    {rat_of(0), rat_of(0), rat_of(s3)},
                };
                QVec b = {rat_of(0), rat_of(0)};
                A.push_back({eps, -rat_of(s2), -rat_of(s3)});
                b.push_back(rat_of(0));
                A.push_back({rat_of(0), eps, -rat_of(s3)});
                b.push_back(rat_of(0));
                A.push_back({rat_of(0), rat_of(0), rat_of(1)});
                b.push_back(rat_of(0));
                Polyhedron piece = poly_from_rows(3, A, b);
                if (!poly_is_empty(piece)) pieces.push_back(piece);
            }
        PolySet expect = polyset_of(pieces, 3);
        CHECK(polyset_equal(mc.closed, expect));
        CHECK(multicone_member(mc, qv({16, 2, 0}) /* x3 = 0 fails strictness? */) == false);
        CHECK(multicone_member(mc, {rat_of(1), rat_of(1, 8), rat_of(1, 40)}));
    }

    // Mixed: {|x2|+|x3| <= eps x1, x2 >= 0, x3 >= 0}
    {
        auto mc = multicone(mixed_r3(), p, m);
        std::vector<QVec> A = {
            {rat_of(0), rat_of(1), rat_of(0)},
            {rat_of(0), rat_of(0), rat_of(1)},
            {eps, -rat_of(1), -rat_of(1)},
        };
        QVec b = {rat_of(0), rat_of(0), rat_of(0)};
        PolySet expect = polyset_of({poly_from_rows(3, A, b)}, 3);
        CHECK(polyset_equal(mc.closed, expect));
    }

    // Majima: the closed positive octant, for every m
    {
        auto mc1 = multicone(majima_r3(), p, 1);
        auto mc9 = multicone(majima_r3(), p, 9);
        std::vector<QVec> A = {
            {rat_of(1), rat_of(0), rat_of(0)},
            {rat_of(0), rat_of(1), rat_of(0)},
            {rat_of(0), rat_of(0), rat_of(1)},
        };
        QVec b = {rat_of(0), rat_of(0), rat_of(0)};
        PolySet expect = polyset_of({poly_from_rows(3, A, b)}, 3);
        CHECK(polyset_equal(mc1.closed, expect));
        CHECK(polyset_equal(mc9.closed, expect));
    }
}

TEST_CASE("multicone is decreasing in m") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    auto m2 = multicone(cx, p, 2);
    auto m4 = multicone(cx, p, 4);
    CHECK(polyset_subset(m4.closed, m2.closed));
}

TEST_CASE("mixed ladder endpoints") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    // J = all: W is the ball itself (multicone at direction 0 = full space)
    auto mlJ = mixed_ladder(cx, {}, {1, 2, 3}, p, 3);
    PolySet ball = polyset_of({mlJ.g.U}, 3);
    CHECK(polyset_equal(mlJ.W, ball));
    // I = all: W = multicone at p clipped to the ball
    auto mlI = mixed_ladder(cx, {1, 2, 3}, {}, p, 3);
    auto mc = multicone(cx, p, 3);
    CHECK(polyset_equal(mlI.W, polyset_intersect_poly(mc.closed, mlI.g.U)));
    CHECK_THROWS_AS(mixed_ladder(cx, {1}, {1, 2, 3}, p, 3), InputError);
}

TEST_CASE("xi_G weights follow the nesting depth") {
    auto cx = takeuchi_r3();
    auto p = ones3();
    auto lad = g_ladder(cx, p, 3);
    auto xg = xi_G(cx, p, lad.parts);
    CHECK(xg.exponents == std::vector<int>{0, 1, 2});
    CHECK(is_proper_wrt(lad.G, xg.xi));
    // sigma = 1 cannot work: (1,1,1) pairs nonpositively with rays of G_3
    CHECK(xg.sigma > 1);

    auto cm = majima_r3();
    auto lm = g_ladder(cm, p, 3);
    auto xm = xi_G(cm, p, lm.parts);
    CHECK(xm.exponents == std::vector<int>{0, 0, 0});
    CHECK(xm.sigma == 1);
    CHECK(xm.xi == qv({1, 1, 1}));
}

TEST_CASE("J* and L(xi)") {
    auto cx = takeuchi_r3();
    // all blocks nonzero: J* empty, L = R^3
    auto full = L_and_Jstar(cx, ones3());
    CHECK(full.jstar.empty());
    CHECK(cone_equal(full.L, cone_full(3)));
    CHECK(full.lemma_ok);

    // all blocks zero: J* = {1,2,3}, L = {0}
    auto zero = L_and_Jstar(cx, cov({qv({0}), qv({0}), qv({0})}));
    CHECK(zero.jstar == std::set<int>{1, 2, 3});
    CHECK(cone_equal(zero.L, cone_origin(3)));
    CHECK(zero.lemma_ok);

    // xi = (0, a, b): every J_{<=j} meets a nonzero block
    auto partial = L_and_Jstar(cx, cov({qv({0}), qv({1}), qv({1})}));
    CHECK(partial.jstar.empty());
    CHECK(partial.lemma_ok);

    // Majima with one zero block: that j joins J*
    auto cm = majima_r3();
    auto pj = L_and_Jstar(cm, cov({qv({0}), qv({1}), qv({1})}));
    CHECK(pj.jstar == std::set<int>{1});
}

TEST_CASE("cross-family cofinality: Z wedges interleave with ladders") {
    for (auto cx : {majima_r2(), takeuchi_r3(), mixed_r3()}) {
        auto p = cx.N == 2 ? cov({qv({1}), qv({1})}) : ones3();
        for (int m = 1; m <= 2; ++m) {
            auto zfam = make_z_family(cx, p, m);
            auto cert = enclose(cx, p, zfam);
            REQUIRE(cert.ok);
            // Z_1 ∩ ... ∩ Z_ell ⊆ G for the certified G, and G is admissible
            CHECK(check_g_condition(cx, p, cert.G));
            PolySet inter = zfam[0].Zk;
            for (size_t k = 1; k < zfam.size(); ++k) inter = polyset_intersect(inter, zfam[k].Zk);
            CHECK(polyset_subset(inter, polyset_of({poly_from_cone(cert.G)}, cx.N)));
            // ... and some ladder stage contains G̃ := cert.G? The ladder G_m'
            // instead certifies the reverse inclusion family-wise:
            auto lad = g_ladder(cx, p, m);
            CHECK(check_g_condition(cx, p, lad.G));
        }
    }
}
