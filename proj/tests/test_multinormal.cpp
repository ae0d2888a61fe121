#include "doctest.h"

#include "mnc/errors.hpp"
#include "mnc/multinormal.hpp"

#include <random>

using namespace mnc;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

MonomialScheme scheme_of(const IndexFamily& f) { return scheme_from_family(f, derive(f)); }

// Takeuchi R^2: I = {{1,2},{2}}, scaling (t1 x1, t1 t2 x2)
IndexFamily takeuchi_r2() { return {2, {{1, 2}, {2}}}; }

PolySet halfwedge_r2() {
    // Z = {x2 >= x1, x1 >= 0}
    Polyhedron z = poly_from_rows(2, {{rat_of(-1), rat_of(1)}, {rat_of(1), rat_of(0)}},
                                  {rat_of(0), rat_of(0)});
    return polyset_of({z}, 2);
}

}  // namespace

TEST_CASE("takeuchi R^2 membership with certificates") {
    auto s = scheme_of(takeuchi_r2());
    PolySet Z = halfwedge_r2();

    auto in = mnc_member(s, Z, qv({0, 1}));
    CHECK(in.verdict == Verdict::IN);
    REQUIRE(in.cert_in.has_value());
    CHECK(verify_membership(s, Z, qv({0, 1}), *in.cert_in));

    auto out1 = mnc_member(s, Z, qv({0, -1}));
    CHECK(out1.verdict == Verdict::OUT);
    REQUIRE(out1.cert_out.has_value());
    CHECK(verify_separation(s, Z, *out1.cert_out));

    auto out2 = mnc_member(s, Z, qv({1, 0}));
    CHECK(out2.verdict == Verdict::OUT);
    REQUIRE(out2.cert_out.has_value());
    CHECK(verify_separation(s, Z, *out2.cert_out));
}

TEST_CASE("takeuchi R^2 describe equals the axis half-line") {
    auto s = scheme_of(takeuchi_r2());
    auto res = mnc_describe(s, halfwedge_r2());
    PolySet expect = polyset_of(
        {poly_from_rows(2, {{rat_of(0), rat_of(1)}}, {rat_of(0)}, {{rat_of(1), rat_of(0)}},
                        {rat_of(0)})},
        2);
    CHECK(polyset_equal(res.cone, expect));
}

TEST_CASE("invariant cone is its own limit (ell = 1)") {
    // radial scaling of R^2, Z = {x2 >= 3 x1, x1 >= 0}
    MonomialScheme s{1, 2, {{1}, {1}}};
    Polyhedron z = poly_from_rows(2, {{rat_of(-3), rat_of(1)}, {rat_of(1), rat_of(0)}},
                                  {rat_of(0), rat_of(0)});
    PolySet Z = polyset_of({z}, 2);
    auto res = mnc_describe(s, Z);
    CHECK(polyset_equal(res.cone, Z));

    CHECK(mnc_member(s, Z, qv({1, 3})).verdict == Verdict::IN);
    CHECK(mnc_member(s, Z, qv({1, 0})).verdict == Verdict::OUT);
}

TEST_CASE("set bounded away from the center has empty limit") {
    MonomialScheme s{1, 1, {{1}}};
    PolySet Z = polyset_of({poly_from_rows(1, {{rat_of(1)}}, {rat_of(1)})}, 1);
    for (long v : {-2L, -1L, 0L, 1L, 2L}) {
        auto r = mnc_member(s, Z, {rat_of(v)});
        CHECK(r.verdict == Verdict::OUT);
        CHECK(verify_separation(s, Z, *r.cert_out));
    }
    auto d = mnc_describe(s, Z);
    CHECK(polyset_is_empty(d.cone));
}

TEST_CASE("finite union distributivity") {
    MonomialScheme s{1, 2, {{1}, {1}}};
    Polyhedron c1 = poly_from_rows(2, {{rat_of(1), rat_of(0)}, {rat_of(0), rat_of(1)}},
                                   {rat_of(0), rat_of(0)});
    Polyhedron c2 = poly_from_rows(2, {{rat_of(-1), rat_of(0)}, {rat_of(0), rat_of(-1)}},
                                   {rat_of(0), rat_of(0)});
    PolySet U = polyset_of({c1, c2}, 2);
    auto du = mnc_describe(s, U);
    auto d1 = mnc_describe(s, polyset_of({c1}, 2));
    auto d2 = mnc_describe(s, polyset_of({c2}, 2));
    CHECK(polyset_equal(du.cone, polyset_union(d1.cone, d2.cone)));
}

TEST_CASE("affine sets contribute through the constant level") {
    // Z = {x1 >= 1} in R^2 under scaling of x2 only: limit = {x1 >= 1}
    MonomialScheme s{1, 2, {{0}, {1}}};
    PolySet Z = polyset_of({poly_from_rows(2, {{rat_of(1), rat_of(0)}}, {rat_of(1)})}, 2);
    auto d = mnc_describe(s, Z);
    CHECK(polyset_equal(d.cone, Z));
    CHECK(mnc_member(s, Z, qv({1, 7})).verdict == Verdict::IN);
    CHECK(mnc_member(s, Z, qv({0, 0})).verdict == Verdict::OUT);
}

TEST_CASE("oracle agrees on the takeuchi example") {
    auto s = scheme_of(takeuchi_r2());
    PolySet Z = halfwedge_r2();
    OracleLadder ladder;
    ladder.base = 2;
    ladder.epsilons = {Rat(1, 2), Rat(1, 4), Rat(1, 8)};
    ladder.max_steps = 20;
    CHECK(oracle_member(s, Z, qv({0, 1}), ladder).verdict == OracleVerdict::LIKELY_IN);
    CHECK(oracle_member(s, Z, qv({0, -1}), ladder).verdict == OracleVerdict::LIKELY_OUT);
    CHECK(oracle_member(s, Z, qv({1, 0}), ladder).verdict == OracleVerdict::LIKELY_OUT);
}

TEST_CASE("oracle on invariant cone and on a shifted set") {
    MonomialScheme s{1, 2, {{1}, {1}}};
    Polyhedron z = poly_from_rows(2, {{rat_of(-3), rat_of(1)}, {rat_of(1), rat_of(0)}},
                                  {rat_of(0), rat_of(0)});
    PolySet Z = polyset_of({z}, 2);
    CHECK(oracle_member(s, Z, qv({1, 4})).verdict == OracleVerdict::LIKELY_IN);

    MonomialScheme s1{1, 1, {{1}}};
    PolySet far = polyset_of({poly_from_rows(1, {{rat_of(1)}}, {rat_of(1)})}, 1);
    CHECK(oracle_member(s1, far, qv({0})).verdict == OracleVerdict::LIKELY_OUT);
}

TEST_CASE("restriction compatibility on S_K") {
    // chi = Takeuchi R^2; K = {2} freezes t_1. S_K = {p : block 1 of p is 0}.
    IndexFamily f = takeuchi_r2();
    auto s_full = scheme_of(f);
    auto fk = restrict(f, {2});
    auto s_sub = scheme_of(fk);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> vd(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Polyhedron> members;
        std::uniform_int_distribution<int> rows(1, 2);
        int nr = rows(rng);
        std::vector<QVec> A;
        QVec b;
        for (int r = 0; r < nr; ++r) {
            QVec a{rat_of(vd(rng)), rat_of(vd(rng))};
            if (is_zero_vec(a)) a[0] = 1;
            A.push_back(a);
            b.push_back(rat_of(vd(rng)));
        }
        Polyhedron z = poly_from_rows(2, A, b);
        if (poly_is_empty(z)) continue;
        PolySet Z = polyset_of({z}, 2);
        QVec p{rat_of(0), rat_of(vd(rng))};  // in S_K: block hatI_1 = {1} zeroed
        auto full = mnc_member(s_full, Z, p);
        auto sub = mnc_member(s_sub, Z, p);
        CHECK(full.verdict == sub.verdict);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("membership certificates are rejected when tampered") {
    auto s = scheme_of(takeuchi_r2());
    PolySet Z = halfwedge_r2();
    auto in = mnc_member(s, Z, qv({0, 1}));
    REQUIRE(in.cert_in.has_value());
    auto bad = *in.cert_in;
    bad.weights[0] = 0;
    CHECK_FALSE(verify_membership(s, Z, qv({0, 1}), bad));
    bad = *in.cert_in;
    CHECK_FALSE(verify_membership(s, Z, qv({1, 1}), bad));
}

TEST_CASE("separation certificate examples from the contract") {
    // Z = {x1 <= 0}, G = {x1 > 0} inner-approximated, any radius -> true
    MonomialScheme s{1, 2, {{1}, {1}}};
    PolySet Z = polyset_of({poly_from_rows(2, {{rat_of(-1), rat_of(0)}}, {rat_of(0)})}, 2);
    SeparationCertificate cert;
    cert.cone = poly_from_rows(2, {{rat_of(1), rat_of(-1)}, {rat_of(1), rat_of(1)},
                                   {rat_of(1), rat_of(0)}},
                               {rat_of(0), rat_of(0), rat_of(0)});
    cert.strict_rows = {2};
    cert.anchor = qv({0, 0});
    cert.radius = rat_of(1);
    CHECK(verify_separation(s, Z, cert));

    // Z = R^n: never separated by a nonempty region
    PolySet full = polyset_of({poly_full(2)}, 2);
    CHECK_FALSE(verify_separation(s, full, cert));
}

TEST_CASE("mnc describe guards") {
    MonomialScheme s{4, 2, {{1, 0, 0, 0}, {0, 1, 0, 0}}};
    PolySet Z = polyset_of({poly_full(2)}, 2);
    CHECK_THROWS_AS(mnc_describe(s, Z), ResourceError);
    MonomialScheme s2{1, 7, {{1}, {1}, {1}, {1}, {1}, {1}, {1}}};
    PolySet Z2 = polyset_of({poly_full(7)}, 7);
    CHECK_THROWS_AS(mnc_describe(s2, Z2), ResourceError);
}

TEST_CASE("monotonicity and closure of described cones") {
    auto s = scheme_of(takeuchi_r2());
    // Z ⊆ Z' ⇒ limit(Z) ⊆ limit(Z')
    Polyhedron small = poly_from_rows(2, {{rat_of(-1), rat_of(1)}, {rat_of(1), rat_of(0)}},
                                      {rat_of(0), rat_of(0)});
    Polyhedron big = poly_from_rows(2, {{rat_of(1), rat_of(0)}}, {rat_of(0)});
    auto ds = mnc_describe(s, polyset_of({small}, 2));
    auto db = mnc_describe(s, polyset_of({big}, 2));
    CHECK(polyset_subset(ds.cone, db.cone));
    // members of a described cone are canonical closed polyhedra by type
    for (const auto& mem : db.cone.members) CHECK(mem.canonical);
}

TEST_CASE("oracle concordance on random instances") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> vd(-2, 2), dimd(1, 3), elld(1, 2), rowsd(1, 3);
    int done = 0, agreements = 0;
    while (done < 40) {
        int dim = dimd(rng), ell = elld(rng);
        MonomialScheme s;
        s.dim = dim;
        s.ell = ell;
        s.exponents.assign(dim, std::vector<int>(ell, 0));
        for (auto& row : s.exponents)
            for (auto& e : row) e = std::uniform_int_distribution<int>(0, 1)(rng);
        int nr = rowsd(rng);
        std::vector<QVec> A;
        QVec b;
        for (int r = 0; r < nr; ++r) {
            QVec a(dim);
            for (auto& x : a) x = rat_of(vd(rng));
            if (is_zero_vec(a)) a[0] = 1;
            A.push_back(a);
            b.push_back(rat_of(vd(rng)));
        }
        Polyhedron z = poly_from_rows(dim, A, b);
        if (poly_is_empty(z)) continue;
        PolySet Z = polyset_of({z}, dim);
        QVec p(dim);
        for (auto& x : p) x = rat_of(vd(rng));
        auto mr = mnc_member(s, Z, p);
        OracleLadder ladder;
        ladder.max_steps = 16;
        ladder.randomize_axes = true;
        ladder.seed = 777;
        auto orc = oracle_member(s, Z, p, ladder);
        if (orc.verdict == OracleVerdict::LIKELY_IN)
            CHECK(mr.verdict == Verdict::IN);
        else if (orc.verdict == OracleVerdict::LIKELY_OUT)
            CHECK(mr.verdict == Verdict::OUT);
        if (orc.verdict != OracleVerdict::INCONCLUSIVE) ++agreements;
        // certificates always verify
        if (mr.verdict == Verdict::IN)
            CHECK(verify_membership(s, Z, p, *mr.cert_in));
        else
            CHECK(verify_separation(s, Z, *mr.cert_out));
        ++done;
    }
    CHECK(agreements >= 30);
}
