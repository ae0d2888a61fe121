#include "doctest.h"

#include "mnc/errors.hpp"
#include "mnc/microsupport.hpp"

using namespace mnc;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

// Takeuchi R^2: I = {{1,2},{2}}; T*X has coordinates (x1,x2; xi1,xi2)
IndexFamily takeuchi_r2() { return {2, {{1, 2}, {2}}}; }

ConicInput conic_of(std::vector<Polyhedron> members, int dim) {
    ConicInput in;
    in.set = polyset_of(std::move(members), dim);
    for (int i = dim / 2; i < dim; ++i) in.fiber_coords.push_back(i);
    return in;
}

Polyhedron zero_section_r2() {
    // {xi = 0} in T*R^2
    std::vector<QVec> C = {qv({0, 0, 1, 0}), qv({0, 0, 0, 1})};
    return poly_from_rows(4, {}, {}, C, {rat_of(0), rat_of(0)});
}

Polyhedron conormal_origin_r2() {
    // {x = 0, xi free}
    std::vector<QVec> C = {qv({1, 0, 0, 0}), qv({0, 1, 0, 0})};
    return poly_from_rows(4, {}, {}, C, {rat_of(0), rat_of(0)});
}

}  // namespace

TEST_CASE("conic validation") {
    // a shifted set is not fiber-conic
    Polyhedron bad = poly_from_rows(4, {qv({0, 0, 1, 0})}, {rat_of(1)});
    ConicInput in = conic_of({bad}, 4);
    CHECK_THROWS_AS(check_conic(in), InputError);
    ConicInput ok = conic_of({zero_section_r2()}, 4);
    check_conic(ok);
}

TEST_CASE("zero section maps into the zero section") {
    auto f = takeuchi_r2();
    auto est = ss_estimate(f, conic_of({zero_section_r2()}, 4));
    // the estimate of {xi=0} keeps every fiber coordinate at zero
    PolySet expect = polyset_of({zero_section_r2()}, 4);
    CHECK(polyset_equal(est, expect));
    auto bound = support_bound(f, conic_of({zero_section_r2()}, 4));
    // slice: x (deformed blocks) = 0 as well
    Polyhedron slice = poly_from_rows(
        4, {}, {},
        {qv({1, 0, 0, 0}), qv({0, 1, 0, 0}), qv({0, 0, 1, 0}), qv({0, 0, 0, 1})},
        {rat_of(0), rat_of(0), rat_of(0), rat_of(0)});
    CHECK(polyset_equal(bound, polyset_of({slice}, 4)));
}

TEST_CASE("invariant input is its own estimate") {
    auto f = takeuchi_r2();
    // conormal of the origin is invariant under the dual scaling
    auto in = conic_of({conormal_origin_r2()}, 4);
    auto est = ss_estimate(f, in);
    CHECK(polyset_equal(est, in.set));
}

TEST_CASE("full cotangent input saturates the support bound") {
    auto f = takeuchi_r2();
    auto in = conic_of({poly_full(4)}, 4);
    auto bound = support_bound(f, in);
    Polyhedron star_slice = poly_from_rows(4, {}, {}, {qv({1, 0, 0, 0}), qv({0, 1, 0, 0})},
                                           {rat_of(0), rat_of(0)});
    CHECK(polyset_equal(bound, polyset_of({star_slice}, 4)));
}

TEST_CASE("sequence witnesses verify on the conormal example") {
    auto f = takeuchi_r2();
    auto in = conic_of({conormal_origin_r2()}, 4);
    // p0 on the conormal: x = 0, xi = (3, 5)
    auto w = seq_witness(f, in, qv({0, 0, 3, 5}));
    REQUIRE(w.found);
    CHECK(w.points.size() == 5);
    // out point: x-block nonzero in the estimate slice
    auto out = seq_witness(f, in, qv({1, 0, 0, 0}));
    CHECK_FALSE(out.found);
    REQUIRE(out.separation.has_value());
    auto d = derive(f);
    MonomialScheme dual = scheme_for_dual(f, d);
    CHECK(verify_separation(dual, in.set, *out.separation));
}

TEST_CASE("noncharacteristic check: zero section vs full conormal") {
    auto f = takeuchi_r2();
    // Ch = zero section: non-characteristic
    auto ok = noncharacteristic_check(f, conic_of({zero_section_r2()}, 4));
    CHECK(ok.ok);
    // Ch containing the conormal of Y = intersection of the members ({0}):
    // characteristic, with a dotted witness
    auto bad = noncharacteristic_check(f, conic_of({conormal_origin_r2()}, 4));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    const QVec& w = *bad.witness;
    CHECK((w[2] != 0 || w[3] != 0));
}

TEST_CASE("support bound is contained in the estimate") {
    auto f = takeuchi_r2();
    for (auto member : {conormal_origin_r2(), zero_section_r2()}) {
        auto in = conic_of({member}, 4);
        auto est = ss_estimate(f, in);
        auto bound = support_bound(f, in);
        CHECK(polyset_subset(bound, est));
    }
}

TEST_CASE("iota sharp on model inputs") {
    IotaCoords coords{1, 1};  // (x, y; xi, eta)
    // A = T*_MX = {y = 0, xi = 0}
    Polyhedron tmx = poly_from_rows(4, {}, {}, {qv({0, 1, 0, 0}), qv({0, 0, 1, 0})},
                                    {rat_of(0), rat_of(0)});
    auto sharp = iota_sharp(coords, polyset_of({tmx}, 4));
    // zero section of T*M
    Polyhedron zs = poly_from_rows(2, {}, {}, {qv({0, 1})}, {rat_of(0)});
    CHECK(polyset_equal(sharp, polyset_of({zs}, 2)));

    // empty input
    PolySet empty;
    empty.dim = 4;
    auto se = iota_sharp(coords, empty);
    CHECK(polyset_is_empty(se));

    // invariant input: A = {eta = 0} (scaling-invariant): slice = A ∩ T*M
    Polyhedron inv = poly_from_rows(4, {}, {}, {qv({0, 0, 0, 1})}, {rat_of(0)});
    auto si = iota_sharp(coords, polyset_of({inv}, 4));
    CHECK(polyset_equal(si, polyset_of({poly_full(2)}, 2)));
}

TEST_CASE("hyperbolicity check") {
    IotaCoords coords{2, 2};  // M = R^2
    int dim = coords.dim();
    // Ch = zero section {xi = 0, eta = 0}: hyperbolic for N = {x_1 = 0}
    Polyhedron zs = poly_from_rows(
        dim, {}, {},
        {QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1), rat_of(0), rat_of(0), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1), rat_of(0), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1)}},
        QVec(4, rat_of(0)));
    CHECK(hyperbolicity_check(coords, {1}, polyset_of({zs}, dim)));

    // Ch = full conormal of the complexified N: {x_1 = 0, y_1 = 0, xi_2 = 0, eta_2 = 0}
    // contains the dotted conormal: not hyperbolic
    Polyhedron con = poly_from_rows(
        dim, {}, {},
        {QVec{rat_of(1), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(1), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1), rat_of(0), rat_of(0)},
         QVec{rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(0), rat_of(1)}},
        QVec(4, rat_of(0)));
    CHECK_FALSE(hyperbolicity_check(coords, {1}, polyset_of({con}, dim)));
}
