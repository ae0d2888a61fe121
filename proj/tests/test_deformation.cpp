#include "doctest.h"

#include "mnc/deformation.hpp"
#include "mnc/errors.hpp"

#include <random>

using namespace mnc;

namespace {

using Expo = std::vector<std::vector<int>>;

IndexFamily majima_r3() { return {3, {{1}, {2}, {3}}}; }
IndexFamily takeuchi_r3() { return {3, {{1, 2, 3}, {2, 3}, {3}}}; }
IndexFamily mixed_r3() { return {3, {{1, 2, 3}, {2}, {3}}}; }
// Majima on C^2 as the real family z_1 = (x_1, x_2), z_2 = (x_3, x_4)
IndexFamily majima_c2() { return {4, {{1, 2}, {3, 4}}}; }

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

}  // namespace

TEST_CASE("base scaling schemes match the worked deformations") {
    // Takeuchi: (t1 x1, t1 t2 x2, t1 t2 t3 x3)
    auto f = takeuchi_r3();
    auto s = scheme_from_family(f, derive(f));
    CHECK(s.exponents == Expo{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});

    // Mixed: (t1 x1, t1 t2 x2, t1 t3 x3)
    f = mixed_r3();
    s = scheme_from_family(f, derive(f));
    CHECK(s.exponents == Expo{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});

    // Majima: (t1 x1, t2 x2, t3 x3)
    f = majima_r3();
    s = scheme_from_family(f, derive(f));
    CHECK(s.exponents == Expo{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("scheme matrix equals the incidence matrix i in I_k") {
    for (const auto& f : {majima_r3(), takeuchi_r3(), mixed_r3(), majima_c2()}) {
        auto s = scheme_from_family(f, derive(f));
        for (int i = 1; i <= f.n; ++i)
            for (int k = 1; k <= f.ell(); ++k)
                CHECK(s.exponents[i - 1][k - 1] == (f.members[k - 1].count(i) ? 1 : 0));
    }
}

TEST_CASE("dual schemes match the cotangent scalings") {
    // Takeuchi: mu_xi = (t2 t3 xi1, t3 xi2, xi3)
    auto f = takeuchi_r3();
    auto s = scheme_for_dual(f, derive(f));
    REQUIRE(s.dim == 6);
    CHECK(s.exponents[3] == std::vector<int>{0, 1, 1});
    CHECK(s.exponents[4] == std::vector<int>{0, 0, 1});
    CHECK(s.exponents[5] == std::vector<int>{0, 0, 0});

    // Mixed: mu_xi = (t2 t3 xi1, t3 xi2, t2 xi3)
    f = mixed_r3();
    s = scheme_for_dual(f, derive(f));
    CHECK(s.exponents[3] == std::vector<int>{0, 1, 1});
    CHECK(s.exponents[4] == std::vector<int>{0, 0, 1});
    CHECK(s.exponents[5] == std::vector<int>{0, 1, 0});

    // Majima C^2: mu_z = (t1 z1, t2 z2), mu_eta = (t2 eta1, t1 eta2)
    f = majima_c2();
    s = scheme_for_dual(f, derive(f));
    CHECK(s.exponents[0] == std::vector<int>{1, 0});
    CHECK(s.exponents[2] == std::vector<int>{0, 1});
    CHECK(s.exponents[4] == std::vector<int>{0, 1});
    CHECK(s.exponents[5] == std::vector<int>{0, 1});
    CHECK(s.exponents[6] == std::vector<int>{1, 0});
    CHECK(s.exponents[7] == std::vector<int>{1, 0});
}

TEST_CASE("fiber coordinates over the complement block carry every parameter") {
    IndexFamily f{3, {{1}, {2}}};  // coordinate 3 lies in no member
    auto s = scheme_for_dual(f, derive(f));
    CHECK(s.exponents[5] == std::vector<int>{1, 1});
}

TEST_CASE("apply_scheme worked examples") {
    auto f = majima_r3();
    auto s = scheme_from_family(f, derive(f));
    CHECK(apply_scheme(s, qv({1, 1, 1}), {rat_of(1, 2), rat_of(1, 3), rat_of(1, 5)}) ==
          QVec{rat_of(1, 2), rat_of(1, 3), rat_of(1, 5)});

    auto ft = takeuchi_r3();
    auto st = scheme_from_family(ft, derive(ft));
    CHECK(apply_scheme(st, qv({1, 1, 1}), {rat_of(1, 2), rat_of(1, 2), rat_of(1, 2)}) ==
          QVec{rat_of(1, 2), rat_of(1, 4), rat_of(1, 8)});
    // identity at t = 1
    CHECK(apply_scheme(st, qv({3, -2, 7}), {rat_of(1), rat_of(1), rat_of(1)}) == qv({3, -2, 7}));
    CHECK_THROWS_AS(apply_scheme(st, qv({1, 1, 1}), {rat_of(0), rat_of(1), rat_of(1)}),
                    InputError);
}

TEST_CASE("semigroup law for the scaling action") {
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<int> vd(-4, 4), td(1, 5);
    auto f = mixed_r3();
    auto s = scheme_from_family(f, derive(f));
    for (int trial = 0; trial < 50; ++trial) {
        QVec x(3), t(3), u(3), tu(3);
        for (int i = 0; i < 3; ++i) {
            x[i] = rat_of(vd(rng));
            t[i] = rat_of(1, td(rng));
            u[i] = rat_of(1, td(rng));
            tu[i] = t[i] * u[i];
        }
        CHECK(apply_scheme(s, apply_scheme(s, x, t), u) == apply_scheme(s, x, tu));
    }
}

TEST_CASE("dual-scheme pairing rescales by the full parameter product") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> vd(-4, 4), td(1, 5);
    for (const auto& f : {takeuchi_r3(), mixed_r3(), majima_c2()}) {
        auto d = derive(f);
        auto s = scheme_for_dual(f, d);
        for (int trial = 0; trial < 30; ++trial) {
            QVec z(2 * f.n), t(f.ell());
            for (auto& v : z) v = rat_of(vd(rng));
            Rat prod = 1;
            for (auto& v : t) {
                v = rat_of(1, td(rng));
                prod *= v;
            }
            QVec w = apply_scheme(s, z, t);
            Rat before = 0, after = 0;
            for (int i = 0; i < f.n; ++i) {
                before += z[i] * z[f.n + i];
                after += w[i] * w[f.n + i];
            }
            CHECK(after == prod * before);
        }
    }
}

TEST_CASE("restriction freezes parameters") {
    auto f = takeuchi_r3();
    auto full = scheme_from_family(f, derive(f));
    std::set<int> K = {2, 3};
    auto rf = restrict(f, K);
    auto rs = scheme_from_family(rf, derive(rf));
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> vd(-3, 3), td(1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        QVec x(3), tsub(2), tfull(3, rat_of(1));
        for (auto& v : x) v = rat_of(vd(rng));
        for (int i = 0; i < 2; ++i) tsub[i] = rat_of(1, td(rng));
        tfull[1] = tsub[0];
        tfull[2] = tsub[1];
        CHECK(apply_scheme(rs, x, tsub) == apply_scheme(full, x, tfull));
    }
}

TEST_CASE("hamiltonian relabel worked examples") {
    // ell = 1: family {0} in R, blocks: hatI_0 = {}, hatI_1 = {1}
    IndexFamily f{1, {{1}}};
    auto d = derive(f);
    CotangentPoint p;
    p.base = {{}, qv({1})};
    p.fiber = {{}, qv({2})};
    auto out = hamiltonian_relabel(f, d, {}, {1}, p);
    CHECK(out.base[1] == qv({2}));
    CHECK(out.fiber[1] == qv({-1}));

    // J empty is the identity
    auto id = hamiltonian_relabel(f, d, {1}, {}, p);
    CHECK(id.base == p.base);
    CHECK(id.fiber == p.fiber);

    // double application negates the J-blocks
    auto twice = hamiltonian_relabel(f, d, {}, {1}, out);
    CHECK(twice.base[1] == qv({-1}));
    CHECK(twice.fiber[1] == qv({-2}));

    CHECK_THROWS_AS(hamiltonian_relabel(f, d, {1}, {1}, p), InputError);
}

TEST_CASE("pairing classes") {
    CHECK(pairing_class({qv({0, 0})}, {qv({0, 0})}) == PairingClass::P_PRIME);
    CHECK(pairing_class({qv({1}), qv({-1})}, {qv({1}), qv({1})}) == PairingClass::P_PLUS);
    CHECK(pairing_class({qv({-1}), qv({0})}, {qv({1}), qv({5})}) == PairingClass::P_PRIME);
    CHECK_THROWS_AS(pairing_class({qv({1})}, {qv({1}), qv({2})}), InputError);
}

TEST_CASE("block flattening round trip") {
    auto f = mixed_r3();
    auto d = derive(f);
    QVec x = qv({7, -3, 5});
    auto bp = blocks_of_flat(f, d, x);
    CHECK(flat_of_blocks(f, d, bp) == x);
}
