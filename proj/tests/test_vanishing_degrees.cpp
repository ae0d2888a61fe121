#include "doctest.h"

#include "mnc/errors.hpp"
#include "mnc/vanishing_degrees.hpp"

#include <random>

using namespace mnc;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat_of(x));
    return v;
}

CovectorPoint cov(std::initializer_list<QVec> blocks) {
    CovectorPoint p;
    p.blocks.push_back({});
    for (const auto& b : blocks) p.blocks.push_back(b);
    return p;
}

// Takeuchi on C^2 in complex units: Z_1 = {0} (I_1 = {1,2}), Z_2 = {z_2 = 0}
IndexFamily takeuchi_c2() { return {2, {{1, 2}, {2}}}; }

IndexFamily random_laminar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nd(2, 5);
    int n = nd(rng);
    IndexFamily f;
    f.n = n;
    std::uniform_int_distribution<int> ld(1, 3);
    int want = ld(rng);
    int tries = 0;
    while ((int)f.members.size() < want && tries++ < 40) {
        std::uniform_int_distribution<int> ad(1, n), bd(1, n);
        int a = ad(rng), b = bd(rng);
        if (a > b) std::swap(a, b);
        std::set<int> cand;
        for (int i = a; i <= b; ++i) cand.insert(i);
        IndexFamily probe = f;
        probe.members.push_back(cand);
        if (validate(probe).ok) f = probe;
    }
    if (f.members.empty()) f.members.push_back({1});
    return f;
}

}  // namespace

TEST_CASE("takeuchi C^2 degrees at the marked covectors") {
    auto f = takeuchi_c2();
    // p = 0: J* = {1,2}, hatJ* = {1}, N = 2 + 2 = 4
    auto zero = degree_complex(f, cov({qv({0}), qv({0})}));
    CHECK(zero.J_star == std::set<int>{1, 2});
    CHECK(zero.hatJ_star == std::set<int>{1});
    CHECK(zero.degree == 4);

    // zeta^(2) != 0, zeta^(1) = 0: J* = {}, N = 2
    auto mixed = degree_complex(f, cov({qv({0}), qv({1})}));
    CHECK(mixed.J_star.empty());
    CHECK(mixed.degree == 2);

    // all nonzero: N = codim_C Z = 2
    auto generic = degree_complex(f, cov({qv({1}), qv({1})}));
    CHECK(generic.degree == 2);
}

TEST_CASE("general formula covers the remark cases") {
    auto f = takeuchi_c2();
    RealComplexSplit all_c;
    all_c.I_C = {1, 2};
    // all blocks nonzero -> degree = #I
    CHECK(degree_general(f, all_c, cov({qv({1}), qv({1})})).degree == 2);
    // all blocks zero, complex -> 2 #I
    CHECK(degree_general(f, all_c, cov({qv({0}), qv({0})})).degree == 4);
    // real case: degree = #I regardless of p
    RealComplexSplit all_r;
    all_r.I_R = {1, 2};
    for (auto& p : {cov({qv({0}), qv({0})}), cov({qv({1}), qv({0})}), cov({qv({3}), qv({-2})})}) {
        auto rep = degree_general(f, all_r, p);
        CHECK(rep.degree == 2);
        CHECK(rep.mode == DegreeMode::REAL);
    }
}

TEST_CASE("split must partition the member union") {
    auto f = takeuchi_c2();
    RealComplexSplit bad;
    bad.I_C = {1};
    CHECK_THROWS_AS(degree_general(f, bad, cov({qv({0}), qv({0})})), InputError);
    RealComplexSplit overlap;
    overlap.I_C = {1, 2};
    overlap.I_R = {2};
    CHECK_THROWS_AS(degree_general(f, overlap, cov({qv({0}), qv({0})})), InputError);
}

TEST_CASE("degree properties on random complex families") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        IndexFamily f = random_laminar(rng);
        auto d = derive(f);
        RealComplexSplit all_c;
        for (const auto& m : f.members) all_c.I_C.insert(m.begin(), m.end());

        // consistency on random vanishing patterns
        std::uniform_int_distribution<int> coin(0, 1);
        CovectorPoint p;
        p.blocks.resize(f.ell() + 1);
        for (int j = 1; j <= f.ell(); ++j)
            p.blocks[j].assign(d.hatI[j].size(), Rat(coin(rng)));
        auto general = degree_general(f, all_c, p);
        auto complex_rep = degree_complex(f, p);
        CHECK(general.degree == complex_rep.degree);
        CHECK(general.degree >= (int)all_c.I_C.size());

        // zeroing one more block never decreases the degree
        for (int j = 1; j <= f.ell(); ++j) {
            if (is_zero_vec(p.blocks[j])) continue;
            CovectorPoint q = p;
            q.blocks[j].assign(q.blocks[j].size(), Rat(0));
            CHECK(degree_general(f, all_c, q).degree >= general.degree);
        }
    }
}
