#include "doctest.h"

#include "mnc/lp.hpp"

using namespace mnc;

TEST_CASE("lp maximize on a bounded polytope") {
    // max x+y st x<=2, y<=3, x,y>=0
    std::vector<LinCon> cons = {
        {{rat_of(-1), rat_of(0)}, rat_of(-2), RelOp::Ge},
        {{rat_of(0), rat_of(-1)}, rat_of(-3), RelOp::Ge},
        {{rat_of(1), rat_of(0)}, rat_of(0), RelOp::Ge},
        {{rat_of(0), rat_of(1)}, rat_of(0), RelOp::Ge},
    };
    LpResult r = lp_maximize({rat_of(1), rat_of(1)}, cons);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == rat_of(5));
    CHECK(r.x[0] == rat_of(2));
    CHECK(r.x[1] == rat_of(3));
}

TEST_CASE("lp detects infeasible and unbounded") {
    std::vector<LinCon> bad = {
        {{rat_of(1)}, rat_of(1), RelOp::Ge},
        {{rat_of(-1)}, rat_of(0), RelOp::Ge},
    };
    CHECK(lp_maximize({rat_of(0)}, bad).status == LpStatus::Infeasible);

    std::vector<LinCon> open = {{{rat_of(1)}, rat_of(0), RelOp::Ge}};
    CHECK(lp_maximize({rat_of(1)}, open).status == LpStatus::Unbounded);
}

TEST_CASE("lp handles equalities and fractions") {
    // x + y = 1/3, x - y >= 0, max y  ->  y = 1/6
    std::vector<LinCon> cons = {
        {{rat_of(1), rat_of(1)}, rat_of(1, 3), RelOp::Eq},
        {{rat_of(1), rat_of(-1)}, rat_of(0), RelOp::Ge},
    };
    LpResult r = lp_maximize({rat_of(0), rat_of(1)}, cons);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == rat_of(1, 6));
}

TEST_CASE("strict feasibility via shared slack") {
    std::vector<LinCon> ok = {
        {{rat_of(1)}, rat_of(0), RelOp::Gt},
        {{rat_of(-1)}, rat_of(-1), RelOp::Gt},
    };
    auto pt = lp_feasible_point(1, ok);
    REQUIRE(pt.has_value());
    CHECK((*pt)[0] > 0);
    CHECK((*pt)[0] < 1);

    std::vector<LinCon> bad = {
        {{rat_of(1)}, rat_of(0), RelOp::Gt},
        {{rat_of(-1)}, rat_of(0), RelOp::Gt},
    };
    CHECK_FALSE(lp_feasible_point(1, bad).has_value());
}

TEST_CASE("strict feasibility on a face") {
    std::vector<LinCon> cons = {
        {{rat_of(1), rat_of(0)}, rat_of(0), RelOp::Eq},
        {{rat_of(0), rat_of(1)}, rat_of(0), RelOp::Gt},
    };
    auto pt = lp_feasible_point(2, cons);
    REQUIRE(pt.has_value());
    CHECK((*pt)[0] == 0);
    CHECK((*pt)[1] > 0);
}
