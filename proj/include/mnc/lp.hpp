#pragma once

#include "mnc/rational.hpp"

#include <optional>
#include <vector>

namespace mnc {

enum class RelOp { Ge, Eq, Gt };

// One linear condition  a·x (op) b  over free rational variables.
struct LinCon {
    QVec a;
    Rat b;
    RelOp op = RelOp::Ge;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    QVec x;
    Rat value;
};

// max c·x subject to cons. Strict rows are not allowed here.
LpResult lp_maximize(const QVec& c, const std::vector<LinCon>& cons);

inline LpResult lp_minimize(const QVec& c, const std::vector<LinCon>& cons) {
    LpResult r = lp_maximize(neg(c), cons);
    r.value = -r.value;
    return r;
}

// Exact feasibility including strict rows: a point satisfying every condition,
// strictness included, or nullopt. Decided by maximizing a shared slack on the
// strict rows (capped at 1), so the answer is exact.
std::optional<QVec> lp_feasible_point(int dim, const std::vector<LinCon>& cons);

// Convenience: feasibility of the non-strict system only.
inline bool lp_feasible(int dim, const std::vector<LinCon>& cons) {
    return lp_feasible_point(dim, cons).has_value();
}

}  // namespace mnc
