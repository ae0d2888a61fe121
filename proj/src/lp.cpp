#include "mnc/lp.hpp"

#include "mnc/errors.hpp"

#include <algorithm>
#include <cassert>

namespace mnc {
namespace {

// Dense two-phase tableau simplex over mpq with Bland's rule.
// Solves  min c·y  s.t.  A y = b, y >= 0  (b normalized nonnegative).
class Simplex {
  public:
    Simplex(std::vector<QVec> A, QVec b, QVec c)
        : m_(A.size()), n_(c.size()), A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {}

    // status: 0 optimal, 1 infeasible, 2 unbounded
    int solve(QVec& y, Rat& value) {
        // Phase I with m artificial columns.
        for (size_t i = 0; i < m_; ++i) {
            if (b_[i] < 0) {
                for (auto& v : A_[i]) v = -v;
                b_[i] = -b_[i];
            }
        }
        size_t total = n_ + m_;
        for (size_t i = 0; i < m_; ++i) {
            A_[i].resize(total, Rat(0));
            A_[i][n_ + i] = 1;
        }
        basis_.resize(m_);
        for (size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;

        QVec phase1(total, Rat(0));
        for (size_t j = n_; j < total; ++j) phase1[j] = 1;
        Rat v1 = run(phase1, total);
        if (v1 > 0) return 1;

        // Drive artificials out of the basis; rows that cannot pivot are redundant.
        std::vector<bool> drop(m_, false);
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            size_t j = 0;
            for (; j < n_; ++j)
                if (A_[i][j] != 0) break;
            if (j == n_) {
                drop[i] = true;
                continue;
            }
            pivot(i, j);
        }
        if (std::find(drop.begin(), drop.end(), true) != drop.end()) {
            std::vector<QVec> A2;
            QVec b2;
            std::vector<size_t> basis2;
            for (size_t i = 0; i < m_; ++i) {
                if (drop[i]) continue;
                A2.push_back(A_[i]);
                b2.push_back(b_[i]);
                basis2.push_back(basis_[i]);
            }
            A_ = std::move(A2);
            b_ = std::move(b2);
            basis_ = std::move(basis2);
            m_ = A_.size();
        }

        QVec phase2 = c_;
        phase2.resize(total, Rat(0));
        // Forbid artificial columns from re-entering.
        artificial_floor_ = n_;
        Rat v2 = run(phase2, total);
        if (unbounded_) return 2;
        y.assign(n_, Rat(0));
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) y[basis_[i]] = b_[i];
        value = v2;
        return 0;
    }

  private:
    void pivot(size_t row, size_t col) {
        Rat piv = A_[row][col];
        assert(piv != 0);
        size_t total = A_[row].size();
        for (size_t j = 0; j < total; ++j) A_[row][j] /= piv;
        b_[row] /= piv;
        for (size_t i = 0; i < m_; ++i) {
            if (i == row || A_[i][col] == 0) continue;
            Rat f = A_[i][col];
            for (size_t j = 0; j < total; ++j) A_[i][j] -= f * A_[row][j];
            b_[i] -= f * b_[row];
        }
        basis_[row] = col;
    }

    // Minimizes cost over the current basis; returns objective value.
    Rat run(const QVec& cost, size_t total) {
        unbounded_ = false;
        for (;;) {
            // Reduced costs r_j = cost_j - cost_B·(column j in basis coords).
            QVec dual(m_);
            for (size_t i = 0; i < m_; ++i) dual[i] = cost[basis_[i]];
            size_t enter = total;
            for (size_t j = 0; j < total; ++j) {
                if (j >= artificial_floor_ && j >= n_) continue;
                bool in_basis = false;
                for (size_t i = 0; i < m_; ++i)
                    if (basis_[i] == j) { in_basis = true; break; }
                if (in_basis) continue;
                Rat r = cost[j];
                for (size_t i = 0; i < m_; ++i)
                    if (A_[i][j] != 0) r -= dual[i] * A_[i][j];
                if (r < 0) { enter = j; break; }  // Bland: first improving index
            }
            if (enter == total) break;
            size_t leave = m_;
            Rat best;
            for (size_t i = 0; i < m_; ++i) {
                if (A_[i][enter] <= 0) continue;
                Rat ratio = b_[i] / A_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) {
                unbounded_ = true;
                return Rat(0);
            }
            pivot(leave, enter);
        }
        Rat v = 0;
        for (size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * b_[i];
        return v;
    }

    size_t m_, n_;
    std::vector<QVec> A_;
    QVec b_;
    QVec c_;
    std::vector<size_t> basis_;
    size_t artificial_floor_ = SIZE_MAX;
    bool unbounded_ = false;
};

}  // namespace

LpResult lp_maximize(const QVec& c, const std::vector<LinCon>& cons) {
    size_t n = c.size();
    // Free variables split as x = u - v; Ge rows get a surplus column.
    size_t surplus = 0;
    for (const auto& con : cons) {
        if (con.op == RelOp::Gt) throw InputError("lp_maximize: strict row not allowed");
        if (con.a.size() != n) throw InputError("lp_maximize: dimension mismatch");
        if (con.op == RelOp::Ge) ++surplus;
    }
    size_t cols = 2 * n + surplus;
    std::vector<QVec> A;
    QVec b;
    size_t snext = 2 * n;
    for (const auto& con : cons) {
        QVec row(cols, Rat(0));
        for (size_t j = 0; j < n; ++j) {
            row[j] = con.a[j];
            row[n + j] = -con.a[j];
        }
        if (con.op == RelOp::Ge) row[snext++] = -1;
        A.push_back(std::move(row));
        b.push_back(con.b);
    }
    QVec cost(cols, Rat(0));
    for (size_t j = 0; j < n; ++j) {
        cost[j] = -c[j];  // minimize -c·x
        cost[n + j] = c[j];
    }
    Simplex sx(std::move(A), std::move(b), std::move(cost));
    QVec y;
    Rat v;
    int st = sx.solve(y, v);
    LpResult res;
    if (st == 1) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    if (st == 2) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.x.resize(n);
    for (size_t j = 0; j < n; ++j) res.x[j] = y[j] - y[n + j];
    res.value = -v;
    return res;
}

std::optional<QVec> lp_feasible_point(int dim, const std::vector<LinCon>& cons) {
    bool any_strict = false;
    for (const auto& con : cons)
        if (con.op == RelOp::Gt) any_strict = true;

    if (!any_strict) {
        QVec zero(dim, Rat(0));
        LpResult r = lp_maximize(zero, cons);
        if (r.status != LpStatus::Optimal) return std::nullopt;
        return r.x;
    }

    // Shared slack t on the strict rows: a·x - t >= b, 0 <= t <= 1, max t.
    std::vector<LinCon> relaxed;
    relaxed.reserve(cons.size() + 2);
    for (const auto& con : cons) {
        LinCon c2;
        c2.a = con.a;
        c2.a.resize(dim + 1, Rat(0));
        c2.b = con.b;
        if (con.op == RelOp::Gt) {
            c2.a[dim] = -1;
            c2.op = RelOp::Ge;
        } else {
            c2.op = con.op;
        }
        relaxed.push_back(std::move(c2));
    }
    {
        LinCon lo;
        lo.a.assign(dim + 1, Rat(0));
        lo.a[dim] = 1;
        lo.b = 0;
        lo.op = RelOp::Ge;
        relaxed.push_back(lo);
        LinCon hi;
        hi.a.assign(dim + 1, Rat(0));
        hi.a[dim] = -1;
        hi.b = -1;
        hi.op = RelOp::Ge;
        relaxed.push_back(hi);
    }
    QVec obj(dim + 1, Rat(0));
    obj[dim] = 1;
    LpResult r = lp_maximize(obj, relaxed);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    if (r.value <= 0) return std::nullopt;
    QVec x(r.x.begin(), r.x.begin() + dim);
    return x;
}

}  // namespace mnc
