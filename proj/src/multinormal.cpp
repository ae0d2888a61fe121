#include "mnc/multinormal.hpp"

#include "mnc/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace mnc {
namespace {

using Row = std::vector<int>;

// ----- degree rows and chambers --------------------------------------------

struct DegreeData {
    std::vector<Row> rows;          // distinct exponent rows; rows[0] is the zero row
    std::vector<int> row_of_coord;  // coordinate -> row index
};

DegreeData degree_rows(const MonomialScheme& scheme) {
    DegreeData d;
    d.rows.push_back(Row(scheme.ell, 0));
    d.row_of_coord.resize(scheme.dim);
    for (int i = 0; i < scheme.dim; ++i) {
        const Row& r = scheme.exponents[i];
        auto it = std::find(d.rows.begin(), d.rows.end(), r);
        if (it == d.rows.end()) {
            d.rows.push_back(r);
            d.row_of_coord[i] = (int)d.rows.size() - 1;
        } else {
            d.row_of_coord[i] = (int)(it - d.rows.begin());
        }
    }
    return d;
}

// groups = ordered partition of row indices; feasibility over w >= 1 with
// unit gaps between consecutive groups.
std::optional<QVec> chamber_witness(const std::vector<Row>& rows,
                                    const std::vector<std::vector<int>>& groups, int ell) {
    std::vector<LinCon> cons;
    auto deg_diff = [&](const Row& a, const Row& b) {
        QVec v(ell);
        for (int j = 0; j < ell; ++j) v[j] = rat_of(a[j] - b[j]);
        return v;
    };
    for (const auto& g : groups)
        for (size_t i = 1; i < g.size(); ++i)
            cons.push_back({deg_diff(rows[g[i]], rows[g[0]]), Rat(0), RelOp::Eq});
    for (size_t k = 1; k < groups.size(); ++k)
        cons.push_back({deg_diff(rows[groups[k][0]], rows[groups[k - 1][0]]), Rat(1), RelOp::Ge});
    for (int j = 0; j < ell; ++j) {
        QVec e(ell, Rat(0));
        e[j] = 1;
        cons.push_back({e, Rat(1), RelOp::Ge});
    }
    return lp_feasible_point(ell, cons);
}

std::vector<long> integer_weights(const QVec& w) {
    Int lcm = 1;
    for (const auto& x : w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<long> out;
    for (const auto& x : w) {
        Rat v = x * Rat(lcm);
        out.push_back((long)v.get_num().get_si());
    }
    return out;
}

std::vector<Chamber> enumerate_chambers(const MonomialScheme& scheme, const DegreeData& deg,
                                        const Guards& guards) {
    std::vector<Chamber> out;
    std::vector<std::vector<int>> groups;
    long visited = 0;
    std::function<void(size_t)> rec = [&](size_t next) {
        if ((long)out.size() > guards.max_chambers)
            throw ResourceError("mnc: chamber guard exceeded (" +
                                std::to_string(out.size()) + " chambers)");
        ++visited;
        if (next == deg.rows.size()) {
            auto w = chamber_witness(deg.rows, groups, scheme.ell);
            if (!w) return;
            Chamber ch;
            for (const auto& g : groups) {
                std::vector<Row> rg;
                for (int idx : g) rg.push_back(deg.rows[idx]);
                ch.groups.push_back(std::move(rg));
            }
            ch.witness = integer_weights(*w);
            out.push_back(std::move(ch));
            return;
        }
        // join an existing group
        for (size_t g = 0; g < groups.size(); ++g) {
            groups[g].push_back((int)next);
            if (chamber_witness(deg.rows, groups, scheme.ell)) rec(next + 1);
            groups[g].pop_back();
        }
        // open a new group at every gap
        for (size_t pos = 0; pos <= groups.size(); ++pos) {
            groups.insert(groups.begin() + pos, {(int)next});
            if (chamber_witness(deg.rows, groups, scheme.ell)) rec(next + 1);
            groups.erase(groups.begin() + pos);
        }
    };
    rec(0);
    return out;
}

// ----- per-chamber level structure ------------------------------------------

struct Level {
    bool is_virtual = false;
    int group = -1;               // real levels: index into chamber.groups
    std::vector<int> coords;      // coordinates whose degree sits at this level
    bool has_const = false;       // constant term lives here
    std::vector<int> drift;       // coordinates allowed to drift at this level
};

struct ChamberLevels {
    std::vector<Level> levels;
    std::vector<long> coord_level_deg;  // doubled degree of each coordinate's own level
    std::vector<long> level_deg;        // doubled degree value of each level
};

long row_degree(const Row& r, const std::vector<long>& w) {
    long d = 0;
    for (size_t j = 0; j < r.size(); ++j) d += (long)r[j] * w[j];
    return d;
}

ChamberLevels build_levels(const MonomialScheme& scheme, const DegreeData& deg,
                           const Chamber& ch) {
    ChamberLevels cl;
    int K = (int)ch.groups.size();
    std::map<Row, int> group_of_row;
    for (int k = 0; k < K; ++k)
        for (const auto& r : ch.groups[k]) group_of_row[r] = k;
    std::vector<int> coord_group(scheme.dim);
    for (int i = 0; i < scheme.dim; ++i)
        coord_group[i] = group_of_row.at(deg.rows[deg.row_of_coord[i]]);
    int const_group = group_of_row.at(Row(scheme.ell, 0));

    cl.coord_level_deg.resize(scheme.dim);
    for (int i = 0; i < scheme.dim; ++i)
        cl.coord_level_deg[i] = 2 * row_degree(scheme.exponents[i], ch.witness);

    for (int k = 0; k < K; ++k) {
        Level real;
        real.is_virtual = false;
        real.group = k;
        real.has_const = (k == const_group);
        for (int i = 0; i < scheme.dim; ++i) {
            if (coord_group[i] == k) real.coords.push_back(i);
            if (coord_group[i] < k) real.drift.push_back(i);
        }
        cl.levels.push_back(real);
        cl.level_deg.push_back(2 * row_degree(ch.groups[k][0], ch.witness));
        if (k + 1 < K) {
            Level virt;
            virt.is_virtual = true;
            for (int i = 0; i < scheme.dim; ++i)
                if (coord_group[i] <= k) virt.drift.push_back(i);
            if (!virt.drift.empty()) {
                cl.levels.push_back(virt);
                cl.level_deg.push_back(2 * row_degree(ch.groups[k][0], ch.witness) + 1);
            }
        }
    }
    return cl;
}

// Split member rows into homogeneous >= rows over (a | b).
struct LexRow {
    QVec a;
    Rat b;
};

std::vector<LexRow> member_rows(const Polyhedron& p) {
    std::vector<LexRow> rows;
    for (size_t i = 0; i < p.A.size(); ++i) rows.push_back({p.A[i], p.b[i]});
    for (size_t i = 0; i < p.C.size(); ++i) {
        rows.push_back({p.C[i], p.d[i]});
        rows.push_back({neg(p.C[i]), -p.d[i]});
    }
    return rows;
}

// Coefficient of row r at one level, as a linear form over the level's drift
// variables plus a constant offset depending on p.
struct LevelForm {
    Rat offset;
    QVec drift_coeffs;  // aligned with level.drift
};

LevelForm level_form(const LexRow& row, const Level& level, const QVec& p) {
    LevelForm f;
    f.offset = 0;
    if (!level.is_virtual) {
        for (int i : level.coords) f.offset += row.a[i] * p[i];
        if (level.has_const) f.offset -= row.b;
    }
    f.drift_coeffs.reserve(level.drift.size());
    for (int i : level.drift) f.drift_coeffs.push_back(row.a[i]);
    return f;
}

// Cascade with fixed p. On success returns per-level drift witnesses.
std::optional<std::vector<QVec>> cascade_fixed(const std::vector<LexRow>& rows,
                                               const ChamberLevels& cl, const QVec& p) {
    std::vector<size_t> active(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) active[i] = i;
    std::vector<QVec> drifts;
    for (const auto& level : cl.levels) {
        size_t nv = level.drift.size();
        std::vector<LevelForm> forms;
        for (size_t r : active) forms.push_back(level_form(rows[r], level, p));
        // feasibility: all coefficients >= 0
        std::vector<LinCon> cons;
        for (const auto& f : forms) cons.push_back({f.drift_coeffs, -f.offset, RelOp::Ge});
        if (nv == 0) {
            for (const auto& f : forms)
                if (f.offset < 0) return std::nullopt;
        } else if (!lp_feasible((int)nv, cons)) {
            return std::nullopt;
        }
        // maximal set of rows that can be strictly positive simultaneously
        std::vector<size_t> next_active;
        QVec vsum(nv, Rat(0));
        int contributors = 0;
        for (size_t idx = 0; idx < forms.size(); ++idx) {
            bool positive = false;
            if (nv == 0) {
                positive = forms[idx].offset > 0;
            } else {
                // cap the objective at 1 to keep the LP bounded
                std::vector<LinCon> capped = cons;
                capped.push_back({neg(forms[idx].drift_coeffs), -(Rat(1) - forms[idx].offset),
                                  RelOp::Ge});
                LpResult r = lp_maximize(forms[idx].drift_coeffs, capped);
                if (r.status == LpStatus::Optimal && r.value + forms[idx].offset > 0) {
                    positive = true;
                    vsum = add(vsum, r.x);
                    ++contributors;
                }
            }
            if (!positive) next_active.push_back(active[idx]);
        }
        QVec v(nv, Rat(0));
        if (contributors > 0) {
            v = scale(vsum, Rat(1, contributors));
        } else if (nv > 0) {
            auto pt = lp_feasible_point((int)nv, cons);
            if (pt) v = *pt;
        }
        drifts.push_back(std::move(v));
        active = std::move(next_active);
    }
    return drifts;
}

// ----- signature enumeration with p unknown ---------------------------------

// Joint variable layout: p (dim vars) followed by one drift block per level.
struct JointLayout {
    int dim;
    std::vector<int> level_offset;
    int total;
};

JointLayout make_layout(int dim, const ChamberLevels& cl) {
    JointLayout lay;
    lay.dim = dim;
    int off = dim;
    for (const auto& level : cl.levels) {
        lay.level_offset.push_back(off);
        off += (int)level.drift.size();
    }
    lay.total = off;
    return lay;
}

LinCon joint_row(const LexRow& row, const Level& level, int level_idx, const JointLayout& lay,
                 RelOp op) {
    LinCon con;
    con.a.assign(lay.total, Rat(0));
    con.b = 0;
    if (!level.is_virtual) {
        for (int i : level.coords) con.a[i] = row.a[i];
        if (level.has_const) con.b = row.b;
    }
    int off = lay.level_offset[level_idx];
    for (size_t k = 0; k < level.drift.size(); ++k) con.a[off + (int)k] = row.a[level.drift[k]];
    con.op = op;
    return con;
}

// Fourier-Motzkin elimination of every variable except the first `keep`.
// Strict rows must have been relaxed already.
std::vector<LinCon> fm_project(std::vector<LinCon> rows, int keep, int total) {
    for (int var = total - 1; var >= keep; --var) {
        std::vector<LinCon> eqs, pos, negv, rest;
        for (auto& r : rows) {
            if (r.a[var] == 0) {
                rest.push_back(r);
            } else if (r.op == RelOp::Eq) {
                eqs.push_back(r);
            } else if (r.a[var] > 0) {
                pos.push_back(r);
            } else {
                negv.push_back(r);
            }
        }
        std::vector<LinCon> next = rest;
        if (!eqs.empty()) {
            // substitute using the first equality
            LinCon piv = eqs[0];
            auto subst = [&](const LinCon& r) {
                Rat f = r.a[var] / piv.a[var];
                LinCon out = r;
                for (int j = 0; j < total; ++j) out.a[j] -= f * piv.a[j];
                out.b -= f * piv.b;
                return out;
            };
            for (size_t i = 1; i < eqs.size(); ++i) next.push_back(subst(eqs[i]));
            for (auto& r : pos) next.push_back(subst(r));
            for (auto& r : negv) next.push_back(subst(r));
        } else {
            for (const auto& rp : pos)
                for (const auto& rn : negv) {
                    LinCon out;
                    out.a.assign(total, Rat(0));
                    Rat cp = rp.a[var], cn = -rn.a[var];
                    for (int j = 0; j < total; ++j) out.a[j] = cn * rp.a[j] + cp * rn.a[j];
                    out.b = cn * rp.b + cp * rn.b;
                    out.op = RelOp::Ge;
                    next.push_back(std::move(out));
                }
        }
        // cheap cleanup: drop rows that are trivially valid, keep it small
        std::vector<LinCon> cleaned;
        for (auto& r : next) {
            bool zero = true;
            for (int j = 0; j < total; ++j)
                if (r.a[j] != 0) { zero = false; break; }
            if (zero) {
                if (r.op == RelOp::Eq && r.b != 0) {
                    // contradictory: keep a marker row 0 >= 1
                    LinCon bad;
                    bad.a.assign(total, Rat(0));
                    bad.b = 1;
                    bad.op = RelOp::Ge;
                    cleaned.push_back(bad);
                } else if (r.op == RelOp::Ge && r.b > 0) {
                    cleaned.push_back(r);
                }
                continue;
            }
            cleaned.push_back(r);
        }
        rows = std::move(cleaned);
    }
    return rows;
}

// DFS over signatures: at each level an active row either turns strictly
// positive (and is done) or is pinned to zero and continues.
struct SignatureSearch {
    const std::vector<LexRow>& rows;
    const ChamberLevels& cl;
    const JointLayout& lay;
    const Guards& guards;
    long visited = 0;
    std::vector<std::pair<int, LinCon>> acc;  // (level, row) accumulated
    std::vector<Polyhedron> pieces;

    SignatureSearch(const std::vector<LexRow>& r, const ChamberLevels& c, const JointLayout& l,
                    const Guards& g)
        : rows(r), cl(c), lay(l), guards(g) {}

    bool feasible_now() const {
        std::vector<LinCon> cons;
        for (const auto& [lv, con] : acc) cons.push_back(con);
        return lp_feasible_point(lay.total, cons).has_value();
    }

    // Levels share only the p variables, so each level's drift block is
    // eliminated from its own subsystem separately.
    void emit_piece() {
        std::vector<LinCon> prows;
        for (size_t lv = 0; lv < cl.levels.size(); ++lv) {
            int nv = (int)cl.levels[lv].drift.size();
            int off = lay.level_offset[lv];
            std::vector<LinCon> sys;
            for (const auto& [tag, con] : acc) {
                if (tag != (int)lv) continue;
                LinCon c2;
                c2.a.assign(lay.dim + nv, Rat(0));
                for (int j = 0; j < lay.dim; ++j) c2.a[j] = con.a[j];
                for (int k = 0; k < nv; ++k) c2.a[lay.dim + k] = con.a[off + k];
                c2.b = con.b;
                c2.op = con.op == RelOp::Gt ? RelOp::Ge : con.op;
                sys.push_back(std::move(c2));
            }
            auto projected = fm_project(std::move(sys), lay.dim, lay.dim + nv);
            for (auto& r : projected) {
                r.a.resize(lay.dim);
                prows.push_back(std::move(r));
            }
        }
        std::vector<QVec> A, C;
        QVec b, d;
        for (auto& r : prows) {
            if (r.op == RelOp::Eq) {
                C.push_back(r.a);
                d.push_back(r.b);
            } else {
                A.push_back(r.a);
                b.push_back(r.b);
            }
        }
        Polyhedron piece = canonicalized(poly_from_rows(lay.dim, A, b, C, d));
        if (!piece.empty_flag) pieces.push_back(std::move(piece));
    }

    void level_rec(size_t level_idx, std::vector<size_t> active) {
        if (++visited > guards.max_signatures)
            throw ResourceError("mnc: signature guard exceeded (" + std::to_string(visited) +
                                " nodes)");
        if (level_idx == cl.levels.size()) {
            emit_piece();
            return;
        }
        choose_rec(level_idx, active, 0, {});
    }

    void choose_rec(size_t level_idx, const std::vector<size_t>& active, size_t pos,
                    std::vector<size_t> still_active) {
        const Level& level = cl.levels[level_idx];
        if (pos == active.size()) {
            level_rec(level_idx + 1, std::move(still_active));
            return;
        }
        size_t r = active[pos];
        // branch 1: strictly positive here
        acc.emplace_back((int)level_idx, joint_row(rows[r], level, (int)level_idx, lay, RelOp::Gt));
        if (feasible_now()) choose_rec(level_idx, active, pos + 1, still_active);
        acc.pop_back();
        // branch 2: pinned to zero, stays active
        acc.emplace_back((int)level_idx, joint_row(rows[r], level, (int)level_idx, lay, RelOp::Eq));
        if (feasible_now()) {
            still_active.push_back(r);
            choose_rec(level_idx, active, pos + 1, still_active);
            still_active.pop_back();
        }
        acc.pop_back();
    }
};

// ----- membership certificate construction ----------------------------------

std::map<long, Rat> curve_expansion(const LexRow& row, const std::vector<long>& coord_deg,
                                    const QVec& p,
                                    const std::vector<std::pair<long, QVec>>& perturbation) {
    std::map<long, Rat> coeff;
    coeff[0] -= row.b;
    for (size_t i = 0; i < p.size(); ++i)
        if (row.a[i] != 0) coeff[coord_deg[i]] += row.a[i] * p[i];
    for (const auto& [e, v] : perturbation)
        for (size_t i = 0; i < v.size(); ++i)
            if (row.a[i] != 0 && v[i] != 0) coeff[coord_deg[i] + e] += row.a[i] * v[i];
    return coeff;
}

// true + safe tau bound when the leading coefficient is positive (or the
// expansion vanishes identically)
std::pair<bool, Rat> leading_ok(const std::map<long, Rat>& coeff) {
    long lead = -1;
    Rat clead;
    for (const auto& [e, c] : coeff) {
        if (c == 0) continue;
        lead = e;
        clead = c;
        break;
    }
    if (lead < 0) return {true, Rat(1)};
    if (clead <= 0) return {false, Rat(0)};
    Rat tail = 0;
    for (const auto& [e, c] : coeff)
        if (e > lead) tail += abs(c);
    if (tail == 0) return {true, Rat(1)};
    Rat ratio = clead / tail;
    if (ratio > 1) ratio = 1;
    return {true, ratio};
}

std::vector<long> coord_degrees(const MonomialScheme& scheme, const std::vector<long>& weights) {
    std::vector<long> deg(scheme.dim);
    for (int i = 0; i < scheme.dim; ++i) {
        long d = 0;
        for (int j = 0; j < scheme.ell; ++j) d += (long)scheme.exponents[i][j] * weights[j];
        deg[i] = d;
    }
    return deg;
}

MembershipCertificate build_certificate(const MonomialScheme& scheme, const Polyhedron& member,
                                        int member_index, const Chamber& ch,
                                        const ChamberLevels& cl, const QVec& p,
                                        const std::vector<QVec>& drifts) {
    MembershipCertificate cert;
    cert.member_index = member_index;
    cert.weights.resize(scheme.ell);
    for (int j = 0; j < scheme.ell; ++j) cert.weights[j] = 2 * ch.witness[j];

    std::map<long, QVec> by_exp;
    for (size_t lv = 0; lv < cl.levels.size(); ++lv) {
        const Level& level = cl.levels[lv];
        for (size_t k = 0; k < level.drift.size(); ++k) {
            if (drifts[lv][k] == 0) continue;
            int i = level.drift[k];
            long e = cl.level_deg[lv] - cl.coord_level_deg[i];
            auto& vec = by_exp[e];
            if (vec.empty()) vec.assign(scheme.dim, Rat(0));
            vec[i] += drifts[lv][k];
        }
    }
    for (auto& [e, v] : by_exp) cert.perturbation.emplace_back(e, std::move(v));

    auto deg = coord_degrees(scheme, cert.weights);
    Rat tau0 = 1;
    for (const auto& row : member_rows(member)) {
        auto coeff = curve_expansion(row, deg, p, cert.perturbation);
        auto [ok, bound] = leading_ok(coeff);
        if (!ok)
            throw InternalConsistencyError("membership certificate failed self-verification");
        if (bound < tau0) tau0 = bound;
    }
    cert.tau0 = tau0;
    return cert;
}

// ----- separation ------------------------------------------------------------

struct GroupData {
    std::vector<std::vector<int>> coords;  // coordinates per distinct row
    std::vector<Row> rows;
};

GroupData coordinate_groups(const MonomialScheme& scheme) {
    GroupData g;
    DegreeData deg = degree_rows(scheme);
    g.rows = deg.rows;
    g.coords.assign(deg.rows.size(), {});
    for (int i = 0; i < scheme.dim; ++i) g.coords[deg.row_of_coord[i]].push_back(i);
    return g;
}

bool row_dominates(const Row& hi, const Row& lo) {
    bool strict = false;
    for (size_t j = 0; j < hi.size(); ++j) {
        if (hi[j] < lo[j]) return false;
        if (hi[j] > lo[j]) strict = true;
    }
    return strict;
}

std::optional<SeparationCertificate> separation_search(const MonomialScheme& scheme,
                                                       const PolySet& Z, const QVec& p,
                                                       const Guards& guards) {
    GroupData groups = coordinate_groups(scheme);
    int n = scheme.dim;
    std::vector<int> anchored;  // group indices with a nonzero scaled block of p
    for (size_t g = 0; g < groups.rows.size(); ++g) {
        bool zero_row = std::all_of(groups.rows[g].begin(), groups.rows[g].end(),
                                    [](int e) { return e == 0; });
        if (zero_row) continue;
        bool nonzero = false;
        for (int i : groups.coords[g])
            if (p[i] != 0) nonzero = true;
        if (nonzero) anchored.push_back((int)g);
    }

    for (int m = 1; m <= guards.max_separation_m; ++m) {
        std::vector<QVec> A;
        QVec b;
        std::vector<int> strict_rows;
        auto lambda_row = [&](int g) {
            QVec lam(n, Rat(0));
            for (int i : groups.coords[g]) lam[i] = p[i];
            return lam;
        };
        for (int g : anchored) {
            QVec lam = lambda_row(g);
            Rat psq = dot(lam, lam);
            // open direction: <y, p_g> > 0
            strict_rows.push_back((int)A.size());
            A.push_back(lam);
            b.push_back(Rat(0));
            // aperture: |psq * y_i - <y,p_g> p_i| <= <y,p_g>/m on the block
            for (int i : groups.coords[g]) {
                QVec r1(n, Rat(0)), r2(n, Rat(0));
                for (int j = 0; j < n; ++j) {
                    r1[j] = lam[j] * (p[i] + Rat(1, m));
                    r2[j] = -lam[j] * (p[i] - Rat(1, m));
                }
                r1[i] -= psq;
                r2[i] += psq;
                A.push_back(r1);
                b.push_back(Rat(0));
                A.push_back(r2);
                b.push_back(Rat(0));
            }
        }
        // couplings: groups dominated by an anchored group stay small
        for (size_t g2 = 0; g2 < groups.rows.size(); ++g2) {
            for (int g : anchored) {
                if ((int)g2 == g) continue;
                if (!row_dominates(groups.rows[g2], groups.rows[g])) continue;
                QVec lam = lambda_row(g);
                Rat psq = dot(lam, lam);
                for (int i : groups.coords[g2]) {
                    // m * psq * |y_i| <= <y, p_g>
                    QVec r1 = lam, r2 = lam;
                    r1[i] -= Rat(m) * psq;
                    r2[i] += Rat(m) * psq;
                    A.push_back(r1);
                    b.push_back(Rat(0));
                    A.push_back(r2);
                    b.push_back(Rat(0));
                }
            }
        }
        // box around the limit anchor
        QVec anchor(n, Rat(0));
        for (size_t g = 0; g < groups.rows.size(); ++g) {
            bool zero_row = std::all_of(groups.rows[g].begin(), groups.rows[g].end(),
                                        [](int e) { return e == 0; });
            if (zero_row)
                for (int i : groups.coords[g]) anchor[i] = p[i];
        }
        Rat radius = Rat(1);
        for (int k = 0; k < m; ++k) radius /= 2;
        std::vector<LinCon> region;
        for (size_t r = 0; r < A.size(); ++r) {
            bool strict = std::find(strict_rows.begin(), strict_rows.end(), (int)r) !=
                          strict_rows.end();
            region.push_back({A[r], b[r], strict ? RelOp::Gt : RelOp::Ge});
        }
        for (int i = 0; i < n; ++i) {
            QVec e(n, Rat(0));
            e[i] = 1;
            region.push_back({e, anchor[i] - radius, RelOp::Ge});
            e[i] = -1;
            region.push_back({e, -(anchor[i] + radius), RelOp::Ge});
        }
        bool empty = true;
        for (const auto& member : Z.members) {
            std::vector<LinCon> cons = region;
            auto mc = poly_conditions(member);
            cons.insert(cons.end(), mc.begin(), mc.end());
            if (lp_feasible(n, cons)) {
                empty = false;
                break;
            }
        }
        if (empty) {
            SeparationCertificate cert;
            cert.cone = poly_from_rows(n, A, b);
            cert.strict_rows = strict_rows;
            cert.anchor = anchor;
            cert.radius = radius;
            return cert;
        }
    }
    return std::nullopt;
}

void check_scheme(const MonomialScheme& scheme) {
    if (scheme.ell < 0 || scheme.dim <= 0 || (int)scheme.exponents.size() != scheme.dim)
        throw InputError("monomial scheme: malformed");
    for (const auto& row : scheme.exponents) {
        if ((int)row.size() != scheme.ell) throw InputError("monomial scheme: ragged exponents");
        for (int e : row)
            if (e < 0) throw InputError("monomial scheme: negative exponent");
    }
}

}  // namespace

MemberResult mnc_member(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                        const Guards& guards) {
    check_scheme(scheme);
    if ((int)p.size() != scheme.dim) throw InputError("mnc_member: point dimension mismatch");
    if (Z.dim != scheme.dim) throw InputError("mnc_member: set dimension mismatch");
    if (polyset_is_empty(Z)) throw InputError("mnc_member: Z must be nonempty");

    DegreeData deg = degree_rows(scheme);
    auto chambers = enumerate_chambers(scheme, deg, guards);
    MemberResult res;
    for (const auto& ch : chambers) {
        ChamberLevels cl = build_levels(scheme, deg, ch);
        for (size_t mi = 0; mi < Z.members.size(); ++mi) {
            const Polyhedron& member = Z.members[mi];
            if (poly_is_empty(member)) continue;
            auto rows = member_rows(canonicalized(member));
            auto drifts = cascade_fixed(rows, cl, p);
            if (drifts) {
                res.verdict = Verdict::IN;
                res.cert_in = build_certificate(scheme, canonicalized(member), (int)mi, ch, cl,
                                                p, *drifts);
                return res;
            }
        }
    }
    res.verdict = Verdict::OUT;
    auto cert = separation_search(scheme, Z, p, guards);
    if (!cert)
        throw InternalConsistencyError(
            "mnc_member: chamber cascade says OUT but no separation certificate found");
    if (!verify_separation(scheme, Z, *cert))
        throw InternalConsistencyError("mnc_member: separation certificate failed verification");
    res.cert_out = std::move(cert);
    return res;
}

DescribeResult mnc_describe(const MonomialScheme& scheme, const PolySet& Z,
                            const Guards& guards) {
    check_scheme(scheme);
    if (Z.dim != scheme.dim) throw InputError("mnc_describe: set dimension mismatch");
    if (scheme.ell > guards.max_ell)
        throw ResourceError("mnc_describe: ell=" + std::to_string(scheme.ell) +
                            " exceeds guard " + std::to_string(guards.max_ell));
    if (scheme.dim > guards.max_dim)
        throw ResourceError("mnc_describe: dim=" + std::to_string(scheme.dim) +
                            " exceeds guard " + std::to_string(guards.max_dim));

    DegreeData deg = degree_rows(scheme);
    DescribeResult out;
    out.chambers = enumerate_chambers(scheme, deg, guards);
    std::vector<Polyhedron> all;
    for (auto& ch : out.chambers) {
        ChamberLevels cl = build_levels(scheme, deg, ch);
        JointLayout lay = make_layout(scheme.dim, cl);
        for (const auto& member : Z.members) {
            if (poly_is_empty(member)) continue;
            auto rows = member_rows(canonicalized(member));
            SignatureSearch search(rows, cl, lay, guards);
            std::vector<size_t> active(rows.size());
            for (size_t i = 0; i < rows.size(); ++i) active[i] = i;
            search.level_rec(0, active);
            for (auto& piece : search.pieces) {
                ch.limits.push_back(piece);
                all.push_back(std::move(piece));
            }
        }
        PolySet tidy = polyset_of(ch.limits, scheme.dim);
        ch.limits = tidy.members;
    }
    out.cone = polyset_of(std::move(all), scheme.dim);
    return out;
}

bool verify_membership(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                       const MembershipCertificate& cert) {
    check_scheme(scheme);
    if ((int)cert.weights.size() != scheme.ell) return false;
    for (long w : cert.weights)
        if (w <= 0) return false;
    for (const auto& [e, v] : cert.perturbation) {
        if (e <= 0) return false;
        if ((int)v.size() != scheme.dim) return false;
    }
    if (cert.member_index < 0 || cert.member_index >= (int)Z.members.size()) return false;
    if (cert.tau0 <= 0) return false;
    auto deg = coord_degrees(scheme, cert.weights);
    Polyhedron member = canonicalized(Z.members[cert.member_index]);
    for (const auto& row : member_rows(member)) {
        auto coeff = curve_expansion(row, deg, p, cert.perturbation);
        auto [ok, bound] = leading_ok(coeff);
        if (!ok) return false;
        if (cert.tau0 > bound) return false;
    }
    return true;
}

bool verify_separation(const MonomialScheme& scheme, const PolySet& Z,
                       const SeparationCertificate& cert) {
    check_scheme(scheme);
    int n = scheme.dim;
    if (cert.cone.dim != n || (int)cert.anchor.size() != n || cert.radius <= 0) return false;
    std::vector<LinCon> region;
    for (size_t r = 0; r < cert.cone.A.size(); ++r) {
        bool strict = std::find(cert.strict_rows.begin(), cert.strict_rows.end(), (int)r) !=
                      cert.strict_rows.end();
        region.push_back({cert.cone.A[r], cert.cone.b[r], strict ? RelOp::Gt : RelOp::Ge});
    }
    for (size_t r = 0; r < cert.cone.C.size(); ++r)
        region.push_back({cert.cone.C[r], cert.cone.d[r], RelOp::Eq});
    for (int i = 0; i < n; ++i) {
        QVec e(n, Rat(0));
        e[i] = 1;
        region.push_back({e, cert.anchor[i] - cert.radius, RelOp::Ge});
        e[i] = -1;
        region.push_back({e, -(cert.anchor[i] + cert.radius), RelOp::Ge});
    }
    for (const auto& member : Z.members) {
        std::vector<LinCon> cons = region;
        auto mc = poly_conditions(member);
        cons.insert(cons.end(), mc.begin(), mc.end());
        if (lp_feasible(n, cons)) return false;
    }
    return true;
}

OracleResult oracle_member(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                           const OracleLadder& ladder) {
    check_scheme(scheme);
    if ((int)p.size() != scheme.dim) throw InputError("oracle_member: dimension mismatch");
    if (ladder.base < 2 || ladder.max_steps < 1 || ladder.epsilons.empty())
        throw InputError("oracle_member: ladder parameters must be positive");
    for (const auto& e : ladder.epsilons)
        if (e <= 0) throw InputError("oracle_member: epsilons must be positive");

    // Axis profiles: the plain diagonal ladder plus, when enabled, per-axis
    // exponent vectors. A point can enter the limit along anisotropic rates
    // only, so OUT verdicts scan every profile.
    std::vector<std::vector<long>> profiles = {std::vector<long>(scheme.ell, 1)};
    if (ladder.randomize_axes && scheme.ell > 1) {
        std::mt19937_64 rng(ladder.seed ? ladder.seed : 1);
        long total = 1;
        for (int j = 0; j < scheme.ell; ++j) total *= 3;
        if (total <= 32) {
            for (long code = 0; code < total; ++code) {
                std::vector<long> w(scheme.ell);
                long c = code;
                for (int j = 0; j < scheme.ell; ++j) {
                    w[j] = 1 + c % 3;
                    c /= 3;
                }
                if (std::all_of(w.begin(), w.end(), [](long x) { return x == 1; })) continue;
                profiles.push_back(std::move(w));
            }
        } else {
            std::uniform_int_distribution<int> wd(1, 3);
            for (int draw = 0; draw < 26; ++draw) {
                std::vector<long> w(scheme.ell);
                for (auto& x : w) x = wd(rng);
                profiles.push_back(std::move(w));
            }
        }
    }

    auto feasible_at = [&](const Rat& eps, int m, const std::vector<long>& w) {
        QVec t(scheme.ell);
        for (int j = 0; j < scheme.ell; ++j) {
            Rat c = 1;
            for (long k = 0; k < (long)m * w[j]; ++k) c *= ladder.base;
            t[j] = Rat(1) / c;
        }
        for (const auto& member : Z.members) {
            Polyhedron cm = canonicalized(member);
            if (cm.empty_flag) continue;
            QVec mono(scheme.dim);
            for (int i = 0; i < scheme.dim; ++i) {
                Rat f = 1;
                for (int j = 0; j < scheme.ell; ++j)
                    for (int e = 0; e < scheme.exponents[i][j]; ++e) f *= t[j];
                mono[i] = f;
            }
            auto scaled_row = [&](const QVec& a) {
                QVec r(scheme.dim);
                for (int i = 0; i < scheme.dim; ++i) r[i] = a[i] * mono[i];
                return r;
            };
            std::vector<LinCon> cons;
            for (size_t r = 0; r < cm.A.size(); ++r)
                cons.push_back({scaled_row(cm.A[r]), cm.b[r], RelOp::Ge});
            for (size_t r = 0; r < cm.C.size(); ++r)
                cons.push_back({scaled_row(cm.C[r]), cm.d[r], RelOp::Eq});
            for (int i = 0; i < scheme.dim; ++i) {
                QVec e(scheme.dim, Rat(0));
                e[i] = 1;
                cons.push_back({e, p[i] - eps, RelOp::Ge});
                e[i] = -1;
                cons.push_back({e, -(p[i] + eps), RelOp::Ge});
            }
            if (lp_feasible(scheme.dim, cons)) return true;
        }
        return false;
    };

    OracleResult res;
    int window = std::min(4, ladder.max_steps);
    bool all_in = true, any_out = false, inconclusive = false;
    for (const auto& eps : ladder.epsilons) {
        std::vector<bool> feas;
        for (int m = 1; m <= ladder.max_steps; ++m) {
            bool feasible = false;
            for (const auto& w : profiles) {
                if (feasible_at(eps, m, w)) {
                    feasible = true;
                    break;
                }
            }
            feas.push_back(feasible);
        }
        bool tail_in = true, tail_out = true;
        for (int k = ladder.max_steps - window; k < ladder.max_steps; ++k) {
            if (feas[k]) tail_out = false;
            else tail_in = false;
        }
        if (tail_out) any_out = true;
        if (!tail_in) all_in = false;
        if (!tail_in && !tail_out) inconclusive = true;
        res.feasible.push_back(std::move(feas));
    }
    if (any_out)
        res.verdict = OracleVerdict::LIKELY_OUT;
    else if (all_in)
        res.verdict = OracleVerdict::LIKELY_IN;
    else
        res.verdict = OracleVerdict::INCONCLUSIVE;
    if (inconclusive && !any_out)
        res.notes.push_back("mixed feasibility tail at some epsilon");
    return res;
}

}  // namespace mnc
