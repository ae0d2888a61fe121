#include "mnc/local_cohomology.hpp"

#include "mnc/errors.hpp"
#include "mnc/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mnc {
namespace {

// ----- sparse exact linear algebra ------------------------------------------

struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::map<int, Rat>> row;

    void init(int r, int c) {
        rows = r;
        cols = c;
        row.assign(r, {});
    }
    void add(int r, int c, const Rat& v) {
        if (v == 0) return;
        auto& m = row[r];
        auto it = m.find(c);
        if (it == m.end()) {
            m[c] = v;
        } else {
            it->second += v;
            if (it->second == 0) m.erase(it);
        }
    }
};

// Row echelon over Q. Returns rank; when kernel != nullptr also emits a basis
// of the right kernel (as dense columns).
int eliminate(SparseMat m, std::vector<QVec>* kernel) {
    std::vector<std::map<int, Rat>> rows = std::move(m.row);
    std::vector<int> pivot_col;
    std::vector<std::map<int, Rat>> echelon;
    // eliminate column by column choosing sparsest pivot rows
    std::vector<bool> used(rows.size(), false);
    std::map<int, int> col_pivot_row;  // col -> index into echelon
    for (;;) {
        // pick the unused row with fewest entries
        int best = -1;
        size_t best_size = SIZE_MAX;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i].empty()) continue;
            if (rows[i].size() < best_size) {
                best = (int)i;
                best_size = rows[i].size();
            }
        }
        if (best < 0) break;
        used[best] = true;
        std::map<int, Rat> r = rows[best];
        // reduce against existing pivots
        for (;;) {
            if (r.empty()) break;
            int c = r.begin()->first;
            auto it = col_pivot_row.find(c);
            if (it == col_pivot_row.end()) break;
            const auto& pr = echelon[it->second];
            Rat f = r.begin()->second / pr.begin()->second;
            for (const auto& [cc, vv] : pr) {
                auto jt = r.find(cc);
                if (jt == r.end()) {
                    r[cc] = -f * vv;
                } else {
                    jt->second -= f * vv;
                    if (jt->second == 0) r.erase(jt);
                }
            }
        }
        if (r.empty()) continue;
        col_pivot_row[r.begin()->first] = (int)echelon.size();
        echelon.push_back(std::move(r));
    }
    int rank = (int)echelon.size();
    if (kernel) {
        kernel->clear();
        // back-substitution for each free column
        std::vector<bool> is_pivot(m.cols, false);
        for (const auto& [c, _] : col_pivot_row) is_pivot[c] = true;
        for (int free_col = 0; free_col < m.cols; ++free_col) {
            if (is_pivot[free_col]) continue;
            QVec v(m.cols, Rat(0));
            v[free_col] = 1;
            // solve pivots in decreasing column order
            std::vector<int> cols_sorted;
            for (const auto& [c, _] : col_pivot_row) cols_sorted.push_back(c);
            std::sort(cols_sorted.rbegin(), cols_sorted.rend());
            for (int c : cols_sorted) {
                const auto& pr = echelon[col_pivot_row[c]];
                Rat acc = 0;
                for (const auto& [cc, vv] : pr)
                    if (cc != c) acc += vv * v[cc];
                v[c] = -acc / pr.begin()->second;
            }
            kernel->push_back(std::move(v));
        }
    }
    return rank;
}

int sparse_rank(const SparseMat& m) {
    SparseMat copy = m;
    return eliminate(std::move(copy), nullptr);
}

// ----- arrangement construction ----------------------------------------------

// keep_orientation: box facets need their inward side preserved
std::optional<Hyperplane> normalize_plane(QVec a, Rat c, bool keep_orientation) {
    QVec row = a;
    row.push_back(-c);
    row = keep_orientation ? primitive(row) : primitive_signed(row);
    QVec aa(row.begin(), row.end() - 1);
    if (is_zero_vec(aa)) return std::nullopt;
    return Hyperplane{aa, -row.back()};
}

std::string plane_key(const Hyperplane& h) {
    QVec row = h.a;
    row.push_back(-h.c);
    return format_vec(primitive_signed(row));
}

}  // namespace

bool cell_below(const Cell& sigma, const Cell& tau) {
    if (sigma.dim >= tau.dim) return false;
    for (size_t i = 0; i < sigma.sign.size(); ++i)
        if (sigma.sign[i] != 0 && sigma.sign[i] != tau.sign[i]) return false;
    return true;
}

CellComplex arrangement_complex(const std::vector<Hyperplane>& planes, const Polyhedron& box,
                                const Guards& guards) {
    Polyhedron b = canonicalized(box);
    if (b.empty_flag) throw InputError("arrangement: empty box");
    int dim = b.dim;
    if (dim > 3) throw ResourceError("arrangement: dimension " + std::to_string(dim) + " > 3");
    if (!b.C.empty()) throw InputError("arrangement: box must be full-dimensional");
    // boundedness
    for (int i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        for (int sgn : {1, -1}) {
            QVec obj = scale(e, Rat(sgn));
            if (lp_maximize(obj, poly_conditions(b)).status != LpStatus::Optimal)
                throw InputError("arrangement: box is unbounded");
        }
    }

    CellComplex cx;
    cx.dim = dim;
    std::vector<std::string> keys;
    for (size_t r = 0; r < b.A.size(); ++r) {
        auto h = normalize_plane(b.A[r], b.b[r], true);
        if (h) {
            keys.push_back(plane_key(*h));
            cx.planes.push_back(*h);
        }
    }
    cx.box_rows = cx.planes.size();
    for (const auto& p : planes) {
        auto h = normalize_plane(p.a, p.c, false);
        if (!h) continue;
        std::string key = plane_key(*h);
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
        keys.push_back(key);
        cx.planes.push_back(*h);
    }

    // DFS over sign vectors with prefix feasibility pruning. Box rows admit
    // signs {0,+} relative to the inward inequality a·x >= c.
    size_t nplanes = cx.planes.size();
    std::vector<int> sign(nplanes, 0);
    std::vector<LinCon> cons;
    long visited = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if ((long)cx.cells.size() > guards.max_cells)
            throw ResourceError("arrangement: cell guard exceeded");
        ++visited;
        auto feasible = [&]() { return lp_feasible_point(dim, cons); };
        if (i == nplanes) {
            auto pt = feasible();
            if (!pt) return;
            Cell cell;
            cell.sign = sign;
            cell.point = *pt;
            std::vector<QVec> zero_rows;
            for (size_t r = 0; r < nplanes; ++r)
                if (sign[r] == 0) zero_rows.push_back(cx.planes[r].a);
            cell.dim = dim - rank(std::move(zero_rows));
            cx.cells.push_back(std::move(cell));
            return;
        }
        const Hyperplane& h = cx.planes[i];
        bool is_box = i < cx.box_rows;
        // sign 0: on the plane
        sign[i] = 0;
        cons.push_back({h.a, h.c, RelOp::Eq});
        if (lp_feasible_point(dim, cons)) rec(i + 1);
        cons.pop_back();
        // sign +: strictly above
        sign[i] = 1;
        cons.push_back({h.a, h.c, RelOp::Gt});
        if (lp_feasible_point(dim, cons)) rec(i + 1);
        cons.pop_back();
        if (!is_box) {
            sign[i] = -1;
            cons.push_back({neg(h.a), -h.c, RelOp::Gt});
            if (lp_feasible_point(dim, cons)) rec(i + 1);
            cons.pop_back();
        }
        sign[i] = 0;
    };
    rec(0);
    return cx;
}

void flag_region(CellComplex& cx, const std::string& name, const PolySet& region,
                 bool open_interior) {
    std::vector<bool> flags;
    flags.reserve(cx.cells.size());
    for (const auto& cell : cx.cells) {
        bool inside = false;
        for (const auto& member : region.members) {
            Polyhedron m = canonicalized(member);
            if (m.empty_flag) continue;
            bool ok = true;
            for (size_t r = 0; r < m.A.size() && ok; ++r) {
                Rat v = dot(m.A[r], cell.point);
                if (open_interior ? (v <= m.b[r]) : (v < m.b[r])) ok = false;
            }
            for (size_t r = 0; r < m.C.size() && ok; ++r) {
                if (open_interior) { ok = false; break; }
                if (dot(m.C[r], cell.point) != m.d[r]) ok = false;
            }
            if (ok) {
                inside = true;
                break;
            }
        }
        flags.push_back(inside);
    }
    cx.flags[name] = std::move(flags);
}

namespace {

// Chains of the face poset restricted to U-cells with top cell in W.
struct ChainBasis {
    std::vector<std::vector<int>> chains;       // each strictly increasing in the face order
    std::map<std::vector<int>, int> index;
};

struct BarComplex {
    // basis per degree restricted to G-touching chains (the relative complex)
    std::vector<ChainBasis> basis;
    std::vector<SparseMat> delta;  // delta[k] : C^k -> C^{k+1}
};

bool chain_touches(const std::vector<bool>& flags, const std::vector<int>& chain) {
    for (int c : chain)
        if (flags[c]) return true;
    return false;
}

// Builds the relative bar complex for fib(RGamma(U; k_W) -> RGamma(U\G; k_W)):
// functions on chains inside U with top in W that touch G.
BarComplex build_complex(const CellComplex& cx, const std::vector<bool>& u,
                         const std::vector<bool>& g, const std::vector<bool>& w, int max_deg) {
    BarComplex bc;
    bc.basis.resize(max_deg + 2);
    // covering relation lists within U
    size_t n = cx.cells.size();
    std::vector<std::vector<int>> above(n);
    for (size_t i = 0; i < n; ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < n; ++j) {
            if (i == j || !u[j]) continue;
            if (cell_below(cx.cells[i], cx.cells[j])) above[i].push_back((int)j);
        }
    }
    // degree 0
    for (size_t i = 0; i < n; ++i) {
        if (!u[i] || !w[i] || !g[i]) continue;
        std::vector<int> ch = {(int)i};
        bc.basis[0].index[ch] = (int)bc.basis[0].chains.size();
        bc.basis[0].chains.push_back(ch);
    }
    // longer chains: extend by a strictly larger top cell; the top must be in
    // W, every cell in U, and the chain must touch G
    std::vector<std::vector<int>> frontier;
    for (size_t i = 0; i < n; ++i)
        if (u[i]) frontier.push_back({(int)i});
    for (int deg = 1; deg <= max_deg + 1; ++deg) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : frontier)
            for (int top : above[ch.back()]) {
                std::vector<int> ext = ch;
                ext.push_back(top);
                next.push_back(std::move(ext));
            }
        for (const auto& ch : next) {
            if (!w[ch.back()]) continue;
            if (!chain_touches(g, ch)) continue;
            if ((int)ch.size() != deg + 1) continue;
            bc.basis[deg].index[ch] = (int)bc.basis[deg].chains.size();
            bc.basis[deg].chains.push_back(ch);
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    // differentials
    bc.delta.resize(max_deg + 1);
    for (int k = 0; k <= max_deg; ++k) {
        SparseMat d;
        d.init((int)bc.basis[k + 1].chains.size(), (int)bc.basis[k].chains.size());
        for (size_t r = 0; r < bc.basis[k + 1].chains.size(); ++r) {
            const auto& ch = bc.basis[k + 1].chains[r];
            // face terms: omit sigma_i (i <= k); omitting the top uses the
            // restriction map, zero unless the second-to-top is in W
            for (int i = 0; i <= k + 1; ++i) {
                std::vector<int> sub;
                for (int t = 0; t <= k + 1; ++t)
                    if (t != i) sub.push_back(ch[t]);
                Rat sgn = (i % 2 == 0) ? Rat(1) : Rat(-1);
                auto it = bc.basis[k].index.find(sub);
                if (it == bc.basis[k].index.end()) continue;  // dropped basis chain
                d.add((int)r, it->second, sgn);
            }
        }
        bc.delta[k] = std::move(d);
    }
    return bc;
}

CohomologyTable table_of(const BarComplex& bc, int max_deg) {
    CohomologyTable t;
    std::vector<int> ranks(max_deg + 1, 0);
    for (int k = 0; k <= max_deg; ++k) ranks[k] = sparse_rank(bc.delta[k]);
    for (int k = 0; k <= max_deg; ++k) {
        long dimk = (long)bc.basis[k].chains.size();
        long r_prev = k == 0 ? 0 : ranks[k - 1];
        long h = dimk - ranks[k] - r_prev;
        if (h != 0) t.ranks[k] = h;
    }
    return t;
}

}  // namespace

bool tables_equal(const CohomologyTable& a, const CohomologyTable& b) {
    return a.ranks == b.ranks;
}

CohomologyTable rel_cohomology(const CellComplex& cx, const std::string& u, const std::string& g,
                               const std::string& w) {
    auto need = [&](const std::string& name) -> const std::vector<bool>& {
        auto it = cx.flags.find(name);
        if (it == cx.flags.end()) throw InputError("rel_cohomology: unknown region " + name);
        return it->second;
    };
    BarComplex bc = build_complex(cx, need(u), need(g), need(w), cx.dim);
    return table_of(bc, cx.dim);
}

namespace {

void add_region_planes(std::vector<Hyperplane>& planes, const PolySet& region) {
    for (const auto& m : region.members) {
        Polyhedron c = canonicalized(m);
        for (size_t r = 0; r < c.A.size(); ++r) planes.push_back({c.A[r], c.b[r]});
        for (size_t r = 0; r < c.C.size(); ++r) planes.push_back({c.C[r], c.d[r]});
    }
}

PolySet ball_set(int dim, const Rat& radius) {
    std::vector<QVec> A;
    QVec b;
    for (int i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        A.push_back(e);
        b.push_back(-radius);
        e[i] = -1;
        A.push_back(e);
        b.push_back(-radius);
    }
    return polyset_of({poly_from_rows(dim, A, b)}, dim);
}

struct Stage {
    PolySet U;      // open ball (flagged with open_interior)
    PolySet G;      // closed support
};

// rank of the map induced on H^k by the chain map "restrict to the finer
// stage" (source basis chains surviving into the target basis keep their
// coefficient; everything else dies)
long connecting_rank(const BarComplex& src, const BarComplex& dst, int k) {
    if (src.basis[k].chains.empty()) return 0;
    // kernel of src delta^k = cocycles
    std::vector<QVec> cocycles;
    eliminate(src.delta[k], &cocycles);
    if (cocycles.empty()) return 0;
    // map cocycles into dst coordinates
    int dcols = (int)dst.basis[k].chains.size();
    SparseMat combined;
    int extra = (int)dst.basis[k == 0 ? 0 : k - 1].chains.size();
    // columns: mapped cocycles followed by coboundary generators of dst
    int gencols = (int)cocycles.size() + (k == 0 ? 0 : extra);
    combined.init(dcols, gencols);
    for (size_t c = 0; c < cocycles.size(); ++c) {
        for (size_t i = 0; i < src.basis[k].chains.size(); ++i) {
            if (cocycles[c][i] == 0) continue;
            auto it = dst.basis[k].index.find(src.basis[k].chains[i]);
            if (it == dst.basis[k].index.end()) continue;
            combined.add(it->second, (int)c, cocycles[c][i]);
        }
    }
    long rank_b = 0;
    if (k > 0) {
        // coboundaries of dst: columns of delta^{k-1}
        for (int r = 0; r < dst.delta[k - 1].rows; ++r)
            for (const auto& [c, v] : dst.delta[k - 1].row[r])
                combined.add(r, (int)cocycles.size() + c, v);
        rank_b = sparse_rank(dst.delta[k - 1]);
    }
    return sparse_rank(combined) - rank_b;
}

CohomologyTable ladder_limit(const StalkContext& scx, const std::vector<Stage>& stages,
                             const PolySet& W, const Polyhedron& box, const Guards& guards,
                             const char* label) {
    CohomologyTable last;
    std::vector<CohomologyTable> tables;
    for (size_t m = 0; m + 1 < stages.size(); ++m) {
        std::vector<Hyperplane> planes;
        add_region_planes(planes, stages[m].U);
        add_region_planes(planes, stages[m].G);
        add_region_planes(planes, stages[m + 1].U);
        add_region_planes(planes, stages[m + 1].G);
        add_region_planes(planes, W);
        CellComplex cx = arrangement_complex(planes, box, guards);
        flag_region(cx, "U0", stages[m].U, true);
        flag_region(cx, "G0", stages[m].G, false);
        flag_region(cx, "U1", stages[m + 1].U, true);
        flag_region(cx, "G1", stages[m + 1].G, false);
        flag_region(cx, "W", W, false);
        BarComplex b0 = build_complex(cx, cx.flags["U0"], cx.flags["G0"], cx.flags["W"], cx.dim);
        BarComplex b1 = build_complex(cx, cx.flags["U1"], cx.flags["G1"], cx.flags["W"], cx.dim);
        CohomologyTable t0 = table_of(b0, cx.dim);
        CohomologyTable t1 = table_of(b1, cx.dim);
        std::ostringstream note;
        note << label << " m=" << (m + 1) << " ranks {";
        for (auto& [k, r] : t0.ranks) note << k << ":" << r << " ";
        note << "} -> {";
        for (auto& [k, r] : t1.ranks) note << k << ":" << r << " ";
        note << "}";
        tables.push_back(t0);
        if (tables_equal(t0, t1)) {
            bool full = true;
            for (int k = 0; k <= cx.dim; ++k) {
                long want = 0;
                auto it = t0.ranks.find(k);
                if (it != t0.ranks.end()) want = it->second;
                if (want == 0) continue;
                if (connecting_rank(b0, b1, k) != want) full = false;
            }
            if (full) {
                CohomologyTable out = t1;
                out.stabilized = true;
                out.m_index = (int)m + 1;
                out.trail.push_back(note.str() + " [stable]");
                return out;
            }
        }
        last = t1;
        last.trail.push_back(note.str());
    }
    last.stabilized = false;
    last.m_index = (int)stages.size();
    return last;
}

}  // namespace

CohomologyTable stalk_limit(const StalkContext& scx, const CovectorPoint& p, const PolySet& W,
                            int m_max, const Guards& guards) {
    check_covector(scx, p);
    if (scx.N > 3) throw ResourceError("stalk_limit: ambient dimension exceeds 3");
    if (W.dim != scx.N) throw InputError("stalk_limit: W dimension mismatch");
    if (m_max < 2) throw InputError("stalk_limit: need m_max >= 2");

    // box side fixed at 4x the largest ladder radius (= 1/2)
    Polyhedron box;
    {
        std::vector<QVec> A;
        QVec b;
        for (int i = 0; i < scx.N; ++i) {
            QVec e(scx.N, Rat(0));
            e[i] = 1;
            A.push_back(e);
            b.push_back(rat_of(-2));
            e[i] = -1;
            A.push_back(e);
            b.push_back(rat_of(-2));
        }
        box = canonicalized(poly_from_rows(scx.N, A, b));
    }
    std::vector<Stage> stages;
    for (int m = 1; m <= m_max; ++m) {
        ConeLadder lad = g_ladder(scx, p, m);
        Stage st;
        Rat radius = 1;
        for (int i = 0; i < m; ++i) radius /= 2;
        st.U = ball_set(scx.N, radius);
        st.G = polyset_of({poly_from_cone(lad.G)}, scx.N);
        stages.push_back(std::move(st));
    }
    return ladder_limit(scx, stages, W, box, guards, "G");
}

CompareReport compare_families(const StalkContext& scx, const CovectorPoint& p, const PolySet& W,
                               int m_max, const Guards& guards) {
    CompareReport rep;
    rep.g_side = stalk_limit(scx, p, W, m_max, guards);

    Polyhedron box;
    {
        std::vector<QVec> A;
        QVec b;
        for (int i = 0; i < scx.N; ++i) {
            QVec e(scx.N, Rat(0));
            e[i] = 1;
            A.push_back(e);
            b.push_back(rat_of(-2));
            e[i] = -1;
            A.push_back(e);
            b.push_back(rat_of(-2));
        }
        box = canonicalized(poly_from_rows(scx.N, A, b));
    }
    std::vector<Stage> stages;
    for (int m = 1; m <= m_max; ++m) {
        auto zfam = make_z_family(scx, p, m);
        // the wedge certificate interleaves the routes: the intersection of
        // the Z_k is enclosed in an admissible sum cone of the theorem's form
        auto cert = enclose(scx, p, zfam, guards);
        if (!cert.ok) {
            rep.outcome = CompareOutcome::INCONCLUSIVE;
            return rep;
        }
        Stage st;
        Rat radius = 1;
        for (int i = 0; i < m; ++i) radius /= 2;
        st.U = ball_set(scx.N, radius);
        PolySet inter = zfam[0].Zk;
        for (size_t k = 1; k < zfam.size(); ++k) inter = polyset_intersect(inter, zfam[k].Zk);
        st.G = inter;
        stages.push_back(std::move(st));
    }
    rep.z_side = ladder_limit(scx, stages, W, box, guards, "Z");

    if (!rep.g_side.stabilized || !rep.z_side.stabilized) {
        rep.outcome = CompareOutcome::INCONCLUSIVE;
        return rep;
    }
    rep.outcome = tables_equal(rep.g_side, rep.z_side) ? CompareOutcome::AGREE
                                                        : CompareOutcome::DISAGREE;
    return rep;
}

}  // namespace mnc
