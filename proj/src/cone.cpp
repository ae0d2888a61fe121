#include "mnc/cone.hpp"

#include "mnc/errors.hpp"
#include "mnc/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mnc {
namespace {

void check_rows(int dim, const std::vector<QVec>& rows, const char* what) {
    for (const auto& r : rows)
        if ((int)r.size() != dim)
            throw InputError(std::string(what) + ": dimension mismatch among rows");
}

// Multiword bitset of processed constraints tight at a ray.
using Bits = std::vector<std::uint64_t>;

void bit_set(Bits& b, int i) {
    size_t w = (size_t)i / 64;
    if (b.size() <= w) b.resize(w + 1, 0);
    b[w] |= (std::uint64_t)1 << (i % 64);
}

Bits bit_and(const Bits& a, const Bits& b) {
    Bits out(std::min(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

bool bit_subset(const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        std::uint64_t bi = i < b.size() ? b[i] : 0;
        if ((a[i] & ~bi) != 0) return false;
    }
    return true;
}

// Double description state: extreme rays with their tight constraint sets,
// plus a basis of the lineality space (kept orthogonal to every processed
// constraint).
struct VRep {
    std::vector<QVec> rays, lines;
    std::vector<Bits> tight;
    std::vector<QVec> processed;  // constraint rows seen so far
};

Bits tight_of(const QVec& w, const std::vector<QVec>& processed) {
    Bits t;
    for (size_t k = 0; k < processed.size(); ++k)
        if (dot(processed[k], w) == 0) bit_set(t, (int)k);
    return t;
}

// Reduces rays modulo the lineality span, makes them primitive and dedupes
// (duplicates would poison the adjacency test).
void normalize_rays(VRep& v) {
    std::vector<QVec> basis = v.lines;
    std::vector<int> pivots = rref(basis);
    v.lines = basis;
    std::vector<QVec> rays;
    std::vector<Bits> tight;
    std::map<std::string, bool> seen;
    for (size_t r = 0; r < v.rays.size(); ++r) {
        QVec w = v.rays[r];
        reduce_mod(w, basis, pivots);
        w = primitive(w);
        if (is_zero_vec(w)) continue;
        std::string key = format_vec(w);
        if (seen.count(key)) continue;
        seen[key] = true;
        rays.push_back(std::move(w));
        tight.push_back(r < v.tight.size() ? v.tight[r] : Bits{});
    }
    v.rays = std::move(rays);
    v.tight = std::move(tight);
}

void add_constraint(VRep& v, const QVec& a, bool equality, int row_index) {
    int l0 = -1;
    for (size_t i = 0; i < v.lines.size(); ++i)
        if (dot(a, v.lines[i]) != 0) { l0 = (int)i; break; }
    if (l0 >= 0) {
        QVec L0 = v.lines[l0];
        Rat al0 = dot(a, L0);
        if (al0 < 0) { L0 = neg(L0); al0 = -al0; }
        std::vector<QVec> nl;
        for (size_t i = 0; i < v.lines.size(); ++i) {
            if ((int)i == l0) continue;
            Rat f = dot(a, v.lines[i]) / al0;
            nl.push_back(sub(v.lines[i], scale(L0, f)));
        }
        for (size_t r = 0; r < v.rays.size(); ++r) {
            Rat f = dot(a, v.rays[r]) / al0;
            v.rays[r] = primitive(sub(v.rays[r], scale(L0, f)));
            bit_set(v.tight[r], row_index);  // projected rays satisfy a·x = 0
        }
        v.lines = std::move(nl);
        if (!equality) {
            // all earlier constraints vanish on the old line
            Bits t;
            for (int k = 0; k < row_index; ++k) bit_set(t, k);
            v.rays.push_back(primitive(L0));
            v.tight.push_back(std::move(t));
        }
        return;
    }
    std::vector<size_t> pos, zero, negv;
    std::vector<Rat> val(v.rays.size());
    for (size_t r = 0; r < v.rays.size(); ++r) {
        val[r] = dot(a, v.rays[r]);
        if (val[r] > 0) pos.push_back(r);
        else if (val[r] < 0) negv.push_back(r);
        else zero.push_back(r);
    }
    if (negv.empty()) {
        if (equality && !pos.empty()) {
            // drop the strictly positive rays
            std::vector<QVec> rays;
            std::vector<Bits> tight;
            for (size_t r : zero) {
                rays.push_back(v.rays[r]);
                Bits t = v.tight[r];
                bit_set(t, row_index);
                tight.push_back(std::move(t));
            }
            v.rays = std::move(rays);
            v.tight = std::move(tight);
            return;
        }
        for (size_t r : zero) bit_set(v.tight[r], row_index);
        return;
    }
    std::vector<QVec> rays;
    std::vector<Bits> tight;
    for (size_t r : zero) {
        rays.push_back(v.rays[r]);
        Bits t = v.tight[r];
        bit_set(t, row_index);
        tight.push_back(std::move(t));
    }
    if (!equality)
        for (size_t r : pos) {
            rays.push_back(v.rays[r]);
            tight.push_back(v.tight[r]);
        }
    for (size_t i : pos)
        for (size_t j : negv) {
            // combinatorial adjacency: no third ray is tight on the common set
            Bits common = bit_and(v.tight[i], v.tight[j]);
            bool adjacent = true;
            for (size_t r = 0; r < v.rays.size(); ++r) {
                if (r == i || r == j) continue;
                if (bit_subset(common, v.tight[r])) {
                    adjacent = false;
                    break;
                }
            }
            if (!adjacent) continue;
            QVec w = primitive(add(scale(v.rays[i], -val[j]), scale(v.rays[j], val[i])));
            if (is_zero_vec(w)) continue;
            // evaluate the tight set: the combinatorial estimate can undercount
            Bits t = tight_of(w, v.processed);
            bit_set(t, row_index);
            rays.push_back(std::move(w));
            tight.push_back(std::move(t));
        }
    v.rays = std::move(rays);
    v.tight = std::move(tight);
}

VRep dd_from_h(int dim, const std::vector<QVec>& ineqs, const std::vector<QVec>& eqs) {
    VRep v;
    for (int i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        v.lines.push_back(std::move(e));
    }
    int row = 0;
    for (const auto& a : eqs)
        if (!is_zero_vec(a)) {
            add_constraint(v, a, true, row++);
            v.processed.push_back(a);
            normalize_rays(v);
        }
    for (const auto& a : ineqs)
        if (!is_zero_vec(a)) {
            add_constraint(v, a, false, row++);
            v.processed.push_back(a);
            normalize_rays(v);
        }
    return v;
}

std::pair<std::vector<QVec>, std::vector<QVec>> h_from_v(int dim,
                                                         const std::vector<QVec>& rays,
                                                         const std::vector<QVec>& lines) {
    // H-rows of the cone = V-rep of its polar (nonnegative pairing).
    VRep pol = dd_from_h(dim, rays, lines);
    return {pol.rays, pol.lines};
}

void sort_rows(std::vector<QVec>& rows) {
    std::sort(rows.begin(), rows.end(), [](const QVec& a, const QVec& b) {
        return lex_cmp(a, b) < 0;
    });
}

std::vector<LinCon> cone_conditions(const Cone& c) {
    std::vector<LinCon> cons;
    for (const auto& a : c.ineqs) cons.push_back({a, Rat(0), RelOp::Ge});
    for (const auto& a : c.eqs) cons.push_back({a, Rat(0), RelOp::Eq});
    return cons;
}

}  // namespace

Cone cone_from_h(int dim, std::vector<QVec> ineqs, std::vector<QVec> eqs) {
    check_rows(dim, ineqs, "cone H-rep");
    check_rows(dim, eqs, "cone H-rep");
    Cone c;
    c.dim = dim;
    c.ineqs = std::move(ineqs);
    c.eqs = std::move(eqs);
    c.has_h = true;
    return c;
}

Cone cone_from_v(int dim, std::vector<QVec> rays, std::vector<QVec> lines) {
    check_rows(dim, rays, "cone V-rep");
    check_rows(dim, lines, "cone V-rep");
    Cone c;
    c.dim = dim;
    c.rays = std::move(rays);
    c.lines = std::move(lines);
    c.has_v = true;
    return c;
}

Cone cone_full(int dim) { return canonicalized(cone_from_h(dim, {}, {})); }

Cone cone_origin(int dim) {
    std::vector<QVec> eqs;
    for (int i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        eqs.push_back(std::move(e));
    }
    return canonicalized(cone_from_h(dim, {}, std::move(eqs)));
}

void canonicalize(Cone& c) {
    if (c.canonical) return;
    if (!c.has_h && !c.has_v) throw InputError("cone: no representation present");
    // Both sides via double description of the polar: the output rays of a
    // DD pass are extreme and its lines span the lineality, so one pass per
    // side yields minimal representations (facets = polar extreme rays,
    // equalities = polar lineality).
    std::vector<QVec> ineqs, eqs;
    if (c.has_v) {
        std::tie(ineqs, eqs) = h_from_v(c.dim, c.rays, c.lines);
    } else {
        ineqs = c.ineqs;
        eqs = c.eqs;
    }
    VRep v = dd_from_h(c.dim, ineqs, eqs);
    sort_rows(v.rays);
    sort_rows(v.lines);
    std::tie(ineqs, eqs) = h_from_v(c.dim, v.rays, v.lines);
    sort_rows(ineqs);
    sort_rows(eqs);
    c.rays = std::move(v.rays);
    c.lines = std::move(v.lines);
    c.ineqs = std::move(ineqs);
    c.eqs = std::move(eqs);
    c.has_h = c.has_v = true;
    c.canonical = true;
}

Cone hv_convert(const Cone& c) { return canonicalized(c); }

namespace {
const Cone& ens(const Cone& c, Cone& tmp) {
    if (c.canonical) return c;
    tmp = c;
    canonicalize(tmp);
    return tmp;
}
}  // namespace

Cone polar(const Cone& a) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    // {y : r·y >= 0 for rays r, l·y = 0 for lines l}
    return canonicalized(cone_from_h(c.dim, c.rays, c.lines));
}

Cone antipode(const Cone& a) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    Cone out;
    out.dim = c.dim;
    for (const auto& r : c.rays) out.rays.push_back(neg(r));
    out.lines = c.lines;
    out.has_v = true;
    return canonicalized(out);
}

Cone mink_sum(const std::vector<Cone>& parts) {
    if (parts.empty()) throw InputError("mink_sum: empty argument list");
    int dim = parts[0].dim;
    Cone out;
    out.dim = dim;
    for (const auto& p : parts) {
        if (p.dim != dim) throw InputError("mink_sum: dimension mismatch");
        Cone tmp;
        const Cone& c = ens(p, tmp);
        out.rays.insert(out.rays.end(), c.rays.begin(), c.rays.end());
        out.lines.insert(out.lines.end(), c.lines.begin(), c.lines.end());
    }
    out.has_v = true;
    return canonicalized(out);
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) throw InputError("cone intersect: dimension mismatch");
    Cone tmpa, tmpb;
    const Cone& ca = ens(a, tmpa);
    const Cone& cb = ens(b, tmpb);
    std::vector<QVec> ineqs = ca.ineqs, eqs = ca.eqs;
    ineqs.insert(ineqs.end(), cb.ineqs.begin(), cb.ineqs.end());
    eqs.insert(eqs.end(), cb.eqs.begin(), cb.eqs.end());
    return canonicalized(cone_from_h(a.dim, std::move(ineqs), std::move(eqs)));
}

bool cone_member(const Cone& a, const QVec& x) {
    if ((int)x.size() != a.dim) throw InputError("cone member: dimension mismatch");
    Cone tmp;
    const Cone& c = ens(a, tmp);
    for (const auto& row : c.ineqs)
        if (dot(row, x) < 0) return false;
    for (const auto& row : c.eqs)
        if (dot(row, x) != 0) return false;
    return true;
}

bool cone_subset(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) throw InputError("cone subset: dimension mismatch");
    Cone tmpa, tmpb;
    const Cone& ca = ens(a, tmpa);
    const Cone& cb = ens(b, tmpb);
    for (const auto& r : ca.rays)
        if (!cone_member(cb, r)) return false;
    for (const auto& l : ca.lines)
        if (!cone_member(cb, l) || !cone_member(cb, neg(l))) return false;
    return true;
}

bool cone_equal(const Cone& a, const Cone& b) {
    Cone tmpa, tmpb;
    const Cone& ca = ens(a, tmpa);
    const Cone& cb = ens(b, tmpb);
    return ca.dim == cb.dim && ca.ineqs == cb.ineqs && ca.eqs == cb.eqs &&
           ca.rays == cb.rays && ca.lines == cb.lines;
}

int cone_dim(const Cone& a) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    std::vector<QVec> gens = c.rays;
    gens.insert(gens.end(), c.lines.begin(), c.lines.end());
    return rank(std::move(gens));
}

int lineality_dim(const Cone& a) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    return (int)c.lines.size();
}

bool is_proper_wrt(const Cone& a, const QVec& xi) {
    if ((int)xi.size() != a.dim) throw InputError("is_proper_wrt: dimension mismatch");
    if (is_zero_vec(xi)) throw InputError("is_proper_wrt: xi must be nonzero");
    Cone tmp;
    const Cone& c = ens(a, tmp);
    if (!c.lines.empty()) return false;
    for (const auto& r : c.rays)
        if (dot(r, xi) <= 0) return false;
    return true;
}

namespace {
QVec project_coords(const QVec& v, const std::vector<int>& coords) {
    QVec out(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) out[i] = v[coords[i]];
    return out;
}

QVec embed_coords(const QVec& v, const std::vector<int>& coords, int dim) {
    QVec out(dim, Rat(0));
    for (size_t i = 0; i < coords.size(); ++i) out[coords[i]] = v[i];
    return out;
}

Cone project_cone(const Cone& c, const std::vector<int>& coords) {
    std::vector<QVec> rays, lines;
    for (const auto& r : c.rays) rays.push_back(project_coords(r, coords));
    for (const auto& l : c.lines) lines.push_back(project_coords(l, coords));
    return canonicalized(cone_from_v((int)coords.size(), std::move(rays), std::move(lines)));
}

Cone product_cone(const Cone& a, const std::vector<int>& ca, const Cone& b,
                  const std::vector<int>& cb, int dim) {
    std::vector<QVec> ineqs, eqs;
    for (const auto& r : a.ineqs) ineqs.push_back(embed_coords(r, ca, dim));
    for (const auto& r : a.eqs) eqs.push_back(embed_coords(r, ca, dim));
    for (const auto& r : b.ineqs) ineqs.push_back(embed_coords(r, cb, dim));
    for (const auto& r : b.eqs) eqs.push_back(embed_coords(r, cb, dim));
    return canonicalized(cone_from_h(dim, std::move(ineqs), std::move(eqs)));
}
}  // namespace

Cone partial_polar(const Cone& a, const std::vector<int>& block) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    std::vector<bool> inb(c.dim, false);
    for (int i : block) {
        if (i < 0 || i >= c.dim) throw InputError("partial_polar: block index out of range");
        inb[i] = true;
    }
    std::vector<int> comp;
    for (int i = 0; i < c.dim; ++i)
        if (!inb[i]) comp.push_back(i);
    Cone cblock = project_cone(c, block);
    Cone ccomp = project_cone(c, comp);
    Cone prod = product_cone(cblock, block, ccomp, comp, c.dim);
    if (!cone_equal(prod, c))
        throw InputError("partial_polar: cone is not a product over the block");
    Cone pb = polar(cblock);
    return product_cone(pb, block, ccomp, comp, c.dim);
}

std::string cone_repr(const Cone& a) {
    Cone tmp;
    const Cone& c = ens(a, tmp);
    std::ostringstream os;
    os << "Cone(dim=" << c.dim << "; ineqs=";
    for (const auto& r : c.ineqs) os << format_vec(r);
    os << "; eqs=";
    for (const auto& r : c.eqs) os << format_vec(r);
    os << "; rays=";
    for (const auto& r : c.rays) os << format_vec(r);
    os << "; lines=";
    for (const auto& r : c.lines) os << format_vec(r);
    os << ")";
    return os.str();
}

// ----- Polyhedron --------------------------------------------------------

Polyhedron poly_from_rows(int dim, std::vector<QVec> A, QVec b, std::vector<QVec> C, QVec d) {
    check_rows(dim, A, "polyhedron");
    check_rows(dim, C, "polyhedron");
    if (A.size() != b.size() || C.size() != d.size())
        throw InputError("polyhedron: rhs length mismatch");
    Polyhedron p;
    p.dim = dim;
    p.A = std::move(A);
    p.b = std::move(b);
    p.C = std::move(C);
    p.d = std::move(d);
    return p;
}

Polyhedron poly_full(int dim) { return canonicalized(poly_from_rows(dim, {}, {})); }

Polyhedron poly_from_cone(const Cone& c) {
    Cone tmp;
    const Cone& cc = ens(c, tmp);
    Polyhedron p;
    p.dim = cc.dim;
    p.A = cc.ineqs;
    p.b.assign(cc.ineqs.size(), Rat(0));
    p.C = cc.eqs;
    p.d.assign(cc.eqs.size(), Rat(0));
    canonicalize(p);
    return p;
}

std::vector<LinCon> poly_conditions(const Polyhedron& p) {
    std::vector<LinCon> cons;
    if (p.empty_flag) {
        // canonical empty: represent as 0 >= 1
        LinCon c;
        c.a.assign(p.dim, Rat(0));
        c.b = 1;
        c.op = RelOp::Ge;
        cons.push_back(std::move(c));
        return cons;
    }
    for (size_t i = 0; i < p.A.size(); ++i) cons.push_back({p.A[i], p.b[i], RelOp::Ge});
    for (size_t i = 0; i < p.C.size(); ++i) cons.push_back({p.C[i], p.d[i], RelOp::Eq});
    return cons;
}

void canonicalize(Polyhedron& p) {
    if (p.canonical) return;
    auto set_empty = [&]() {
        p.A.clear();
        p.b.clear();
        p.C.clear();
        p.d.clear();
        p.empty_flag = true;
        p.canonical = true;
    };
    // Constant rows first.
    {
        std::vector<QVec> A;
        QVec b;
        for (size_t i = 0; i < p.A.size(); ++i) {
            if (is_zero_vec(p.A[i])) {
                if (p.b[i] > 0) { set_empty(); return; }
                continue;
            }
            A.push_back(p.A[i]);
            b.push_back(p.b[i]);
        }
        std::vector<QVec> C;
        QVec d;
        for (size_t i = 0; i < p.C.size(); ++i) {
            if (is_zero_vec(p.C[i])) {
                if (p.d[i] != 0) { set_empty(); return; }
                continue;
            }
            C.push_back(p.C[i]);
            d.push_back(p.d[i]);
        }
        p.A = std::move(A);
        p.b = std::move(b);
        p.C = std::move(C);
        p.d = std::move(d);
    }
    if (!lp_feasible(p.dim, poly_conditions(p))) { set_empty(); return; }
    p.empty_flag = false;

    // Implicit equalities.
    {
        std::vector<QVec> A;
        QVec b;
        auto cons = poly_conditions(p);
        for (size_t i = 0; i < p.A.size(); ++i) {
            LpResult r = lp_maximize(p.A[i], cons);
            if (r.status == LpStatus::Optimal && r.value == p.b[i]) {
                p.C.push_back(p.A[i]);
                p.d.push_back(p.b[i]);
            } else {
                A.push_back(p.A[i]);
                b.push_back(p.b[i]);
            }
        }
        p.A = std::move(A);
        p.b = std::move(b);
    }
    // Canonical equality system on homogenized rows (C | -d).
    {
        std::vector<QVec> rows;
        for (size_t i = 0; i < p.C.size(); ++i) {
            QVec r = p.C[i];
            r.push_back(-p.d[i]);
            rows.push_back(std::move(r));
        }
        std::vector<int> pivots = rref(rows);
        // A pivot in the rhs column would mean 0 = nonzero; ruled out by feasibility.
        std::vector<QVec> C;
        QVec d;
        for (auto& r : rows) {
            QVec a(r.begin(), r.end() - 1);
            C.push_back(a);
            d.push_back(-r.back());
        }
        p.C = std::move(C);
        p.d = std::move(d);

        // Reduce inequality rows modulo the equality span.
        std::vector<QVec> A;
        QVec b;
        std::map<std::string, bool> seen;
        for (size_t i = 0; i < p.A.size(); ++i) {
            QVec r = p.A[i];
            r.push_back(-p.b[i]);
            reduce_mod(r, rows, pivots);
            r = primitive(r);
            QVec a(r.begin(), r.end() - 1);
            if (is_zero_vec(a)) continue;  // constant after reduction; cannot be violated
            std::string key = format_vec(r);
            if (seen.count(key)) continue;
            seen[key] = true;
            A.push_back(a);
            b.push_back(-r.back());
        }
        p.A = std::move(A);
        p.b = std::move(b);
    }
    // Redundant inequalities.
    for (size_t i = 0; i < p.A.size();) {
        std::vector<LinCon> cons;
        for (size_t j = 0; j < p.A.size(); ++j)
            if (j != i) cons.push_back({p.A[j], p.b[j], RelOp::Ge});
        for (size_t j = 0; j < p.C.size(); ++j) cons.push_back({p.C[j], p.d[j], RelOp::Eq});
        LpResult r = lp_minimize(p.A[i], cons);
        if (r.status == LpStatus::Optimal && r.value >= p.b[i]) {
            p.A.erase(p.A.begin() + i);
            p.b.erase(p.b.begin() + i);
        } else {
            ++i;
        }
    }
    // Deterministic order over (a | b) rows.
    {
        std::vector<size_t> idx(p.A.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
            QVec rx = p.A[x]; rx.push_back(p.b[x]);
            QVec ry = p.A[y]; ry.push_back(p.b[y]);
            return lex_cmp(rx, ry) < 0;
        });
        std::vector<QVec> A;
        QVec b;
        for (size_t i : idx) { A.push_back(p.A[i]); b.push_back(p.b[i]); }
        p.A = std::move(A);
        p.b = std::move(b);
        std::vector<size_t> idx2(p.C.size());
        for (size_t i = 0; i < idx2.size(); ++i) idx2[i] = i;
        std::sort(idx2.begin(), idx2.end(), [&](size_t x, size_t y) {
            QVec rx = p.C[x]; rx.push_back(p.d[x]);
            QVec ry = p.C[y]; ry.push_back(p.d[y]);
            return lex_cmp(rx, ry) < 0;
        });
        std::vector<QVec> C;
        QVec d;
        for (size_t i : idx2) { C.push_back(p.C[i]); d.push_back(p.d[i]); }
        p.C = std::move(C);
        p.d = std::move(d);
    }
    p.canonical = true;
}

bool poly_is_empty(const Polyhedron& p) {
    if (p.canonical) return p.empty_flag;
    return !lp_feasible(p.dim, poly_conditions(p));
}

bool poly_member(const Polyhedron& p, const QVec& x) {
    if ((int)x.size() != p.dim) throw InputError("poly member: dimension mismatch");
    if (p.canonical && p.empty_flag) return false;
    for (size_t i = 0; i < p.A.size(); ++i)
        if (dot(p.A[i], x) < p.b[i]) return false;
    for (size_t i = 0; i < p.C.size(); ++i)
        if (dot(p.C[i], x) != p.d[i]) return false;
    return true;
}

bool poly_subset(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim != q.dim) throw InputError("poly subset: dimension mismatch");
    if (poly_is_empty(p)) return true;
    auto cons = poly_conditions(p);
    auto check_row = [&](const QVec& a, const Rat& rhs, bool eq) {
        LpResult lo = lp_minimize(a, cons);
        if (lo.status != LpStatus::Optimal || lo.value < rhs) return false;
        if (eq) {
            LpResult hi = lp_maximize(a, cons);
            if (hi.status != LpStatus::Optimal || hi.value > rhs) return false;
        }
        return true;
    };
    for (size_t i = 0; i < q.A.size(); ++i)
        if (!check_row(q.A[i], q.b[i], false)) return false;
    for (size_t i = 0; i < q.C.size(); ++i)
        if (!check_row(q.C[i], q.d[i], true)) return false;
    return true;
}

bool poly_equal(const Polyhedron& p, const Polyhedron& q) {
    Polyhedron cp = canonicalized(p), cq = canonicalized(q);
    return cp.dim == cq.dim && cp.empty_flag == cq.empty_flag && cp.A == cq.A &&
           cp.b == cq.b && cp.C == cq.C && cp.d == cq.d;
}

int poly_dim(const Polyhedron& p) {
    Polyhedron c = canonicalized(p);
    if (c.empty_flag) return -1;
    return c.dim - (int)c.C.size();
}

QVec relative_interior_point(const Polyhedron& p) {
    Polyhedron c = canonicalized(p);
    if (c.empty_flag) throw InputError("relative_interior_point: empty polyhedron");
    std::vector<LinCon> cons;
    for (size_t i = 0; i < c.A.size(); ++i) cons.push_back({c.A[i], c.b[i], RelOp::Gt});
    for (size_t i = 0; i < c.C.size(); ++i) cons.push_back({c.C[i], c.d[i], RelOp::Eq});
    auto pt = lp_feasible_point(c.dim, cons);
    if (!pt)
        throw InternalConsistencyError(
            "relative_interior_point: strict system infeasible after canonicalization");
    return *pt;
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim != q.dim) throw InputError("poly intersect: dimension mismatch");
    if ((p.canonical && p.empty_flag) || (q.canonical && q.empty_flag)) {
        Polyhedron e;
        e.dim = p.dim;
        e.canonical = true;
        e.empty_flag = true;
        return e;
    }
    Polyhedron out;
    out.dim = p.dim;
    out.A = p.A;
    out.b = p.b;
    out.C = p.C;
    out.d = p.d;
    out.A.insert(out.A.end(), q.A.begin(), q.A.end());
    out.b.insert(out.b.end(), q.b.begin(), q.b.end());
    out.C.insert(out.C.end(), q.C.begin(), q.C.end());
    out.d.insert(out.d.end(), q.d.begin(), q.d.end());
    canonicalize(out);
    return out;
}

bool poly_is_conic(const Polyhedron& p) {
    Polyhedron c = canonicalized(p);
    if (c.empty_flag) return false;
    for (const auto& x : c.b)
        if (x != 0) return false;
    for (const auto& x : c.d)
        if (x != 0) return false;
    return true;
}

Cone cone_of_poly(const Polyhedron& p) {
    Polyhedron c = canonicalized(p);
    if (!poly_is_conic(c)) throw InputError("cone_of_poly: polyhedron is not conic");
    return canonicalized(cone_from_h(c.dim, c.A, c.C));
}

// ----- PolySet ------------------------------------------------------------

PolySet polyset_of(std::vector<Polyhedron> members, int dim) {
    PolySet s;
    s.dim = dim;
    for (auto& m : members) {
        if (m.dim != dim) throw InputError("polyset: dimension mismatch");
        s.members.push_back(std::move(m));
    }
    canonicalize(s);
    return s;
}

namespace {
std::string poly_key(const Polyhedron& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.A.size(); ++i) os << format_vec(p.A[i]) << ">=" << format_rat(p.b[i]);
    os << "|";
    for (size_t i = 0; i < p.C.size(); ++i) os << format_vec(p.C[i]) << "==" << format_rat(p.d[i]);
    return os.str();
}
}  // namespace

void canonicalize(PolySet& s) {
    std::vector<Polyhedron> ms;
    for (auto& m : s.members) {
        canonicalize(m);
        if (!m.empty_flag) ms.push_back(std::move(m));
    }
    // Drop members contained in another member.
    for (size_t i = 0; i < ms.size();) {
        bool drop = false;
        for (size_t j = 0; j < ms.size(); ++j) {
            if (i == j) continue;
            if (poly_subset(ms[i], ms[j])) {
                bool equal = poly_subset(ms[j], ms[i]);
                if (!equal || j < i) { drop = true; break; }
            }
        }
        if (drop)
            ms.erase(ms.begin() + i);
        else
            ++i;
    }
    std::sort(ms.begin(), ms.end(), [](const Polyhedron& a, const Polyhedron& b) {
        return poly_key(a) < poly_key(b);
    });
    s.members = std::move(ms);
}

bool polyset_is_empty(const PolySet& s) {
    for (const auto& m : s.members)
        if (!poly_is_empty(m)) return false;
    return true;
}

bool polyset_member(const PolySet& s, const QVec& x) {
    for (const auto& m : s.members)
        if (poly_member(m, x)) return true;
    return false;
}

bool covered_by(int dim, std::vector<LinCon> piece, const std::vector<Polyhedron>& qs,
                QVec* witness) {
    auto pt = lp_feasible_point(dim, piece);
    if (!pt) return true;
    if (qs.empty()) {
        if (witness) *witness = *pt;
        return false;
    }
    Polyhedron q = canonicalized(qs[0]);
    std::vector<Polyhedron> rest(qs.begin() + 1, qs.end());
    if (q.empty_flag) return covered_by(dim, std::move(piece), rest, witness);

    std::vector<LinCon> acc = piece;
    auto branch_violate = [&](const QVec& a, const Rat& rhs, bool eq) -> bool {
        // below: a·x < rhs
        std::vector<LinCon> below = acc;
        below.push_back({neg(a), -rhs, RelOp::Gt});
        if (!covered_by(dim, std::move(below), rest, witness)) return false;
        if (eq) {
            std::vector<LinCon> above = acc;
            above.push_back({a, rhs, RelOp::Gt});
            if (!covered_by(dim, std::move(above), rest, witness)) return false;
        }
        return true;
    };
    for (size_t i = 0; i < q.A.size(); ++i) {
        if (!branch_violate(q.A[i], q.b[i], false)) return false;
        acc.push_back({q.A[i], q.b[i], RelOp::Ge});
    }
    for (size_t i = 0; i < q.C.size(); ++i) {
        if (!branch_violate(q.C[i], q.d[i], true)) return false;
        acc.push_back({q.C[i], q.d[i], RelOp::Eq});
    }
    return true;  // remaining piece lies inside q
}

bool polyset_subset(const PolySet& a, const PolySet& b, QVec* witness) {
    if (a.dim != b.dim) throw InputError("polyset subset: dimension mismatch");
    for (const auto& m : a.members) {
        if (poly_is_empty(m)) continue;
        if (!covered_by(a.dim, poly_conditions(m), b.members, witness)) return false;
    }
    return true;
}

bool polyset_equal(const PolySet& a, const PolySet& b) {
    return polyset_subset(a, b) && polyset_subset(b, a);
}

PolySet polyset_intersect(const PolySet& a, const PolySet& b) {
    if (a.dim != b.dim) throw InputError("polyset intersect: dimension mismatch");
    PolySet out;
    out.dim = a.dim;
    for (const auto& p : a.members)
        for (const auto& q : b.members) {
            Polyhedron r = intersect(p, q);
            if (!r.empty_flag) out.members.push_back(std::move(r));
        }
    canonicalize(out);
    return out;
}

PolySet polyset_union(const PolySet& a, const PolySet& b) {
    if (a.dim != b.dim) throw InputError("polyset union: dimension mismatch");
    PolySet out;
    out.dim = a.dim;
    out.members = a.members;
    out.members.insert(out.members.end(), b.members.begin(), b.members.end());
    canonicalize(out);
    return out;
}

PolySet polyset_intersect_poly(const PolySet& a, const Polyhedron& q) {
    PolySet out;
    out.dim = a.dim;
    for (const auto& p : a.members) {
        Polyhedron r = intersect(p, q);
        if (!r.empty_flag) out.members.push_back(std::move(r));
    }
    canonicalize(out);
    return out;
}

}  // namespace mnc
