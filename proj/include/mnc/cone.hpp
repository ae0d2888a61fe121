#pragma once

#include "mnc/lp.hpp"
#include "mnc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mnc {

// Closed rational polyhedral cone with dual descriptions.
// H-rep: {x : a·x >= 0 for a in ineqs, a·x = 0 for a in eqs}
// V-rep: cone(rays) + span(lines)
// canonicalize() makes both sides minimal and deterministic: equal cones
// serialize identically.
struct Cone {
    int dim = 0;
    std::vector<QVec> ineqs, eqs;
    std::vector<QVec> rays, lines;
    bool has_h = false, has_v = false;
    bool canonical = false;
};

Cone cone_from_h(int dim, std::vector<QVec> ineqs, std::vector<QVec> eqs = {});
Cone cone_from_v(int dim, std::vector<QVec> rays, std::vector<QVec> lines = {});
Cone cone_full(int dim);
Cone cone_origin(int dim);

void canonicalize(Cone& c);
inline Cone canonicalized(Cone c) { canonicalize(c); return c; }

// Both descriptions, minimal and canonical (the spec's hv_convert).
Cone hv_convert(const Cone& c);

// {y : x·y >= 0 for all x in A}
Cone polar(const Cone& a);
Cone antipode(const Cone& a);
Cone mink_sum(const std::vector<Cone>& parts);
Cone intersect(const Cone& a, const Cone& b);

bool cone_member(const Cone& a, const QVec& x);
bool cone_subset(const Cone& a, const Cone& b);
bool cone_equal(const Cone& a, const Cone& b);
int cone_dim(const Cone& a);
int lineality_dim(const Cone& a);

// A \ {0} inside the open half-space {<x, xi> > 0}.
bool is_proper_wrt(const Cone& a, const QVec& xi);

// Polar on the given coordinate block only; the cone must factor as a
// product over (block, complement). Throws InputError otherwise.
Cone partial_polar(const Cone& a, const std::vector<int>& block);

std::string cone_repr(const Cone& a);  // compact human-readable form

// ----- Affine polyhedra ------------------------------------------------

// {x : A_i·x >= b_i, C_j·x = d_j}; canonical form detects emptiness,
// implicit equalities and redundant rows.
struct Polyhedron {
    int dim = 0;
    std::vector<QVec> A;
    QVec b;
    std::vector<QVec> C;
    QVec d;
    bool canonical = false;
    bool empty_flag = false;
};

Polyhedron poly_from_rows(int dim, std::vector<QVec> A, QVec b,
                          std::vector<QVec> C = {}, QVec d = {});
Polyhedron poly_full(int dim);
Polyhedron poly_from_cone(const Cone& c);

void canonicalize(Polyhedron& p);
inline Polyhedron canonicalized(Polyhedron p) { canonicalize(p); return p; }

bool poly_is_empty(const Polyhedron& p);
bool poly_member(const Polyhedron& p, const QVec& x);
bool poly_subset(const Polyhedron& p, const Polyhedron& q);
bool poly_equal(const Polyhedron& p, const Polyhedron& q);
int poly_dim(const Polyhedron& p);  // affine dimension; -1 if empty
QVec relative_interior_point(const Polyhedron& p);  // throws on empty
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
std::vector<LinCon> poly_conditions(const Polyhedron& p);

// True when the polyhedron is a cone (all rhs zero in canonical form).
bool poly_is_conic(const Polyhedron& p);
Cone cone_of_poly(const Polyhedron& p);

// ----- Finite unions ----------------------------------------------------

struct PolySet {
    int dim = 0;
    std::vector<Polyhedron> members;
};

PolySet polyset_of(std::vector<Polyhedron> members, int dim);
void canonicalize(PolySet& s);
inline PolySet canonicalized(PolySet s) { canonicalize(s); return s; }

bool polyset_is_empty(const PolySet& s);
bool polyset_member(const PolySet& s, const QVec& x);

// piece (with possible strict rows) contained in the union of qs?
// On failure a witness point of the difference is reported.
bool covered_by(int dim, std::vector<LinCon> piece, const std::vector<Polyhedron>& qs,
                QVec* witness = nullptr);

bool polyset_subset(const PolySet& a, const PolySet& b, QVec* witness = nullptr);
bool polyset_equal(const PolySet& a, const PolySet& b);
PolySet polyset_intersect(const PolySet& a, const PolySet& b);
PolySet polyset_union(const PolySet& a, const PolySet& b);
PolySet polyset_intersect_poly(const PolySet& a, const Polyhedron& q);

}  // namespace mnc
