#include "mnc/microsupport.hpp"

#include "mnc/deformation.hpp"
#include "mnc/errors.hpp"

#include <algorithm>

namespace mnc {
namespace {

Polyhedron scale_fiber(const Polyhedron& p, const std::vector<int>& fiber, const Rat& s) {
    // image of p under xi -> s * xi: rows (a | b) become a_fiber / s
    Polyhedron out = p;
    for (auto& row : out.A)
        for (int i : fiber) row[i] /= s;
    for (auto& row : out.C)
        for (int i : fiber) row[i] /= s;
    out.canonical = false;
    canonicalize(out);
    return out;
}

Polyhedron subspace_poly(int dim, const std::vector<int>& zero_coords) {
    std::vector<QVec> C;
    QVec d;
    for (int i : zero_coords) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        C.push_back(std::move(e));
        d.push_back(Rat(0));
    }
    return canonicalized(poly_from_rows(dim, {}, {}, C, d));
}

std::vector<int> dotted_fiber_coords(const IndexFamily& family, const DerivedIndices& d) {
    // fiber coordinates dual to the blocks hatI_1..hatI_ell
    std::vector<int> out;
    for (int j = 1; j <= family.ell(); ++j)
        for (int i : d.hatI[j]) out.push_back(family.n + i - 1);
    return out;
}

}  // namespace

void check_conic(const ConicInput& in) {
    for (int i : in.fiber_coords)
        if (i < 0 || i >= in.set.dim) throw InputError("conic input: fiber index out of range");
    for (const auto& m : in.set.members) {
        Polyhedron c = canonicalized(m);
        if (c.empty_flag) continue;
        Polyhedron doubled = scale_fiber(c, in.fiber_coords, Rat(2));
        if (!poly_equal(c, doubled))
            throw InputError("conic input: member not invariant under fiber scaling");
    }
}

PolySet ss_estimate(const IndexFamily& family, const ConicInput& ssin, const Guards& guards) {
    if (ssin.set.dim != 2 * family.n)
        throw InputError("ss_estimate: input must live in 2n coordinates");
    check_conic(ssin);
    auto d = derive(family);
    MonomialScheme dual = scheme_for_dual(family, d);
    Guards g = guards.widened_for_cotangent();
    return mnc_describe(dual, ssin.set, g).cone;
}

PolySet support_bound(const IndexFamily& family, const ConicInput& ssin, const Guards& guards) {
    PolySet est = ss_estimate(family, ssin, guards);
    auto d = derive(family);
    std::vector<int> zeros;
    for (int j = 1; j <= family.ell(); ++j)
        for (int i : d.hatI[j]) zeros.push_back(i - 1);  // deformed base blocks
    for (int i : d.hatI[0]) zeros.push_back(family.n + i - 1);  // xi^(0)
    return polyset_intersect_poly(est, subspace_poly(2 * family.n, zeros));
}

SeqWitness seq_witness(const IndexFamily& family, const ConicInput& ssin, const QVec& p0,
                       const Guards& guards) {
    if ((int)p0.size() != 2 * family.n) throw InputError("seq_witness: dimension mismatch");
    check_conic(ssin);
    auto d = derive(family);
    MonomialScheme dual = scheme_for_dual(family, d);
    Guards g = guards.widened_for_cotangent();
    MemberResult mr = mnc_member(dual, ssin.set, p0, g);
    SeqWitness out;
    if (mr.verdict == Verdict::OUT) {
        out.found = false;
        out.separation = mr.cert_out;
        return out;
    }
    out.found = true;
    out.cert = mr.cert_in;
    const auto& cert = *mr.cert_in;
    Rat tau = cert.tau0 / 2;
    if (tau >= 1) tau = Rat(1, 2);
    const Polyhedron member = canonicalized(ssin.set.members[cert.member_index]);
    for (int step = 0; step < 5; ++step) {
        // x(tau) = p0 + sum tau^e v_e, q = apply_scheme(x, t), t_j = tau^{w_j}
        QVec x = p0;
        for (const auto& [e, v] : cert.perturbation) {
            Rat te = 1;
            for (long k = 0; k < e; ++k) te *= tau;
            x = add(x, scale(v, te));
        }
        QVec t(dual.ell);
        QVec c(dual.ell);
        for (int j = 0; j < dual.ell; ++j) {
            Rat tw = 1;
            for (long k = 0; k < cert.weights[j]; ++k) tw *= tau;
            t[j] = tw;
            c[j] = Rat(1) / tw;
        }
        QVec q = apply_scheme(dual, x, t);
        if (!poly_member(member, q))
            throw InternalConsistencyError("seq_witness: curve point left the member");
        out.points.push_back(std::move(q));
        out.scales.push_back(std::move(c));
        tau /= 2;
    }
    // divergence is monotone by construction; check exactly anyway
    for (size_t k = 1; k < out.scales.size(); ++k)
        for (int j = 0; j < dual.ell; ++j)
            if (out.scales[k][j] <= out.scales[k - 1][j])
                throw InternalConsistencyError("seq_witness: scales fail to diverge");
    return out;
}

NonCharResult noncharacteristic_check(const IndexFamily& family, const ConicInput& ch,
                                      const Guards& guards) {
    NonCharResult out;
    PolySet bound = support_bound(family, ch, guards);
    out.bound_slice = bound;
    auto d = derive(family);
    std::vector<int> dotted = dotted_fiber_coords(family, d);
    Polyhedron zero_section = subspace_poly(2 * family.n, dotted);
    out.ok = true;
    for (const auto& m : bound.members) {
        if (poly_subset(m, zero_section)) continue;
        out.ok = false;
        // exhibit a dotted point: some fiber coordinate bounded away from zero
        for (int i : dotted) {
            for (int sgn : {1, -1}) {
                auto cons = poly_conditions(m);
                QVec e(2 * family.n, Rat(0));
                e[i] = sgn;
                cons.push_back({e, Rat(1), RelOp::Ge});
                auto pt = lp_feasible_point(2 * family.n, cons);
                if (pt) {
                    out.witness = *pt;
                    return out;
                }
            }
        }
    }
    return out;
}

PolySet iota_sharp(const IotaCoords& coords, const PolySet& A, const Guards& guards) {
    int dim = coords.dim();
    if (A.dim != dim) throw InputError("iota_sharp: dimension mismatch");
    // conic check over the full fiber block (xi, eta)
    ConicInput ci;
    ci.set = A;
    for (int i = coords.nx + coords.ny; i < dim; ++i) ci.fiber_coords.push_back(i);
    check_conic(ci);

    MonomialScheme s;
    s.ell = 1;
    s.dim = dim;
    s.exponents.assign(dim, {0});
    for (int i = coords.nx; i < coords.nx + coords.ny; ++i) s.exponents[i] = {1};  // y
    for (int i = coords.nx + coords.ny; i < coords.nx + coords.ny + coords.nx; ++i)
        s.exponents[i] = {1};  // xi
    Guards g = guards;
    g.max_dim = std::max(g.max_dim, dim);
    PolySet C = mnc_describe(s, A, g).cone;
    // slice {y-direction = 0, eta = 0} and present in (x; xi)
    std::vector<int> zeros;
    for (int i = coords.nx; i < coords.nx + coords.ny; ++i) zeros.push_back(i);
    for (int i = coords.nx + coords.ny + coords.nx; i < dim; ++i) zeros.push_back(i);
    PolySet sliced = polyset_intersect_poly(C, subspace_poly(dim, zeros));
    // drop the pinned coordinates
    std::vector<int> keep;
    for (int i = 0; i < coords.nx; ++i) keep.push_back(i);
    for (int i = coords.nx + coords.ny; i < coords.nx + coords.ny + coords.nx; ++i)
        keep.push_back(i);
    PolySet out;
    out.dim = 2 * coords.nx;
    for (const auto& m : sliced.members) {
        Polyhedron c = canonicalized(m);
        std::vector<QVec> Arows, Crows;
        QVec b, drhs;
        auto restrict_row = [&](const QVec& row) {
            QVec r;
            for (int i : keep) r.push_back(row[i]);
            return r;
        };
        for (size_t r = 0; r < c.A.size(); ++r) {
            Arows.push_back(restrict_row(c.A[r]));
            b.push_back(c.b[r]);
        }
        for (size_t r = 0; r < c.C.size(); ++r) {
            QVec rr = restrict_row(c.C[r]);
            if (is_zero_vec(rr) && c.d[r] == 0) continue;
            Crows.push_back(std::move(rr));
            drhs.push_back(c.d[r]);
        }
        Polyhedron q = poly_from_rows(out.dim, Arows, b, Crows, drhs);
        if (!poly_is_empty(q)) out.members.push_back(std::move(q));
    }
    canonicalize(out);
    return out;
}

bool hyperbolicity_check(const IotaCoords& coords, const std::set<int>& n_coords,
                         const PolySet& ch, const Guards& guards) {
    for (int i : n_coords)
        if (i < 1 || i > coords.nx) throw InputError("hyperbolicity_check: N index out of range");
    PolySet sharp = iota_sharp(coords, ch, guards);
    // T*_N M = {x_i = 0 (i in N), xi_i = 0 (i not in N)}; dotted part has
    // some xi_i (i in N) nonzero
    std::vector<int> zeros;
    std::vector<int> dotted;
    for (int i = 1; i <= coords.nx; ++i) {
        if (n_coords.count(i)) {
            zeros.push_back(i - 1);
            dotted.push_back(coords.nx + i - 1);
        } else {
            zeros.push_back(coords.nx + i - 1);
        }
    }
    PolySet conormal_slice =
        polyset_intersect_poly(sharp, subspace_poly(2 * coords.nx, zeros));
    Polyhedron zero_section = subspace_poly(2 * coords.nx, dotted);
    for (const auto& m : conormal_slice.members)
        if (!poly_subset(m, zero_section)) return false;
    return true;
}

}  // namespace mnc
