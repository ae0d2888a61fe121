#include "mnc/stalk_geometry.hpp"

#include "mnc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mnc {
namespace {

// All sign vectors over the given positions; used to expand l1 norms.
std::vector<std::vector<int>> sign_patterns(size_t count) {
    std::vector<std::vector<int>> out;
    size_t total = (size_t)1 << count;
    for (size_t mask = 0; mask < total; ++mask) {
        std::vector<int> s(count);
        for (size_t b = 0; b < count; ++b) s[b] = (mask >> b) & 1 ? 1 : -1;
        out.push_back(std::move(s));
    }
    return out;
}

QVec zero_vec(int n) { return QVec(n, Rat(0)); }

}  // namespace

StalkContext make_context(const IndexFamily& family) {
    StalkContext cx;
    cx.family = family;
    cx.derived = derive(family);
    std::set<int> used;
    for (const auto& m : family.members) used.insert(m.begin(), m.end());
    cx.ncoords.assign(used.begin(), used.end());
    cx.N = (int)cx.ncoords.size();
    cx.block_pos.assign(family.ell() + 1, {});
    for (int pos = 0; pos < cx.N; ++pos) {
        int coord = cx.ncoords[pos];
        cx.block_pos[cx.derived.block_of[coord]].push_back(pos);
    }
    return cx;
}

void check_covector(const StalkContext& cx, const CovectorPoint& p) {
    int ell = cx.family.ell();
    if ((int)p.blocks.size() != ell + 1)
        throw InputError("covector: expected " + std::to_string(ell + 1) + " blocks");
    if (!p.blocks[0].empty()) throw InputError("covector: block 0 must be empty");
    for (int k = 1; k <= ell; ++k)
        if (p.blocks[k].size() != cx.derived.hatI[k].size())
            throw InputError("covector: block " + std::to_string(k) + " size mismatch");
}

GammaCone gamma(const StalkContext& cx, int k, const CovectorPoint& p) {
    check_covector(cx, p);
    int ell = cx.family.ell();
    if (k < 1 || k > ell) throw InputError("gamma: k out of range");
    GammaCone g;
    if (is_zero_vec(p.blocks[k])) {
        g.empty = true;
        g.closure = cone_origin(cx.N);
        g.strict_row = zero_vec(cx.N);
        return g;
    }
    std::vector<QVec> eqs;
    for (int j = 1; j <= ell; ++j) {
        bool pinned = cx.derived.prec[k].count(j) || cx.derived.incomp[k].count(j);
        if (!pinned) continue;
        for (int pos : cx.block_pos[j]) {
            QVec e = zero_vec(cx.N);
            e[pos] = 1;
            eqs.push_back(std::move(e));
        }
    }
    QVec pairing = zero_vec(cx.N);
    for (size_t t = 0; t < cx.block_pos[k].size(); ++t)
        pairing[cx.block_pos[k][t]] = p.blocks[k][t];
    g.strict_row = pairing;
    std::vector<QVec> ineqs = {pairing};
    g.closure = canonicalized(cone_from_h(cx.N, std::move(ineqs), std::move(eqs)));
    return g;
}

bool gamma_member(const GammaCone& g, const QVec& x) {
    if (g.empty) return false;
    return cone_member(g.closure, x) && dot(g.strict_row, x) > 0;
}

bool gamma_contains_punctured(const GammaCone& g, const Cone& c) {
    Cone cc = canonicalized(c);
    if (cc.rays.empty() && cc.lines.empty()) return true;  // {0}
    if (g.empty) return false;
    if (!cc.lines.empty()) return false;  // a line always leaves the open half-space
    if (!cone_subset(cc, g.closure)) return false;
    for (const auto& r : cc.rays)
        if (dot(g.strict_row, r) <= 0) return false;
    return true;
}

SharpSet sharp(const StalkContext& cx, int k, const CovectorPoint& p) {
    check_covector(cx, p);
    if (k < 1 || k > cx.family.ell()) throw InputError("sharp: k out of range");
    SharpSet s;
    s.k = k;
    const auto& Ik = cx.family.members[k - 1];
    s.icoords.assign(Ik.begin(), Ik.end());
    for (size_t t = 0; t < s.icoords.size(); ++t) {
        int blk = cx.derived.block_of[s.icoords[t]];
        if (blk != k) s.low_positions.push_back((int)t);
    }
    s.pairing.assign(s.icoords.size(), Rat(0));
    size_t bt = 0;
    for (size_t t = 0; t < s.icoords.size(); ++t) {
        if (cx.derived.block_of[s.icoords[t]] == k) s.pairing[t] = p.blocks[k][bt++];
    }
    return s;
}

bool sharp_member(const SharpSet& s, const QVec& eta) {
    if (eta.size() != s.icoords.size()) throw InputError("sharp_member: dimension mismatch");
    bool in_tau_image = true;
    for (int t : s.low_positions)
        if (eta[t] != 0) in_tau_image = false;
    if (!in_tau_image) return true;  // complement of the tau image is inside p^#
    return dot(s.pairing, eta) > 0;
}

ConeLadder g_ladder(const StalkContext& cx, const CovectorPoint& p, int m) {
    check_covector(cx, p);
    if (m < 1) throw InputError("g_ladder: m must be positive");
    ConeLadder lad;
    lad.m = m;
    int ell = cx.family.ell();
    // closed hull of the open ball of radius 2^-m
    Rat radius = 1;
    for (int i = 0; i < m; ++i) radius /= 2;
    std::vector<QVec> A;
    QVec b;
    for (int pos = 0; pos < cx.N; ++pos) {
        QVec e = zero_vec(cx.N);
        e[pos] = 1;
        A.push_back(e);
        b.push_back(-radius);
        e[pos] = -1;
        A.push_back(e);
        b.push_back(-radius);
    }
    lad.U = canonicalized(poly_from_rows(cx.N, A, b));

    for (int k = 1; k <= ell; ++k) {
        if (is_zero_vec(p.blocks[k])) {
            lad.parts.push_back(cone_origin(cx.N));
            continue;
        }
        std::vector<QVec> eqs, ineqs;
        for (int j = 1; j <= ell; ++j) {
            bool pinned = cx.derived.prec[k].count(j) || cx.derived.incomp[k].count(j);
            if (!pinned) continue;
            for (int pos : cx.block_pos[j]) {
                QVec e = zero_vec(cx.N);
                e[pos] = 1;
                eqs.push_back(std::move(e));
            }
        }
        QVec pairing = zero_vec(cx.N);
        for (size_t t = 0; t < cx.block_pos[k].size(); ++t)
            pairing[cx.block_pos[k][t]] = p.blocks[k][t];
        // <x^(k), xi^(k)> >= (1/m) |x^(k)|_1
        for (const auto& s : sign_patterns(cx.block_pos[k].size())) {
            QVec row = pairing;
            for (size_t t = 0; t < cx.block_pos[k].size(); ++t)
                row[cx.block_pos[k][t]] -= Rat(s[t], m);
            ineqs.push_back(std::move(row));
        }
        // |x^(j)|_1 <= m <x^(k), xi^(k)> for the higher blocks
        for (int j : cx.derived.succ[k]) {
            for (const auto& s : sign_patterns(cx.block_pos[j].size())) {
                QVec row = scale(pairing, Rat(m));
                for (size_t t = 0; t < cx.block_pos[j].size(); ++t)
                    row[cx.block_pos[j][t]] -= Rat(s[t]);
                ineqs.push_back(std::move(row));
            }
        }
        lad.parts.push_back(canonicalized(cone_from_h(cx.N, std::move(ineqs), std::move(eqs))));
    }
    lad.G = mink_sum(lad.parts);
    return lad;
}

std::vector<ZFamilyItem> make_z_family(const StalkContext& cx, const CovectorPoint& p, int m) {
    check_covector(cx, p);
    if (m < 1) throw InputError("make_z_family: m must be positive");
    int ell = cx.family.ell();
    std::vector<ZFamilyItem> out;
    for (int k = 1; k <= ell; ++k) {
        ZFamilyItem item;
        item.k = k;
        item.eps = Rat(1, m);
        const auto& kpos = cx.block_pos[k];
        // Gamma_k and Z_{k,Gamma} = {x : x^(k) in Gamma_k}
        if (is_zero_vec(p.blocks[k])) {
            item.cap = cone_origin(cx.N);
            std::vector<QVec> C;
            QVec d;
            for (int pos : kpos) {
                QVec e = zero_vec(cx.N);
                e[pos] = 1;
                C.push_back(std::move(e));
                d.push_back(Rat(0));
            }
            item.z_gamma = canonicalized(poly_from_rows(cx.N, {}, {}, C, d));
        } else {
            QVec pairing = zero_vec(cx.N);
            for (size_t t = 0; t < kpos.size(); ++t) pairing[kpos[t]] = p.blocks[k][t];
            // Gamma_k = {v : <v, xi^(k)> >= (1/m) |v|_1}, a proper cone widening
            // toward the supporting half-space as m grows
            std::vector<QVec> ineqs;
            for (const auto& s : sign_patterns(kpos.size())) {
                QVec row = pairing;
                for (size_t t = 0; t < kpos.size(); ++t) row[kpos[t]] -= Rat(s[t], m);
                ineqs.push_back(std::move(row));
            }
            item.z_gamma = poly_from_cone(canonicalized(cone_from_h(cx.N, ineqs, {})));
            std::vector<QVec> pins;
            for (int pos = 0; pos < cx.N; ++pos) {
                if (std::find(kpos.begin(), kpos.end(), pos) != kpos.end()) continue;
                QVec e = zero_vec(cx.N);
                e[pos] = 1;
                pins.push_back(std::move(e));
            }
            item.cap = canonicalized(cone_from_h(cx.N, std::move(ineqs), std::move(pins)));
        }
        // Z_{k,eps} = {eps |x^(k)|_1 <= sum_{j<k} |x^(j)|_1}, absent when J_{<k} is empty
        std::vector<int> lowpos;
        for (int j : cx.derived.prec[k])
            for (int pos : cx.block_pos[j]) lowpos.push_back(pos);
        item.z_eps.dim = cx.N;
        if (!lowpos.empty()) {
            auto kpat = sign_patterns(kpos.size());
            auto lpat = sign_patterns(lowpos.size());
            for (const auto& sk : kpat)
                for (const auto& sl : lpat) {
                    std::vector<QVec> A;
                    QVec b;
                    for (size_t t = 0; t < kpos.size(); ++t) {
                        QVec e = zero_vec(cx.N);
                        e[kpos[t]] = sk[t];
                        A.push_back(std::move(e));
                        b.push_back(Rat(0));
                    }
                    for (size_t t = 0; t < lowpos.size(); ++t) {
                        QVec e = zero_vec(cx.N);
                        e[lowpos[t]] = sl[t];
                        A.push_back(std::move(e));
                        b.push_back(Rat(0));
                    }
                    // sum_j sl·x^(j) - eps * sk·x^(k) >= 0
                    QVec row = zero_vec(cx.N);
                    for (size_t t = 0; t < lowpos.size(); ++t) row[lowpos[t]] += Rat(sl[t]);
                    for (size_t t = 0; t < kpos.size(); ++t)
                        row[kpos[t]] -= Rat(sk[t]) * item.eps;
                    A.push_back(std::move(row));
                    b.push_back(Rat(0));
                    Polyhedron piece = poly_from_rows(cx.N, A, b);
                    if (!poly_is_empty(piece)) item.z_eps.members.push_back(std::move(piece));
                }
            canonicalize(item.z_eps);
        }
        std::vector<Polyhedron> members = {item.z_gamma};
        for (const auto& e : item.z_eps.members) members.push_back(e);
        item.Zk = polyset_of(std::move(members), cx.N);
        out.push_back(std::move(item));
    }
    return out;
}

namespace {

// Scheme scaling exactly the I_k coordinates (the one-parameter restriction
// to chi_{{k}}).
MonomialScheme restriction_scheme(const StalkContext& cx, int k) {
    MonomialScheme s;
    s.ell = 1;
    s.dim = cx.N;
    s.exponents.assign(cx.N, {0});
    const auto& Ik = cx.family.members[k - 1];
    for (int pos = 0; pos < cx.N; ++pos)
        if (Ik.count(cx.ncoords[pos])) s.exponents[pos] = {1};
    return s;
}

// C_{M_k}(W)_q ⊆ p_k^# ∪ {0} for a conic polyhedral W given in N-coords.
bool normal_cone_inside_sharp(const StalkContext& cx, const CovectorPoint& p, const PolySet& W,
                              int k, const Guards& guards) {
    MonomialScheme s = restriction_scheme(cx, k);
    Guards g = guards;
    g.max_dim = std::max(g.max_dim, cx.N);
    DescribeResult dr = mnc_describe(s, W, g);
    // fiber at q = 0: base coordinates (outside I_k) pinned to zero
    const auto& Ik = cx.family.members[k - 1];
    std::vector<QVec> C;
    QVec d;
    for (int pos = 0; pos < cx.N; ++pos) {
        if (Ik.count(cx.ncoords[pos])) continue;
        QVec e = zero_vec(cx.N);
        e[pos] = 1;
        C.push_back(std::move(e));
        d.push_back(Rat(0));
    }
    // complement of p_k^#: lower blocks of I_k vanish and the pairing is <= 0
    for (int j : cx.derived.prec[k])
        for (int pos : cx.block_pos[j]) {
            QVec e = zero_vec(cx.N);
            e[pos] = 1;
            C.push_back(std::move(e));
            d.push_back(Rat(0));
        }
    QVec pairing = zero_vec(cx.N);
    for (size_t t = 0; t < cx.block_pos[k].size(); ++t)
        pairing[cx.block_pos[k][t]] = p.blocks[k][t];
    Polyhedron bad = poly_from_rows(cx.N, {neg(pairing)}, {Rat(0)}, C, d);
    PolySet hit = polyset_intersect_poly(dr.cone, bad);
    for (const auto& membr : hit.members) {
        if (poly_dim(membr) > 0) return false;
        // dimension 0: the only point of a cone is the origin
    }
    return true;
}

}  // namespace

bool check_normal_condition(const StalkContext& cx, const CovectorPoint& p, const PolySet& Zk,
                            int k, const Guards& guards) {
    check_covector(cx, p);
    if (k < 1 || k > cx.family.ell()) throw InputError("check_normal_condition: k out of range");
    if (Zk.dim != cx.N) throw InputError("check_normal_condition: dimension mismatch");
    if (polyset_is_empty(Zk)) return true;
    return normal_cone_inside_sharp(cx, p, Zk, k, guards);
}

WedgeCertificate enclose(const StalkContext& cx, const CovectorPoint& p,
                         const std::vector<ZFamilyItem>& zfam, const Guards& guards) {
    check_covector(cx, p);
    int ell = cx.family.ell();
    if ((int)zfam.size() != ell) throw InputError("enclose: one Z item per member required");

    // V_k apertures are searched jointly over (aperture, delta).
    for (int s = 2; s <= 64; s *= 2) {
        for (Rat delta = Rat(1); delta >= Rat(1, 1 << 16); delta /= 2) {
            std::vector<Cone> V_parts;
            std::vector<Cone> T_parts;
            bool degenerate = false;
            for (int k = 1; k <= ell; ++k) {
                if (is_zero_vec(p.blocks[k])) {
                    V_parts.push_back(cone_full(cx.N));
                    T_parts.push_back(cone_full(cx.N));
                    continue;
                }
                const auto& kpos = cx.block_pos[k];
                QVec pairing = zero_vec(cx.N);
                for (size_t t = 0; t < kpos.size(); ++t) pairing[kpos[t]] = p.blocks[k][t];
                Rat psq = dot(pairing, pairing);
                std::vector<QVec> ineqs;
                // T_k: aperture cone around xi^(k) on the k-block (no other pins)
                for (size_t t = 0; t < kpos.size(); ++t) {
                    QVec r1 = scale(pairing, p.blocks[k][t] + Rat(1, s));
                    r1[kpos[t]] -= psq;
                    QVec r2 = scale(pairing, -(p.blocks[k][t] - Rat(1, s)));
                    r2[kpos[t]] += psq;
                    ineqs.push_back(std::move(r1));
                    ineqs.push_back(std::move(r2));
                }
                T_parts.push_back(canonicalized(cone_from_h(cx.N, ineqs, {})));
                // delta <x^(k), xi^(k)> >= sum_{j>k} |x^(j)|_1
                std::vector<int> hipos;
                for (int j : cx.derived.succ[k])
                    for (int pos : cx.block_pos[j]) hipos.push_back(pos);
                for (const auto& sh : sign_patterns(hipos.size())) {
                    QVec row = scale(pairing, delta);
                    for (size_t t = 0; t < hipos.size(); ++t) row[hipos[t]] -= Rat(sh[t]);
                    ineqs.push_back(std::move(row));
                }
                Cone vk = canonicalized(cone_from_h(cx.N, std::move(ineqs), {}));
                if (cone_dim(vk) == 0) degenerate = true;
                V_parts.push_back(std::move(vk));
            }
            if (degenerate) continue;

            Cone V = V_parts[0];
            for (int k = 1; k < ell; ++k) V = intersect(V, V_parts[k]);
            Cone Vpolar = polar(V);
            std::vector<Cone> gparts;
            for (const auto& vk : V_parts) gparts.push_back(polar(vk));
            Cone G = mink_sum(gparts);
            // the proof needs V° = sum of the V_k° and each summand inside gamma_k
            if (!cone_equal(Vpolar, G)) continue;
            bool parts_ok = true;
            for (int k = 1; k <= ell; ++k) {
                if (is_zero_vec(p.blocks[k])) continue;
                GammaCone gk = gamma(cx, k, p);
                if (!gamma_contains_punctured(gk, gparts[k - 1])) parts_ok = false;
            }
            if (!parts_ok) continue;

            // K_sigma ⊆ V° for every admissible sigma
            WedgeCertificate cert;
            cert.T = T_parts;
            cert.delta = delta;
            cert.V = V;
            cert.G = G;
            bool all_ok = true;
            int npat = 1 << ell;
            for (int mask = 0; mask < npat; ++mask) {
                std::string pattern;
                bool admissible = true;
                for (int k = 1; k <= ell; ++k) {
                    bool use_eps = (mask >> (k - 1)) & 1;
                    if (use_eps && zfam[k - 1].z_eps.members.empty()) admissible = false;
                    pattern += use_eps ? 'e' : 'G';
                }
                if (!admissible) continue;
                PolySet K;
                K.dim = cx.N;
                K.members.push_back(poly_full(cx.N));
                for (int k = 1; k <= ell; ++k) {
                    bool use_eps = (mask >> (k - 1)) & 1;
                    PolySet part;
                    part.dim = cx.N;
                    if (use_eps)
                        part = zfam[k - 1].z_eps;
                    else
                        part.members.push_back(zfam[k - 1].z_gamma);
                    K = polyset_intersect(K, part);
                }
                bool ok = true;
                for (const auto& membr : K.members) {
                    if (!poly_is_conic(membr)) { ok = false; break; }
                    if (!cone_subset(cone_of_poly(membr), Vpolar)) { ok = false; break; }
                }
                cert.table.emplace_back(pattern, ok);
                if (!ok) all_ok = false;
            }
            if (all_ok) {
                cert.ok = true;
                return cert;
            }
        }
    }
    throw InternalConsistencyError("enclose: no (aperture, delta) pair verified all sigma");
}

bool check_g_condition(const StalkContext& cx, const CovectorPoint& p, const Cone& G,
                       const Guards& guards) {
    check_covector(cx, p);
    if (G.dim != cx.N) throw InputError("check_g_condition: dimension mismatch");
    PolySet W = polyset_of({poly_from_cone(G)}, cx.N);
    for (int k = 1; k <= cx.family.ell(); ++k)
        if (!normal_cone_inside_sharp(cx, p, W, k, guards)) return false;
    return true;
}

MultiCone multicone(const StalkContext& cx, const CovectorPoint& p, int m) {
    check_covector(cx, p);
    if (m < 1) throw InputError("multicone: m must be positive");
    MultiCone mc;
    std::vector<Polyhedron> pieces = {poly_full(cx.N)};
    for (int k = 1; k <= cx.family.ell(); ++k) {
        if (is_zero_vec(p.blocks[k])) continue;
        const auto& kpos = cx.block_pos[k];
        QVec pairing = zero_vec(cx.N);
        for (size_t t = 0; t < kpos.size(); ++t) pairing[kpos[t]] = p.blocks[k][t];
        Rat psq = dot(pairing, pairing);
        mc.strict_rows.push_back(pairing);
        std::vector<int> lowpos;
        for (int j : cx.derived.prec[k])
            for (int pos : cx.block_pos[j]) lowpos.push_back(pos);
        // |x^(k) psq - <x,xi> xi|_1 /psq + sum_{j<k} |x^(j)|_1 <= (1/m)<x,xi>/psq
        // realized piecewise over sign patterns of the within-block residual
        // and the lower blocks
        std::vector<Polyhedron> expansion;
        auto kpat = sign_patterns(kpos.size());
        auto lpat = sign_patterns(lowpos.size());
        for (const auto& sk : kpat)
            for (const auto& sl : lpat) {
                std::vector<QVec> A;
                QVec b;
                A.push_back(pairing);
                b.push_back(Rat(0));
                // residual orthant rows: sk_t (psq x_t - <x,xi> xi_t) >= 0
                for (size_t t = 0; t < kpos.size(); ++t) {
                    QVec e = scale(pairing, -p.blocks[k][t]);
                    e[kpos[t]] += psq;
                    A.push_back(scale(e, Rat(sk[t])));
                    b.push_back(Rat(0));
                }
                for (size_t t = 0; t < lowpos.size(); ++t) {
                    QVec e = zero_vec(cx.N);
                    e[lowpos[t]] = sl[t];
                    A.push_back(std::move(e));
                    b.push_back(Rat(0));
                }
                // main row: (1/m)<x,xi> - sum_t sk_t(psq x_t - <x,xi> xi_t)/psq
                //            - sum_j sl |x^(j)| >= 0, scaled by psq
                QVec row = scale(pairing, Rat(1, m));
                for (size_t t = 0; t < kpos.size(); ++t) {
                    QVec e = scale(pairing, -p.blocks[k][t]);
                    e[kpos[t]] += psq;
                    row = sub(row, scale(e, Rat(sk[t]) / psq));
                }
                for (size_t t = 0; t < lowpos.size(); ++t) row[lowpos[t]] -= Rat(sl[t]);
                A.push_back(std::move(row));
                b.push_back(Rat(0));
                Polyhedron piece = poly_from_rows(cx.N, A, b);
                if (!poly_is_empty(piece)) expansion.push_back(std::move(piece));
            }
        // intersect the accumulated pieces with this block's expansion
        std::vector<Polyhedron> next;
        for (const auto& acc : pieces)
            for (const auto& e : expansion) {
                Polyhedron cap = intersect(acc, e);
                if (!cap.empty_flag) next.push_back(std::move(cap));
            }
        pieces = std::move(next);
    }
    mc.closed = polyset_of(std::move(pieces), cx.N);
    return mc;
}

bool multicone_member(const MultiCone& mc, const QVec& x) {
    if (!polyset_member(mc.closed, x)) return false;
    for (const auto& row : mc.strict_rows)
        if (dot(row, x) <= 0) return false;
    return true;
}

MixedLadder mixed_ladder(const StalkContext& cx, const std::set<int>& I, const std::set<int>& J,
                         const CovectorPoint& p, int m) {
    check_covector(cx, p);
    int ell = cx.family.ell();
    std::set<int> merged = I;
    merged.insert(J.begin(), J.end());
    std::set<int> full;
    for (int j = 1; j <= ell; ++j) full.insert(j);
    if (merged != full || (int)(I.size() + J.size()) != ell)
        throw InputError("mixed_ladder: I, J must partition {1..ell}");
    CovectorPoint dir = p;
    for (int j : J) dir.blocks[j] = QVec(dir.blocks[j].size(), Rat(0));
    MultiCone w = multicone(cx, dir, m);
    MixedLadder out;
    out.g = g_ladder(cx, p, m);
    out.W = polyset_intersect_poly(w.closed, out.g.U);
    return out;
}

XiG xi_G(const StalkContext& cx, const CovectorPoint& p, const std::vector<Cone>& parts,
         long sigma_bound) {
    check_covector(cx, p);
    int ell = cx.family.ell();
    XiG out;
    out.exponents.resize(ell);
    bool any = false;
    for (int k = 1; k <= ell; ++k) {
        out.exponents[k - 1] = (int)cx.derived.succ[k].size();
        if (!is_zero_vec(p.blocks[k])) any = true;
    }
    if (!any) throw InputError("xi_G: every block of p is zero");
    Cone G = mink_sum(parts);
    for (long sigma = 1; sigma <= sigma_bound; sigma *= 2) {
        QVec xi = zero_vec(cx.N);
        for (int k = 1; k <= ell; ++k) {
            Rat f = 1;
            for (int e = 0; e < out.exponents[k - 1]; ++e) f *= sigma;
            for (size_t t = 0; t < cx.block_pos[k].size(); ++t)
                xi[cx.block_pos[k][t]] = f * p.blocks[k][t];
        }
        if (is_zero_vec(xi)) break;
        if (is_proper_wrt(G, xi)) {
            out.xi = xi;
            out.sigma = sigma;
            return out;
        }
    }
    throw InputError("xi_G: no sigma below the bound makes the sum proper");
}

JstarL L_and_Jstar(const StalkContext& cx, const CovectorPoint& p) {
    check_covector(cx, p);
    int ell = cx.family.ell();
    JstarL out;
    for (int j = 1; j <= ell; ++j) {
        bool all_zero = is_zero_vec(p.blocks[j]);
        for (int a : cx.derived.prec[j])
            if (!is_zero_vec(p.blocks[a])) all_zero = false;
        if (all_zero) out.jstar.insert(j);
    }
    std::vector<QVec> eqs;
    for (int j : out.jstar)
        for (int pos : cx.block_pos[j]) {
            QVec e = zero_vec(cx.N);
            e[pos] = 1;
            eqs.push_back(std::move(e));
        }
    out.L = canonicalized(cone_from_h(cx.N, {}, std::move(eqs)));
    ConeLadder lad = g_ladder(cx, p, 2);
    out.lemma_ok = cone_subset(lad.G, out.L) && cone_dim(lad.G) == cone_dim(out.L);
    return out;
}

}  // namespace mnc
