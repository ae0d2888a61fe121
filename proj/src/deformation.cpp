#include "mnc/deformation.hpp"

#include "mnc/errors.hpp"

namespace mnc {

MonomialScheme scheme_from_family(const IndexFamily& family, const DerivedIndices& derived) {
    MonomialScheme s;
    s.ell = family.ell();
    s.dim = family.n;
    s.exponents.assign(s.dim, std::vector<int>(s.ell, 0));
    for (int i = 1; i <= family.n; ++i) {
        int j = derived.block_of[i];
        if (j == 0) continue;
        for (int k : derived.hatJ[j]) s.exponents[i - 1][k - 1] = 1;
    }
    return s;
}

MonomialScheme scheme_for_dual(const IndexFamily& family, const DerivedIndices& derived) {
    MonomialScheme s;
    s.ell = family.ell();
    s.dim = 2 * family.n;
    s.exponents.assign(s.dim, std::vector<int>(s.ell, 0));
    for (int i = 1; i <= family.n; ++i) {
        int j = derived.block_of[i];
        if (j != 0)
            for (int k : derived.hatJ[j]) s.exponents[i - 1][k - 1] = 1;
        for (int k : derived.hatJc[j]) s.exponents[family.n + i - 1][k - 1] = 1;
    }
    return s;
}

QVec apply_scheme(const MonomialScheme& scheme, const QVec& x, const QVec& t) {
    if ((int)x.size() != scheme.dim) throw InputError("apply_scheme: point dimension mismatch");
    if ((int)t.size() != scheme.ell) throw InputError("apply_scheme: parameter count mismatch");
    for (const auto& tj : t)
        if (tj <= 0) throw InputError("apply_scheme: parameters must be positive");
    QVec y(x.size());
    for (int i = 0; i < scheme.dim; ++i) {
        Rat m = 1;
        for (int j = 0; j < scheme.ell; ++j)
            for (int e = 0; e < scheme.exponents[i][j]; ++e) m *= t[j];
        y[i] = x[i] * m;
    }
    return y;
}

BlockPoint blocks_of_flat(const IndexFamily& family, const DerivedIndices& derived, const QVec& x) {
    if ((int)x.size() != family.n) throw InputError("blocks_of_flat: dimension mismatch");
    BlockPoint p;
    p.blocks.resize(family.ell() + 1);
    for (int j = 0; j <= family.ell(); ++j)
        for (int i : derived.hatI[j]) p.blocks[j].push_back(x[i - 1]);
    return p;
}

QVec flat_of_blocks(const IndexFamily& family, const DerivedIndices& derived, const BlockPoint& p) {
    if ((int)p.blocks.size() != family.ell() + 1)
        throw InputError("flat_of_blocks: block count mismatch");
    QVec x(family.n, Rat(0));
    for (int j = 0; j <= family.ell(); ++j) {
        if (p.blocks[j].size() != derived.hatI[j].size())
            throw InputError("flat_of_blocks: block size mismatch");
        size_t pos = 0;
        for (int i : derived.hatI[j]) x[i - 1] = p.blocks[j][pos++];
    }
    return x;
}

CotangentPoint hamiltonian_relabel(const IndexFamily& family, const DerivedIndices& derived,
                                   const std::set<int>& I, const std::set<int>& J,
                                   const CotangentPoint& point) {
    int ell = family.ell();
    std::set<int> merged = I;
    merged.insert(J.begin(), J.end());
    std::set<int> full;
    for (int j = 1; j <= ell; ++j) full.insert(j);
    if (merged != full || (int)(I.size() + J.size()) != ell)
        throw InputError("hamiltonian_relabel: I, J must partition {1..ell}");
    if ((int)point.base.size() != ell + 1 || (int)point.fiber.size() != ell + 1)
        throw InputError("hamiltonian_relabel: block count mismatch");
    for (int j = 0; j <= ell; ++j)
        if (point.base[j].size() != derived.hatI[j].size() ||
            point.fiber[j].size() != derived.hatI[j].size())
            throw InputError("hamiltonian_relabel: block size mismatch");
    CotangentPoint out = point;
    for (int j : J) {
        out.base[j] = point.fiber[j];
        out.fiber[j] = neg(point.base[j]);
    }
    return out;
}

PairingClass pairing_class(const std::vector<QVec>& eta, const std::vector<QVec>& xi) {
    if (eta.size() != xi.size()) throw InputError("pairing_class: block count mismatch");
    for (size_t i = 0; i < eta.size(); ++i) {
        if (eta[i].size() != xi[i].size()) throw InputError("pairing_class: block size mismatch");
        if (dot(eta[i], xi[i]) > 0) return PairingClass::P_PLUS;
    }
    return PairingClass::P_PRIME;
}

}  // namespace mnc
