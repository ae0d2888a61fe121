#include "mnc/vanishing_degrees.hpp"

#include "mnc/errors.hpp"

#include <algorithm>

namespace mnc {
namespace {

std::set<int> union_of_members(const IndexFamily& f) {
    std::set<int> I;
    for (const auto& m : f.members) I.insert(m.begin(), m.end());
    return I;
}

std::set<int> j_star(const IndexFamily& f, const DerivedIndices& d, const CovectorPoint& p) {
    std::set<int> out;
    for (int j = 1; j <= f.ell(); ++j) {
        bool vanish = is_zero_vec(p.blocks[j]);
        for (int a : d.prec[j])
            if (!is_zero_vec(p.blocks[a])) vanish = false;
        if (vanish) out.insert(j);
    }
    return out;
}

void check_blocks(const IndexFamily& f, const DerivedIndices& d, const CovectorPoint& p) {
    if ((int)p.blocks.size() != f.ell() + 1)
        throw InputError("degree: covector block count mismatch");
    for (int j = 1; j <= f.ell(); ++j)
        if (p.blocks[j].size() != d.hatI[j].size())
            throw InputError("degree: covector block size mismatch");
}

}  // namespace

DegreeReport degree_general(const IndexFamily& family, const RealComplexSplit& split,
                            const CovectorPoint& p) {
    DerivedIndices d = derive(family);
    check_blocks(family, d, p);
    std::set<int> I = union_of_members(family);
    std::set<int> both;
    std::set_union(split.I_R.begin(), split.I_R.end(), split.I_C.begin(), split.I_C.end(),
                   std::inserter(both, both.begin()));
    if (both != I || split.I_R.size() + split.I_C.size() != both.size())
        throw InputError("degree_general: split must partition the union of the members");

    DegreeReport rep;
    rep.J_star = j_star(family, d, p);
    for (int j : rep.J_star) rep.I_star.insert(d.hatI[j].begin(), d.hatI[j].end());
    int in_c = 0;
    for (int i : rep.I_star)
        if (split.I_C.count(i)) ++in_c;
    rep.degree = (int)I.size() + in_c;
    if (split.I_C.empty())
        rep.mode = DegreeMode::REAL;
    else if (split.I_R.empty())
        rep.mode = DegreeMode::COMPLEX;
    else
        rep.mode = DegreeMode::REAL_COMPLEX;
    return rep;
}

DegreeReport degree_complex(const IndexFamily& family, const CovectorPoint& p) {
    DerivedIndices d = derive(family);
    check_blocks(family, d, p);
    std::set<int> I = union_of_members(family);

    DegreeReport rep;
    rep.mode = DegreeMode::COMPLEX;
    rep.J_star = j_star(family, d, p);
    for (int j : rep.J_star) rep.I_star.insert(d.hatI[j].begin(), d.hatI[j].end());
    // minimal elements under k < j iff Z_k strictly inside Z_j iff I_k ⊋ I_j
    for (int j : rep.J_star) {
        bool minimal = true;
        for (int k : rep.J_star) {
            if (k == j) continue;
            const auto &A = family.members[k - 1], &B = family.members[j - 1];
            if (A != B && std::includes(A.begin(), A.end(), B.begin(), B.end())) minimal = false;
        }
        if (minimal) rep.hatJ_star.insert(j);
    }
    int total = (int)I.size();
    for (int j : rep.hatJ_star) total += (int)family.members[j - 1].size();
    rep.degree = total;

    RealComplexSplit all_c;
    all_c.I_C = I;
    DegreeReport general = degree_general(family, all_c, p);
    if (general.degree != rep.degree)
        throw InternalConsistencyError(
            "degree_complex: minimal-element formula disagrees with the general one");
    return rep;
}

}  // namespace mnc
