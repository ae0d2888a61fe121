#include "mnc/index_family.hpp"

#include "mnc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mnc {
namespace {

bool subset_of(const std::set<int>& a, const std::set<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::set<int>& a, const std::set<int>& b) {
    for (int x : a)
        if (b.count(x)) return false;
    return true;
}

std::string set_str(const std::set<int>& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int x : s) {
        if (!first) os << ",";
        os << x;
        first = false;
    }
    os << "}";
    return os.str();
}

void check_well_formed(const IndexFamily& f) {
    if (f.n <= 0) throw InputError("index family: ambient dimension must be positive");
    if (f.members.empty()) throw InputError("index family: at least one member required");
    for (size_t j = 0; j < f.members.size(); ++j) {
        if (f.members[j].empty())
            throw InputError("index family: member " + std::to_string(j + 1) + " is empty");
        for (int i : f.members[j])
            if (i < 1 || i > f.n)
                throw InputError("index family: index " + std::to_string(i) +
                                 " out of range in member " + std::to_string(j + 1));
    }
}

}  // namespace

ValidationReport validate(const IndexFamily& f) {
    check_well_formed(f);
    ValidationReport rep;
    int ell = f.ell();

    // H1 at index level: pairwise distinct. (Connectedness of the M_j is
    // automatic for coordinate subspaces and not checked here.)
    for (int j = 0; j < ell; ++j)
        for (int k = j + 1; k < ell; ++k)
            if (f.members[j] == f.members[k])
                rep.violations.push_back({"H1", j + 1, k + 1,
                                          "members " + std::to_string(j + 1) + " and " +
                                              std::to_string(k + 1) + " coincide"});

    // H2: any two members nested or disjoint.
    for (int j = 0; j < ell; ++j)
        for (int k = j + 1; k < ell; ++k) {
            const auto &A = f.members[j], &B = f.members[k];
            if (!subset_of(A, B) && !subset_of(B, A) && !disjoint(A, B))
                rep.violations.push_back({"H2", j + 1, k + 1,
                                          set_str(A) + " and " + set_str(B) +
                                              " are neither nested nor disjoint"});
        }

    // H3: the union of proper subsets of I_j never exhausts I_j.
    for (int j = 0; j < ell; ++j) {
        std::set<int> covered;
        for (int k = 0; k < ell; ++k) {
            if (k == j) continue;
            const auto &A = f.members[k], &B = f.members[j];
            if (A != B && subset_of(A, B)) covered.insert(A.begin(), A.end());
        }
        if (covered == f.members[j])
            rep.violations.push_back({"H3", j + 1, 0,
                                      "member " + std::to_string(j + 1) +
                                          " equals the union of its proper sub-members"});
    }

    rep.ok = rep.violations.empty();
    return rep;
}

DerivedIndices derive(const IndexFamily& f) {
    ValidationReport rep = validate(f);
    if (!rep.ok) {
        std::string msg = "derive: family violates";
        for (const auto& v : rep.violations) msg += " " + v.condition;
        throw InputError(msg);
    }
    int ell = f.ell();
    DerivedIndices d;
    d.hatI.assign(ell + 1, {});
    d.J.assign(f.n + 1, {});
    d.hatJ.assign(ell + 1, {});
    d.hatJc.assign(ell + 1, {});
    d.prec.assign(ell + 1, {});
    d.succ.assign(ell + 1, {});
    d.incomp.assign(ell + 1, {});
    d.block_of.assign(f.n + 1, 0);

    std::set<int> all;
    for (int j = 1; j <= ell; ++j) all.insert(f.members[j - 1].begin(), f.members[j - 1].end());
    for (int i = 1; i <= f.n; ++i)
        if (!all.count(i)) d.hatI[0].insert(i);
    d.I0 = d.hatI[0];

    for (int j = 1; j <= ell; ++j) {
        std::set<int> hat = f.members[j - 1];
        for (int k = 1; k <= ell; ++k) {
            if (k == j) continue;
            const auto &A = f.members[k - 1], &B = f.members[j - 1];
            if (A != B && subset_of(A, B))
                for (int i : A) hat.erase(i);
        }
        d.hatI[j] = hat;
        for (int i : hat) d.block_of[i] = j;
    }

    for (int i = 1; i <= f.n; ++i)
        for (int j = 1; j <= ell; ++j)
            if (f.members[j - 1].count(i)) d.J[i].insert(j);

    std::set<int> full;
    for (int j = 1; j <= ell; ++j) full.insert(j);
    for (int j = 1; j <= ell; ++j) {
        for (int k = 1; k <= ell; ++k)
            if (subset_of(f.members[j - 1], f.members[k - 1])) d.hatJ[j].insert(k);
        std::set_difference(full.begin(), full.end(), d.hatJ[j].begin(), d.hatJ[j].end(),
                            std::inserter(d.hatJc[j], d.hatJc[j].begin()));
    }
    d.hatJ[0] = {};
    d.hatJc[0] = full;

    for (int k = 1; k <= ell; ++k)
        for (int j = 1; j <= ell; ++j) {
            if (j == k) continue;
            const auto &A = f.members[j - 1], &B = f.members[k - 1];
            if (A != B && subset_of(A, B))
                d.prec[k].insert(j);
            else if (A != B && subset_of(B, A))
                d.succ[k].insert(j);
            else if (disjoint(A, B))
                d.incomp[k].insert(j);
        }
    return d;
}

IndexFamily restrict(const IndexFamily& f, const std::set<int>& K) {
    check_well_formed(f);
    if (K.empty()) throw InputError("restrict: K must be nonempty");
    for (int j : K)
        if (j < 1 || j > f.ell())
            throw InputError("restrict: member index " + std::to_string(j) + " out of range");
    IndexFamily out;
    out.n = f.n;
    for (int j : K) out.members.push_back(f.members[j - 1]);
    return out;
}

}  // namespace mnc
