#pragma once

#include <set>
#include <string>
#include <vector>

namespace mnc {

// A family of coordinate subspaces M_j = {x_i = 0 : i in I_j} of R^n,
// given by its index sets. Indices are 1-based.
struct IndexFamily {
    int n = 0;
    std::vector<std::set<int>> members;

    int ell() const { return (int)members.size(); }
};

struct Violation {
    std::string condition;  // "H1", "H2", "H3"
    int j = 0, k = 0;       // offending member indices (1-based; k = 0 if unary)
    std::string reason;
};

struct ValidationReport {
    bool ok = false;
    std::vector<Violation> violations;
};

// Every index-set quantity derived from a valid family.
struct DerivedIndices {
    std::vector<std::set<int>> hatI;   // hatI[j], j = 0..ell (0 = complement block)
    std::set<int> I0;                  // alias of hatI[0]
    std::vector<std::set<int>> J;      // J[i] for coordinates i = 1..n (index 0 unused)
    std::vector<std::set<int>> hatJ;   // hatJ[j], j = 0..ell
    std::vector<std::set<int>> hatJc;  // complements in {1..ell}
    std::vector<std::set<int>> prec;   // J_{<k},  k = 1..ell (index 0 unused)
    std::vector<std::set<int>> succ;   // J_{>k}
    std::vector<std::set<int>> incomp; // J_{||k}
    // block_of[i] = j with i in hatI[j], for i = 1..n
    std::vector<int> block_of;
};

ValidationReport validate(const IndexFamily& family);

// Precondition: validate(family).ok. Throws InputError otherwise.
DerivedIndices derive(const IndexFamily& family);

// Subfamily {I_j : j in K}. K is 1-based and nonempty.
IndexFamily restrict(const IndexFamily& family, const std::set<int>& K);

}  // namespace mnc
