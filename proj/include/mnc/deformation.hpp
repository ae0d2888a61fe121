#pragma once

#include "mnc/index_family.hpp"
#include "mnc/rational.hpp"

#include <vector>

namespace mnc {

// Per-coordinate scaling exponents: coordinate i transforms as
// (prod_j t_j^{exponents[i][j]}) * x_i. Covers both the base deformation
// and the cotangent one (2n coordinates).
struct MonomialScheme {
    int ell = 0;
    int dim = 0;
    std::vector<std::vector<int>> exponents;
};

// Point of the zero-section written in blocks x^(0), x^(1), ..., x^(ell).
struct BlockPoint {
    std::vector<QVec> blocks;
};

// Point of T*S_chi: base blocks x^(j) and fiber blocks xi^(j), j = 0..ell.
struct CotangentPoint {
    std::vector<QVec> base;
    std::vector<QVec> fiber;
};

enum class PairingClass { P_PRIME, P_PLUS };

MonomialScheme scheme_from_family(const IndexFamily& family, const DerivedIndices& derived);

// 2n coordinates (x_1..x_n, xi_1..xi_n): base coordinate i in hatI_j scales
// by t_{hatJ_j}, the dual fiber coordinate by t_{hatJc_j}; fiber coordinates
// over the complement block carry t_1...t_ell.
MonomialScheme scheme_for_dual(const IndexFamily& family, const DerivedIndices& derived);

QVec apply_scheme(const MonomialScheme& scheme, const QVec& x, const QVec& t);

// Flat coordinate order <-> family blocks (block 0 first, then 1..ell,
// each in increasing coordinate order).
BlockPoint blocks_of_flat(const IndexFamily& family, const DerivedIndices& derived, const QVec& x);
QVec flat_of_blocks(const IndexFamily& family, const DerivedIndices& derived, const BlockPoint& p);

// Coordinate swap induced by the Hamiltonian isomorphism on the J-blocks:
// (x^(j); xi^(j)) -> (xi^(j); -x^(j)) for j in J.
CotangentPoint hamiltonian_relabel(const IndexFamily& family, const DerivedIndices& derived,
                                   const std::set<int>& I, const std::set<int>& J,
                                   const CotangentPoint& point);

PairingClass pairing_class(const std::vector<QVec>& eta, const std::vector<QVec>& xi);

}  // namespace mnc
