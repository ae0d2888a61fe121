#pragma once

#include "mnc/deformation.hpp"
#include "mnc/index_family.hpp"
#include "mnc/multinormal.hpp"

#include <set>
#include <string>
#include <vector>

namespace mnc {

// Covector at the origin of M: fiber blocks xi^(1), ..., xi^(ell).
// blocks[0] is unused and must be empty.
struct CovectorPoint {
    std::vector<QVec> blocks;
};

// Working coordinates of the N factor (the union of the hatI blocks);
// the base block hatI_0 is dropped since q is fixed at the origin.
struct StalkContext {
    IndexFamily family;
    DerivedIndices derived;
    std::vector<int> ncoords;                 // ambient 1-based coords, sorted
    int N = 0;                               // = ncoords.size()
    std::vector<std::vector<int>> block_pos;  // per block k: 0-based positions in N-coords
};

StalkContext make_context(const IndexFamily& family);
void check_covector(const StalkContext& cx, const CovectorPoint& p);

// gamma_k: lower and incomparable blocks pinned to zero, higher blocks free,
// the k-block paired strictly positively with xi^(k). Stored as the closed
// hull plus the strict pairing row.
struct GammaCone {
    bool empty = false;     // xi^(k) = 0
    Cone closure;           // N-dim
    QVec strict_row;        // pairing row; members need strict_row·x > 0
};

GammaCone gamma(const StalkContext& cx, int k, const CovectorPoint& p);
bool gamma_member(const GammaCone& g, const QVec& x);
// C \ {0} inside gamma: closed containment plus strictness on every ray.
bool gamma_contains_punctured(const GammaCone& g, const Cone& c);

// p_k^# = (T_{M_k}X)_q minus tau_k(p_k^{oa}); queries are answered exactly
// on the I_k-coordinate fiber.
struct SharpSet {
    int k = 0;
    std::vector<int> icoords;      // ambient coords of I_k, sorted
    std::vector<int> low_positions;  // positions (into icoords) of blocks j < k
    QVec pairing;                   // xi^(k) pairing row over icoords
};

SharpSet sharp(const StalkContext& cx, int k, const CovectorPoint& p);
bool sharp_member(const SharpSet& s, const QVec& eta);  // eta over icoords

struct ConeLadder {
    int m = 1;
    Polyhedron U;             // closed hull of the open ball, radius 2^-m
    std::vector<Cone> parts;  // G_{k,m}, N-dim
    Cone G;                   // Minkowski sum
};

ConeLadder g_ladder(const StalkContext& cx, const CovectorPoint& p, int m);

struct ZFamilyItem {
    int k = 0;
    Cone cap;             // Gamma_k as an N-dim cone supported on the k-block
    Rat eps;              // 1/m
    Polyhedron z_gamma;   // {x : x^(k) in Gamma_k}
    PolySet z_eps;        // eps-wedge pieces; empty when J_{<k} is empty
    PolySet Zk;           // the union
};

std::vector<ZFamilyItem> make_z_family(const StalkContext& cx, const CovectorPoint& p, int m);

// C_{M_k}(Z_k)_q inside p_k^# únion {0}, decided through the one-parameter
// restriction scheme.
bool check_normal_condition(const StalkContext& cx, const CovectorPoint& p, const PolySet& Zk,
                            int k, const Guards& guards = {});

struct WedgeCertificate {
    std::vector<Cone> T;     // aperture cones per k (k-block rows; full space if xi^(k)=0)
    Rat delta;
    Cone V;                  // intersection of the V_k
    Cone G;                  // sum of the polars of the V_k
    std::vector<std::pair<std::string, bool>> table;  // sigma pattern -> inclusion verified
    bool ok = false;
};

WedgeCertificate enclose(const StalkContext& cx, const CovectorPoint& p,
                         const std::vector<ZFamilyItem>& zfam, const Guards& guards = {});

bool check_g_condition(const StalkContext& cx, const CovectorPoint& p, const Cone& G,
                       const Guards& guards = {});

// m-th member of a decreasing cofinal family of multi-cones around the
// direction blocks of p (zero blocks unconstrained).
struct MultiCone {
    PolySet closed;               // closure, as a union of orthant pieces
    std::vector<QVec> strict_rows;  // pairings required strictly positive
};

MultiCone multicone(const StalkContext& cx, const CovectorPoint& p, int m);
bool multicone_member(const MultiCone& mc, const QVec& x);

struct MixedLadder {
    PolySet W;   // multicone at (xi_I, 0_J) clipped to the ball
    ConeLadder g;
};

MixedLadder mixed_ladder(const StalkContext& cx, const std::set<int>& I, const std::set<int>& J,
                         const CovectorPoint& p, int m);

// xi_G = (sigma^{#J_{>1}} xi^(1), ...) with sigma doubled until the part sum
// is proper; reports the sigma found.
struct XiG {
    QVec xi;       // N-dim direction
    long sigma = 1;
    std::vector<int> exponents;  // #J_{>j} per j
};

XiG xi_G(const StalkContext& cx, const CovectorPoint& p, const std::vector<Cone>& parts,
         long sigma_bound = (1L << 20));

struct JstarL {
    std::set<int> jstar;
    Cone L;          // subspace of the N coordinates
    bool lemma_ok;   // G ⊆ L and dim G = dim L for the m=2 ladder sum
};

JstarL L_and_Jstar(const StalkContext& cx, const CovectorPoint& p);

}  // namespace mnc
