#pragma once

#include "mnc/index_family.hpp"
#include "mnc/multinormal.hpp"

#include <optional>
#include <set>

namespace mnc {

// Conic subset of T*X in 2n coordinates (x_1..x_n, xi_1..xi_n); every member
// must be invariant under positive scaling of the fiber block.
struct ConicInput {
    PolySet set;
    std::vector<int> fiber_coords;  // 0-based positions of the xi block
};

// Throws InputError when a member is not fiber-conic.
void check_conic(const ConicInput& in);

// C_{chi*}(SSin) under the cotangent scaling, in the S_{chi*} coordinates.
PolySet ss_estimate(const IndexFamily& family, const ConicInput& ssin,
                    const Guards& guards = {});

// ss_estimate intersected with the S*_chi slice (deformed base blocks and
// the xi^(0) block pinned to zero).
PolySet support_bound(const IndexFamily& family, const ConicInput& ssin,
                      const Guards& guards = {});

struct SeqWitness {
    bool found = false;
    std::optional<MembershipCertificate> cert;     // dual-scheme curve
    std::vector<QVec> points;                      // sequence points inside SSin
    std::vector<QVec> scales;                      // c_{j,k} values per step
    std::optional<SeparationCertificate> separation;  // when not found
};

// Converts the membership certificate at p0 into explicit sequences
// realizing the estimate, with exact checks on finitely many steps.
SeqWitness seq_witness(const IndexFamily& family, const ConicInput& ssin, const QVec& p0,
                       const Guards& guards = {});

struct NonCharResult {
    bool ok = false;                 // true: dotted S*_chi misses the estimate
    PolySet bound_slice;             // estimate restricted to the S*_chi slice
    std::optional<QVec> witness;     // dotted point hit when ok is false
};

NonCharResult noncharacteristic_check(const IndexFamily& family, const ConicInput& ch,
                                      const Guards& guards = {});

// Model of T*X near a real form: coordinates (x, y; xi, eta) with
// T*_MX = {y = 0, xi = 0}. The scheme scales (y, xi).
struct IotaCoords {
    int nx = 0;
    int ny = 0;
    int dim() const { return 2 * (nx + ny); }
};

// T*M slice of the normal cone along T*_MX, presented in (x; xi).
PolySet iota_sharp(const IotaCoords& coords, const PolySet& A, const Guards& guards = {});

// N = {x_i = 0 : i in n_coords} inside M; checks that the punctured conormal
// of N misses iota_sharp(Ch).
bool hyperbolicity_check(const IotaCoords& coords, const std::set<int>& n_coords,
                         const PolySet& ch, const Guards& guards = {});

}  // namespace mnc
