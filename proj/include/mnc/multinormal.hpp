#pragma once

#include "mnc/cone.hpp"
#include "mnc/deformation.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mnc {

// Desk-scale resource limits. Every limit is configurable; the defaults
// match the documented preconditions of the describe-style operations.
struct Guards {
    int max_ell = 3;
    int max_dim = 6;
    long max_chambers = 20000;
    long max_signatures = 500000;
    long max_cells = 250000;
    int max_separation_m = 30;

    Guards widened_for_cotangent() const {
        Guards g = *this;
        g.max_dim = 2 * max_dim;
        return g;
    }
};

enum class Verdict { IN, OUT };

// Monomial curve witness for p in C(Z): t_j = tau^{w_j} and
// x(tau) = p + sum_e tau^e v_e lands in member `member_index` of Z for
// all 0 < tau < tau0. Verified by exact leading-term comparison.
struct MembershipCertificate {
    std::vector<long> weights;
    std::vector<std::pair<long, QVec>> perturbation;  // (exponent, direction)
    Rat tau0;
    int member_index = -1;
};

// Closed inner approximation of a multi-cone around the scaling directions
// of p, with strictness flags, plus a box around the limit anchor.
// Emptiness of Z against it certifies p not in C(Z).
struct SeparationCertificate {
    Polyhedron cone;                // closed rows
    std::vector<int> strict_rows;   // indices into cone.A meant strictly
    QVec anchor;                    // box center
    Rat radius;                     // box half-width
};

struct MemberResult {
    Verdict verdict = Verdict::OUT;
    std::optional<MembershipCertificate> cert_in;
    std::optional<SeparationCertificate> cert_out;
};

// One total preorder of the monomial degree functions, with an interior
// integer weight vector and (after describe) the limit polyhedra it
// contributes.
struct Chamber {
    std::vector<std::vector<std::vector<int>>> groups;  // ordered groups of degree rows
    std::vector<long> witness;
    std::vector<Polyhedron> limits;
};

struct DescribeResult {
    PolySet cone;
    std::vector<Chamber> chambers;
};

MemberResult mnc_member(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                        const Guards& guards = {});

DescribeResult mnc_describe(const MonomialScheme& scheme, const PolySet& Z,
                            const Guards& guards = {});

bool verify_membership(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                       const MembershipCertificate& cert);

bool verify_separation(const MonomialScheme& scheme, const PolySet& Z,
                       const SeparationCertificate& cert);

// ----- Sampling oracle ----------------------------------------------------

enum class OracleVerdict { LIKELY_IN, LIKELY_OUT, INCONCLUSIVE };

struct OracleLadder {
    long base = 2;
    std::vector<Rat> epsilons = {Rat(1, 2), Rat(1, 4), Rat(1, 8)};
    int max_steps = 20;
    bool randomize_axes = false;
    std::uint64_t seed = 0;
};

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::INCONCLUSIVE;
    // feasibility pattern per epsilon (rows) and step (cols)
    std::vector<std::vector<bool>> feasible;
    std::vector<std::string> notes;
};

// Independent of the chamber machinery: solves one exact LP per (eps, step)
// at concrete scales c = base^step and inspects the tails.
OracleResult oracle_member(const MonomialScheme& scheme, const PolySet& Z, const QVec& p,
                           const OracleLadder& ladder = {});

}  // namespace mnc
