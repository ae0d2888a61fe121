#pragma once

#include "mnc/multinormal.hpp"
#include "mnc/stalk_geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace mnc {

struct Hyperplane {
    QVec a;
    Rat c;  // {a·x = c}
};

struct Cell {
    std::vector<int> sign;  // over the arrangement planes: -1, 0, +1
    int dim = 0;
    QVec point;             // relative interior witness
};

// Regular cell decomposition of a box refined by a hyperplane arrangement.
// Region flags are constant on每 open cell by construction.
struct CellComplex {
    int dim = 0;
    std::vector<Hyperplane> planes;  // box facets first
    size_t box_rows = 0;
    std::vector<Cell> cells;
    std::map<std::string, std::vector<bool>> flags;
};

// box must be bounded; every input plane is normalized and deduped.
CellComplex arrangement_complex(const std::vector<Hyperplane>& planes, const Polyhedron& box,
                                const Guards& guards = {});

// sigma <= tau in the face order (sigma inside the closure of tau).
bool cell_below(const Cell& sigma, const Cell& tau);

// Flags the cells contained in the region. With open_interior the strict
// version of every inequality is used (equality rows flag nothing).
void flag_region(CellComplex& cx, const std::string& name, const PolySet& region,
                 bool open_interior);

struct CohomologyTable {
    std::map<int, long> ranks;
    bool stabilized = false;
    int m_index = 0;
    std::vector<std::string> trail;  // per-stage diagnostics
};

bool tables_equal(const CohomologyTable& a, const CohomologyTable& b);

// H^k_G(U; k_W) over the rational field, computed from the poset bar complex
// of the cells in U with coefficients supported on W, relative to U minus G.
CohomologyTable rel_cohomology(const CellComplex& cx, const std::string& u,
                               const std::string& g, const std::string& w);

// Evaluates the ladder (U_m, G_m) for m = 1..m_max and declares stabilization
// when two consecutive tables agree and the connecting maps are isomorphisms
// on the stabilized part.
CohomologyTable stalk_limit(const StalkContext& cx, const CovectorPoint& p, const PolySet& W,
                            int m_max, const Guards& guards = {});

enum class CompareOutcome { AGREE, DISAGREE, INCONCLUSIVE };

struct CompareReport {
    CompareOutcome outcome = CompareOutcome::INCONCLUSIVE;
    CohomologyTable g_side;
    CohomologyTable z_side;
};

// Stalk limit along the G-ladder versus the Z-family route of the fiber
// formula, interleaved through enclose.
CompareReport compare_families(const StalkContext& cx, const CovectorPoint& p, const PolySet& W,
                               int m_max, const Guards& guards = {});

}  // namespace mnc
