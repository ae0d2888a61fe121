#pragma once

#include "mnc/index_family.hpp"
#include "mnc/stalk_geometry.hpp"

#include <set>

namespace mnc {

// Partition of the union of the index sets into real-type and complex-type
// coordinates (complex units).
struct RealComplexSplit {
    std::set<int> I_R, I_C;
};

enum class DegreeMode { REAL_COMPLEX, COMPLEX, REAL };

struct DegreeReport {
    std::set<int> J_star;
    std::set<int> hatJ_star;  // minimal elements; filled by degree_complex
    std::set<int> I_star;
    int degree = 0;
    DegreeMode mode = DegreeMode::REAL_COMPLEX;
};

// Concentration degree #I + #(I*(theta) ∩ I_C) from the vanishing pattern of
// the covector blocks.
DegreeReport degree_general(const IndexFamily& family, const RealComplexSplit& split,
                            const CovectorPoint& p);

// All-complex case via the minimal-element decomposition
// codim Z + sum over hatJ* of codim Z_j; checked against degree_general.
DegreeReport degree_complex(const IndexFamily& family, const CovectorPoint& p);

}  // namespace mnc
