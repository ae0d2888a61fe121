#pragma once

#include "mnc/rational.hpp"

#include <vector>

namespace mnc {

// In-place reduced row echelon form. Returns the pivot column of each
// surviving row; zero rows are removed. Rows are left primitive_signed,
// so the result is canonical for the row span.
std::vector<int> rref(std::vector<QVec>& rows);

// Zeroes the pivot coordinates of v against an RREF basis.
void reduce_mod(QVec& v, const std::vector<QVec>& basis, const std::vector<int>& pivots);

int rank(std::vector<QVec> rows);

// Solves B·coeffs = v for v in the row span; nullopt otherwise.
std::optional<QVec> in_span(const std::vector<QVec>& rows, const QVec& v);

}  // namespace mnc
