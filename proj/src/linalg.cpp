#include "mnc/linalg.hpp"

#include <algorithm>

namespace mnc {

std::vector<int> rref(std::vector<QVec>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    size_t ncols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rat piv = rows[r][c];
        for (size_t j = 0; j < ncols; ++j) rows[r][j] /= piv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    rows.resize(r);
    for (auto& row : rows) row = primitive_signed(row);
    return pivots;
}

void reduce_mod(QVec& v, const std::vector<QVec>& basis, const std::vector<int>& pivots) {
    for (size_t i = 0; i < basis.size(); ++i) {
        int c = pivots[i];
        if (v[c] == 0) continue;
        Rat f = v[c] / basis[i][c];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[i][j];
    }
}

int rank(std::vector<QVec> rows) { return (int)rref(rows).size(); }

std::optional<QVec> in_span(const std::vector<QVec>& rows, const QVec& v) {
    if (rows.empty()) {
        if (is_zero_vec(v)) return QVec{};
        return std::nullopt;
    }
    // Gaussian elimination on [rows^T | v] solving sum coeff_i rows_i = v.
    size_t n = v.size(), m = rows.size();
    std::vector<QVec> aug(n, QVec(m + 1, Rat(0)));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < m; ++i) aug[j][i] = rows[i][j];
        aug[j][m] = v[j];
    }
    std::vector<int> piv = rref(aug);
    QVec coeffs(m, Rat(0));
    for (size_t i = 0; i < aug.size(); ++i) {
        if (piv[i] == (int)m) return std::nullopt;  // inconsistent
        // After rref the pivot entry is normalized to 1 by primitive_signed only
        // up to scale, so renormalize explicitly.
        coeffs[piv[i]] = aug[i][m] / aug[i][piv[i]];
    }
    return coeffs;
}

}  // namespace mnc
