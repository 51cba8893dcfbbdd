#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"

namespace limvam {

struct BErrorResult {
    double aggregate = 0.0;           // sqrt(sum_i ||B^i - Bhat^i||_F^2)
    std::vector<double> per_view;     // ||B^i - Bhat^i||_F
};

/// l2 distance between true and estimated adjacency sets, aggregated over
/// views by root-sum-of-squares; the per-view breakdown is always returned.
inline BErrorResult b_error(const AdjacencySet& truth, const AdjacencySet& estimate) {
    if (truth.m() != estimate.m() || truth.p() != estimate.p())
        throw ShapeMismatch("b_error: adjacency sets have different shapes");
    BErrorResult out;
    double sq = 0.0;
    for (int i = 0; i < truth.m(); ++i) {
        if (truth.matrices[i].rows() != estimate.matrices[i].rows() ||
            truth.matrices[i].cols() != estimate.matrices[i].cols())
            throw ShapeMismatch("b_error: view matrices have different shapes");
        const double norm = (truth.matrices[i] - estimate.matrices[i]).norm();
        out.per_view.push_back(norm);
        sq += norm * norm;
    }
    out.aggregate = std::sqrt(sq);
    return out;
}

/// 0 when the estimated total order linearizes the true partial order (every
/// union edge k -> j puts k before j), 1 otherwise.
inline int ordering_error(const AdjacencySet& truth, const CausalOrdering& estimate) {
    const int p = truth.p();
    if (estimate.p() != p) throw ShapeMismatch("ordering_error: p mismatch");
    const std::vector<int> pos = estimate.positions();
    for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
            if (j == k) continue;
            bool edge = false;  // k -> j in any view
            for (const auto& b : truth.matrices)
                if (b(j, k) != 0.0) {
                    edge = true;
                    break;
                }
            if (edge && pos[k] > pos[j]) return 1;
        }
    }
    return 0;
}

/// Spearman rank correlation between two strict orderings (no ties possible).
inline double spearman(const CausalOrdering& truth, const CausalOrdering& estimate) {
    const int p = truth.p();
    if (estimate.p() != p) throw ShapeMismatch("spearman: p mismatch");
    const std::vector<int> a = truth.positions();
    const std::vector<int> b = estimate.positions();
    double d2 = 0.0;
    for (int j = 0; j < p; ++j) {
        const double d = a[j] - b[j];
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (static_cast<double>(p) * (static_cast<double>(p) * p - 1.0));
}

}  // namespace limvam
