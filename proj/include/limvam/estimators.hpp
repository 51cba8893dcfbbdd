#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/ordering.hpp"
#include "limvam/regress.hpp"

namespace limvam {

struct FitDiagnostics {
    CriterionKind kind = CriterionKind::LR;
    double ordering_seconds = 0.0;
    double coefficients_seconds = 0.0;
    std::vector<double> residual_cov_conditions;  // one per target variable
    bool sample_size_warning = false;             // n <= m * p
};

struct FitResult {
    CausalOrdering ordering;
    AdjacencySet adjacency;
    FitDiagnostics diagnostics;
};

namespace detail {

inline double condition_number(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Algorithm: center, estimate the ordering by recursive residuals, then
/// estimate row j of every T^i by one-step FGLS on the original reordered
/// data, and reassemble B^i = P^T T^i P.
inline FitResult fit_pairwise(const MultiViewData& raw, CriterionKind kind) {
    FitResult result;
    result.diagnostics.kind = kind;
    result.diagnostics.sample_size_warning = raw.n() <= raw.m() * raw.p();

    const MultiViewData data = center(raw);
    const int m = data.m();
    const int p = data.p();

    auto t0 = std::chrono::steady_clock::now();
    result.ordering = causal_order(data, kind);
    result.diagnostics.ordering_seconds = detail::seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    // Reordered data: row j of `ordered[i]` is the j-th root-most variable.
    std::vector<Matrix> ordered(m, Matrix(p, data.n()));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) ordered[i].row(j) = data.views[i].row(result.ordering.perm[j]);

    std::vector<Matrix> triangular(m, Matrix::Zero(p, p));
    for (int j = 1; j < p; ++j) {
        std::vector<Matrix> predecessors;
        predecessors.reserve(m);
        Matrix target(m, data.n());
        for (int i = 0; i < m; ++i) {
            predecessors.push_back(ordered[i].topRows(j));
            target.row(i) = ordered[i].row(j);
        }
        FglsRowEstimate row = fgls_row(predecessors, target);
        result.diagnostics.residual_cov_conditions.push_back(
            detail::condition_number(row.residual_cov));
        for (int i = 0; i < m; ++i) triangular[i].row(j).head(j) = row.coefficients.row(i);
    }
    result.diagnostics.coefficients_seconds = detail::seconds_since(t0);

    result.adjacency.ordering_mode = OrderingMode::Shared;
    result.adjacency.matrices.reserve(m);
    for (int i = 0; i < m; ++i)
        result.adjacency.matrices.push_back(reassemble_from_triangular(triangular[i], result.ordering));
    return result;
}

/// Element-wise median across a collection of adjacency sets (population-level
/// reporting utility; flattens views and subjects alike).
inline Matrix median_effects(const std::vector<AdjacencySet>& sets) {
    if (sets.empty() || sets[0].matrices.empty())
        throw ShapeMismatch("median_effects: need at least one matrix");
    const int p = sets[0].p();
    for (const auto& set : sets)
        for (const auto& b : set.matrices)
            if (b.rows() != p || b.cols() != p)
                throw ShapeMismatch("median_effects: all matrices must be p x p");

    Matrix out(p, p);
    std::vector<double> cell;
    for (int r = 0; r < p; ++r) {
        for (int c = 0; c < p; ++c) {
            cell.clear();
            for (const auto& set : sets)
                for (const auto& b : set.matrices) cell.push_back(b(r, c));
            const size_t mid = cell.size() / 2;
            std::nth_element(cell.begin(), cell.begin() + mid, cell.end());
            double median = cell[mid];
            if (cell.size() % 2 == 0) {
                const double lower = *std::max_element(cell.begin(), cell.begin() + mid);
                median = 0.5 * (median + lower);
            }
            out(r, c) = median;
        }
    }
    return out;
}

}  // namespace limvam
