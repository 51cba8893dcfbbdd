#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "limvam/assignment.hpp"
#include "limvam/core.hpp"
#include "limvam/errors.hpp"
#include "limvam/shared_ica.hpp"

namespace limvam {

struct IcaFitResult {
    AdjacencySet adjacency;
    Matrix scales;      // m x p, D^i diagonals (positive)
    Matrix noise_vars;  // m x p, rescaled by (D^i)^2
    CausalOrdering ordering;                  // shared mode
    std::vector<CausalOrdering> view_orderings;  // per-view mode
    bool converged = true;
    int sweeps = 0;
    int sign_disagreements = 0;  // views whose diagonal sign differs from positive
    int clamped_noise_count = 0;
};

/// Row permutation M minimizing sum_j 1/(MW)_jj for a pooled nonnegative W,
/// solved as an exact linear sum assignment. Returns perm with
/// perm[j] = source row placed at position j, so (MW)(j, k) = W(perm[j], k).
inline std::vector<int> resolve_permutation(const Matrix& w_abs_sum) {
    const int p = static_cast<int>(w_abs_sum.rows());
    Matrix cost(p, p);
    for (int r = 0; r < p; ++r) {
        if (w_abs_sum.row(r).maxCoeff() <= 1e-12)
            throw DegenerateRow("resolve_permutation: row " + std::to_string(r) +
                                " of the pooled unmixing matrix is entirely below 1e-12");
        for (int c = 0; c < p; ++c) cost(r, c) = 1.0 / std::max(w_abs_sum(r, c), 1e-12);
    }
    const std::vector<int> assign = solve_assignment(cost);  // assign[row] = column
    std::vector<int> perm(p);
    for (int r = 0; r < p; ++r) perm[assign[r]] = r;
    return perm;
}

struct SignScaleResult {
    std::vector<Matrix> adjacency;  // B^i = I - D^i M W^i
    Matrix scales;                  // |D^i| diagonals, m x p
    int sign_disagreements = 0;
};

/// Extract D^i and B^i from the permuted unmixing matrices. B^i is invariant
/// to the per-row sign indeterminacy (flipping a row of MW^i flips D^i_jj
/// too, and the product is unchanged), so the reported scale is |D^i_jj| and
/// negative signed diagonals are counted as a diagnostic.
inline SignScaleResult resolve_signs_scales(const std::vector<Matrix>& unmixing,
                                            const std::vector<int>& perm) {
    const int m = static_cast<int>(unmixing.size());
    const int p = static_cast<int>(perm.size());
    SignScaleResult out;
    out.scales = Matrix(m, p);
    out.adjacency.reserve(m);
    for (int i = 0; i < m; ++i) {
        Matrix mw(p, p);
        for (int j = 0; j < p; ++j) mw.row(j) = unmixing[i].row(perm[j]);
        Matrix b = Matrix::Identity(p, p);
        for (int j = 0; j < p; ++j) {
            const double d = mw(j, j);
            if (std::abs(d) <= 1e-10)
                throw ZeroDiagonal("resolve_signs_scales: view " + std::to_string(i) + ", row " +
                                   std::to_string(j) + " has permuted diagonal <= 1e-10");
            b.row(j) -= mw.row(j) / d;
            out.scales(i, j) = std::abs(1.0 / d);
            if (d < 0.0) ++out.sign_disagreements;
        }
        out.adjacency.push_back(std::move(b));
    }
    return out;
}

namespace detail {

/// Algorithm B: repeatedly peel a remaining row whose entries over the
/// remaining columns are all exactly zero. Returns true on success.
inline bool peel_ordering(const Matrix& b, std::vector<int>& perm) {
    const int p = static_cast<int>(b.rows());
    perm.clear();
    std::vector<char> removed(p, 0);
    for (int step = 0; step < p; ++step) {
        int found = -1;
        for (int r = 0; r < p && found < 0; ++r) {
            if (removed[r]) continue;
            bool all_zero = true;
            for (int c = 0; c < p; ++c) {
                if (removed[c] || c == r) continue;
                if (b(r, c) != 0.0) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero) found = r;
        }
        if (found < 0) return false;
        removed[found] = 1;
        perm.push_back(found);
    }
    return true;
}

}  // namespace detail

/// Approximate the permutation that lower-triangularizes a nonnegative
/// adjacency magnitude matrix: zero the p(p+1)/2 smallest entries, attempt a
/// topological peel, and keep zeroing the next-smallest entry until the peel
/// succeeds (it must, once everything is zero).
inline CausalOrdering ordering_from_adjacency(const Matrix& b_abs_sum) {
    const int p = static_cast<int>(b_abs_sum.rows());
    if (b_abs_sum.cols() != p) throw ShapeMismatch("ordering_from_adjacency: matrix must be square");

    std::vector<std::tuple<double, int, int>> entries;
    entries.reserve(p * p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) entries.emplace_back(std::abs(b_abs_sum(r, c)), r, c);
    std::sort(entries.begin(), entries.end());

    Matrix work = b_abs_sum;
    size_t zeroed = 0;
    const size_t initial = static_cast<size_t>(p) * (p + 1) / 2;
    while (zeroed < initial && zeroed < entries.size()) {
        const auto& [v, r, c] = entries[zeroed++];
        work(r, c) = 0.0;
    }

    CausalOrdering ordering;
    while (!detail::peel_ordering(work, ordering.perm)) {
        const auto& [v, r, c] = entries[zeroed++];
        work(r, c) = 0.0;
    }
    return ordering;
}

/// End-to-end ICA-based estimator: second-order shared ICA backend, shared
/// sign-permutation resolution, coefficient extraction, and ordering
/// recovery from the pooled (shared) or per-view adjacency magnitudes.
inline IcaFitResult fit_ica(const MultiViewData& raw, OrderingMode mode = OrderingMode::Shared) {
    const MultiViewData data = center(raw);
    ShicaResult backend = joint_diagonalize(cross_covariances(data));
    estimate_noise(data, backend);

    const int m = data.m();
    const int p = data.p();
    Matrix pooled = Matrix::Zero(p, p);
    for (const auto& w : backend.unmixing) pooled += w.cwiseAbs();
    const std::vector<int> perm = resolve_permutation(pooled);
    SignScaleResult resolved = resolve_signs_scales(backend.unmixing, perm);

    IcaFitResult result;
    result.converged = backend.converged;
    result.sweeps = backend.sweeps;
    result.clamped_noise_count = backend.clamped_noise_count;
    result.sign_disagreements = resolved.sign_disagreements;
    result.scales = std::move(resolved.scales);
    result.adjacency.matrices = std::move(resolved.adjacency);
    result.adjacency.ordering_mode = mode;

    result.noise_vars = Matrix(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j)
            result.noise_vars(i, j) =
                backend.noise_vars(i, perm[j]) * result.scales(i, j) * result.scales(i, j);

    if (mode == OrderingMode::Shared) {
        Matrix b_pooled = Matrix::Zero(p, p);
        for (const auto& b : result.adjacency.matrices) b_pooled += b.cwiseAbs();
        result.ordering = ordering_from_adjacency(b_pooled);
    } else {
        result.view_orderings.reserve(m);
        for (const auto& b : result.adjacency.matrices)
            result.view_orderings.push_back(ordering_from_adjacency(b.cwiseAbs()));
        result.ordering = result.view_orderings.front();
    }
    return result;
}

}  // namespace limvam
