#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "limvam/errors.hpp"

namespace limvam {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kZeroVarianceTol = 1e-14;

/// Observations of p variables in m parallel views, n samples each.
/// views[i] is a p x n matrix; row j holds the series of variable j in view i.
struct MultiViewData {
    std::vector<Matrix> views;

    MultiViewData() = default;
    explicit MultiViewData(std::vector<Matrix> v) : views(std::move(v)) {
        if (views.empty()) throw ShapeMismatch("MultiViewData: need at least one view");
        for (const auto& x : views) {
            if (x.rows() != views[0].rows() || x.cols() != views[0].cols())
                throw ShapeMismatch("MultiViewData: all views must share p and n");
        }
    }

    int m() const { return static_cast<int>(views.size()); }
    int p() const { return static_cast<int>(views[0].rows()); }
    int n() const { return static_cast<int>(views[0].cols()); }
};

enum class OrderingMode { Shared, PerView };

/// Per-view causal coefficient matrices B^i.
struct AdjacencySet {
    std::vector<Matrix> matrices;
    OrderingMode ordering_mode = OrderingMode::Shared;

    int m() const { return static_cast<int>(matrices.size()); }
    int p() const { return matrices.empty() ? 0 : static_cast<int>(matrices[0].rows()); }
};

/// perm[k] = original index of the k-th root-most variable.
struct CausalOrdering {
    std::vector<int> perm;

    int p() const { return static_cast<int>(perm.size()); }

    bool is_permutation() const {
        std::vector<char> seen(perm.size(), 0);
        for (int v : perm) {
            if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }

    /// position[j] = rank of original variable j in the ordering.
    std::vector<int> positions() const {
        std::vector<int> pos(perm.size());
        for (size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = static_cast<int>(k);
        return pos;
    }
};

/// One pair of variables stacked across views: x, y are m x n.
struct VariablePairView {
    Matrix x;
    Matrix y;
};

inline double sample_variance(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
    // 1/n convention throughout the library.
    const double mean = row.mean();
    return (row.array() - mean).square().mean();
}

/// Subtract the per-(view, variable) sample mean.
inline MultiViewData center(const MultiViewData& data) {
    MultiViewData out = data;
    for (auto& view : out.views)
        view.colwise() -= view.rowwise().mean();
    return out;
}

/// Scale every row of x and y to unit sample variance (1/n convention).
inline VariablePairView standardize_pair(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw ShapeMismatch("standardize_pair: x and y must have identical shape");
    VariablePairView out{x, y};
    auto scale_rows = [](Matrix& mat, const char* name) {
        for (Eigen::Index i = 0; i < mat.rows(); ++i) {
            const double var = sample_variance(mat.row(i));
            if (var < kZeroVarianceTol)
                throw ZeroVariance(std::string("standardize_pair: degenerate row ") +
                                   std::to_string(i) + " of " + name);
            mat.row(i) /= std::sqrt(var);
        }
    };
    scale_rows(out.x, "x");
    scale_rows(out.y, "y");
    return out;
}

/// Topological order of the nonzero support of `matrix` (Kahn's algorithm).
/// Edge j -> k when matrix(k, j) != 0.
inline CausalOrdering validate_dag(const Matrix& matrix, double tol = 0.0) {
    if (matrix.rows() != matrix.cols())
        throw ShapeMismatch("validate_dag: matrix must be square");
    const int p = static_cast<int>(matrix.rows());
    std::vector<int> indegree(p, 0);
    for (int k = 0; k < p; ++k)
        for (int j = 0; j < p; ++j)
            if (j != k && std::abs(matrix(k, j)) > tol) ++indegree[k];

    CausalOrdering ordering;
    ordering.perm.reserve(p);
    std::vector<char> removed(p, 0);
    for (int step = 0; step < p; ++step) {
        int root = -1;
        for (int j = 0; j < p; ++j) {
            if (!removed[j] && indegree[j] == 0) {
                root = j;
                break;
            }
        }
        if (root < 0) throw CyclicGraph("validate_dag: support graph contains a directed cycle");
        removed[root] = 1;
        ordering.perm.push_back(root);
        for (int k = 0; k < p; ++k)
            if (!removed[k] && std::abs(matrix(k, root)) > tol) --indegree[k];
    }
    return ordering;
}

/// Check that `ordering` strictly-lower-triangularizes every matrix in `set`.
inline bool ordering_compatible(const AdjacencySet& set, const CausalOrdering& ordering,
                                double tol = 1e-10) {
    for (const auto& b : set.matrices) {
        for (int row = 0; row < ordering.p(); ++row)
            for (int col = row; col < ordering.p(); ++col)
                if (std::abs(b(ordering.perm[row], ordering.perm[col])) > tol) return false;
    }
    return true;
}

/// B = P^T T P with perm[k] = original index of the k-th ordered variable:
/// B(perm[j], perm[k]) = T(j, k).
inline Matrix reassemble_from_triangular(const Matrix& t, const CausalOrdering& ordering) {
    const int p = ordering.p();
    Matrix b = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k) b(ordering.perm[j], ordering.perm[k]) = t(j, k);
    return b;
}

/// T = P B P^T, the ordered view of an adjacency matrix.
inline Matrix triangular_from_adjacency(const Matrix& b, const CausalOrdering& ordering) {
    const int p = ordering.p();
    Matrix t(p, p);
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k) t(j, k) = b(ordering.perm[j], ordering.perm[k]);
    return t;
}

}  // namespace limvam
