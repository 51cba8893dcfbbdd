#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/criteria.hpp"
#include "limvam/errors.hpp"
#include "limvam/regress.hpp"

namespace limvam {

/// Skew-symmetric matrix of pairwise causal-direction criteria.
struct ScoreMatrix {
    Matrix values;

    int p() const { return static_cast<int>(values.rows()); }
};

namespace detail {

inline Matrix stack_variable(const MultiViewData& data, int var) {
    Matrix out(data.m(), data.n());
    for (int i = 0; i < data.m(); ++i) out.row(i) = data.views[i].row(var);
    return out;
}

}  // namespace detail

/// Evaluate the chosen criterion on every variable pair. Standardization is
/// applied inside the criterion only; the data itself stays on its raw
/// centered scale.
inline ScoreMatrix score_matrix(const MultiViewData& data, CriterionKind kind) {
    const int p = data.p();
    ScoreMatrix m;
    m.values = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j) {
        for (int k = j + 1; k < p; ++k) {
            try {
                VariablePairView pair =
                    standardize_pair(detail::stack_variable(data, j), detail::stack_variable(data, k));
                auto [forward, backward] = pairwise_ols(pair);
                const double value =
                    kind == CriterionKind::LR
                        ? lr_criterion(pair.x, pair.y, forward.residuals, backward.residuals)
                        : fc_criterion(pair.x, pair.y, forward.residuals, backward.residuals);
                m.values(j, k) = value;
                m.values(k, j) = -value;
            } catch (const Error& err) {
                throw Error("score_matrix: pair (" + std::to_string(j) + ", " + std::to_string(k) +
                            "): " + err.what());
            }
        }
    }
    return m;
}

/// arg min_i sum_j min(0, M_ij)^2; ties broken by smallest index.
inline int select_root(const ScoreMatrix& m) {
    int best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m.p(); ++i) {
        double score = 0.0;
        for (int j = 0; j < m.p(); ++j) {
            const double neg = std::min(0.0, m.values(i, j));
            score += neg * neg;
        }
        if (score < best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

/// Replace every non-root variable by its per-view OLS residual on the root;
/// drops the root variable.
inline MultiViewData regress_out(const MultiViewData& data, int root) {
    if (root < 0 || root >= data.p()) throw ShapeMismatch("regress_out: root index out of range");
    const double n = static_cast<double>(data.n());
    MultiViewData out;
    out.views.reserve(data.m());
    for (int i = 0; i < data.m(); ++i) {
        const auto& view = data.views[i];
        const double sxx = view.row(root).squaredNorm() / n;
        if (sxx < kZeroVarianceTol)
            throw ZeroVariance("regress_out: root variable degenerate in view " + std::to_string(i));
        Matrix reduced(data.p() - 1, data.n());
        int r = 0;
        for (int k = 0; k < data.p(); ++k) {
            if (k == root) continue;
            const double coef = view.row(root).dot(view.row(k)) / n / sxx;
            reduced.row(r++) = view.row(k) - coef * view.row(root);
        }
        out.views.push_back(std::move(reduced));
    }
    return out;
}

/// Recursive-residuals ordering: score all pairs, take the root, regress it
/// out, recurse on the residuals.
inline CausalOrdering causal_order(const MultiViewData& data, CriterionKind kind) {
    const int p = data.p();
    CausalOrdering ordering;
    ordering.perm.reserve(p);
    std::vector<int> remaining(p);
    for (int j = 0; j < p; ++j) remaining[j] = j;

    MultiViewData current = data;
    for (int depth = 0; static_cast<int>(ordering.perm.size()) < p; ++depth) {
        if (current.p() == 1) {
            ordering.perm.push_back(remaining[0]);
            break;
        }
        int root;
        try {
            root = select_root(score_matrix(current, kind));
        } catch (const Error& err) {
            throw Error("causal_order: depth " + std::to_string(depth) + ": " + err.what());
        }
        ordering.perm.push_back(remaining[root]);
        remaining.erase(remaining.begin() + root);
        current = regress_out(current, root);
    }
    return ordering;
}

}  // namespace limvam
