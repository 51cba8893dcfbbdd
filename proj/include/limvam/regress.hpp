#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"

namespace limvam {

/// Univariate regressions of one variable on another, per view.
struct PairResiduals {
    Vector b;          // length m, per-view coefficients
    Matrix residuals;  // m x n
};

namespace detail {

inline PairResiduals univariate_ols(const Matrix& regressor, const Matrix& target) {
    const Eigen::Index m = regressor.rows();
    const double n = static_cast<double>(regressor.cols());
    PairResiduals out;
    out.b.resize(m);
    out.residuals.resizeLike(target);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sxx = regressor.row(i).squaredNorm() / n;
        if (sxx < kZeroVarianceTol)
            throw ZeroVariance("univariate_ols: regressor has zero variance in view " +
                               std::to_string(i));
        out.b(i) = regressor.row(i).dot(target.row(i)) / n / sxx;
        out.residuals.row(i) = target.row(i) - out.b(i) * regressor.row(i);
    }
    return out;
}

/// Symmetric pseudo-inverse with relative eigenvalue cutoff.
inline Matrix pinv_sym(const Matrix& a, double rel_cutoff, const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    const Vector& vals = eig.eigenvalues();
    const double max_ev = vals.cwiseAbs().maxCoeff();
    if (!(max_ev > 0.0))
        throw SingularSystem(std::string("pinv_sym: ") + what + " is numerically zero");
    Vector inv = Vector::Zero(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) > rel_cutoff * max_ev) inv(i) = 1.0 / vals(i);
    return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace detail

/// Regress y on x (forward) and x on y (backward), per view. For standardized
/// inputs both coefficient vectors equal the per-view sample covariance.
inline std::pair<PairResiduals, PairResiduals> pairwise_ols(const VariablePairView& pair) {
    return {detail::univariate_ols(pair.x, pair.y), detail::univariate_ols(pair.y, pair.x)};
}

struct FglsRowEstimate {
    Matrix coefficients;  // m x q, row i holds T^i_{j,<j}
    Matrix residual_cov;  // m x m, OLS-stage cross-view residual covariance
};

/// GLS update for the stacked block-diagonal regression with error covariance
/// Sigma (x) I_n. Exposed separately so the diagonal-Sigma = OLS reduction can
/// be checked directly.
inline Matrix gls_solve(const std::vector<Matrix>& predecessors, const Matrix& target,
                        const Matrix& sigma_inv) {
    const int m = static_cast<int>(predecessors.size());
    const int q = static_cast<int>(predecessors[0].rows());
    Matrix normal = Matrix::Zero(m * q, m * q);
    Vector rhs = Vector::Zero(m * q);
    // Kronecker structure never materialized: block (i, i') of the normal
    // matrix is sigma_inv(i, i') * X_i X_{i'}^T.
    for (int i = 0; i < m; ++i) {
        for (int i2 = 0; i2 < m; ++i2) {
            if (sigma_inv(i, i2) == 0.0) continue;
            normal.block(i * q, i2 * q, q, q) =
                sigma_inv(i, i2) * (predecessors[i] * predecessors[i2].transpose());
            rhs.segment(i * q, q) += sigma_inv(i, i2) * (predecessors[i] * target.row(i2).transpose());
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(normal);
    const double max_ev = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (!(max_ev > 0.0) || eig.eigenvalues().minCoeff() < 1e-12 * max_ev)
        throw SingularSystem("gls_solve: GLS normal matrix singular (collinear predecessors?)");
    Vector sol = eig.eigenvectors() *
                 (eig.eigenvalues().cwiseInverse().asDiagonal() *
                  (eig.eigenvectors().transpose() * rhs));
    Matrix coef(m, q);
    for (int i = 0; i < m; ++i) coef.row(i) = sol.segment(i * q, q).transpose();
    return coef;
}

/// One-step FGLS for one target variable: per-view OLS, cross-view residual
/// covariance, then a GLS re-weighting. predecessors[i] is q x n, target is
/// m x n.
inline FglsRowEstimate fgls_row(const std::vector<Matrix>& predecessors, const Matrix& target) {
    const int m = static_cast<int>(predecessors.size());
    if (m == 0 || target.rows() != m)
        throw ShapeMismatch("fgls_row: need one predecessor block per view");
    const int q = static_cast<int>(predecessors[0].rows());
    const double n = static_cast<double>(target.cols());

    // OLS step; the block-diagonal design decouples per view.
    Matrix ols_residuals(m, static_cast<int>(n));
    for (int i = 0; i < m; ++i) {
        Matrix gram = predecessors[i] * predecessors[i].transpose();
        Eigen::LDLT<Matrix> ldlt(gram);
        if (ldlt.info() != Eigen::Success)
            throw SingularSystem("fgls_row: OLS Gram matrix not factorizable in view " +
                                 std::to_string(i));
        Vector coef = ldlt.solve(predecessors[i] * target.row(i).transpose());
        ols_residuals.row(i) = target.row(i) - coef.transpose() * predecessors[i];
    }

    FglsRowEstimate out;
    out.residual_cov = (ols_residuals * ols_residuals.transpose()) / n;
    Matrix sigma_inv = detail::pinv_sym(out.residual_cov, 1e-10, "residual covariance");
    out.coefficients = gls_solve(predecessors, target, sigma_inv);
    return out;
}

}  // namespace limvam
