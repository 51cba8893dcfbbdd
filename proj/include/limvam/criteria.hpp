#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"

namespace limvam {

enum class CriterionKind { LR, FC };

inline const char* to_string(CriterionKind kind) {
    return kind == CriterionKind::LR ? "lr" : "fc";
}

namespace detail {

inline Matrix second_moment(const Matrix& rows) {
    return (rows * rows.transpose()) / static_cast<double>(rows.cols());
}

/// log det of a symmetric matrix that must be positive definite.
inline double logdet_pd(const Matrix& a, const char* name) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    double out = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double ev = eig.eigenvalues()(i);
        if (ev <= 1e-12)
            throw NonPositiveDefinite(std::string("covariance ") + name +
                                      " has eigenvalue <= 1e-12 (collinear views or m > n?)");
        out += std::log(ev);
    }
    return out;
}

}  // namespace detail

/// Log maximum-likelihood ratio between the two direction hypotheses:
/// -log det S_x - log det S_e + log det S_y + log det S_d.
/// Positive indicates x -> y. All inputs m x n; e, d are the residuals of
/// y-on-x and x-on-y respectively.
inline double lr_criterion(const Matrix& x, const Matrix& y, const Matrix& e, const Matrix& d) {
    const double ld_x = detail::logdet_pd(detail::second_moment(x), "Sigma_x");
    const double ld_e = detail::logdet_pd(detail::second_moment(e), "Sigma_e");
    const double ld_y = detail::logdet_pd(detail::second_moment(y), "Sigma_y");
    const double ld_d = detail::logdet_pd(detail::second_moment(d), "Sigma_d");
    return -ld_x - ld_e + ld_y + ld_d;
}

/// Frobenius-norm comparison of regressor-residual cross-covariances:
/// ||(1/n) sum d y^T||_F - ||(1/n) sum e x^T||_F. Positive indicates x -> y.
inline double fc_criterion(const Matrix& x, const Matrix& y, const Matrix& e, const Matrix& d) {
    const double n = static_cast<double>(x.cols());
    const double norm_dy = ((d * y.transpose()) / n).norm();
    const double norm_ex = ((e * x.transpose()) / n).norm();
    return norm_dy - norm_ex;
}

/// Population value J(B, L) of the LR criterion for a standardized bivariate
/// model x -> y with regressor covariance sigma_x, residual correlation
/// sigma_e_corr and per-view coefficients b; L = diag(sqrt(1 - b_i^2)).
inline double population_lr_oracle(const Matrix& sigma_x, const Matrix& sigma_e_corr,
                                   const Vector& b) {
    const Eigen::Index m = b.size();
    for (Eigen::Index i = 0; i < m; ++i)
        if (std::abs(b(i)) >= 1.0)
            throw InvalidCoefficient("population_lr_oracle: |b_i| must be < 1 (standardized model)");
    Vector l = (1.0 - b.array().square()).sqrt().matrix();
    Matrix bd = b.asDiagonal();
    Matrix ld = l.asDiagonal();
    const Matrix a = bd * sigma_x * bd + ld * sigma_e_corr * ld;
    const Matrix c = ld * sigma_x * ld + bd * sigma_e_corr * bd;
    return -detail::logdet_pd(sigma_x, "Sigma_x") - detail::logdet_pd(sigma_e_corr, "Sigma_e_corr") +
           detail::logdet_pd(a, "B Sx B + L Se L") + detail::logdet_pd(c, "L Sx L + B Se B");
}

/// Population cross-covariance of the wrong-direction residuals with the
/// effect, B Sigma_x (I - B^2) - Sigma_e B; its Frobenius norm is the
/// population FC value.
inline Matrix population_fc_cross_cov(const Matrix& sigma_x, const Matrix& sigma_e,
                                      const Vector& b) {
    Matrix bd = b.asDiagonal();
    const Eigen::Index m = b.size();
    return bd * sigma_x * (Matrix::Identity(m, m) - bd * bd) - sigma_e * bd;
}

}  // namespace limvam
