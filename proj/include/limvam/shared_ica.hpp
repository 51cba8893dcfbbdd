#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"

namespace limvam {

/// Upper-triangular set of cross-view covariance matrices C^{ii'}, i <= i'.
struct CrossCovarianceSet {
    int m = 0;
    int p = 0;
    std::vector<Matrix> covs;  // m(m+1)/2 matrices, (i, i') with i <= i'

    static int index(int i, int i2, int m) {
        // row-major upper triangle
        return i * m - i * (i + 1) / 2 + i2;
    }

    /// C^{ii'} for arbitrary order of (i, i').
    Matrix at(int i, int i2) const {
        if (i <= i2) return covs[index(i, i2, m)];
        return covs[index(i2, i, m)].transpose();
    }
};

/// C^{ii'} = (1/n) X^i (X^{i'})^T for centered data.
inline CrossCovarianceSet cross_covariances(const MultiViewData& data) {
    CrossCovarianceSet out;
    out.m = data.m();
    out.p = data.p();
    const double n = static_cast<double>(data.n());
    out.covs.reserve(out.m * (out.m + 1) / 2);
    for (int i = 0; i < out.m; ++i)
        for (int i2 = i; i2 < out.m; ++i2)
            out.covs.push_back((data.views[i] * data.views[i2].transpose()) / n);
    return out;
}

struct ShicaResult {
    std::vector<Matrix> unmixing;          // m matrices W^i, p x p
    Matrix noise_vars;                     // m x p
    Matrix shared_scales;                  // m x p
    std::vector<double> unmixing_conditions;
    bool converged = true;
    int sweeps = 0;
    double objective = 0.0;
    int clamped_noise_count = 0;
};

namespace detail {

inline void check_pd(const Matrix& c, int view) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(c);
    if (eig.eigenvalues().minCoeff() <= 0.0)
        throw NonPositiveDefinite("joint_diagonalize: C^{" + std::to_string(view) + "," +
                                  std::to_string(view) + "} is not positive definite");
}

/// Sum over view pairs of the squared off-diagonal entries of
/// W^i C^{ii'} (W^{i'})^T.
inline double offdiag_objective(const CrossCovarianceSet& covs, const std::vector<Matrix>& w) {
    double obj = 0.0;
    for (int i = 0; i < covs.m; ++i) {
        for (int i2 = i + 1; i2 < covs.m; ++i2) {
            Matrix d = w[i] * covs.at(i, i2) * w[i2].transpose();
            obj += d.squaredNorm() - d.diagonal().squaredNorm();
        }
    }
    return obj;
}

/// MAXVAR multiset-CCA initialization: top-p generalized eigenvectors of the
/// full block covariance against its block diagonal.
inline std::vector<Matrix> mcca_init(const CrossCovarianceSet& covs) {
    const int m = covs.m;
    const int p = covs.p;
    Matrix full(m * p, m * p);
    Matrix block = Matrix::Zero(m * p, m * p);
    for (int i = 0; i < m; ++i) {
        for (int i2 = 0; i2 < m; ++i2) full.block(i * p, i2 * p, p, p) = covs.at(i, i2);
        block.block(i * p, i * p, p, p) = covs.at(i, i);
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(full, block);
    if (eig.info() != Eigen::Success)
        throw SingularSystem("joint_diagonalize: MCCA generalized eigenproblem failed");

    std::vector<Matrix> w(m, Matrix(p, p));
    for (int j = 0; j < p; ++j) {
        // eigenvalues ascend; take the top p
        Vector u = eig.eigenvectors().col(m * p - 1 - j);
        for (int i = 0; i < m; ++i) {
            Vector wi = u.segment(i * p, p);
            const double scale = wi.dot(covs.at(i, i) * wi);
            if (scale > 1e-12) {
                w[i].row(j) = wi.transpose() / std::sqrt(scale);
            } else {
                // component absent from this view's eigenvector block; fall
                // back to a whitened coordinate axis
                Vector e = Vector::Zero(p);
                e(j) = 1.0;
                const double s = e.dot(covs.at(i, i) * e);
                w[i].row(j) = e.transpose() / std::sqrt(s);
            }
        }
    }
    return w;
}

}  // namespace detail

/// Non-orthogonal joint diagonalization of the cross-view covariances:
/// minimize the summed squared off-diagonals of W^i C^{ii'} (W^{i'})^T over
/// all pairs i < i', subject to diag(W^i C^{ii} (W^i)^T) = 1. Initialized by
/// multiset CCA, refined by per-row generalized-eigenvector updates (each row
/// update exactly minimizes its share of the objective, so the objective is
/// non-increasing).
inline ShicaResult joint_diagonalize(const CrossCovarianceSet& covs, int max_sweeps = 1000,
                                     double rel_tol = 1e-10) {
    const int m = covs.m;
    const int p = covs.p;
    for (int i = 0; i < m; ++i) detail::check_pd(covs.at(i, i), i);

    ShicaResult result;
    if (m == 1) {
        // nothing to diagonalize across views: whiten
        Eigen::SelfAdjointEigenSolver<Matrix> eig(covs.at(0, 0));
        Matrix inv_sqrt = eig.eigenvectors() *
                          eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          eig.eigenvectors().transpose();
        result.unmixing.push_back(inv_sqrt);
    } else {
        result.unmixing = detail::mcca_init(covs);
        double prev = detail::offdiag_objective(covs, result.unmixing);
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < p; ++j) {
                    Matrix g = Matrix::Zero(p, p);
                    for (int i2 = 0; i2 < m; ++i2) {
                        if (i2 == i) continue;
                        const Matrix c = covs.at(i, i2);
                        for (int k = 0; k < p; ++k) {
                            if (k == j) continue;
                            Vector v = c * result.unmixing[i2].row(k).transpose();
                            g.noalias() += v * v.transpose();
                        }
                    }
                    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(g, covs.at(i, i));
                    if (eig.info() != Eigen::Success)
                        throw SingularSystem("joint_diagonalize: row update eigenproblem failed");
                    Vector w = eig.eigenvectors().col(0);
                    w /= std::sqrt(w.dot(covs.at(i, i) * w));
                    if (w.dot(result.unmixing[i].row(j).transpose()) < 0.0) w = -w;
                    result.unmixing[i].row(j) = w.transpose();
                }
            }
            result.sweeps = sweep + 1;
            const double obj = detail::offdiag_objective(covs, result.unmixing);
            if (prev - obj < rel_tol * std::max(prev, 1e-300)) {
                result.objective = obj;
                prev = obj;
                break;
            }
            prev = obj;
            if (sweep == max_sweeps - 1) result.converged = false;
        }
        result.objective = prev;
    }
    for (const auto& w : result.unmixing) {
        Eigen::JacobiSVD<Matrix> svd(w);
        const double smin = svd.singularValues().minCoeff();
        result.unmixing_conditions.push_back(
            smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                       : std::numeric_limits<double>::infinity());
    }
    return result;
}

/// Decompose the variance of each unmixed component y^i_j = (W^i x^i)_j into
/// a shared scale a_ij and a view-specific noise variance, using the
/// cross-view triple-product rule (m >= 3) or a symmetric split (m = 2).
inline void estimate_noise(const MultiViewData& data, ShicaResult& result) {
    const int m = data.m();
    const int p = data.p();
    const double n = static_cast<double>(data.n());

    std::vector<Matrix> y;
    y.reserve(m);
    for (int i = 0; i < m; ++i) y.push_back(result.unmixing[i] * data.views[i]);

    result.noise_vars = Matrix::Zero(m, p);
    result.shared_scales = Matrix::Zero(m, p);
    result.clamped_noise_count = 0;

    for (int j = 0; j < p; ++j) {
        // pairwise covariances of component j across views
        Matrix c(m, m);
        for (int i = 0; i < m; ++i)
            for (int i2 = i; i2 < m; ++i2)
                c(i, i2) = c(i2, i) = y[i].row(j).dot(y[i2].row(j)) / n;

        for (int i = 0; i < m; ++i) {
            double a2 = 0.0;
            if (m == 1) {
                a2 = c(0, 0);
            } else if (m == 2) {
                a2 = std::abs(c(0, 1));
            } else {
                std::vector<double> estimates;
                for (int i2 = 0; i2 < m; ++i2) {
                    if (i2 == i) continue;
                    for (int i3 = i2 + 1; i3 < m; ++i3) {
                        if (i3 == i) continue;
                        if (std::abs(c(i2, i3)) < 1e-8) continue;
                        estimates.push_back(c(i, i2) * c(i, i3) / c(i2, i3));
                    }
                }
                if (estimates.empty())
                    throw UnstableTriple("estimate_noise: component " + std::to_string(j) +
                                         " has no usable view triple (cross covariances below 1e-8)");
                const size_t mid = estimates.size() / 2;
                std::nth_element(estimates.begin(), estimates.begin() + mid, estimates.end());
                a2 = estimates[mid];
                if (estimates.size() % 2 == 0) {
                    const double lower = *std::max_element(estimates.begin(), estimates.begin() + mid);
                    a2 = 0.5 * (a2 + lower);
                }
            }
            a2 = std::max(a2, 0.0);
            result.shared_scales(i, j) = std::sqrt(a2);
            double nv = c(i, i) - a2;
            if (nv < 0.0) {
                if (nv < -1e-8) ++result.clamped_noise_count;
                nv = 0.0;
            }
            result.noise_vars(i, j) = (m == 1) ? 0.0 : nv;
        }
    }
}

}  // namespace limvam
