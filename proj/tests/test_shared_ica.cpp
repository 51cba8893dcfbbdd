#include <catch_amalgamated.hpp>

#include "limvam/assignment.hpp"
#include "limvam/shared_ica.hpp"
#include "limvam/synth.hpp"

using namespace limvam;

namespace {

Matrix random_orthogonal(int p, RngStream& rng) {
    Matrix g(p, p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) g(r, c) = rng.normal();
    return Eigen::HouseholderQR<Matrix>(g).householderQ();
}

}  // namespace

TEST_CASE("cross_covariances stores the upper triangle consistently") {
    SimulationOutput sim = run_protocol(preset_figure1(false, 300, 61));
    const MultiViewData data = center(sim.data);
    CrossCovarianceSet covs = cross_covariances(data);
    const int m = data.m();
    CHECK(static_cast<int>(covs.covs.size()) == m * (m + 1) / 2);
    for (int i = 0; i < m; ++i) {
        CHECK(covs.at(i, i).isApprox(covs.at(i, i).transpose()));
        for (int i2 = 0; i2 < m; ++i2)
            CHECK(covs.at(i, i2).isApprox(covs.at(i2, i).transpose()));
    }
    // matches the definition directly
    const Matrix c01 = (data.views[0] * data.views[1].transpose()) / data.n();
    CHECK((covs.at(0, 1) - c01).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("joint diagonalization solves the exact two-view eigen case") {
    RngStream rng(62);
    const int p = 4;
    const Matrix q = random_orthogonal(p, rng);
    Vector lambda(p);
    lambda << 0.9, 0.6, 0.3, 0.1;  // distinct
    CrossCovarianceSet covs;
    covs.m = 2;
    covs.p = p;
    covs.covs = {Matrix::Identity(p, p), q * lambda.asDiagonal() * q.transpose(),
                 Matrix::Identity(p, p)};

    ShicaResult result = joint_diagonalize(covs);
    CHECK(result.converged);
    // off-diagonal residual essentially zero
    Matrix d = result.unmixing[0] * covs.at(0, 1) * result.unmixing[1].transpose();
    d.diagonal().setZero();
    CHECK(d.cwiseAbs().maxCoeff() < 1e-8);
    // each recovered row matches a column of Q up to sign
    for (int i : {0, 1}) {
        for (int r = 0; r < p; ++r) {
            double best = 0.0;
            for (int c = 0; c < p; ++c)
                best = std::max(best, std::abs(result.unmixing[i].row(r).dot(q.col(c))));
            CHECK(best == Catch::Approx(1.0).margin(1e-8));
        }
    }
}

TEST_CASE("joint diagonalization objective is non-increasing in the sweep cap") {
    SimulationOutput sim = run_protocol(preset_figure1(false, 400, 63));
    CrossCovarianceSet covs = cross_covariances(center(sim.data));
    double prev = std::numeric_limits<double>::infinity();
    for (int cap : {1, 3, 10, 50, 200}) {
        const ShicaResult r = joint_diagonalize(covs, cap);
        CHECK(r.objective <= prev + 1e-15);
        prev = r.objective;
    }
}

TEST_CASE("joint diagonalization recovers the mixing on shared-disturbance data") {
    ProtocolConfig cfg;
    cfg.m = 3;
    cfg.p = 3;
    cfg.n = 100000;
    cfg.sources = {SourceKind::gaussian()};
    cfg.scale_lo = 0.5;
    cfg.scale_hi = 2.0;
    cfg.noise_rule = NoiseRule::UniformVar;
    cfg.seed = 64;
    SimulationOutput sim = run_protocol(cfg);

    const MultiViewData data = center(sim.data);
    ShicaResult result = joint_diagonalize(cross_covariances(data));
    const int p = cfg.p;
    double worst = 0.0;
    for (int i = 0; i < cfg.m; ++i) {
        const Matrix id = Matrix::Identity(p, p);
        const Matrix a = (id - sim.truth.adjacency.matrices[i]).inverse() *
                         Matrix(sim.truth.params.scales.row(i).asDiagonal());
        Matrix wa = result.unmixing[i] * a;
        // best signed permutation via assignment on -|entries|
        Matrix cost = -wa.cwiseAbs();
        const std::vector<int> assign = solve_assignment(cost);
        Matrix sp = Matrix::Zero(p, p);
        for (int r = 0; r < p; ++r) sp(r, assign[r]) = wa(r, assign[r]) < 0 ? -1.0 : 1.0;
        worst = std::max(worst, (wa - sp).norm() / std::sqrt(static_cast<double>(p)));
    }
    CHECK(worst < 0.1);
}

TEST_CASE("joint diagonalization rejects singular within-view covariance") {
    Matrix v(2, 50);
    v.row(0).setLinSpaced(50, -1.0, 1.0);
    v.row(1) = 2.0 * v.row(0);  // perfectly collinear variables
    MultiViewData data({v, v});
    CHECK_THROWS_AS(joint_diagonalize(cross_covariances(center(data))), NonPositiveDefinite);
}

TEST_CASE("estimate_noise splits variance via the cross-view triple rule") {
    RngStream rng(65);
    const int m = 4, p = 2, n = 200000;
    Matrix a(m, p), sigma(m, p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) {
            a(i, j) = rng.uniform(0.5, 2.0);
            sigma(i, j) = rng.uniform(0.2, 1.0);
        }
    // views are already unmixed: y^i_j = a_ij s_j + noise
    std::vector<Matrix> views(m, Matrix(p, n));
    for (int j = 0; j < p; ++j)
        for (int t = 0; t < n; ++t) {
            const double s = rng.normal();
            for (int i = 0; i < m; ++i) views[i](j, t) = a(i, j) * s + sigma(i, j) * rng.normal();
        }
    MultiViewData data(std::move(views));
    ShicaResult result;
    for (int i = 0; i < m; ++i) result.unmixing.push_back(Matrix::Identity(p, p));
    estimate_noise(center(data), result);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) {
            CHECK(result.shared_scales(i, j) == Catch::Approx(a(i, j)).margin(0.05));
            CHECK(result.noise_vars(i, j) ==
                  Catch::Approx(sigma(i, j) * sigma(i, j)).margin(0.05));
        }
}

TEST_CASE("estimate_noise with two views uses the symmetric split") {
    RngStream rng(66);
    const int n = 100000;
    const double a1 = 1.5, a2 = 0.8;
    std::vector<Matrix> views(2, Matrix(1, n));
    for (int t = 0; t < n; ++t) {
        const double s = rng.normal();
        views[0](0, t) = a1 * s + 0.3 * rng.normal();
        views[1](0, t) = a2 * s + 0.7 * rng.normal();
    }
    MultiViewData data(std::move(views));
    ShicaResult result;
    result.unmixing = {Matrix::Identity(1, 1), Matrix::Identity(1, 1)};
    estimate_noise(center(data), result);
    // both views get sqrt(|cov|) = sqrt(a1 a2)
    const double expected = std::sqrt(a1 * a2);
    CHECK(result.shared_scales(0, 0) == Catch::Approx(expected).margin(0.05));
    CHECK(result.shared_scales(1, 0) == Catch::Approx(expected).margin(0.05));
}

TEST_CASE("estimate_noise reports unusable triples") {
    // three mutually orthogonal, zero-mean component signals: all cross-view
    // covariances are exactly zero
    Matrix v1(1, 4), v2(1, 4), v3(1, 4);
    v1 << 1, -1, 1, -1;
    v2 << 1, 1, -1, -1;
    v3 << 1, -1, -1, 1;
    MultiViewData data({v1, v2, v3});
    ShicaResult result;
    result.unmixing = {Matrix::Identity(1, 1), Matrix::Identity(1, 1), Matrix::Identity(1, 1)};
    CHECK_THROWS_AS(estimate_noise(data, result), UnstableTriple);
}
