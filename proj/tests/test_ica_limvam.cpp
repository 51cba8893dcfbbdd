#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "limvam/ica_limvam.hpp"
#include "limvam/metrics.hpp"
#include "limvam/rng.hpp"
#include "limvam/synth.hpp"

using namespace limvam;

namespace {

double permutation_cost(const Matrix& w, const std::vector<int>& perm) {
    double cost = 0.0;
    for (size_t j = 0; j < perm.size(); ++j)
        cost += 1.0 / std::max(std::abs(w(perm[j], static_cast<int>(j))), 1e-12);
    return cost;
}

double upper_mass(const Matrix& b, const std::vector<int>& perm) {
    double mass = 0.0;
    const int p = static_cast<int>(perm.size());
    for (int k = 0; k < p; ++k)
        for (int l = k; l < p; ++l) mass += b(perm[k], perm[l]) * b(perm[k], perm[l]);
    return mass;
}

}  // namespace

TEST_CASE("resolve_permutation on trivial inputs") {
    CHECK(resolve_permutation(Matrix::Identity(3, 3)) == std::vector<int>{0, 1, 2});

    Matrix swapped = Matrix::Identity(3, 3);
    swapped.row(0).swap(swapped.row(1));
    CHECK(resolve_permutation(swapped) == std::vector<int>{1, 0, 2});

    CHECK_THROWS_AS(resolve_permutation(Matrix::Zero(2, 2)), DegenerateRow);
}

TEST_CASE("resolve_permutation is invariant to positive scaling") {
    RngStream rng(71);
    Matrix w(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) w(r, c) = std::abs(rng.normal()) + 0.01;
    CHECK(resolve_permutation(w) == resolve_permutation(7.3 * w));
}

TEST_CASE("resolve_permutation matches exhaustive search") {
    RngStream rng(72);
    const int p = 4;
    for (int rep = 0; rep < 20; ++rep) {
        Matrix w(p, p);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) w(r, c) = std::abs(rng.normal());
        const std::vector<int> found = resolve_permutation(w);

        std::vector<int> perm(p);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            best = std::min(best, permutation_cost(w, perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(permutation_cost(w, found) == Catch::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("resolve_signs_scales fixed points") {
    std::vector<int> identity{0, 1, 2};
    SignScaleResult r =
        resolve_signs_scales({Matrix::Identity(3, 3), Matrix::Identity(3, 3)}, identity);
    CHECK(r.scales.isApprox(Matrix::Ones(2, 3)));
    CHECK(r.adjacency[0].cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.sign_disagreements == 0);

    SignScaleResult s = resolve_signs_scales({2.0 * Matrix::Identity(3, 3)}, identity);
    CHECK(s.scales(0, 0) == Catch::Approx(0.5));
    CHECK(s.adjacency[0].cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(resolve_signs_scales({Matrix::Zero(2, 2)}, std::vector<int>{0, 1}),
                    ZeroDiagonal);
}

TEST_CASE("resolve stages round-trip exact model matrices") {
    RngStream rng(73);
    const int p = 4, m = 3;
    std::vector<Matrix> b_true, w;
    Matrix d_true(m, p);
    // shared random row permutation with random signs, as an ICA backend
    // would return
    std::vector<int> shuffle(p);
    std::iota(shuffle.begin(), shuffle.end(), 0);
    for (int j = p - 1; j > 0; --j)
        std::swap(shuffle[j], shuffle[rng.next_u64() % (j + 1)]);
    Vector signs(p);
    for (int j = 0; j < p; ++j) signs(j) = (rng.next_u64() & 1) ? 1.0 : -1.0;

    for (int i = 0; i < m; ++i) {
        Matrix b = Matrix::Zero(p, p);
        for (int r = 1; r < p; ++r)
            for (int c = 0; c < r; ++c) b(r, c) = rng.normal();
        b_true.push_back(b);
        for (int j = 0; j < p; ++j) d_true(i, j) = rng.uniform(0.3, 2.0);
        Matrix wi = d_true.row(i).cwiseInverse().asDiagonal() * (Matrix::Identity(p, p) - b);
        Matrix scrambled(p, p);
        for (int j = 0; j < p; ++j) scrambled.row(j) = signs(j) * wi.row(shuffle[j]);
        w.push_back(scrambled);
    }

    Matrix pooled = Matrix::Zero(p, p);
    for (const auto& wi : w) pooled += wi.cwiseAbs();
    const std::vector<int> perm = resolve_permutation(pooled);
    SignScaleResult resolved = resolve_signs_scales(w, perm);
    for (int i = 0; i < m; ++i) {
        CHECK((resolved.adjacency[i] - b_true[i]).cwiseAbs().maxCoeff() < 1e-10);
        for (int j = 0; j < p; ++j)
            CHECK(resolved.scales(i, j) == Catch::Approx(d_true(i, j)).epsilon(1e-10));
    }
}

TEST_CASE("ordering_from_adjacency on triangular inputs") {
    const int p = 4;
    Matrix lower = Matrix::Zero(p, p);
    Matrix upper = Matrix::Zero(p, p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) {
            if (r > c) lower(r, c) = 1.0 + r + c;
            if (r < c) upper(r, c) = 1.0 + r + c;
        }
    CHECK(ordering_from_adjacency(lower).perm == std::vector<int>{0, 1, 2, 3});
    CHECK(ordering_from_adjacency(upper).perm == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("ordering_from_adjacency matches exhaustive upper-mass minimization") {
    RngStream rng(74);
    const int p = 4;
    for (int rep = 0; rep < 20; ++rep) {
        Matrix b = Matrix::Zero(p, p);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) {
                if (r > c) b(r, c) = rng.normal();
                if (r < c) b(r, c) = 0.01;
            }
        const CausalOrdering found = ordering_from_adjacency(b.cwiseAbs());

        std::vector<int> perm(p);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            best = std::min(best, upper_mass(b.cwiseAbs(), perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(upper_mass(b.cwiseAbs(), found.perm) == Catch::Approx(best).margin(1e-12));
    }
}

TEST_CASE("fit_ica handles a single variable") {
    RngStream rng(75);
    Matrix v(1, 500);
    for (int t = 0; t < 500; ++t) v(0, t) = 2.0 * rng.normal();
    IcaFitResult fit = fit_ica(MultiViewData({v}));
    CHECK(fit.ordering.perm == std::vector<int>{0});
    CHECK(fit.adjacency.matrices[0](0, 0) == 0.0);
    CHECK(fit.scales(0, 0) == Catch::Approx(2.0).margin(0.2));  // 1/W = component std
}

TEST_CASE("fit_ica on noise-free source-only data estimates B near zero") {
    ProtocolConfig cfg;
    cfg.m = 3;
    cfg.p = 3;
    cfg.n = 20000;
    cfg.density = 0.0;  // B = 0
    cfg.noise_rule = NoiseRule::FixedStd;
    cfg.noise_value = 0.0;  // no view-specific noise
    cfg.scale_lo = 0.5;
    cfg.scale_hi = 2.0;
    cfg.seed = 76;
    SimulationOutput sim = run_protocol(cfg);
    IcaFitResult fit = fit_ica(sim.data);
    for (const auto& b : fit.adjacency.matrices) CHECK(b.norm() < 0.05);
}

TEST_CASE("fit_ica per-view mode returns one ordering per view") {
    SimulationOutput sim = run_protocol(preset_figure1(false, 2000, 77));
    IcaFitResult fit = fit_ica(sim.data, OrderingMode::PerView);
    CHECK(fit.view_orderings.size() == static_cast<size_t>(sim.data.m()));
    for (const auto& ord : fit.view_orderings) CHECK(ord.is_permutation());
    CHECK(fit.adjacency.ordering_mode == OrderingMode::PerView);
}

TEST_CASE("fit_ica recovers structure on shared-disturbance data") {
    SimulationOutput sim = run_protocol(preset_figure1(false, 10000, 78));
    IcaFitResult fit = fit_ica(sim.data);
    CHECK(fit.ordering.is_permutation());
    CHECK(fit.scales.minCoeff() > 0.0);
    CHECK(fit.noise_vars.minCoeff() >= 0.0);
    const BErrorResult be = b_error(sim.truth.adjacency, fit.adjacency);
    CHECK(std::isfinite(be.aggregate));
    CHECK(be.aggregate < 3.0);
    for (const auto& b : fit.adjacency.matrices) CHECK(b.diagonal().cwiseAbs().maxCoeff() == 0.0);
}
