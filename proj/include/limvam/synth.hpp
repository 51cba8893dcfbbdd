#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"
#include "limvam/rng.hpp"

namespace limvam {

enum class SourceFamily { Gaussian, Laplace, Gennorm };

struct SourceKind {
    SourceFamily family = SourceFamily::Gaussian;
    double beta = 2.0;  // generalized-normal shape, used when family == Gennorm

    static SourceKind gaussian() { return {SourceFamily::Gaussian, 2.0}; }
    static SourceKind laplace() { return {SourceFamily::Laplace, 2.0}; }
    static SourceKind gennorm(double beta) { return {SourceFamily::Gennorm, beta}; }

    bool is_gaussian() const {
        return family == SourceFamily::Gaussian ||
               (family == SourceFamily::Gennorm && beta == 2.0);
    }
};

inline std::string to_string(const SourceKind& kind) {
    switch (kind.family) {
        case SourceFamily::Gaussian: return "gaussian";
        case SourceFamily::Laplace: return "laplace";
        default: return "gennorm(" + std::to_string(kind.beta) + ")";
    }
}

/// Parameters of the shared-disturbance decomposition e^i = D^i s + n^i.
struct SharedDisturbanceParams {
    Matrix scales;                       // m x p, D^i diagonals (positive)
    Matrix noise_stds;                   // m x p, sqrt of noise variances
    std::vector<SourceKind> source_kinds;  // length p
    std::uint64_t seed = 0;

    int m() const { return static_cast<int>(scales.rows()); }
    int p() const { return static_cast<int>(scales.cols()); }
};

struct GroundTruth {
    CausalOrdering ordering;
    std::vector<CausalOrdering> view_orderings;  // filled when ordering differs per view
    AdjacencySet adjacency;
    SharedDisturbanceParams params;
    bool has_params = false;
    // Population covariance of (e^1_j, ..., e^m_j) for each variable j;
    // disturbances of distinct variables are independent within every view.
    std::vector<Matrix> disturbance_cross_cov;
};

struct GeneratedDag {
    CausalOrdering ordering;
    std::vector<CausalOrdering> view_orderings;
    AdjacencySet adjacency;
};

namespace detail {

// Stream tag namespaces; keep stable so identical seeds give identical data.
constexpr std::uint64_t kTagDag = 1;
constexpr std::uint64_t kTagScales = 2;
constexpr std::uint64_t kTagNoiseParams = 3;
constexpr std::uint64_t kTagCorr = 4;
constexpr std::uint64_t kTagSource = 5;
constexpr std::uint64_t kTagNoise = 6;
constexpr std::uint64_t kTagSparsify = 7;

inline std::vector<int> random_permutation(int p, RngStream& rng) {
    std::vector<int> perm(p);
    for (int j = 0; j < p; ++j) perm[j] = j;
    for (int j = p - 1; j > 0; --j) {
        const int k = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(j + 1));
        std::swap(perm[j], perm[k]);
    }
    return perm;
}

}  // namespace detail

/// Random DAG set: a random permutation (shared or per view) applied to
/// per-view strictly-lower-triangular matrices with standard-normal entries,
/// each entry kept independently with probability `density`.
inline GeneratedDag generate_dag(int p, double density, bool shared, int m, RngStream& rng) {
    GeneratedDag out;
    out.adjacency.ordering_mode = shared ? OrderingMode::Shared : OrderingMode::PerView;
    out.adjacency.matrices.reserve(m);
    if (shared) out.ordering.perm = detail::random_permutation(p, rng);
    for (int i = 0; i < m; ++i) {
        CausalOrdering ordering = out.ordering;
        if (!shared) ordering.perm = detail::random_permutation(p, rng);
        Matrix t = Matrix::Zero(p, p);
        for (int j = 1; j < p; ++j) {
            for (int k = 0; k < j; ++k) {
                const double value = rng.normal();  // drawn unconditionally: keeps
                const double keep = rng.uniform();  // draws aligned across densities
                if (keep < density) t(j, k) = value;
            }
        }
        out.adjacency.matrices.push_back(reassemble_from_triangular(t, ordering));
        if (!shared) out.view_orderings.push_back(std::move(ordering));
    }
    if (!shared) out.ordering = out.view_orderings.front();
    return out;
}

/// n i.i.d. samples of the given family, rescaled to unit population variance.
inline Eigen::RowVectorXd sample_source(const SourceKind& kind, int n, RngStream& rng) {
    Eigen::RowVectorXd out(n);
    for (int t = 0; t < n; ++t) {
        switch (kind.family) {
            case SourceFamily::Gaussian: out(t) = rng.normal(); break;
            case SourceFamily::Laplace: out(t) = rng.laplace(); break;
            case SourceFamily::Gennorm: out(t) = rng.gennorm(kind.beta); break;
        }
    }
    return out;
}

/// x^i = (I - B^i)^{-1} (D^i s + n^i) with unit-variance shared sources s and
/// independent per-view noise. Streams are split per (seed, variable) for s
/// and per (seed, view, variable) for the noise.
inline std::pair<MultiViewData, GroundTruth> generate_shared(const SharedDisturbanceParams& params,
                                                             const GeneratedDag& dag, int n) {
    const int m = params.m();
    const int p = params.p();
    if (static_cast<int>(dag.adjacency.matrices.size()) != m || dag.adjacency.p() != p ||
        static_cast<int>(params.source_kinds.size()) != p)
        throw ShapeMismatch("generate_shared: params and adjacency shapes disagree");

    Matrix sources(p, n);
    for (int j = 0; j < p; ++j) {
        RngStream stream(params.seed, {detail::kTagSource, static_cast<std::uint64_t>(j)});
        sources.row(j) = sample_source(params.source_kinds[j], n, stream);
    }

    std::vector<Matrix> views;
    views.reserve(m);
    for (int i = 0; i < m; ++i) {
        Matrix e(p, n);
        for (int j = 0; j < p; ++j) {
            RngStream stream(params.seed, {detail::kTagNoise, static_cast<std::uint64_t>(i),
                                           static_cast<std::uint64_t>(j)});
            e.row(j) = params.scales(i, j) * sources.row(j);
            const double std_ij = params.noise_stds(i, j);
            if (std_ij > 0.0)
                for (int t = 0; t < n; ++t) e(j, t) += std_ij * stream.normal();
        }
        const Matrix id = Matrix::Identity(p, p);
        views.push_back((id - dag.adjacency.matrices[i]).partialPivLu().solve(e));
    }

    GroundTruth truth;
    truth.ordering = dag.ordering;
    truth.view_orderings = dag.view_orderings;
    truth.adjacency = dag.adjacency;
    truth.params = params;
    truth.has_params = true;
    truth.disturbance_cross_cov.reserve(p);
    for (int j = 0; j < p; ++j) {
        Matrix c(m, m);
        for (int i = 0; i < m; ++i)
            for (int i2 = 0; i2 < m; ++i2) {
                c(i, i2) = params.scales(i, j) * params.scales(i2, j);
                if (i == i2) c(i, i2) += params.noise_stds(i, j) * params.noise_stds(i, j);
            }
        truth.disturbance_cross_cov.push_back(std::move(c));
    }
    return {MultiViewData(std::move(views)), truth};
}

/// Disturbances jointly Gaussian across views with equal marginal variance:
/// for each variable, the cross-view correlation matrix is either a fixed
/// equal-correlation matrix (equal_corr in [0, 1)) or a randomized full
/// correlation matrix (equal_corr < 0), then x^i = (I - B^i)^{-1} e^i.
inline std::pair<MultiViewData, GroundTruth> generate_independent(const GeneratedDag& dag,
                                                                  double disturbance_std, int n,
                                                                  std::uint64_t seed,
                                                                  double equal_corr = -1.0) {
    const int m = dag.adjacency.m();
    const int p = dag.adjacency.p();
    const double var = disturbance_std * disturbance_std;

    GroundTruth truth;
    truth.ordering = dag.ordering;
    truth.view_orderings = dag.view_orderings;
    truth.adjacency = dag.adjacency;
    truth.disturbance_cross_cov.reserve(p);

    std::vector<Matrix> e(m, Matrix(p, n));
    for (int j = 0; j < p; ++j) {
        Matrix corr;
        if (equal_corr >= 0.0) {
            corr = Matrix::Constant(m, m, equal_corr);
            corr.diagonal().setOnes();
        } else {
            RngStream stream(seed, {detail::kTagCorr, static_cast<std::uint64_t>(j)});
            Matrix g(m, m + 2);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m + 2; ++c) g(r, c) = stream.normal();
            corr = g * g.transpose();
            const Vector d = corr.diagonal().cwiseSqrt().cwiseInverse();
            corr = d.asDiagonal() * corr * d.asDiagonal();
        }
        truth.disturbance_cross_cov.push_back(var * corr);

        const Matrix chol = corr.llt().matrixL();
        RngStream stream(seed, {detail::kTagNoise, static_cast<std::uint64_t>(j)});
        for (int t = 0; t < n; ++t) {
            Vector z(m);
            for (int i = 0; i < m; ++i) z(i) = stream.normal();
            const Vector ej = disturbance_std * (chol * z);
            for (int i = 0; i < m; ++i) e[i](j, t) = ej(i);
        }
    }

    std::vector<Matrix> views;
    views.reserve(m);
    const Matrix id = Matrix::Identity(p, p);
    for (int i = 0; i < m; ++i)
        views.push_back((id - dag.adjacency.matrices[i]).partialPivLu().solve(e[i]));
    return {MultiViewData(std::move(views)), truth};
}

// ---------------------------------------------------------------------------
// Model-assumption diagnostics on population quantities.
// ---------------------------------------------------------------------------

struct AssumptionCheck {
    bool applicable = true;
    bool satisfied = true;
    std::string detail;  // witnessing or violating index tuple
};

struct AssumptionReport {
    AssumptionCheck correlation_diversity;  // cross-view correlation + diversity per edge
    AssumptionCheck noise_diversity;        // distinct scaled noise variances (Gaussian pairs)
    AssumptionCheck full_diversity;         // the stronger per-edge three-part condition
};

namespace detail {

struct PopulationCovariances {
    int m = 0, p = 0;
    Matrix x;  // (m*p) x (m*p), stacked by view
    Matrix e;

    double corr_x(int i, int j, int i2, int j2) const {
        const double c = x(i * p + j, i2 * p + j2);
        return c / std::sqrt(x(i * p + j, i * p + j) * x(i2 * p + j2, i2 * p + j2));
    }
    double cov_e(int i, int j, int i2) const { return e(i * p + j, i2 * p + j); }
    double corr_e(int i, int j, int i2) const {
        return cov_e(i, j, i2) / std::sqrt(cov_e(i, j, i) * cov_e(i2, j, i2));
    }
};

inline PopulationCovariances population_covariances(const GroundTruth& truth) {
    PopulationCovariances pop;
    pop.m = truth.adjacency.m();
    pop.p = truth.adjacency.p();
    const int m = pop.m, p = pop.p;
    pop.e = Matrix::Zero(m * p, m * p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < m; ++i)
            for (int i2 = 0; i2 < m; ++i2)
                pop.e(i * p + j, i2 * p + j) = truth.disturbance_cross_cov[j](i, i2);

    Matrix g = Matrix::Zero(m * p, m * p);
    const Matrix id = Matrix::Identity(p, p);
    for (int i = 0; i < m; ++i)
        g.block(i * p, i * p, p, p) = (id - truth.adjacency.matrices[i]).inverse();
    pop.x = g * pop.e * g.transpose();
    return pop;
}

inline std::string edge_label(int j, int j2) {
    return "edge " + std::to_string(j) + "->" + std::to_string(j2);
}

}  // namespace detail

/// Evaluate the identifiability conditions on the generator's population
/// covariances (strict inequalities with margin 1e-6). Reports, per
/// assumption, whether it applies, whether it holds, and a witnessing or
/// violating index tuple.
inline AssumptionReport check_assumptions(const GroundTruth& truth, double margin = 1e-6) {
    AssumptionReport report;
    const detail::PopulationCovariances pop = detail::population_covariances(truth);
    const int m = pop.m, p = pop.p;

    // union edges j -> j2 (nonzero in at least one view)
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < p; ++j)
        for (int j2 = 0; j2 < p; ++j2) {
            if (j == j2) continue;
            for (const auto& b : truth.adjacency.matrices)
                if (b(j2, j) != 0.0) {
                    edges.emplace_back(j, j2);
                    break;
                }
        }

    if (edges.empty() || m < 2) {
        report.correlation_diversity.applicable = false;
        report.full_diversity.applicable = false;
        report.correlation_diversity.detail = report.full_diversity.detail =
            edges.empty() ? "no edges" : "single view";
    }

    for (const auto& [j, j2] : edges) {
        if (m < 2) break;
        bool simple_ok = false, full_ok = false;
        std::string witness;
        for (int i = 0; i < m && !(simple_ok && full_ok); ++i) {
            for (int i2 = 0; i2 < m; ++i2) {
                if (i2 == i) continue;
                const double within_i = pop.corr_x(i, j, i, j2);
                const double within_i2 = pop.corr_x(i2, j, i2, j2);
                const double across_x = pop.corr_x(i, j, i2, j);
                const double across_e = pop.corr_e(i, j2, i2);
                const bool cond_a = std::abs(within_i) > margin || std::abs(within_i2) > margin;
                const bool cond_b = std::abs(across_x) > margin || std::abs(across_e) > margin;
                const bool diversity = std::abs(std::abs(across_x) - std::abs(across_e)) > margin;
                if (cond_a && diversity) {
                    simple_ok = true;
                    if (witness.empty())
                        witness = detail::edge_label(j, j2) + " via views (" + std::to_string(i) +
                                  ", " + std::to_string(i2) + ")";
                }
                auto sign = [](double v) { return v < 0.0 ? -1.0 : 1.0; };
                const bool any_inequality =
                    diversity || std::abs(std::abs(within_i) - std::abs(within_i2)) > margin ||
                    std::abs(pop.cov_e(i, j2, i) - pop.cov_e(i2, j2, i2)) > margin ||
                    sign(within_i) * sign(within_i2) != sign(across_x) * sign(across_e);
                if (cond_a && cond_b && any_inequality) full_ok = true;
                if (simple_ok && full_ok) break;
            }
        }
        if (!simple_ok && report.correlation_diversity.satisfied) {
            report.correlation_diversity.satisfied = false;
            report.correlation_diversity.detail = "violated at " + detail::edge_label(j, j2);
        }
        if (!full_ok && report.full_diversity.satisfied) {
            report.full_diversity.satisfied = false;
            report.full_diversity.detail = "violated at " + detail::edge_label(j, j2);
        }
        if (simple_ok && report.correlation_diversity.satisfied &&
            report.correlation_diversity.detail.empty())
            report.correlation_diversity.detail = witness;
    }

    // Distinct scaled noise variances for every pair of Gaussian sources.
    if (!truth.has_params) {
        report.noise_diversity.applicable = false;
        report.noise_diversity.detail = "no shared-disturbance parameters";
        return report;
    }
    std::vector<int> gaussians;
    for (int j = 0; j < p; ++j)
        if (truth.params.source_kinds[j].is_gaussian()) gaussians.push_back(j);
    if (gaussians.size() < 2) {
        report.noise_diversity.applicable = false;
        report.noise_diversity.detail = "fewer than two Gaussian sources";
        return report;
    }
    for (size_t a = 0; a < gaussians.size() && report.noise_diversity.satisfied; ++a) {
        for (size_t b = a + 1; b < gaussians.size(); ++b) {
            const int j = gaussians[a], j2 = gaussians[b];
            bool found = false;
            if (m >= 3) {
                for (int i = 0; i < m; ++i) {
                    auto ratio = [&](int jj) {
                        const double d = truth.params.scales(i, jj);
                        const double s = truth.params.noise_stds(i, jj);
                        return s * s / (d * d);
                    };
                    if (std::abs(ratio(j) - ratio(j2)) > margin) {
                        found = true;
                        report.noise_diversity.detail = "Gaussian pair (" + std::to_string(j) +
                                                        ", " + std::to_string(j2) +
                                                        ") distinguished in view " +
                                                        std::to_string(i);
                        break;
                    }
                }
            }
            if (!found) {
                report.noise_diversity.satisfied = false;
                report.noise_diversity.detail =
                    m < 3 ? "fewer than three views"
                          : "Gaussian pair (" + std::to_string(j) + ", " + std::to_string(j2) +
                                ") has equal scaled noise variance in every view";
                break;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Named simulation protocols.
// ---------------------------------------------------------------------------

enum class NoiseRule {
    UniformVar,  // noise variance ~ U(0, 1)
    UniformStd,  // noise std ~ U(0, 1)
    FixedStd,    // all noise stds equal to noise_value
};

struct ProtocolConfig {
    int m = 5;
    int p = 4;
    int n = 1000;
    double density = 1.0;
    std::vector<SourceKind> sources;  // cycled to length p
    double scale_lo = 0.5;            // D^i entries ~ U(scale_lo, scale_hi)
    double scale_hi = 2.0;
    NoiseRule noise_rule = NoiseRule::UniformVar;
    double noise_value = 0.5;        // used by FixedStd
    double laplace_noise_var = -1.0;  // if >= 0, overrides noise for Laplace sources
    int noise_diversity_violations = 0;  // views forced to equal scaled noise ratios
    int sparsify = 0;                    // entries of T zeroed (same positions in all views)
    bool shared_ordering = true;
    std::uint64_t seed = 0;
};

struct SimulationOutput {
    MultiViewData data;
    GroundTruth truth;
};

/// Build and sample a shared-disturbance protocol from its configuration.
inline SimulationOutput run_protocol(const ProtocolConfig& cfg) {
    const int m = cfg.m, p = cfg.p;
    RngStream dag_rng(cfg.seed, {detail::kTagDag});
    GeneratedDag dag = generate_dag(p, cfg.density, cfg.shared_ordering, m, dag_rng);

    if (cfg.sparsify > 0) {
        // zero the same strictly-lower positions of every T^i
        std::vector<std::pair<int, int>> lower;
        for (int j = 1; j < p; ++j)
            for (int k = 0; k < j; ++k) lower.emplace_back(j, k);
        RngStream sp_rng(cfg.seed, {detail::kTagSparsify});
        for (int t = static_cast<int>(lower.size()) - 1; t > 0; --t) {
            const int k = static_cast<int>(sp_rng.next_u64() % static_cast<std::uint64_t>(t + 1));
            std::swap(lower[t], lower[k]);
        }
        const int count = std::min<int>(cfg.sparsify, static_cast<int>(lower.size()));
        for (int i = 0; i < m; ++i) {
            const CausalOrdering& ord =
                cfg.shared_ordering ? dag.ordering : dag.view_orderings[i];
            Matrix t = triangular_from_adjacency(dag.adjacency.matrices[i], ord);
            for (int z = 0; z < count; ++z) t(lower[z].first, lower[z].second) = 0.0;
            dag.adjacency.matrices[i] = reassemble_from_triangular(t, ord);
        }
    }

    SharedDisturbanceParams params;
    params.seed = cfg.seed;
    params.scales = Matrix(m, p);
    params.noise_stds = Matrix(m, p);
    params.source_kinds.resize(p);
    for (int j = 0; j < p; ++j)
        params.source_kinds[j] =
            cfg.sources.empty() ? SourceKind::gaussian() : cfg.sources[j % cfg.sources.size()];

    RngStream scale_rng(cfg.seed, {detail::kTagScales});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) params.scales(i, j) = scale_rng.uniform(cfg.scale_lo, cfg.scale_hi);

    RngStream noise_rng(cfg.seed, {detail::kTagNoiseParams});
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < p; ++j) {
            double std_ij = 0.0;
            switch (cfg.noise_rule) {
                case NoiseRule::UniformVar: std_ij = std::sqrt(noise_rng.uniform()); break;
                case NoiseRule::UniformStd: std_ij = noise_rng.uniform(); break;
                case NoiseRule::FixedStd: std_ij = cfg.noise_value; break;
            }
            if (cfg.laplace_noise_var >= 0.0 &&
                params.source_kinds[j].family == SourceFamily::Laplace)
                std_ij = std::sqrt(cfg.laplace_noise_var);
            params.noise_stds(i, j) = std_ij;
        }
    }

    if (cfg.noise_diversity_violations > 0) {
        // equalize the scaled noise variance of the first two Gaussian sources
        // in the first k views
        std::vector<int> gaussians;
        for (int j = 0; j < p; ++j)
            if (params.source_kinds[j].is_gaussian()) gaussians.push_back(j);
        if (gaussians.size() >= 2) {
            const int j = gaussians[0], j2 = gaussians[1];
            const int k = std::min(cfg.noise_diversity_violations, m);
            for (int i = 0; i < k; ++i) {
                const double ratio = params.noise_stds(i, j) * params.noise_stds(i, j) /
                                     (params.scales(i, j) * params.scales(i, j));
                params.noise_stds(i, j2) = params.scales(i, j2) * std::sqrt(ratio);
            }
        }
    }

    auto [data, truth] = generate_shared(params, dag, cfg.n);
    return {std::move(data), std::move(truth)};
}

struct IndependentConfig {
    int m = 6;
    int p = 5;
    int n = 1000;
    double density = 1.0;
    double disturbance_std = 1.0;
    double equal_corr = -1.0;  // < 0: randomized full cross-view correlation
    std::uint64_t seed = 0;
};

inline SimulationOutput run_independent(const IndependentConfig& cfg) {
    RngStream dag_rng(cfg.seed, {detail::kTagDag});
    GeneratedDag dag = generate_dag(cfg.p, cfg.density, true, cfg.m, dag_rng);
    auto [data, truth] =
        generate_independent(dag, cfg.disturbance_std, cfg.n, cfg.seed, cfg.equal_corr);
    return {std::move(data), std::move(truth)};
}

// Preset configurations reproducing the benchmark protocols.

inline ProtocolConfig preset_figure1(bool laplace_sources, int n, std::uint64_t seed) {
    ProtocolConfig cfg;
    cfg.m = 5;
    cfg.p = 4;
    cfg.n = n;
    cfg.scale_lo = 0.1;
    cfg.scale_hi = 3.0;
    cfg.seed = seed;
    if (laplace_sources) {
        cfg.sources = {SourceKind::laplace()};
        cfg.noise_rule = NoiseRule::FixedStd;
        cfg.noise_value = 0.5;
    } else {
        cfg.sources = {SourceKind::gaussian()};
        cfg.noise_rule = NoiseRule::UniformStd;
    }
    return cfg;
}

inline IndependentConfig preset_figure2(int n, std::uint64_t seed) {
    IndependentConfig cfg;
    cfg.m = 6;
    cfg.p = 5;
    cfg.n = n;
    cfg.seed = seed;
    return cfg;
}

inline ProtocolConfig preset_noise_diversity(int violations, int n, std::uint64_t seed) {
    ProtocolConfig cfg;
    cfg.m = 5;
    cfg.p = 4;
    cfg.n = n;
    cfg.sources = {SourceKind::gaussian(), SourceKind::gaussian(), SourceKind::laplace(),
                   SourceKind::laplace()};
    cfg.scale_lo = 0.5;
    cfg.scale_hi = 2.0;
    cfg.noise_rule = NoiseRule::UniformVar;
    cfg.laplace_noise_var = 0.5;
    cfg.noise_diversity_violations = violations;
    cfg.seed = seed;
    return cfg;
}

inline ProtocolConfig preset_sparsity(int sparsify, int n, std::uint64_t seed) {
    ProtocolConfig cfg;
    cfg.m = 8;
    cfg.p = 6;
    cfg.n = n;
    cfg.sources = {SourceKind::gennorm(2.5), SourceKind::gennorm(2.5), SourceKind::gennorm(1.5),
                   SourceKind::gennorm(1.5), SourceKind::gaussian(), SourceKind::gaussian()};
    cfg.scale_lo = 0.5;
    cfg.scale_hi = 2.0;
    cfg.noise_rule = NoiseRule::UniformVar;
    cfg.sparsify = sparsify;
    cfg.seed = seed;
    return cfg;
}

inline ProtocolConfig preset_high_dim(int m, int p, int n, std::uint64_t seed) {
    ProtocolConfig cfg;
    cfg.m = m;
    cfg.p = p;
    cfg.n = n;
    // disturbance types split into thirds: sub-Gaussian, Gaussian, super-Gaussian
    cfg.sources = {SourceKind::gennorm(2.5), SourceKind::gaussian(), SourceKind::gennorm(1.5)};
    cfg.scale_lo = 0.5;
    cfg.scale_hi = 2.0;
    cfg.noise_rule = NoiseRule::UniformVar;
    cfg.seed = seed;
    return cfg;
}

}  // namespace limvam
