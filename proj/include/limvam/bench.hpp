#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "limvam/core.hpp"
#include "limvam/estimators.hpp"
#include "limvam/ica_limvam.hpp"
#include "limvam/io.hpp"
#include "limvam/metrics.hpp"
#include "limvam/ordering.hpp"
#include "limvam/synth.hpp"

namespace limvam {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct BenchRow {
    std::string suite;
    std::string config;
    std::string method;
    std::uint64_t seed = 0;
    int n = 0, m = 0, p = 0;
    double b_error_aggregate = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> b_error_per_view;
    double ordering_err = std::numeric_limits<double>::quiet_NaN();
    double spearman_rho = std::numeric_limits<double>::quiet_NaN();
    double fit_seconds = std::numeric_limits<double>::quiet_NaN();
    std::string invariant_failures;  // empty when all structural checks pass
    std::string error;               // empty on success
};

struct BenchOptions {
    std::string suite;  // figure1 | figure2 | noise-diversity | sparsity | high-dim
    int seeds = 50;
    int jobs = 1;
    std::string out;  // CSV path; empty: no file output
};

struct MethodOutput {
    AdjacencySet adjacency;
    CausalOrdering ordering;
    double seconds = 0.0;
};

inline MethodOutput run_method(const MultiViewData& data, const std::string& method) {
    MethodOutput out;
    const auto t0 = std::chrono::steady_clock::now();
    if (method == "pairwise-lr" || method == "pairwise-fc") {
        const FitResult fit = fit_pairwise(
            data, method == "pairwise-lr" ? CriterionKind::LR : CriterionKind::FC);
        out.adjacency = fit.adjacency;
        out.ordering = fit.ordering;
    } else if (method == "ica-j") {
        const IcaFitResult fit = fit_ica(data, OrderingMode::Shared);
        out.adjacency = fit.adjacency;
        out.ordering = fit.ordering;
    } else {
        throw Error("unknown method: " + method);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

namespace detail {

struct BenchCell {
    std::string config;
    std::string method;
    std::uint64_t seed_index = 0;
    std::uint64_t data_seed = 0;
    std::function<SimulationOutput(std::uint64_t)> generate;  // data_seed -> output
};

/// Structural sanity checks applied to every fitted cell; returns a
/// semicolon-joined failure list (empty = all pass).
inline std::string structural_failures(const MultiViewData& data, const MethodOutput& fit,
                                       const std::string& method) {
    std::vector<std::string> failures;
    if (!fit.ordering.is_permutation()) failures.push_back("ordering_not_permutation");
    for (const auto& b : fit.adjacency.matrices) {
        try {
            validate_dag(b);
        } catch (const CyclicGraph&) {
            failures.push_back("cyclic_adjacency");
            break;
        }
    }
    for (const auto& b : fit.adjacency.matrices) {
        const Matrix id = Matrix::Identity(b.rows(), b.cols());
        if (std::abs((id - b).determinant() - 1.0) > 1e-8) {
            failures.push_back("det_i_minus_b_not_one");
            break;
        }
    }
    if (method == "pairwise-lr" || method == "pairwise-fc") {
        const ScoreMatrix scores = score_matrix(
            center(data), method == "pairwise-lr" ? CriterionKind::LR : CriterionKind::FC);
        if (!scores.values.isApprox(-scores.values.transpose(), 0.0) ||
            (scores.values + scores.values.transpose()).cwiseAbs().maxCoeff() != 0.0)
            failures.push_back("score_matrix_not_skew_symmetric");
    }
    std::string joined;
    for (const auto& f : failures) {
        if (!joined.empty()) joined += ';';
        joined += f;
    }
    return joined;
}

inline BenchRow run_cell(const std::string& suite, const BenchCell& cell) {
    BenchRow row;
    row.suite = suite;
    row.config = cell.config;
    row.method = cell.method;
    row.seed = cell.seed_index;
    try {
        const SimulationOutput sim = cell.generate(cell.data_seed);
        row.n = sim.data.n();
        row.m = sim.data.m();
        row.p = sim.data.p();
        const MethodOutput fit = run_method(sim.data, cell.method);
        row.fit_seconds = fit.seconds;
        const BErrorResult be = b_error(sim.truth.adjacency, fit.adjacency);
        row.b_error_aggregate = be.aggregate;
        row.b_error_per_view = be.per_view;
        row.ordering_err = ordering_error(sim.truth.adjacency, fit.ordering);
        row.spearman_rho = spearman(sim.truth.ordering, fit.ordering);
        row.invariant_failures = structural_failures(sim.data, fit, cell.method);
    } catch (const std::exception& err) {
        row.error = err.what();
    }
    return row;
}

inline std::vector<BenchCell> suite_cells(const std::string& suite, int seeds) {
    std::vector<BenchCell> cells;
    const std::vector<std::string> all_methods = {"pairwise-lr", "pairwise-fc", "ica-j"};

    struct Config {
        std::string name;
        std::function<SimulationOutput(std::uint64_t)> generate;
        std::vector<std::string> methods;
    };
    std::vector<Config> configs;

    if (suite == "figure1") {
        for (const bool laplace : {false, true}) {
            for (const int n : {100, 1000, 10000}) {
                const std::string name =
                    std::string(laplace ? "laplace" : "gaussian") + "_n" + std::to_string(n);
                configs.push_back({name,
                                   [laplace, n](std::uint64_t seed) {
                                       return run_protocol(preset_figure1(laplace, n, seed));
                                   },
                                   all_methods});
            }
        }
    } else if (suite == "figure2") {
        configs.push_back({"m6_p5_n1000",
                           [](std::uint64_t seed) {
                               return run_independent(preset_figure2(1000, seed));
                           },
                           all_methods});
    } else if (suite == "noise-diversity") {
        for (int violations = 0; violations <= 5; ++violations) {
            configs.push_back({"violations" + std::to_string(violations),
                               [violations](std::uint64_t seed) {
                                   return run_protocol(preset_noise_diversity(violations, 1000, seed));
                               },
                               {"pairwise-lr", "ica-j"}});
        }
    } else if (suite == "sparsity") {
        for (const int sparsify : {0, 5, 11, 17, 25}) {
            configs.push_back({"sparsify" + std::to_string(sparsify),
                               [sparsify](std::uint64_t seed) {
                                   return run_protocol(preset_sparsity(sparsify, 1000, seed));
                               },
                               all_methods});
        }
    } else if (suite == "high-dim") {
        for (const int m : {3, 5, 8, 12, 16, 20}) {
            for (const int p : {3, 6, 9, 12}) {
                configs.push_back({"m" + std::to_string(m) + "_p" + std::to_string(p),
                                   [m, p](std::uint64_t seed) {
                                       return run_protocol(preset_high_dim(m, p, 1000, seed));
                                   },
                                   all_methods});
            }
        }
    } else {
        throw Error("unknown suite: " + suite);
    }

    for (size_t c = 0; c < configs.size(); ++c) {
        for (int s = 0; s < seeds; ++s) {
            // methods within a (config, seed) cell share the same data draw
            const std::uint64_t data_seed =
                (static_cast<std::uint64_t>(c + 1) << 32) | static_cast<std::uint64_t>(s);
            for (const auto& method : configs[c].methods)
                cells.push_back({configs[c].name, method, static_cast<std::uint64_t>(s), data_seed,
                                 configs[c].generate});
        }
    }
    return cells;
}

inline std::string row_to_csv(const BenchRow& row, bool with_timing) {
    std::string per_view;
    for (double v : row.b_error_per_view) {
        if (!per_view.empty()) per_view += ';';
        per_view += format_double(v);
    }
    std::ostringstream out;
    out << row.suite << ',' << row.config << ',' << row.method << ',' << row.seed << ',' << row.n
        << ',' << row.m << ',' << row.p << ',' << format_double(row.b_error_aggregate) << ','
        << per_view << ',' << format_double(row.ordering_err) << ','
        << format_double(row.spearman_rho) << ','
        << (with_timing ? format_double(row.fit_seconds) : std::string("-")) << ','
        << row.invariant_failures << ',' << row.error;
    return out.str();
}

}  // namespace detail

inline const char* bench_csv_header() {
    return "suite,config,method,seed,n,m,p,b_error,b_error_per_view,ordering_error,spearman,"
           "fit_seconds,invariant_failures,error";
}

/// Run a benchmark suite: a grid of (config, method, seed) cells, optionally
/// over a worker pool. Rows are appended to `options.out` as they finish and
/// the file is rewritten sorted by (config, method, seed) on completion.
/// Cell failures become rows with a populated error column.
inline std::vector<BenchRow> run_bench(const BenchOptions& options,
                                       const std::function<void(const BenchRow&)>& on_row = {}) {
    const std::vector<detail::BenchCell> cells = detail::suite_cells(options.suite, options.seeds);

    std::vector<BenchRow> rows(cells.size());
    std::mutex sink_mutex;
    std::ofstream append;
    if (!options.out.empty()) {
        append.open(options.out, std::ios::binary);
        if (!append) throw IoError("cannot write benchmark CSV: " + options.out);
        append << "# suite=" << options.suite << " seeds=" << options.seeds
               << " jobs=" << options.jobs << " version=" << kLibraryVersion << '\n';
        append << bench_csv_header() << '\n';
        append.flush();
    }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= cells.size()) return;
            BenchRow row = detail::run_cell(options.suite, cells[idx]);
            std::lock_guard<std::mutex> lock(sink_mutex);
            if (append.is_open()) {
                append << detail::row_to_csv(row, true) << '\n';
                append.flush();
            }
            if (on_row) on_row(row);
            rows[idx] = std::move(row);
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.config != b.config) return a.config < b.config;
        if (a.method != b.method) return a.method < b.method;
        return a.seed < b.seed;
    });

    if (append.is_open()) {
        append.close();
        std::ofstream out(options.out, std::ios::binary);
        out << "# suite=" << options.suite << " seeds=" << options.seeds
            << " jobs=" << options.jobs << " version=" << kLibraryVersion << '\n';
        out << bench_csv_header() << '\n';
        for (const auto& row : rows) out << detail::row_to_csv(row, true) << '\n';
    }
    return rows;
}

}  // namespace limvam
