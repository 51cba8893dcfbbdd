#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "limvam/core.hpp"
#include "limvam/errors.hpp"
#include "limvam/estimators.hpp"
#include "limvam/ica_limvam.hpp"
#include "limvam/synth.hpp"

namespace limvam {

struct DatasetManifest {
    std::string version = "1";
    int m = 0;
    int p = 0;
    int n = 0;
    std::vector<std::string> view_files;  // relative to the manifest directory
    std::vector<std::string> variable_names;  // optional, length p when present
    std::string provenance;
    bool samples_as_rows = true;  // view CSVs are n x p when true, p x n otherwise
};

namespace detail {

/// Locale-independent decimal with 17 significant digits (round-trip exact
/// for doubles).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_csv_matrix(const std::string& path, const Matrix& mat) {
    std::ofstream out(path, std::ios::binary);  // binary: normalized '\n' endings
    if (!out) throw IoError("cannot open for writing: " + path);
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            if (c) out << ',';
            out << format_double(mat(r, c));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

inline Matrix read_csv_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        size_t start = 0;
        int column = 1;
        while (true) {
            const size_t comma = line.find(',', start);
            const std::string_view cell(line.data() + start,
                                        (comma == std::string::npos ? line.size() : comma) - start);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw ParseError(path + ":" + std::to_string(lineno) + ":" +
                                 std::to_string(column) + ": not a number: '" + std::string(cell) +
                                 "'");
            row.push_back(value);
            if (comma == std::string::npos) break;
            start = comma + 1;
            ++column;
        }
        if (!rows.empty() && row.size() != rows[0].size())
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": inconsistent column count (expected " +
                             std::to_string(rows[0].size()) + ", found " +
                             std::to_string(row.size()) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": empty CSV");
    Matrix mat(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[0].size(); ++c)
            mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return mat;
}

}  // namespace detail

inline DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(path + ": " + err.what());
    }
    DatasetManifest manifest;
    try {
        manifest.version = j.value("version", "1");
        manifest.m = j.at("m").get<int>();
        manifest.p = j.at("p").get<int>();
        manifest.n = j.at("n").get<int>();
        manifest.view_files = j.at("view_files").get<std::vector<std::string>>();
        if (j.contains("variable_names"))
            manifest.variable_names = j.at("variable_names").get<std::vector<std::string>>();
        manifest.provenance = j.value("provenance", "");
        manifest.samples_as_rows = j.value("samples_as_rows", true);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(path + ": " + err.what());
    }
    if (static_cast<int>(manifest.view_files.size()) != manifest.m)
        throw DimensionMismatch(path + ": manifest declares m = " + std::to_string(manifest.m) +
                                " but lists " + std::to_string(manifest.view_files.size()) +
                                " view files");
    if (!manifest.variable_names.empty() &&
        static_cast<int>(manifest.variable_names.size()) != manifest.p)
        throw DimensionMismatch(path + ": variable_names length != p");
    return manifest;
}

/// Load a dataset described by a JSON manifest; layout is normalized to
/// [view][variable][sample] regardless of the on-disk orientation.
inline MultiViewData load_dataset(const std::string& manifest_path) {
    const DatasetManifest manifest = read_manifest(manifest_path);
    const auto dir = std::filesystem::path(manifest_path).parent_path();
    std::vector<Matrix> views;
    views.reserve(manifest.m);
    for (const auto& rel : manifest.view_files) {
        Matrix raw = detail::read_csv_matrix((dir / rel).string());
        if (manifest.samples_as_rows) raw.transposeInPlace();
        if (raw.rows() != manifest.p || raw.cols() != manifest.n)
            throw DimensionMismatch(rel + ": expected " + std::to_string(manifest.p) + " x " +
                                    std::to_string(manifest.n) + " (variables x samples), found " +
                                    std::to_string(raw.rows()) + " x " + std::to_string(raw.cols()));
        views.push_back(std::move(raw));
    }
    return MultiViewData(std::move(views));
}

/// Write a dataset plus its manifest into `dir`; returns the manifest path.
inline std::string save_dataset(const MultiViewData& data, const std::string& dir,
                                const std::string& provenance = "",
                                bool samples_as_rows = true) {
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["version"] = "1";
    j["m"] = data.m();
    j["p"] = data.p();
    j["n"] = data.n();
    j["samples_as_rows"] = samples_as_rows;
    j["provenance"] = provenance;
    std::vector<std::string> files;
    for (int i = 0; i < data.m(); ++i) {
        const std::string name = "view_" + std::to_string(i) + ".csv";
        const Matrix out = samples_as_rows ? data.views[i].transpose() : data.views[i];
        detail::write_csv_matrix((std::filesystem::path(dir) / name).string(), out);
        files.push_back(name);
    }
    j["view_files"] = files;
    const std::string manifest_path = (std::filesystem::path(dir) / "manifest.json").string();
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + manifest_path);
    out << j.dump(2) << '\n';
    return manifest_path;
}

namespace detail {

inline nlohmann::json ordering_to_json(const CausalOrdering& ordering) {
    return nlohmann::json(ordering.perm);
}

}  // namespace detail

/// Write ground truth (adjacency, ordering, generator parameters) next to a
/// simulated dataset.
inline void save_ground_truth(const GroundTruth& truth, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (int i = 0; i < truth.adjacency.m(); ++i)
        detail::write_csv_matrix(
            (std::filesystem::path(dir) / ("B_true_view_" + std::to_string(i) + ".csv")).string(),
            truth.adjacency.matrices[i]);
    nlohmann::json j;
    j["ordering"] = detail::ordering_to_json(truth.ordering);
    if (!truth.view_orderings.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& ord : truth.view_orderings) arr.push_back(detail::ordering_to_json(ord));
        j["view_orderings"] = arr;
    }
    if (truth.has_params) {
        std::vector<std::string> kinds;
        for (const auto& k : truth.params.source_kinds) kinds.push_back(to_string(k));
        j["source_kinds"] = kinds;
        j["seed"] = truth.params.seed;
        detail::write_csv_matrix((std::filesystem::path(dir) / "scales.csv").string(),
                                 truth.params.scales);
        detail::write_csv_matrix((std::filesystem::path(dir) / "noise_stds.csv").string(),
                                 truth.params.noise_stds);
    }
    std::ofstream out((std::filesystem::path(dir) / "ground_truth.json").string(),
                      std::ios::binary);
    if (!out) throw IoError("cannot write ground truth JSON in " + dir);
    out << j.dump(2) << '\n';
}

/// Load the adjacency/ordering half of a saved ground truth (enough for
/// metrics against a fitted result).
inline GroundTruth load_ground_truth(const std::string& dir, int m) {
    GroundTruth truth;
    std::ifstream in((std::filesystem::path(dir) / "ground_truth.json").string());
    if (!in) throw IoError("cannot open ground_truth.json in " + dir);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(dir + "/ground_truth.json: " + err.what());
    }
    truth.ordering.perm = j.at("ordering").get<std::vector<int>>();
    for (int i = 0; i < m; ++i)
        truth.adjacency.matrices.push_back(detail::read_csv_matrix(
            (std::filesystem::path(dir) / ("B_true_view_" + std::to_string(i) + ".csv")).string()));
    return truth;
}

struct SavedResultPaths {
    std::vector<std::string> adjacency_csvs;
    std::string summary_json;
};

namespace detail {

inline SavedResultPaths save_adjacency_and_summary(const AdjacencySet& adjacency,
                                                   const nlohmann::json& summary,
                                                   const std::string& dir) {
    std::filesystem::create_directories(dir);
    SavedResultPaths paths;
    for (int i = 0; i < adjacency.m(); ++i) {
        const std::string path =
            (std::filesystem::path(dir) / ("B_view_" + std::to_string(i) + ".csv")).string();
        write_csv_matrix(path, adjacency.matrices[i]);
        paths.adjacency_csvs.push_back(path);
    }
    paths.summary_json = (std::filesystem::path(dir) / "result.json").string();
    std::ofstream out(paths.summary_json, std::ios::binary);
    if (!out) throw IoError("cannot write " + paths.summary_json);
    out << summary.dump(2) << '\n';
    return paths;
}

}  // namespace detail

inline SavedResultPaths save_result(const FitResult& result, const std::string& dir) {
    nlohmann::json j;
    j["method"] = std::string("pairwise-") + to_string(result.diagnostics.kind);
    j["ordering"] = detail::ordering_to_json(result.ordering);
    nlohmann::json diag = nlohmann::json::object();
    diag["ordering_seconds"] = result.diagnostics.ordering_seconds;
    diag["coefficients_seconds"] = result.diagnostics.coefficients_seconds;
    diag["residual_cov_conditions"] = result.diagnostics.residual_cov_conditions;
    diag["sample_size_warning"] = result.diagnostics.sample_size_warning;
    j["diagnostics"] = diag;
    return detail::save_adjacency_and_summary(result.adjacency, j, dir);
}

inline SavedResultPaths save_result(const IcaFitResult& result, const std::string& dir) {
    nlohmann::json j;
    j["method"] = "ica-j";
    j["ordering"] = detail::ordering_to_json(result.ordering);
    if (!result.view_orderings.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& ord : result.view_orderings) arr.push_back(detail::ordering_to_json(ord));
        j["view_orderings"] = arr;
    }
    nlohmann::json diag = nlohmann::json::object();
    diag["converged"] = result.converged;
    diag["sweeps"] = result.sweeps;
    diag["sign_disagreements"] = result.sign_disagreements;
    diag["clamped_noise_count"] = result.clamped_noise_count;
    j["diagnostics"] = diag;
    return detail::save_adjacency_and_summary(result.adjacency, j, dir);
}

struct MetricRow {
    std::string estimator;
    std::uint64_t seed = 0;
    int n = 0, m = 0, p = 0;
    std::string metric;
    double value = 0.0;
};

/// One CSV row per (estimator, seed, metric), sorted by (estimator, seed)
/// for reproducible diffs.
inline std::string save_metrics(std::vector<MetricRow> rows, const std::string& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
        if (a.estimator != b.estimator) return a.estimator < b.estimator;
        return a.seed < b.seed;
    });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write metrics CSV: " + path);
    out << "estimator,seed,n,m,p,metric,value\n";
    for (const auto& row : rows)
        out << row.estimator << ',' << row.seed << ',' << row.n << ',' << row.m << ',' << row.p
            << ',' << row.metric << ',' << detail::format_double(row.value) << '\n';
    return path;
}

}  // namespace limvam
