#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "limvam/bench.hpp"

using namespace limvam;

namespace {

std::string temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "limvam_bench_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string row_key(const BenchRow& row) {
    return row.config + "|" + row.method + "|" + std::to_string(row.seed);
}

}  // namespace

TEST_CASE("single-seed figure2 run produces clean rows for every method") {
    BenchOptions options;
    options.suite = "figure2";
    options.seeds = 1;
    options.jobs = 1;
    const std::vector<BenchRow> rows = run_bench(options);
    REQUIRE(rows.size() == 3);
    std::set<std::string> methods;
    for (const BenchRow& row : rows) {
        methods.insert(row.method);
        CHECK(row.error.empty());
        CHECK(row.invariant_failures.empty());
        CHECK(row.n == 1000);
        CHECK(row.m == 6);
        CHECK(row.p == 5);
        CHECK(std::isfinite(row.b_error_aggregate));
        CHECK(row.b_error_per_view.size() == 6);
        CHECK((row.ordering_err == 0.0 || row.ordering_err == 1.0));
        CHECK(row.spearman_rho >= -1.0);
        CHECK(row.spearman_rho <= 1.0);
        CHECK(row.fit_seconds >= 0.0);
    }
    CHECK(methods == std::set<std::string>{"ica-j", "pairwise-fc", "pairwise-lr"});
}

TEST_CASE("parallel run matches serial run apart from timing") {
    BenchOptions serial;
    serial.suite = "noise-diversity";
    serial.seeds = 2;
    serial.jobs = 1;
    const std::vector<BenchRow> a = run_bench(serial);

    BenchOptions parallel = serial;
    parallel.jobs = 2;
    const std::vector<BenchRow> b = run_bench(parallel);

    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == 6u * 2u * 2u);  // 6 configs x 2 methods x 2 seeds
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(row_key(a[i]) == row_key(b[i]));
        CHECK(a[i].b_error_aggregate == b[i].b_error_aggregate);
        CHECK(a[i].ordering_err == b[i].ordering_err);
        CHECK(a[i].spearman_rho == b[i].spearman_rho);
        CHECK(a[i].invariant_failures == b[i].invariant_failures);
        CHECK(a[i].error == b[i].error);
    }
}

TEST_CASE("unknown suite is rejected") {
    BenchOptions options;
    options.suite = "figure99";
    CHECK_THROWS_AS(run_bench(options), Error);
}

TEST_CASE("csv output carries the header, a config echo, and sorted rows") {
    BenchOptions options;
    options.suite = "figure2";
    options.seeds = 2;
    options.jobs = 2;
    options.out = temp_path("figure2.csv");
    int callbacks = 0;
    const std::vector<BenchRow> rows =
        run_bench(options, [&](const BenchRow&) { ++callbacks; });
    CHECK(callbacks == static_cast<int>(rows.size()));

    std::ifstream in(options.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.find("# suite=figure2 seeds=2 jobs=2 version=") == 0);
    REQUIRE(std::getline(in, line));
    CHECK(line == bench_csv_header());
    std::vector<std::string> body;
    while (std::getline(in, line)) body.push_back(line);
    REQUIRE(body.size() == rows.size());
    // final rewrite is sorted by (config, method, seed)
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(body[i].find(rows[i].method + "," + std::to_string(rows[i].seed) + ",") !=
              std::string::npos);
    }
    std::vector<std::string> keys;
    for (const BenchRow& row : rows) keys.push_back(row_key(row));
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("methods in one cell see the same data draw") {
    // with a shared data seed the truth-side columns of every method in a
    // (config, seed) cell must agree on the generated dimensions and truth
    BenchOptions options;
    options.suite = "sparsity";
    options.seeds = 1;
    options.jobs = 1;
    const std::vector<BenchRow> rows = run_bench(options);
    REQUIRE(rows.size() == 5u * 3u);
    for (const BenchRow& row : rows) {
        CHECK(row.error.empty());
        CHECK(row.m == 8);
        CHECK(row.p == 6);
    }
}
