#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "limvam/limvam.hpp"

namespace {

std::vector<limvam::SourceKind> parse_sources(const std::string& spec) {
    std::vector<limvam::SourceKind> kinds;
    std::stringstream stream(spec);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token == "gaussian") {
            kinds.push_back(limvam::SourceKind::gaussian());
        } else if (token == "laplace") {
            kinds.push_back(limvam::SourceKind::laplace());
        } else if (token.rfind("gennorm:", 0) == 0) {
            kinds.push_back(limvam::SourceKind::gennorm(std::stod(token.substr(8))));
        } else {
            throw limvam::ParseError("unknown source kind: " + token);
        }
    }
    return kinds;
}

int cmd_fit(const std::string& data_path, const std::string& method, const std::string& ordering,
            const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const limvam::MultiViewData data = limvam::load_dataset(data_path);
    if (method == "ica-j") {
        const limvam::IcaFitResult result = limvam::fit_ica(
            data, ordering == "per-view" ? limvam::OrderingMode::PerView
                                         : limvam::OrderingMode::Shared);
        limvam::save_result(result, out_dir);
    } else {
        const limvam::FitResult result = limvam::fit_pairwise(
            data, method == "pairwise-lr" ? limvam::CriterionKind::LR
                                          : limvam::CriterionKind::FC);
        limvam::save_result(result, out_dir);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "fit method=" << method << " p=" << data.p() << " m=" << data.m()
              << " n=" << data.n() << " seconds=" << seconds << "\n";
    return 0;
}

int cmd_simulate(const std::string& preset, int m, int p, int n, double density,
                 const std::string& sources, int violations, int sparsify, std::uint64_t seed,
                 const std::string& out_dir) {
    limvam::SimulationOutput sim;
    std::string provenance;
    if (preset == "figure1-gaussian" || preset == "figure1-laplace") {
        sim = limvam::run_protocol(
            limvam::preset_figure1(preset == "figure1-laplace", n, seed));
    } else if (preset == "figure2") {
        limvam::IndependentConfig cfg = limvam::preset_figure2(n, seed);
        sim = limvam::run_independent(cfg);
    } else if (preset == "noise-diversity") {
        sim = limvam::run_protocol(limvam::preset_noise_diversity(violations, n, seed));
    } else if (preset == "sparsity") {
        sim = limvam::run_protocol(limvam::preset_sparsity(sparsify, n, seed));
    } else if (preset == "high-dim") {
        sim = limvam::run_protocol(limvam::preset_high_dim(m, p, n, seed));
    } else if (preset.empty()) {
        limvam::ProtocolConfig cfg;
        cfg.m = m;
        cfg.p = p;
        cfg.n = n;
        cfg.density = density;
        if (!sources.empty()) cfg.sources = parse_sources(sources);
        cfg.noise_diversity_violations = violations;
        cfg.sparsify = sparsify;
        cfg.seed = seed;
        sim = limvam::run_protocol(cfg);
    } else {
        std::cerr << "unknown preset: " << preset << "\n";
        return 2;
    }
    {
        std::ostringstream prov;
        prov << "simulate preset=" << (preset.empty() ? "custom" : preset) << " m=" << sim.data.m()
             << " p=" << sim.data.p() << " n=" << sim.data.n() << " seed=" << seed;
        provenance = prov.str();
    }
    limvam::save_dataset(sim.data, out_dir, provenance);
    limvam::save_ground_truth(sim.truth, out_dir);
    std::cout << provenance << "\n";
    return 0;
}

int cmd_bench(const std::string& suite, int seeds, int jobs, const std::string& out) {
    if (const char* env = std::getenv("LIMVAM_THREADS")) {
        try {
            jobs = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "ignoring invalid LIMVAM_THREADS value: " << env << "\n";
        }
    }
    limvam::BenchOptions options;
    options.suite = suite;
    options.seeds = seeds;
    options.jobs = jobs;
    options.out = out;
    size_t failures = 0, total = 0;
    const std::vector<limvam::BenchRow> rows =
        limvam::run_bench(options, [&](const limvam::BenchRow& row) {
            ++total;
            if (!row.error.empty()) ++failures;
        });
    std::cout << "bench suite=" << suite << " cells=" << total << " failures=" << failures
              << (out.empty() ? "" : " out=" + out) << "\n";
    return (total > 0 && failures == total) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-view linear causal discovery"};
    app.require_subcommand(1);

    // fit
    std::string fit_data, fit_method, fit_ordering = "shared", fit_out = ".";
    std::uint64_t fit_seed = 0;
    CLI::App* fit = app.add_subcommand("fit", "fit a dataset");
    fit->add_option("--data", fit_data, "dataset manifest JSON")->required();
    fit->add_option("--method", fit_method, "pairwise-lr | pairwise-fc | ica-j")
        ->required()
        ->check(CLI::IsMember({"pairwise-lr", "pairwise-fc", "ica-j"}));
    fit->add_option("--ordering", fit_ordering, "shared | per-view (ica-j only)")
        ->check(CLI::IsMember({"shared", "per-view"}));
    fit->add_option("--out", fit_out, "output directory");
    fit->add_option("--seed", fit_seed, "seed (recorded; fits are deterministic)");

    // simulate
    std::string sim_preset, sim_sources, sim_out = ".";
    int sim_m = 5, sim_p = 4, sim_n = 1000, sim_violations = 0, sim_sparsify = 0;
    double sim_density = 1.0;
    std::uint64_t sim_seed = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "generate synthetic data");
    simulate->add_option("--preset", sim_preset,
                         "figure1-gaussian | figure1-laplace | figure2 | noise-diversity | "
                         "sparsity | high-dim");
    simulate->add_option("--m", sim_m, "number of views");
    simulate->add_option("--p", sim_p, "number of variables");
    simulate->add_option("--n", sim_n, "number of samples");
    simulate->add_option("--density", sim_density, "edge keep probability");
    simulate->add_option("--sources", sim_sources,
                         "comma list: gaussian | laplace | gennorm:<beta>");
    simulate->add_option("--noise-diversity-violations", sim_violations,
                         "views with equalized scaled noise ratios");
    simulate->add_option("--sparsify", sim_sparsify, "zeroed lower-triangular entries");
    simulate->add_option("--seed", sim_seed, "generator seed");
    simulate->add_option("--out", sim_out, "output directory");

    // bench
    std::string bench_suite, bench_out;
    int bench_seeds = 50, bench_jobs = 1;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("--suite", bench_suite,
                      "figure1 | figure2 | noise-diversity | sparsity | high-dim")
        ->required()
        ->check(CLI::IsMember({"figure1", "figure2", "noise-diversity", "sparsity", "high-dim"}));
    bench->add_option("--seeds", bench_seeds, "seeds per configuration");
    bench->add_option("--jobs", bench_jobs, "worker threads (LIMVAM_THREADS overrides)");
    bench->add_option("--out", bench_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_data, fit_method, fit_ordering, fit_out);
        if (simulate->parsed())
            return cmd_simulate(sim_preset, sim_m, sim_p, sim_n, sim_density, sim_sources,
                                sim_violations, sim_sparsify, sim_seed, sim_out);
        if (bench->parsed()) return cmd_bench(bench_suite, bench_seeds, bench_jobs, bench_out);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
