#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "driftbench/catalog.hpp"
#include "driftbench/classifier.hpp"
#include "driftbench/errors.hpp"
#include "driftbench/evaluation.hpp"
#include "driftbench/export.hpp"
#include "driftbench/scenario_io.hpp"
#include "driftbench/stats.hpp"

namespace fs = std::filesystem;
using namespace driftbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRunFailure = 2;
constexpr int kExitIo = 3;

std::vector<Scenario> resolve_scenarios(const std::vector<std::string>& args) {
    std::vector<Scenario> out;
    for (const auto& arg : args) {
        if (arg == "all") {
            for (const auto& name : catalog_names()) {
                out.push_back(build_catalog_entry(name).scenario);
            }
        } else {
            out.push_back(resolve_scenario(arg));
        }
    }
    return out;
}

std::vector<LearnerConfig> resolve_learners(const std::vector<std::string>& args) {
    std::vector<LearnerConfig> out;
    for (const auto& arg : args) {
        if (arg == "all") {
            for (const auto& cfg : builtin_learners()) out.push_back(cfg);
        } else {
            out.push_back(resolve_learner(arg));
        }
    }
    return out;
}

int cmd_generate(const std::string& scenario_arg, std::uint64_t seed,
                 const std::string& out_path, const std::string& format) {
    const Scenario scenario = resolve_scenario(scenario_arg);
    const std::string content = format == "arff" ? render_pattern_arff(scenario, seed)
                                                 : render_pattern_csv(scenario, seed);
    atomic_write(out_path, content);
    return kExitOk;
}

int cmd_run(const std::vector<std::string>& scenario_args,
            const std::vector<std::string>& learner_args, int seeds, long window,
            const std::string& outdir, int threads, double alpha) {
    const auto scenarios = resolve_scenarios(scenario_args);
    const auto learners = resolve_learners(learner_args);

    const fs::path base(outdir);
    fs::create_directories(base / "traces");

    auto trace_sink = [&](const RunTrace& trace) {
        const fs::path path = base / "traces" /
                              (trace.scenario + "_" + trace.learner + "_seed" +
                               std::to_string(trace.seed) + ".csv");
        atomic_write(path, render_trace_csv(trace, window));
    };

    ExperimentResult result =
        run_experiment(scenarios, learners, seeds, window, threads, trace_sink);

    std::vector<SignificanceGroup> groups;
    bool with_flags = false;
    if (seeds >= 2) {
        int comparable = 0;
        for (const auto& cfg : result.learners) {
            if (cfg.kind != "bayes_optimal") ++comparable;
        }
        if (comparable >= 2) {
            groups = significance_groups(result, alpha, /*paired=*/true);
            with_flags = true;
        }
    }
    if (!with_flags) {
        std::cerr << "note: significance groups skipped (need >= 2 seeds and >= 2 "
                     "non-oracle learners)\n";
    }

    for (const auto& scenario : result.scenario_names) {
        atomic_write(base / "curves" / (scenario + ".csv"),
                     render_curves_csv(result, scenario));
    }
    atomic_write(base / "results.csv", render_results_csv(result, with_flags));
    atomic_write(base / "finals.csv", render_finals_csv(result));
    if (with_flags) {
        atomic_write(base / "groups.csv", render_groups_csv(groups));
    }

    if (!result.failures.empty()) {
        for (const auto& f : result.failures) {
            std::cerr << "run failed: " << f.scenario << " x " << f.learner << " seed "
                      << f.seed << ": " << f.message << "\n";
        }
        return kExitRunFailure;
    }
    return kExitOk;
}

int cmd_compare(const std::string& results_dir, double alpha, bool unpaired,
                const std::string& out_dir) {
    const fs::path finals = fs::path(results_dir) / "finals.csv";
    if (!fs::exists(finals)) {
        std::cerr << "error: no finals.csv in '" << results_dir << "'\n";
        return kExitIo;
    }
    ExperimentResult result = load_finals_csv(finals);
    if (result.seeds < 2) {
        std::cerr << "error: compare needs results from >= 2 seeds\n";
        return kExitUsage;
    }
    const auto groups = significance_groups(result, alpha, !unpaired);
    const std::string groups_csv = render_groups_csv(groups);
    const std::string pvalues_csv = render_pvalues_csv(result, !unpaired);
    std::cout << groups_csv << "\n" << pvalues_csv;
    if (!out_dir.empty()) {
        atomic_write(fs::path(out_dir) / "groups.csv", groups_csv);
        atomic_write(fs::path(out_dir) / "pvalues.csv", pvalues_csv);
    }
    return kExitOk;
}

int cmd_report(const std::string& results_dir, const std::string& out_path) {
    const fs::path src(results_dir);
    const fs::path finals = src / "finals.csv";
    if (!fs::exists(finals)) {
        std::cerr << "error: '" << results_dir << "' has no results (missing finals.csv)\n";
        return kExitIo;
    }
    ExperimentResult result = load_finals_csv(finals);
    std::vector<SignificanceGroup> groups;
    int comparable = 0;
    for (const auto& cfg : result.learners) {
        if (cfg.kind != "bayes_optimal") ++comparable;
    }
    if (result.seeds >= 2 && comparable >= 2) {
        groups = significance_groups(result, 0.05, /*paired=*/true);
    }

    const fs::path out(out_path);
    fs::create_directories(out);
    atomic_write(out / "report.txt", render_report_text(result, groups));
    atomic_write(out / "results.csv", render_results_csv(result, !groups.empty()));
    if (fs::exists(src / "curves")) {
        fs::create_directories(out / "curves");
        for (const auto& entry : fs::directory_iterator(src / "curves")) {
            if (entry.path().extension() == ".csv") {
                std::ifstream in(entry.path(), std::ios::binary);
                std::string bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
                atomic_write(out / "curves" / entry.path().filename(), bytes);
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driftbench: drifting Gaussian-mixture streams and prequential "
                 "evaluation of incremental classifiers"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Write one dataset to a file");
    std::string gen_scenario;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    std::string gen_format = "csv";
    generate->add_option("--scenario", gen_scenario, "Catalog name or scenario config file")
        ->required();
    generate->add_option("--seed", gen_seed, "Stream seed")->required();
    generate->add_option("--out", gen_out, "Output file")->required();
    generate->add_option("--format", gen_format, "csv or arff")
        ->check(CLI::IsMember({"csv", "arff"}));

    auto* run = app.add_subcommand("run", "Run the prequential benchmark grid");
    std::vector<std::string> run_scenarios;
    std::vector<std::string> run_learners;
    int run_seeds = 10;
    long run_window = 500;
    std::string run_outdir;
    int run_threads = 0;
    double run_alpha = 0.05;
    run->add_option("--scenario", run_scenarios, "Scenario names/files, or 'all'")->required();
    run->add_option("--learner", run_learners, "Learner ids/files, or 'all'")->required();
    run->add_option("--seeds", run_seeds, "Number of seeds (1..k)")->check(CLI::PositiveNumber);
    run->add_option("--window", run_window, "Sliding window for windowed error")
        ->check(CLI::PositiveNumber);
    run->add_option("--outdir", run_outdir, "Output directory")->required();
    run->add_option("--threads", run_threads, "Worker threads (0 = auto)");
    run->add_option("--alpha", run_alpha, "Significance level for group flags");

    auto* compare = app.add_subcommand("compare", "Significance comparison of a results dir");
    std::string cmp_results;
    double cmp_alpha = 0.05;
    bool cmp_unpaired = false;
    std::string cmp_out;
    compare->add_option("--results", cmp_results, "Results directory from 'run'")->required();
    compare->add_option("--alpha", cmp_alpha, "Significance level");
    compare->add_flag("--unpaired", cmp_unpaired, "Use the unpaired rank-sum test");
    compare->add_option("--out", cmp_out, "Also write groups.csv/pvalues.csv here");

    auto* report = app.add_subcommand("report", "Render a results dir into a report bundle");
    std::string rep_results;
    std::string rep_out;
    report->add_option("--results", rep_results, "Results directory from 'run'")->required();
    report->add_option("--out", rep_out, "Report bundle directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen_scenario, gen_seed, gen_out, gen_format);
        if (run->parsed()) {
            return cmd_run(run_scenarios, run_learners, run_seeds, run_window, run_outdir,
                           run_threads, run_alpha);
        }
        if (compare->parsed()) return cmd_compare(cmp_results, cmp_alpha, cmp_unpaired, cmp_out);
        if (report->parsed()) return cmd_report(rep_results, rep_out);
    } catch (const UnknownScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ScenarioParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRunFailure;
    }
    return kExitUsage;
}
