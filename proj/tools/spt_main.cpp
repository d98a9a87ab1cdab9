// spt: rank-based return decomposition, local times and null-market
// simulation from the command line.
//
// Exit codes: 0 success, 1 validation error, 2 runtime or coverage error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "spt/errors.hpp"
#include "spt/report.hpp"
#include "spt/simulate.hpp"

namespace {

struct RunArgs {
    std::string config;
    std::string out_dir;
};

spt::RunConfig load_run(const RunArgs& args) {
    const std::filesystem::path path(args.config);
    auto cfg = spt::run_config_from(spt::KeyValueConfig::load(path), path.parent_path());
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

int cmd_validate(const std::string& panel_path, const std::string& exclusions) {
    std::vector<spt::Exclusion> ex;
    if (!exclusions.empty()) ex = spt::load_exclusions(exclusions);
    const auto panel = spt::load_panel(panel_path, {}, ex);
    std::size_t min_listed = panel.num_stocks(), max_listed = 0;
    for (std::size_t t = 0; t < panel.num_dates(); ++t) {
        const auto n = panel.present_stocks(t).size();
        min_listed = std::min(min_listed, n);
        max_listed = std::max(max_listed, n);
    }
    std::cout << "dates        " << panel.num_dates();
    if (panel.num_dates() > 0)
        std::cout << " (" << spt::format_date(panel.dates().front()) << " .. "
                  << spt::format_date(panel.dates().back()) << ")";
    std::cout << "\nstocks       " << panel.num_stocks() << "\nlisted/date  " << min_listed << " .. "
              << max_listed << "\ndividends    " << (panel.has_dividends() ? "yes" : "no")
              << "\nattributes  ";
    for (const auto& a : panel.attribute_names()) std::cout << " " << a;
    std::cout << "\nok\n";
    return 0;
}

int cmd_decompose(const RunArgs& args, const std::string& command) {
    const auto cfg = load_run(args);
    const auto panel = spt::load_run_panel(cfg);
    auto result = spt::run_decomposition(cfg, panel);
    spt::write_manifest(cfg.out_dir, command, cfg.config_hash, result.artifacts);
    std::cout << "wrote " << result.artifacts.size() << " files to " << cfg.out_dir.string() << "\n";
    return 0;
}

int cmd_localtime(const RunArgs& args) {
    const auto cfg = load_run(args);
    const auto panel = spt::load_run_panel(cfg);
    auto result = spt::run_localtimes(cfg, panel);
    spt::write_manifest(cfg.out_dir, "localtime", cfg.config_hash, result.artifacts);
    std::cout << "wrote " << result.artifacts.size() << " files to " << cfg.out_dir.string() << "\n";
    return 0;
}

int cmd_report(const RunArgs& args) {
    const auto cfg = load_run(args);
    const auto panel = spt::load_run_panel(cfg);
    auto decomposition = spt::run_decomposition(cfg, panel);
    auto localtimes = spt::run_localtimes(cfg, panel);
    auto artifacts = decomposition.artifacts;
    artifacts.insert(artifacts.end(), localtimes.artifacts.begin(), localtimes.artifacts.end());
    spt::write_manifest(cfg.out_dir, "report", cfg.config_hash, artifacts);
    std::cout << "wrote " << artifacts.size() << " files to " << cfg.out_dir.string() << "\n";
    return 0;
}

int cmd_simulate(const std::string& config, const std::string& out) {
    const auto sim = spt::sim_config_from(spt::KeyValueConfig::load(config));
    const auto panel = spt::simulate(sim);
    spt::save_panel(panel, out);
    std::cout << "simulated " << panel.num_stocks() << " stocks x " << panel.num_dates() << " dates -> "
              << out << "\n";
    return 0;
}

int cmd_null(const std::string& config, std::size_t m, std::size_t horizon, std::size_t trials) {
    const auto sim = spt::sim_config_from(spt::KeyValueConfig::load(config));
    const auto s = spt::null_size_experiment(sim, m, horizon == 0 ? sim.n_periods : horizon, trials);
    std::printf("trials %zu\nmean(r_S - r_L) %.6f\nsd %.6f\nfraction r_S > r_L %.4f\n", s.n_trials,
                s.mean, s.stddev, s.fraction_positive);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-based equity return decomposition and local-time estimation"};
    app.require_subcommand(1);

    std::string panel_path, exclusions;
    auto* validate = app.add_subcommand("validate", "Load and validate a panel CSV");
    validate->add_option("panel", panel_path, "Long-format panel CSV")->required();
    validate->add_option("--exclusions", exclusions, "Exclusion list CSV (stock_id,start_date,end_date)");

    RunArgs run;
    auto add_run = [&](CLI::App* sub) {
        sub->add_option("--config", run.config, "Run config (key = value)")->required();
        sub->add_option("--out-dir", run.out_dir, "Output directory (overrides out_dir)");
    };
    auto* decompose = app.add_subcommand("decompose", "Portfolio decompositions and aggregate tables");
    add_run(decompose);
    auto* localtime = app.add_subcommand("localtime", "Local times at rank boundaries");
    add_run(localtime);
    auto* report = app.add_subcommand("report", "Decompositions, tables and local times");
    add_run(report);

    std::string sim_config, sim_out;
    auto* simulate = app.add_subcommand("simulate", "Simulate a null-market panel");
    simulate->add_option("--config", sim_config, "Simulator config (key = value)")->required();
    simulate->add_option("--out", sim_out, "Output panel CSV")->required();

    std::size_t m = 0, horizon = 0, trials = 500;
    auto* null = app.add_subcommand("null", "Small-vs-Large spread across simulated null markets");
    null->add_option("--config", sim_config, "Simulator config (key = value)")->required();
    null->add_option("--m", m, "Large portfolio size")->required();
    null->add_option("--horizon", horizon, "Periods per trial (default n_periods)");
    null->add_option("--trials", trials, "Number of trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return cmd_validate(panel_path, exclusions);
        if (*decompose) return cmd_decompose(run, "decompose");
        if (*localtime) return cmd_localtime(run);
        if (*report) return cmd_report(run);
        if (*simulate) return cmd_simulate(sim_config, sim_out);
        if (*null) return cmd_null(sim_config, m, horizon, trials);
    } catch (const spt::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
