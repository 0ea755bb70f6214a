#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgsim/errors.hpp"
#include "mgsim/report.hpp"
#include "mgsim/sim.hpp"
#include "mgsim/timeseries.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Microgrid energy trading and battery-based sharing simulator"};

    std::string config_path;
    std::vector<std::string> scenario_flags;
    std::vector<std::uint64_t> seed_flags;
    double target_flag = 0.0;
    std::uint64_t horizon_flag = 0;
    std::string out_flag;
    std::string input_flag;
    double eta_flag = -1.0, fee_flag = -1.0, pr_flag = -1.0, balance_flag = -1.0;
    std::uint64_t tau_flag = 0;
    int houses_flag = 0;

    app.add_option("--config", config_path, "key=value config file or run_manifest.json");
    app.add_option("--input", input_flag, "input CSV path (overrides config)");
    app.add_option("--scenario", scenario_flags,
                   "scenario to run (repeatable): NoTrading, Trading, T&B, C-SE, P2P-SE");
    app.add_option("--seed", seed_flags, "RNG seed (repeatable)");
    app.add_option("--target-gen-ratio", target_flag, "calibrate generation/load ratio");
    app.add_option("--horizon", horizon_flag, "number of hourly timesteps");
    app.add_option("--out", out_flag, "output directory");
    app.add_option("--eta", eta_flag, "usable fraction of shared energy");
    app.add_option("--tau", tau_flag, "reservation expiry in timesteps");
    app.add_option("--fee-rate", fee_flag, "C-SE transaction fee rate");
    app.add_option("--houses", houses_flag, "number of houses");
    app.add_option("--pr", pr_flag, "prosumer probability");
    app.add_option("--balance", balance_flag, "initial balance per house, EUR");

    CLI11_PARSE(app, argc, argv);

    try {
        mgsim::RunConfig config;
        if (!config_path.empty()) config = mgsim::parse_config_file(config_path);

        // flags override file values
        if (!input_flag.empty()) config.input_csv = input_flag;
        if (!out_flag.empty()) config.out_dir = out_flag;
        if (!seed_flags.empty()) config.seeds = seed_flags;
        if (target_flag > 0.0) config.targets = {target_flag};
        if (horizon_flag > 0) config.sim.horizon = horizon_flag;
        if (eta_flag >= 0.0) config.sim.eta = eta_flag;
        if (tau_flag > 0) config.sim.tau = tau_flag;
        if (fee_flag >= 0.0) config.sim.fee_rate = fee_flag;
        if (houses_flag > 0) config.sim.n_houses = houses_flag;
        if (pr_flag >= 0.0) config.sim.pr = pr_flag;
        if (balance_flag >= 0.0) config.sim.initial_balance_eur = balance_flag;
        if (!scenario_flags.empty()) {
            config.scenarios.clear();
            for (const auto& name : scenario_flags) {
                auto kind = mgsim::scenario_from_string(name);
                if (!kind) throw mgsim::InvalidValue("scenario", "unknown scenario '" + name + "'");
                config.scenarios.push_back(*kind);
            }
        }
        config.validate();

        std::ifstream csv(config.input_csv);
        if (!csv) throw mgsim::Error("cannot open input CSV '" + config.input_csv + "'");
        const mgsim::TimeSeriesTable table = mgsim::load_table(csv);

        const std::vector<std::uint64_t> seeds =
            config.seeds.empty() ? std::vector{config.sim.seed} : config.seeds;
        const mgsim::BatchReport report =
            mgsim::run_batch(table, config.sim, seeds, config.targets, config.scenarios);
        mgsim::write_batch_reports(config.out_dir, report, config);

        std::cout << "wrote " << report.cells.size() << " run(s) to " << config.out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
