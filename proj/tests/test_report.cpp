#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgsim/errors.hpp"
#include "mgsim/report.hpp"
#include "mgsim/timeseries.hpp"

using namespace mgsim;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config_text(in);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "mgsim_report_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("empty config keeps the built-in defaults") {
    auto config = parse("");
    CHECK(config.sim.eta == 0.5);
    CHECK(config.sim.tau == 12);
    CHECK(config.sim.fee_rate == 0.10);
    CHECK(config.sim.n_houses == 25);
    CHECK(config.sim.pr == 0.5);
    CHECK(config.sim.initial_balance_eur == 100.0);
    CHECK(config.scenarios.size() == 5);
}

TEST_CASE("key=value parsing with comments and lists") {
    auto config = parse(
        "# run setup\n"
        "input = data.csv\n"
        "eta = 0.3   # override\n"
        "tau = 6\n"
        "seeds = 1, 2, 3\n"
        "targets = 0.58, 1.28\n"
        "scenarios = T&B, P2P-SE\n");
    CHECK(config.input_csv == "data.csv");
    CHECK(config.sim.eta == 0.3);
    CHECK(config.sim.tau == 6);
    CHECK(config.seeds == std::vector<std::uint64_t>{1, 2, 3});
    REQUIRE(config.targets.size() == 2);
    CHECK(*config.targets[0] == 0.58);
    REQUIRE(config.scenarios.size() == 2);
    CHECK(config.scenarios[0] == ScenarioKind::TradingWithBatteries);
    CHECK(config.scenarios[1] == ScenarioKind::P2PSE);
}

TEST_CASE("config error paths") {
    CHECK_THROWS_AS(parse("frobnicate = 1\n"), UnknownKey);
    CHECK_THROWS_AS(parse("eta = green\n"), InvalidValue);
    auto bad_eta = parse("eta = 1.5\ninput = x.csv\n");
    CHECK_THROWS_AS(bad_eta.validate(), InvalidValue);
    auto no_input = parse("eta = 0.5\n");
    CHECK_THROWS_AS(no_input.validate(), MissingInputPath);
    CHECK_THROWS_AS(parse("scenarios = Hyperloop\n"), InvalidValue);
}

TEST_CASE("manifest JSON round-trips the config") {
    auto config = parse(
        "input = data.csv\n"
        "eta = 0.3\n"
        "tau = 6\n"
        "houses = 10\n"
        "seeds = 4, 5\n"
        "targets = 0.58\n"
        "scenarios = T&B, P2P-SE\n");
    auto round = parse_manifest_json(config.to_manifest_json());
    CHECK(round.input_csv == config.input_csv);
    CHECK(round.sim.eta == config.sim.eta);
    CHECK(round.sim.tau == config.sim.tau);
    CHECK(round.sim.n_houses == config.sim.n_houses);
    CHECK(round.seeds == config.seeds);
    REQUIRE(round.targets.size() == 1);
    CHECK(*round.targets[0] == 0.58);
    CHECK(round.scenarios == config.scenarios);
    // a second serialization is byte-identical
    CHECK(round.to_manifest_json() == config.to_manifest_json());
}

TEST_CASE("reports cross-foot against the metrics") {
    TempDir dir;
    const auto table = synthetic_table(24 * 14, 10);
    RunConfig config;
    config.input_csv = "synthetic";
    config.sim.horizon = 24 * 14;
    config.sim.target_generation_ratio = 0.58;
    config.scenarios = {ScenarioKind::TradingWithBatteries, ScenarioKind::CSE,
                        ScenarioKind::P2PSE};

    const auto ds = prepare_dataset(table, config.sim);
    const auto cmp = compare_scenarios(ds, config.sim, config.scenarios);
    write_reports(dir.path, cmp, config);

    CHECK(fs::exists(dir.path / "summary.csv"));
    CHECK(fs::exists(dir.path / "per_house.csv"));
    CHECK(fs::exists(dir.path / "timeseries.csv"));
    CHECK(fs::exists(dir.path / "run_manifest.json"));

    // per_house sent column sums to the scenario's shared total
    std::ifstream per_house(dir.path / "per_house.csv");
    std::string line;
    std::getline(per_house, line);  // header
    double p2p_sent = 0.0;
    while (std::getline(per_house, line)) {
        std::stringstream ss(line);
        std::string scenario, house, sent, received;
        std::getline(ss, scenario, ',');
        std::getline(ss, house, ',');
        std::getline(ss, sent, ',');
        std::getline(ss, received, ',');
        if (scenario == "P2P-SE") p2p_sent += std::stod(sent);
    }
    const auto* p2p = cmp.find(ScenarioKind::P2PSE);
    REQUIRE(p2p != nullptr);
    CHECK(p2p_sent == doctest::Approx(p2p->shared_by_prosumers_wh).epsilon(1e-6));

    // timeseries grid column sums to the summary value (within print precision)
    std::ifstream timeseries(dir.path / "timeseries.csv");
    std::getline(timeseries, line);
    double tnb_grid = 0.0;
    while (std::getline(timeseries, line)) {
        std::stringstream ss(line);
        std::string scenario, t, p, up, grid, wasted, shared;
        std::getline(ss, scenario, ',');
        std::getline(ss, t, ',');
        std::getline(ss, p, ',');
        std::getline(ss, up, ',');
        std::getline(ss, grid, ',');
        if (scenario == "T&B") tnb_grid += std::stod(grid);
    }
    const auto* tnb = cmp.find(ScenarioKind::TradingWithBatteries);
    REQUIRE(tnb != nullptr);
    CHECK(std::abs(tnb_grid - tnb->grid_energy_wh) <= 0.01);
}

TEST_CASE("rerunning an identical comparison writes byte-identical files") {
    TempDir dir;
    const auto table = synthetic_table(24 * 7, 2);
    RunConfig config;
    config.input_csv = "synthetic";
    config.sim.horizon = 24 * 7;
    config.scenarios = {ScenarioKind::Trading, ScenarioKind::P2PSE};

    const auto ds = prepare_dataset(table, config.sim);
    write_reports(dir.path / "a", compare_scenarios(ds, config.sim, config.scenarios), config);
    write_reports(dir.path / "b", compare_scenarios(ds, config.sim, config.scenarios), config);
    for (const char* name : {"summary.csv", "per_house.csv", "timeseries.csv",
                             "run_manifest.json"})
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
}
