#ifndef MGSIM_SIM_HPP
#define MGSIM_SIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgsim/dataset.hpp"
#include "mgsim/market.hpp"
#include "mgsim/pricing.hpp"

namespace mgsim {

enum class ScenarioKind { NoTrading, Trading, TradingWithBatteries, CSE, P2PSE };

inline constexpr ScenarioKind kAllScenarios[] = {
    ScenarioKind::NoTrading, ScenarioKind::Trading, ScenarioKind::TradingWithBatteries,
    ScenarioKind::CSE, ScenarioKind::P2PSE};

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);

// NoTrading and Trading run with storage disabled (capacity treated as zero).
inline bool batteries_enabled(ScenarioKind kind) {
    return kind != ScenarioKind::NoTrading && kind != ScenarioKind::Trading;
}
inline bool trading_enabled(ScenarioKind kind) { return kind != ScenarioKind::NoTrading; }
inline bool sharing_enabled(ScenarioKind kind) {
    return kind == ScenarioKind::CSE || kind == ScenarioKind::P2PSE;
}

struct SimConfig {
    double eta = 0.5;
    std::size_t tau = 12;
    double fee_rate = 0.10;  // applied in C-SE only
    double initial_balance_eur = 100.0;
    int n_houses = 25;
    double pr = 0.5;
    std::size_t horizon = 0;  // 0 means: whole table
    std::uint64_t seed = 42;
    std::optional<double> target_generation_ratio;
    ProfileConfig profile;

    void validate() const;  // throws InvalidValue
};

struct TimestepRecord {
    std::size_t t = 0;
    double price = 0.0;          // EUR/Wh
    double utility_price = 0.0;  // EUR/Wh
    double grid_wh = 0.0;
    double grid_paid_eur = 0.0;
    double wasted_wh = 0.0;
    double shared_wh = 0.0;
    double energy_residual_wh = 0.0;  // conservation residuals, should be ~0
    double money_residual_eur = 0.0;
};

struct ScenarioMetrics {
    ScenarioKind scenario = ScenarioKind::NoTrading;
    double grid_energy_wh = 0.0;
    double paid_to_grid_eur = 0.0;
    double earned_p2p_trading_eur = 0.0;  // houses' net proceeds from fresh offers
    double wasted_wh = 0.0;
    double shared_by_prosumers_wh = 0.0;
    double earned_from_sharing_eur = 0.0;  // C-SE payouts / P2P-SE reserved resales
    ContractAccount contract;
    std::vector<double> shared_sent_wh;      // per house, gross
    std::vector<double> shared_received_wh;  // per house, gross
    std::vector<TimestepRecord> timesteps;
    std::vector<Trade> trades;
    std::vector<SharingEvent> sharing_events;
    double final_balance_total_eur = 0.0;
    double final_battery_charge_wh = 0.0;
};

struct SimState {
    std::vector<HouseState> houses;
    ContractAccount contract;
    PriceState prices;
};

SimState init_state(const Dataset& dataset, ScenarioKind scenario, const SimConfig& config);

TimestepRecord run_timestep(SimState& state, const Dataset& dataset, std::size_t t,
                            ScenarioKind scenario, const SimConfig& config,
                            ScenarioMetrics& metrics);

ScenarioMetrics run_scenario(const Dataset& dataset, ScenarioKind scenario,
                             const SimConfig& config);

struct ComparisonTable {
    std::vector<ScenarioMetrics> columns;

    const ScenarioMetrics* find(ScenarioKind kind) const;
    // 1 - metric(kind) / metric(baseline); 0 when the baseline is 0.
    static double reduction(double baseline, double value);
};

ComparisonTable compare_scenarios(const Dataset& dataset, const SimConfig& config,
                                  const std::vector<ScenarioKind>& scenarios);

// One comparison per (seed, target-generation-ratio) cell, regenerating
// profiles per seed against the shared community table.
struct BatchCell {
    std::uint64_t seed = 0;
    std::optional<double> target;
    ComparisonTable table;
};

struct BatchStat {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct BatchReport {
    std::vector<BatchCell> cells;

    // Aggregate of one metric across seeds for a fixed (target, scenario).
    BatchStat aggregate(std::optional<double> target, ScenarioKind scenario,
                        double ScenarioMetrics::*metric) const;
};

BatchReport run_batch(const TimeSeriesTable& table, const SimConfig& config,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<std::optional<double>>& targets,
                      const std::vector<ScenarioKind>& scenarios);

// Profile generation + matrix build + optional calibration in one step.
Dataset prepare_dataset(const TimeSeriesTable& table, const SimConfig& config);

}  // namespace mgsim

#endif
