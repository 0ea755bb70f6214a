#include "mgsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgsim/errors.hpp"

namespace mgsim {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::NoTrading: return "NoTrading";
        case ScenarioKind::Trading: return "Trading";
        case ScenarioKind::TradingWithBatteries: return "T&B";
        case ScenarioKind::CSE: return "C-SE";
        case ScenarioKind::P2PSE: return "P2P-SE";
    }
    return "?";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name) {
    for (ScenarioKind kind : kAllScenarios)
        if (to_string(kind) == name) return kind;
    // common aliases
    if (name == "TradingWithBatteries" || name == "TB") return ScenarioKind::TradingWithBatteries;
    if (name == "CSE") return ScenarioKind::CSE;
    if (name == "P2PSE") return ScenarioKind::P2PSE;
    return std::nullopt;
}

void SimConfig::validate() const {
    if (eta < 0.0 || eta > 1.0) throw InvalidValue("eta", "must be in [0, 1]");
    if (tau < 1) throw InvalidValue("tau", "must be >= 1");
    if (fee_rate < 0.0 || fee_rate >= 1.0) throw InvalidValue("fee_rate", "must be in [0, 1)");
    if (n_houses < 1) throw InvalidValue("houses", "must be >= 1");
    if (pr < 0.0 || pr > 1.0) throw InvalidValue("pr", "must be in [0, 1]");
    if (target_generation_ratio && *target_generation_ratio <= 0.0)
        throw InvalidValue("target_generation_ratio", "must be > 0");
    if (profile.base_load_min_wh <= 0.0 || profile.base_load_max_wh < profile.base_load_min_wh)
        throw InvalidValue("base_load", "range must be positive and ordered");
}

Dataset prepare_dataset(const TimeSeriesTable& table, const SimConfig& config) {
    config.validate();
    const std::size_t horizon =
        config.horizon == 0 ? table.size() : std::min(config.horizon, table.size());
    auto profiles = generate_profiles(config.n_houses, config.pr, config.seed, config.profile);
    Dataset ds = build_dataset(profiles, table, horizon);
    if (config.target_generation_ratio)
        ds = calibrate_generation_ratio(std::move(ds), *config.target_generation_ratio);
    return ds;
}

SimState init_state(const Dataset& dataset, ScenarioKind scenario, const SimConfig& config) {
    SimState state{{}, {}, PriceState::init(dataset.utility_price[0], dataset.fit_price[0])};
    state.houses.reserve(dataset.n_houses());
    for (const auto& profile : dataset.profiles) {
        HouseState house;
        house.profile = profile;
        house.balance_eur = config.initial_balance_eur;
        house.battery =
            Battery(batteries_enabled(scenario) ? profile.battery_capacity_wh : 0.0);
        state.houses.push_back(std::move(house));
    }
    return state;
}

namespace {

double total_balance(const SimState& state) {
    double sum = 0.0;
    for (const auto& h : state.houses) sum += h.balance_eur;
    return sum;
}

double total_charge(const SimState& state) {
    double sum = 0.0;
    for (const auto& h : state.houses) sum += h.battery.charge();
    return sum;
}

}  // namespace

TimestepRecord run_timestep(SimState& state, const Dataset& dataset, std::size_t t,
                            ScenarioKind scenario, const SimConfig& config,
                            ScenarioMetrics& metrics) {
    const double up_t = dataset.utility_price[t];
    const double fit_t = dataset.fit_price[t];
    const double fee_rate = scenario == ScenarioKind::CSE ? config.fee_rate : 0.0;

    const double balance_before = total_balance(state) + state.contract.balance_eur;
    const double charge_before = total_charge(state);

    // 1. expired reservations revert to their hosts
    for (auto& house : state.houses) house.battery.release_expired(t, config.tau);

    // 2. net position for this hour
    double gen_sum = 0.0, load_sum = 0.0;
    for (std::size_t i = 0; i < state.houses.size(); ++i) {
        const double gen = dataset.generation_wh[i][t];
        const double load = dataset.load_wh[i][t];
        state.houses[i].excess_wh = gen - load;
        gen_sum += gen;
        load_sum += load;
    }

    // 3. order intake (batteries were zero-capacity when disabled)
    Intake intake = submit(state.houses, up_t);

    // 4. one price for the whole timestep
    state.prices.set_market(up_t, fit_t);
    const double p_t =
        state.prices.clearing_price(intake.buy_requests.size(), intake.offers.size());

    // 5. matching
    std::vector<Trade> trades;
    if (trading_enabled(scenario)) {
        trades = match_reserved(intake.buy_requests, state.houses, state.contract, t, config.tau,
                                p_t, fee_rate);
        auto fresh = match_offers(intake.buy_requests, intake.offers, state.houses,
                                  state.contract, p_t, fee_rate, t);
        trades.insert(trades.end(), fresh.begin(), fresh.end());
    }

    // 6. sharing
    std::vector<SharingEvent> events;
    if (scenario == ScenarioKind::CSE) {
        events = share_cse(intake.offers, intake.share_requests, state.houses, state.contract,
                           p_t, config.eta, fee_rate, t);
    } else if (scenario == ScenarioKind::P2PSE) {
        events = share_p2p(intake.offers, intake.share_requests, state.houses, config.eta, t);
    }

    // 7. grid fallback and waste
    const GridSettlement grid = settle_grid(state.houses, intake.offers, up_t);

    // 8. accumulate
    TimestepRecord record;
    record.t = t;
    record.price = p_t;
    record.utility_price = up_t;
    record.grid_wh = grid.energy_wh;
    record.grid_paid_eur = grid.paid_eur;
    record.wasted_wh = grid.wasted_wh;

    metrics.grid_energy_wh += grid.energy_wh;
    metrics.paid_to_grid_eur += grid.paid_eur;
    metrics.wasted_wh += grid.wasted_wh;
    for (const auto& trade : trades) {
        const double net = trade.amount_wh * trade.price - trade.fee_eur;
        if (trade.seller != kContractId) {
            if (trade.source == TradeSource::FreshOffer)
                metrics.earned_p2p_trading_eur += net;
            else
                metrics.earned_from_sharing_eur += net;  // P2P-SE reserved resale
        }
        metrics.trades.push_back(trade);
    }
    for (const auto& event : events) {
        metrics.shared_by_prosumers_wh += event.gross_wh;
        record.shared_wh += event.gross_wh;
        metrics.shared_sent_wh[static_cast<std::size_t>(event.prosumer)] += event.gross_wh;
        metrics.shared_received_wh[static_cast<std::size_t>(event.consumer)] += event.gross_wh;
        if (event.paid_by_contract) metrics.earned_from_sharing_eur += event.payout_eur;
        metrics.sharing_events.push_back(event);
    }

    const double balance_after = total_balance(state) + state.contract.balance_eur;
    const double charge_after = total_charge(state);
    record.energy_residual_wh =
        gen_sum + grid.energy_wh - load_sum - (charge_after - charge_before) - grid.wasted_wh;
    record.money_residual_eur = balance_after - balance_before + grid.paid_eur;

    metrics.timesteps.push_back(record);
    return record;
}

ScenarioMetrics run_scenario(const Dataset& dataset, ScenarioKind scenario,
                             const SimConfig& config) {
    ScenarioMetrics metrics;
    metrics.scenario = scenario;
    metrics.shared_sent_wh.assign(dataset.n_houses(), 0.0);
    metrics.shared_received_wh.assign(dataset.n_houses(), 0.0);

    SimState state = init_state(dataset, scenario, config);
    for (std::size_t t = 0; t < dataset.horizon(); ++t)
        run_timestep(state, dataset, t, scenario, config, metrics);

    metrics.contract = state.contract;
    metrics.final_balance_total_eur = total_balance(state);
    metrics.final_battery_charge_wh = total_charge(state);
    return metrics;
}

const ScenarioMetrics* ComparisonTable::find(ScenarioKind kind) const {
    for (const auto& column : columns)
        if (column.scenario == kind) return &column;
    return nullptr;
}

double ComparisonTable::reduction(double baseline, double value) {
    if (baseline == 0.0) return 0.0;
    return 1.0 - value / baseline;
}

ComparisonTable compare_scenarios(const Dataset& dataset, const SimConfig& config,
                                  const std::vector<ScenarioKind>& scenarios) {
    if (scenarios.empty()) throw Error("scenario list is empty");
    ComparisonTable table;
    table.columns.reserve(scenarios.size());
    for (ScenarioKind scenario : scenarios)
        table.columns.push_back(run_scenario(dataset, scenario, config));
    return table;
}

BatchStat BatchReport::aggregate(std::optional<double> target, ScenarioKind scenario,
                                 double ScenarioMetrics::*metric) const {
    BatchStat stat;
    stat.min = std::numeric_limits<double>::infinity();
    stat.max = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (const auto& cell : cells) {
        if (cell.target != target) continue;
        const ScenarioMetrics* column = cell.table.find(scenario);
        if (!column) continue;
        const double v = (*column).*metric;
        stat.mean += v;
        stat.min = std::min(stat.min, v);
        stat.max = std::max(stat.max, v);
        ++count;
    }
    if (count > 0) stat.mean /= static_cast<double>(count);
    return stat;
}

BatchReport run_batch(const TimeSeriesTable& table, const SimConfig& config,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<std::optional<double>>& targets,
                      const std::vector<ScenarioKind>& scenarios) {
    if (seeds.empty()) throw Error("seed list is empty");
    std::vector<std::optional<double>> effective_targets = targets;
    if (effective_targets.empty()) effective_targets.push_back(config.target_generation_ratio);

    BatchReport report;
    for (std::uint64_t seed : seeds) {
        for (const auto& target : effective_targets) {
            SimConfig cell_config = config;
            cell_config.seed = seed;
            cell_config.target_generation_ratio = target;
            Dataset dataset = prepare_dataset(table, cell_config);
            report.cells.push_back(
                BatchCell{seed, target, compare_scenarios(dataset, cell_config, scenarios)});
        }
    }
    return report;
}

}  // namespace mgsim
