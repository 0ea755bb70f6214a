#include "mgsim/dataset.hpp"

#include <cmath>

#include "json.hpp"
#include "mgsim/errors.hpp"
#include "mgsim/rng.hpp"

namespace mgsim {

std::vector<HouseProfile> generate_profiles(int n_houses, double pr, std::uint64_t seed,
                                            const ProfileConfig& cfg) {
    if (n_houses < 1) throw Error("n_houses must be >= 1");
    if (pr < 0.0 || pr > 1.0) throw Error("pr must be in [0, 1]");

    Rng rng(seed);
    std::vector<HouseProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(n_houses));
    for (int i = 0; i < n_houses; ++i) {
        HouseProfile p;
        p.id = i;
        // Fixed draw order per house keeps profiles stable across pr values.
        p.is_prosumer = rng.bernoulli(pr);
        p.panel_count = static_cast<int>(rng.uniform_int(17, 20));
        p.panel_output_wh = static_cast<int>(rng.uniform_int(170, 350));
        p.battery_capacity_wh = rng.uniform(5000.0, 15000.0);
        p.base_load_wh = rng.uniform(cfg.base_load_min_wh, cfg.base_load_max_wh);
        profiles.push_back(p);
    }
    return profiles;
}

double peak_solar_capacity(const HouseProfile& profile) {
    if (!profile.is_prosumer) return 0.0;
    return static_cast<double>(profile.panel_count) * static_cast<double>(profile.panel_output_wh);
}

double solar_output(const HouseProfile& profile, std::size_t t, const TimeSeriesTable& table) {
    const double max_solar = table.max_solar();
    if (max_solar <= 0.0) throw DegenerateTable("solar column is all zero");
    return peak_solar_capacity(profile) * table.solar_generation[t] / max_solar;
}

double house_load(const HouseProfile& profile, std::size_t t, const TimeSeriesTable& table) {
    const double mean = table.mean_load();
    if (mean <= 0.0) throw DegenerateTable("load column mean is zero");
    return profile.base_load_wh * table.total_load[t] / mean;
}

double Dataset::total_generation() const {
    double sum = 0.0;
    for (const auto& row : generation_wh)
        for (double v : row) sum += v;
    return sum;
}

double Dataset::total_load() const {
    double sum = 0.0;
    for (const auto& row : load_wh)
        for (double v : row) sum += v;
    return sum;
}

std::string Dataset::to_json_string() const {
    nlohmann::json j;
    for (const auto& p : profiles) {
        j["profiles"].push_back({{"id", p.id},
                                 {"is_prosumer", p.is_prosumer},
                                 {"panel_count", p.panel_count},
                                 {"panel_output_wh", p.panel_output_wh},
                                 {"battery_capacity_wh", p.battery_capacity_wh},
                                 {"base_load_wh", p.base_load_wh}});
    }
    j["generation_wh"] = generation_wh;
    j["load_wh"] = load_wh;
    j["utility_price_eur_per_wh"] = utility_price;
    j["fit_price_eur_per_wh"] = fit_price;
    j["generation_ratio"] = generation_ratio;
    return j.dump(2);
}

Dataset build_dataset(const std::vector<HouseProfile>& profiles, const TimeSeriesTable& table,
                      std::size_t horizon) {
    if (horizon > table.size()) throw HorizonTooLong(horizon, table.size());

    Dataset ds;
    ds.profiles = profiles;
    ds.generation_wh.assign(profiles.size(), std::vector<double>(horizon, 0.0));
    ds.load_wh.assign(profiles.size(), std::vector<double>(horizon, 0.0));
    ds.utility_price.resize(horizon);
    ds.fit_price.resize(horizon);

    for (std::size_t t = 0; t < horizon; ++t) {
        const double eur_per_wh = table.utility_price[t] / 1.0e6;  // EUR/MWh -> EUR/Wh
        ds.utility_price[t] = eur_per_wh;
        ds.fit_price[t] = eur_per_wh / 3.0;
    }
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (std::size_t t = 0; t < horizon; ++t) {
            ds.generation_wh[i][t] = solar_output(profiles[i], t, table);
            ds.load_wh[i][t] = house_load(profiles[i], t, table);
        }
    }
    const double load = ds.total_load();
    ds.generation_ratio = load > 0.0 ? ds.total_generation() / load : 0.0;
    return ds;
}

Dataset calibrate_generation_ratio(Dataset dataset, double target) {
    if (target <= 0.0) throw Error("target generation ratio must be > 0");
    if (dataset.generation_ratio <= 0.0) throw NoGeneration();

    const double scale = target / dataset.generation_ratio;
    for (auto& row : dataset.generation_wh)
        for (double& v : row) v *= scale;
    dataset.generation_ratio = target;
    return dataset;
}

}  // namespace mgsim
