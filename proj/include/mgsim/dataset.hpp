#ifndef MGSIM_DATASET_HPP
#define MGSIM_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mgsim/timeseries.hpp"

namespace mgsim {

struct HouseProfile {
    int id = 0;
    bool is_prosumer = false;
    int panel_count = 0;       // 17..20
    int panel_output_wh = 0;   // 170..350 Wh peak per panel
    double battery_capacity_wh = 0.0;  // 5000..15000
    double base_load_wh = 0.0;         // average hourly load
};

struct ProfileConfig {
    double base_load_min_wh = 300.0;
    double base_load_max_wh = 2500.0;
};

std::vector<HouseProfile> generate_profiles(int n_houses, double pr, std::uint64_t seed,
                                            const ProfileConfig& cfg = {});

// panel_count * panel_output; 0 for consumers.
double peak_solar_capacity(const HouseProfile& profile);

// Peak capacity scaled by the community solar curve normalised to its maximum.
double solar_output(const HouseProfile& profile, std::size_t t, const TimeSeriesTable& table);

// base_load scaled by the community load curve normalised to its mean.
double house_load(const HouseProfile& profile, std::size_t t, const TimeSeriesTable& table);

// Per-house hourly matrices plus converted price series. Prices are carried
// internally as EUR/Wh, FiT fixed at one third of the utility price.
struct Dataset {
    std::vector<HouseProfile> profiles;
    std::vector<std::vector<double>> generation_wh;  // [house][t]
    std::vector<std::vector<double>> load_wh;        // [house][t]
    std::vector<double> utility_price;               // EUR/Wh
    std::vector<double> fit_price;                   // EUR/Wh
    double generation_ratio = 0.0;                   // sum(gen) / sum(load)

    std::size_t horizon() const { return utility_price.size(); }
    std::size_t n_houses() const { return profiles.size(); }
    double total_generation() const;
    double total_load() const;
    std::string to_json_string() const;
};

Dataset build_dataset(const std::vector<HouseProfile>& profiles, const TimeSeriesTable& table,
                      std::size_t horizon);

// Scales every generation cell so the overall generation-to-load ratio hits
// `target`; loads are untouched.
Dataset calibrate_generation_ratio(Dataset dataset, double target);

}  // namespace mgsim

#endif
