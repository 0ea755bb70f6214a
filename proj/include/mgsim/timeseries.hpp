#ifndef MGSIM_TIMESERIES_HPP
#define MGSIM_TIMESERIES_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mgsim {

// Community-level hourly series parsed from the input CSV. Energy columns are
// in Wh per hour, price in EUR per MWh as published.
struct TimeSeriesTable {
    std::vector<std::int64_t> hours;      // strictly increasing, 1-hour spacing
    std::vector<double> solar_generation; // Wh
    std::vector<double> total_load;       // Wh
    std::vector<double> utility_price;    // EUR/MWh

    std::size_t size() const { return hours.size(); }
    double max_solar() const;
    double mean_load() const;
};

// Parses a CSV with header columns 'generation solar', 'total load actual' and
// 'price actual' (extra columns ignored, an optional 'time' column is
// validated for hourly monotonic spacing). Missing cells are filled by linear
// interpolation between the nearest valid neighbours; at the ends the nearest
// valid value is carried.
//
// Throws MissingColumn, EmptyTable, NonMonotonicTimestamps.
TimeSeriesTable load_table(std::istream& in);

// Deterministic stand-in community table: diurnal/seasonal solar curve,
// residential load profile and a load-following price, all seeded.
TimeSeriesTable synthetic_table(std::size_t hours, std::uint64_t seed);

}  // namespace mgsim

#endif
