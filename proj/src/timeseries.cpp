#include "mgsim/timeseries.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <string>

#include "mgsim/errors.hpp"
#include "mgsim/rng.hpp"

namespace mgsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Comma split honouring double quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    out.push_back(cell);
    return out;
}

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

double parse_cell(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return kMissing;
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error("non-numeric cell: '" + s + "'");
    if (v < 0.0) throw Error("negative value in energy/price column: " + s);
    return v;
}

// Fills NaN runs by linear interpolation; leading/trailing runs take the
// nearest valid value.
void interpolate_missing(std::vector<double>& col) {
    const std::size_t n = col.size();
    std::size_t first_valid = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isnan(col[i])) { first_valid = i; break; }
    }
    if (first_valid == n) throw Error("column has no valid values");
    for (std::size_t i = 0; i < first_valid; ++i) col[i] = col[first_valid];

    std::size_t prev = first_valid;
    for (std::size_t i = first_valid + 1; i < n; ++i) {
        if (std::isnan(col[i])) continue;
        if (i > prev + 1) {
            const double step = (col[i] - col[prev]) / static_cast<double>(i - prev);
            for (std::size_t j = prev + 1; j < i; ++j)
                col[j] = col[prev] + step * static_cast<double>(j - prev);
        }
        prev = i;
    }
    for (std::size_t i = prev + 1; i < n; ++i) col[i] = col[prev];
}

// Accepts "YYYY-MM-DD HH:..." (or 'T' separator); returns hours since
// 1970-01-01 00:00. Timezone suffixes are ignored, only spacing matters.
bool parse_hour_stamp(const std::string& raw, std::int64_t& out) {
    int y, mo, d, h;
    const std::string s = trim(raw);
    if (std::sscanf(s.c_str(), "%d-%d-%d %d", &y, &mo, &d, &h) != 4 &&
        std::sscanf(s.c_str(), "%d-%d-%dT%d", &y, &mo, &d, &h) != 4)
        return false;
    // days-from-civil (Howard Hinnant's algorithm)
    const int yy = y - (mo <= 2);
    const int era = (yy >= 0 ? yy : yy - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(yy - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(mo + (mo > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const std::int64_t days = era * 146097LL + static_cast<std::int64_t>(doe) - 719468LL;
    out = days * 24 + h;
    return true;
}

}  // namespace

double TimeSeriesTable::max_solar() const {
    return solar_generation.empty()
               ? 0.0
               : *std::max_element(solar_generation.begin(), solar_generation.end());
}

double TimeSeriesTable::mean_load() const {
    if (total_load.empty()) return 0.0;
    return std::accumulate(total_load.begin(), total_load.end(), 0.0) /
           static_cast<double>(total_load.size());
}

TimeSeriesTable load_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyTable();
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_line(line);
    auto find_col = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    const auto c_solar = find_col("generation solar");
    const auto c_load = find_col("total load actual");
    const auto c_price = find_col("price actual");
    const auto c_time = find_col("time");
    if (c_solar < 0) throw MissingColumn("generation solar");
    if (c_load < 0) throw MissingColumn("total load actual");
    if (c_price < 0) throw MissingColumn("price actual");

    TimeSeriesTable table;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        auto cell = [&](std::ptrdiff_t c) -> const std::string& {
            static const std::string empty;
            return c >= 0 && static_cast<std::size_t>(c) < cells.size()
                       ? cells[static_cast<std::size_t>(c)]
                       : empty;
        };
        table.solar_generation.push_back(parse_cell(cell(c_solar)));
        table.total_load.push_back(parse_cell(cell(c_load)));
        table.utility_price.push_back(parse_cell(cell(c_price)));

        std::int64_t stamp = static_cast<std::int64_t>(row);
        if (c_time >= 0 && !parse_hour_stamp(cell(c_time), stamp))
            throw NonMonotonicTimestamps(row);
        table.hours.push_back(stamp);
        ++row;
    }
    if (row == 0) throw EmptyTable();

    for (std::size_t i = 1; i < table.hours.size(); ++i)
        if (table.hours[i] != table.hours[i - 1] + 1) throw NonMonotonicTimestamps(i);

    interpolate_missing(table.solar_generation);
    interpolate_missing(table.total_load);
    interpolate_missing(table.utility_price);
    return table;
}

TimeSeriesTable synthetic_table(std::size_t hours, std::uint64_t seed) {
    // Typical residential diurnal load weights, one per hour of day.
    static constexpr double kLoadShape[24] = {
        0.62, 0.58, 0.56, 0.55, 0.56, 0.62, 0.72, 0.82, 0.92, 1.05, 1.18, 1.30,
        1.38, 1.40, 1.35, 1.22, 1.10, 1.05, 1.15, 1.25, 1.20, 1.05, 0.85, 0.68};

    constexpr double kPi = 3.14159265358979323846;
    Rng rng(seed);
    TimeSeriesTable table;
    table.hours.reserve(hours);

    double cloud = 0.8;
    for (std::size_t h = 0; h < hours; ++h) {
        const std::size_t hod = h % 24;
        const double day = static_cast<double>(h) / 24.0;
        if (hod == 0) cloud = rng.uniform(0.55, 0.95);

        const double season = 0.85 + 0.15 * std::sin(2.0 * kPi * (day - 80.0) / 365.0);
        // Aggregate of many differently oriented roofs: flatter than a single
        // panel's elevation curve.
        double elevation = 0.0;
        if (hod >= 5 && hod <= 19)
            elevation = std::pow(std::sin(kPi * (static_cast<double>(hod) - 5.0) / 14.0), 0.75);
        const double solar = 5.5e6 * elevation * season * cloud;

        const double load =
            2.4e7 * kLoadShape[hod] * (1.1 - 0.1 * season) * rng.uniform(0.96, 1.04);
        const double price = 48.0 + 28.0 * kLoadShape[hod] / 1.5 + rng.uniform(-3.0, 3.0);

        table.hours.push_back(static_cast<std::int64_t>(h));
        table.solar_generation.push_back(solar);
        table.total_load.push_back(load);
        table.utility_price.push_back(price);
    }
    return table;
}

}  // namespace mgsim
