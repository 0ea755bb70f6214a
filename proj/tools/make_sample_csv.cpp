// Writes a synthetic hourly community table in the input CSV schema, for
// running the simulator without the original dataset.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mgsim/timeseries.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic hourly CSV (generation solar / total load actual / price actual)"};
    std::string out_path = "sample.csv";
    std::uint64_t hours = 8760;
    std::uint64_t seed = 7;
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--hours", hours, "number of hourly rows");
    app.add_option("--seed", seed, "RNG seed");
    CLI11_PARSE(app, argc, argv);

    const auto table = mgsim::synthetic_table(hours, seed);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
    }
    out << "generation solar,total load actual,price actual\n";
    char line[128];
    for (std::size_t t = 0; t < table.size(); ++t) {
        std::snprintf(line, sizeof line, "%.3f,%.3f,%.3f\n", table.solar_generation[t],
                      table.total_load[t], table.utility_price[t]);
        out << line;
    }
    std::cout << "wrote " << table.size() << " rows to " << out_path << '\n';
    return 0;
}
