#include "mgsim/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mgsim/errors.hpp"

namespace mgsim {

namespace {

std::string fmt(double value, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidValue(key, "not a number: '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidValue(key, "not a non-negative integer: '" + value + "'");
    }
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "input") {
        config.input_csv = value;
    } else if (key == "out") {
        config.out_dir = value;
    } else if (key == "eta") {
        config.sim.eta = parse_double(key, value);
    } else if (key == "tau") {
        config.sim.tau = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "fee_rate") {
        config.sim.fee_rate = parse_double(key, value);
    } else if (key == "balance") {
        config.sim.initial_balance_eur = parse_double(key, value);
    } else if (key == "houses") {
        config.sim.n_houses = static_cast<int>(parse_u64(key, value));
    } else if (key == "pr") {
        config.sim.pr = parse_double(key, value);
    } else if (key == "horizon") {
        config.sim.horizon = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "base_load_min") {
        config.sim.profile.base_load_min_wh = parse_double(key, value);
    } else if (key == "base_load_max") {
        config.sim.profile.base_load_max_wh = parse_double(key, value);
    } else if (key == "seeds") {
        config.seeds.clear();
        for (const auto& item : split_list(value)) config.seeds.push_back(parse_u64(key, item));
    } else if (key == "targets") {
        config.targets.clear();
        for (const auto& item : split_list(value)) {
            const double t = parse_double(key, item);
            if (t <= 0.0) throw InvalidValue(key, "targets must be > 0");
            config.targets.emplace_back(t);
        }
    } else if (key == "scenarios") {
        config.scenarios.clear();
        for (const auto& item : split_list(value)) {
            auto kind = scenario_from_string(item);
            if (!kind) throw InvalidValue(key, "unknown scenario '" + item + "'");
            config.scenarios.push_back(*kind);
        }
    } else {
        throw UnknownKey(key);
    }
}

}  // namespace

void RunConfig::validate() const {
    sim.validate();
    if (input_csv.empty()) throw MissingInputPath();
    if (scenarios.empty()) throw InvalidValue("scenarios", "must name at least one scenario");
}

RunConfig parse_config_text(std::istream& in) {
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidValue("line " + std::to_string(lineno), "expected key = value");
        apply_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

RunConfig parse_manifest_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidValue("manifest", e.what());
    }
    RunConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "seeds") {
            config.seeds = value.get<std::vector<std::uint64_t>>();
        } else if (key == "targets") {
            config.targets.clear();
            for (const auto& t : value) config.targets.emplace_back(t.get<double>());
        } else if (key == "scenarios") {
            config.scenarios.clear();
            for (const auto& s : value) {
                auto kind = scenario_from_string(s.get<std::string>());
                if (!kind) throw InvalidValue(key, "unknown scenario");
                config.scenarios.push_back(*kind);
            }
        } else if (value.is_string()) {
            apply_key(config, key, value.get<std::string>());
        } else {
            apply_key(config, key, value.dump());
        }
    }
    return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_manifest_json(text);
    std::istringstream stream(text);
    return parse_config_text(stream);
}

std::string RunConfig::to_manifest_json() const {
    nlohmann::json j;
    j["input"] = input_csv;
    j["out"] = out_dir;
    j["eta"] = fmt(sim.eta, "%.17g");
    j["tau"] = std::to_string(sim.tau);
    j["fee_rate"] = fmt(sim.fee_rate, "%.17g");
    j["balance"] = fmt(sim.initial_balance_eur, "%.17g");
    j["houses"] = std::to_string(sim.n_houses);
    j["pr"] = fmt(sim.pr, "%.17g");
    j["horizon"] = std::to_string(sim.horizon);
    j["base_load_min"] = fmt(sim.profile.base_load_min_wh, "%.17g");
    j["base_load_max"] = fmt(sim.profile.base_load_max_wh, "%.17g");
    std::vector<std::uint64_t> effective_seeds = seeds.empty() ? std::vector{sim.seed} : seeds;
    j["seeds"] = effective_seeds;
    nlohmann::json targets_json = nlohmann::json::array();
    for (const auto& t : targets)
        if (t) targets_json.push_back(*t);
    if (targets.empty() && sim.target_generation_ratio)
        targets_json.push_back(*sim.target_generation_ratio);
    j["targets"] = targets_json;
    nlohmann::json scenarios_json = nlohmann::json::array();
    for (ScenarioKind kind : scenarios) scenarios_json.push_back(to_string(kind));
    j["scenarios"] = scenarios_json;
    return j.dump(2);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure(path.string());
    return out;
}

std::string energy(double wh) { return fmt(wh, "%.3f"); }
std::string money(double eur) { return fmt(eur, "%.2f"); }
std::string price(double eur_per_wh) { return fmt(eur_per_wh, "%.12g"); }

}  // namespace

void write_reports(const std::filesystem::path& dir, const ComparisonTable& table,
                   const RunConfig& config) {
    std::filesystem::create_directories(dir);

    {
        auto out = open_out(dir / "summary.csv");
        out << "metric";
        for (const auto& col : table.columns) out << ',' << to_string(col.scenario);
        out << '\n';
        const auto row = [&](const char* name, auto get) {
            out << name;
            for (const auto& col : table.columns) out << ',' << get(col);
            out << '\n';
        };
        row("grid_energy_wh", [](const auto& m) { return energy(m.grid_energy_wh); });
        row("paid_to_grid_eur", [](const auto& m) { return money(m.paid_to_grid_eur); });
        row("earned_p2p_trading_eur",
            [](const auto& m) { return money(m.earned_p2p_trading_eur); });
        row("wasted_wh", [](const auto& m) { return energy(m.wasted_wh); });
        row("shared_by_prosumers_wh",
            [](const auto& m) { return energy(m.shared_by_prosumers_wh); });
        row("earned_from_sharing_eur",
            [](const auto& m) { return money(m.earned_from_sharing_eur); });
        row("contract_balance_eur", [](const auto& m) { return money(m.contract.balance_eur); });
        row("contract_fees_eur", [](const auto& m) { return money(m.contract.fees_total_eur); });
        row("contract_sales_eur", [](const auto& m) { return money(m.contract.sales_total_eur); });
        row("contract_disbursed_eur",
            [](const auto& m) { return money(m.contract.disbursed_total_eur); });
    }

    {
        auto out = open_out(dir / "per_house.csv");
        out << "scenario,house,shared_sent_wh,shared_received_wh\n";
        for (const auto& col : table.columns) {
            if (!sharing_enabled(col.scenario)) continue;
            for (std::size_t i = 0; i < col.shared_sent_wh.size(); ++i)
                out << to_string(col.scenario) << ',' << i << ',' << energy(col.shared_sent_wh[i])
                    << ',' << energy(col.shared_received_wh[i]) << '\n';
        }
    }

    {
        auto out = open_out(dir / "timeseries.csv");
        out << "scenario,t,p_t,up_t,grid_wh,wasted_wh,shared_wh\n";
        for (const auto& col : table.columns) {
            for (const auto& rec : col.timesteps)
                out << to_string(col.scenario) << ',' << rec.t << ',' << price(rec.price) << ','
                    << price(rec.utility_price) << ',' << fmt(rec.grid_wh, "%.6f") << ','
                    << fmt(rec.wasted_wh, "%.6f") << ',' << fmt(rec.shared_wh, "%.6f") << '\n';
        }
    }

    open_out(dir / "run_manifest.json") << config.to_manifest_json() << '\n';
}

void write_batch_reports(const std::filesystem::path& dir, const BatchReport& report,
                         const RunConfig& config) {
    std::filesystem::create_directories(dir);
    if (report.cells.size() == 1) {
        write_reports(dir, report.cells.front().table, config);
        return;
    }
    for (const auto& cell : report.cells) {
        std::string name = "seed" + std::to_string(cell.seed);
        if (cell.target) name += "_target" + fmt(*cell.target, "%.4g");
        write_reports(dir / name, cell.table, config);
    }
    open_out(dir / "run_manifest.json") << config.to_manifest_json() << '\n';
}

}  // namespace mgsim
