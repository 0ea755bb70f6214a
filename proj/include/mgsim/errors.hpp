#ifndef MGSIM_ERRORS_HPP
#define MGSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mgsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// data ingest
struct MissingColumn : Error {
    explicit MissingColumn(const std::string& name)
        : Error("missing required column: '" + name + "'"), column(name) {}
    std::string column;
};

struct EmptyTable : Error {
    EmptyTable() : Error("table has no data rows") {}
};

struct NonMonotonicTimestamps : Error {
    explicit NonMonotonicTimestamps(std::size_t row)
        : Error("timestamps not strictly increasing with 1-hour spacing at row " +
                std::to_string(row)) {}
};

struct DegenerateTable : Error {
    explicit DegenerateTable(const std::string& what) : Error(what) {}
};

struct HorizonTooLong : Error {
    HorizonTooLong(std::size_t requested, std::size_t available)
        : Error("horizon " + std::to_string(requested) + " exceeds table length " +
                std::to_string(available)) {}
};

struct NoGeneration : Error {
    NoGeneration() : Error("dataset has zero total generation, cannot calibrate") {}
};

// core model
struct InsufficientCapacity : Error {
    InsufficientCapacity(double requested, double available)
        : Error("reserve of " + std::to_string(requested) + " Wh exceeds remaining capacity " +
                std::to_string(available) + " Wh") {}
};

struct StaleEntry : Error {
    StaleEntry() : Error("reserved entry is not in this battery's ledger") {}
};

// pricing
struct InvalidBounds : Error {
    InvalidBounds(double fit, double utility)
        : Error("FiT " + std::to_string(fit) + " exceeds utility price " +
                std::to_string(utility)) {}
};

// config / reporting
struct UnknownKey : Error {
    explicit UnknownKey(const std::string& key)
        : Error("unknown config key: '" + key + "'"), key(key) {}
    std::string key;
};

struct InvalidValue : Error {
    InvalidValue(const std::string& key, const std::string& reason)
        : Error("invalid value for '" + key + "': " + reason), key(key) {}
    std::string key;
};

struct MissingInputPath : Error {
    MissingInputPath() : Error("no input CSV path given (config key 'input')") {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& path) : Error("cannot write '" + path + "'"), path(path) {}
    std::string path;
};

}  // namespace mgsim

#endif
