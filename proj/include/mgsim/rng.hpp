#ifndef MGSIM_RNG_HPP
#define MGSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace mgsim {

// Seeded generator with fixed draw semantics. The std:: distributions are
// implementation-defined, so the mappings live here to keep runs reproducible
// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

    // uniform integer in [lo, hi] inclusive
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace mgsim

#endif
