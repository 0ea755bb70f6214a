#ifndef MGSIM_PRICING_HPP
#define MGSIM_PRICING_HPP

#include <array>
#include <cstddef>

namespace mgsim {

// Clearing-price state: the last three microgrid prices (most recent first)
// plus the current utility ceiling and FiT floor, all in EUR/Wh.
class PriceState {
public:
    // History is pre-filled with the utility price, the only price every
    // participant knows before any trade. Throws InvalidBounds.
    static PriceState init(double utility_0, double fit_0);

    // Per-timestep bounds update. Throws InvalidBounds when fit > utility.
    void set_market(double utility, double fit);

    // p_t = clamp(requests/offers * mean(history)) to [FiT, utility]; with no
    // offers the ratio is undefined and the utility price is used. The result
    // is appended to the history either way.
    double clearing_price(std::size_t requests, std::size_t offers);

    double utility() const { return utility_; }
    double fit() const { return fit_; }
    double history_mean() const { return (history_[0] + history_[1] + history_[2]) / 3.0; }
    const std::array<double, 3>& history() const { return history_; }

private:
    PriceState() = default;
    std::array<double, 3> history_{};  // [0] most recent
    double utility_ = 0.0;
    double fit_ = 0.0;
};

}  // namespace mgsim

#endif
