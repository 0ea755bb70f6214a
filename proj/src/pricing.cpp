#include "mgsim/pricing.hpp"

#include <algorithm>

#include "mgsim/errors.hpp"

namespace mgsim {

PriceState PriceState::init(double utility_0, double fit_0) {
    if (fit_0 > utility_0) throw InvalidBounds(fit_0, utility_0);
    PriceState s;
    s.history_ = {utility_0, utility_0, utility_0};
    s.utility_ = utility_0;
    s.fit_ = fit_0;
    return s;
}

void PriceState::set_market(double utility, double fit) {
    if (fit > utility) throw InvalidBounds(fit, utility);
    utility_ = utility;
    fit_ = fit;
}

double PriceState::clearing_price(std::size_t requests, std::size_t offers) {
    double price;
    if (offers == 0) {
        price = utility_;
    } else {
        const double ratio = static_cast<double>(requests) / static_cast<double>(offers);
        price = std::max(fit_, std::min(utility_, ratio * history_mean()));
    }
    history_ = {price, history_[0], history_[1]};
    return price;
}

}  // namespace mgsim
