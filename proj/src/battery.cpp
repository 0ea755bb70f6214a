#include "mgsim/battery.hpp"

#include <algorithm>
#include <cassert>

#include "mgsim/errors.hpp"

namespace mgsim {

namespace {
// Entries are purged once empty; dust below this is treated as empty.
constexpr double kDust = 1e-12;
}

double Battery::reserved_total() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.amount_wh;
    return sum;
}

double Battery::charge_in(double amount_wh) {
    assert(amount_wh >= 0.0);
    const double accepted = std::min(amount_wh, remaining_capacity());
    charge_ += accepted;
    return accepted;
}

double Battery::discharge_usable(double amount_wh) {
    assert(amount_wh >= 0.0);
    const double supplied = std::min(amount_wh, std::max(0.0, usable_charge()));
    charge_ -= supplied;
    return supplied;
}

const ReservedEntry& Battery::reserve(double amount_wh, int seller, std::size_t t) {
    if (amount_wh > remaining_capacity() + kDust)
        throw InsufficientCapacity(amount_wh, remaining_capacity());
    charge_ += std::min(amount_wh, remaining_capacity());
    entries_.push_back(ReservedEntry{next_id_++, seller, amount_wh, t});
    return entries_.back();
}

double Battery::draw_reserved(std::uint64_t entry_id, double amount_wh) {
    assert(amount_wh >= 0.0);
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const ReservedEntry& e) { return e.id == entry_id; });
    if (it == entries_.end()) throw StaleEntry();
    const double drawn = std::min(amount_wh, it->amount_wh);
    it->amount_wh -= drawn;
    charge_ -= drawn;
    if (it->amount_wh <= kDust) entries_.erase(it);
    return drawn;
}

double Battery::release_expired(std::size_t now, std::size_t tau) {
    double released = 0.0;
    std::erase_if(entries_, [&](const ReservedEntry& e) {
        if (now >= e.created_at && now - e.created_at >= tau) {
            released += e.amount_wh;
            return true;
        }
        return false;
    });
    return released;
}

}  // namespace mgsim
