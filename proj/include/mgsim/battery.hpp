#ifndef MGSIM_BATTERY_HPP
#define MGSIM_BATTERY_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace mgsim {

// Participant id of the smart-contract account (C-SE sharer).
inline constexpr int kContractId = -1;

// A slice of battery charge a sharer entity may resell until it expires.
struct ReservedEntry {
    std::uint64_t id = 0;
    int seller = 0;            // house id or kContractId
    double amount_wh = 0.0;    // remaining sellable amount
    std::size_t created_at = 0;
};

// Lossless storage with a ledger of sharer-controlled reservations. The
// hosting house can only discharge charge that is not reserved.
class Battery {
public:
    Battery() = default;
    explicit Battery(double capacity_wh) : capacity_(capacity_wh) {}

    double capacity() const { return capacity_; }
    double charge() const { return charge_; }
    double reserved_total() const;
    double remaining_capacity() const { return capacity_ - charge_; }
    double usable_charge() const { return charge_ - reserved_total(); }
    std::span<const ReservedEntry> entries() const { return entries_; }

    // Stores min(amount, remaining capacity); returns the accepted amount.
    double charge_in(double amount_wh);

    // Supplies min(amount, usable charge); reservations are untouched.
    double discharge_usable(double amount_wh);

    // Adds reserved charge owned by `seller`. Throws InsufficientCapacity.
    const ReservedEntry& reserve(double amount_wh, int seller, std::size_t t);

    // Sells out of one reservation; returns the amount actually drawn.
    // Throws StaleEntry when the id is not in the ledger.
    double draw_reserved(std::uint64_t entry_id, double amount_wh);

    // Drops every entry older than tau; the charge stays and reverts to the
    // hosting house. Returns the total released.
    double release_expired(std::size_t now, std::size_t tau);

private:
    double capacity_ = 0.0;
    double charge_ = 0.0;
    std::vector<ReservedEntry> entries_;  // insertion order == creation order
    std::uint64_t next_id_ = 1;
};

}  // namespace mgsim

#endif
