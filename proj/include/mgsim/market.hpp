#ifndef MGSIM_MARKET_HPP
#define MGSIM_MARKET_HPP

#include <cstdint>
#include <vector>

#include "mgsim/house.hpp"

namespace mgsim {

struct Offer {
    int prosumer = 0;
    double amount_wh = 0.0;  // remaining unmatched
    std::uint64_t seq = 0;
};

struct BuyRequest {
    int consumer = 0;
    double amount_wh = 0.0;  // remaining unmet
    std::uint64_t seq = 0;
};

struct ShareRequest {
    int consumer = 0;
    double amount_wh = 0.0;
    std::uint64_t seq = 0;
};

enum class TradeSource { FreshOffer, ReservedEnergy };

struct Trade {
    int buyer = 0;
    int seller = 0;  // house id or kContractId
    double amount_wh = 0.0;
    double price = 0.0;     // EUR/Wh
    double fee_eur = 0.0;   // skimmed off the seller's proceeds
    TradeSource source = TradeSource::FreshOffer;
    std::size_t t = 0;
};

struct SharingEvent {
    int prosumer = 0;
    int consumer = 0;
    double gross_wh = 0.0;
    double usable_wh = 0.0;    // eta * gross, consumed right away
    double reserved_wh = 0.0;  // (1 - eta) * gross, hosted for the sharer
    bool paid_by_contract = false;
    double payout_eur = 0.0;   // net paid to the prosumer (C-SE only)
    std::size_t t = 0;
};

struct Intake {
    std::vector<Offer> offers;
    std::vector<BuyRequest> buy_requests;
    std::vector<ShareRequest> share_requests;
};

// Per-house order intake in id order: charge/discharge the battery first, then
// submit the residual as an offer, a buy request (when affordable at
// expected_price) or a share request bounded by the remaining battery
// capacity. Houses must have excess_wh set to generation - load; on return
// excess_wh/need_wh hold the residuals.
Intake submit(std::vector<HouseState>& houses, double expected_price);

// Fills buy requests from unexpired reservations across all batteries, oldest
// entry first; the buyer pays price_t, the entry's seller gets the proceeds
// minus the fee. A buyer is never filled from its own battery.
std::vector<Trade> match_reserved(std::vector<BuyRequest>& buy_requests,
                                  std::vector<HouseState>& houses, ContractAccount& contract,
                                  std::size_t now, std::size_t tau, double price_t,
                                  double fee_rate);

// First-come-first-served matching of buy requests against fresh offers with
// partial fills.
std::vector<Trade> match_offers(std::vector<BuyRequest>& buy_requests, std::vector<Offer>& offers,
                                std::vector<HouseState>& houses, ContractAccount& contract,
                                double price_t, double fee_rate, std::size_t t);

// Centralized sharing: the contract pays the prosumer out of accrued fees,
// keeps the fee on the payout, reserves (1-eta) of each parcel in the
// consumer's battery under its own name and hands eta to the consumer.
std::vector<SharingEvent> share_cse(std::vector<Offer>& offers,
                                    std::vector<ShareRequest>& share_requests,
                                    std::vector<HouseState>& houses, ContractAccount& contract,
                                    double price_t, double eta, double fee_rate, std::size_t now);

// Peer-to-peer sharing: same energy split, no money moves; the prosumer keeps
// the right to resell the reserved part until it expires.
std::vector<SharingEvent> share_p2p(std::vector<Offer>& offers,
                                    std::vector<ShareRequest>& share_requests,
                                    std::vector<HouseState>& houses, double eta, std::size_t now);

struct GridSettlement {
    double energy_wh = 0.0;
    double paid_eur = 0.0;
    double wasted_wh = 0.0;
};

// Buys every residual need from the utility grid (balances may go negative)
// and writes off unmatched offer residuals as waste.
GridSettlement settle_grid(std::vector<HouseState>& houses, const std::vector<Offer>& offers,
                           double utility_price);

}  // namespace mgsim

#endif
