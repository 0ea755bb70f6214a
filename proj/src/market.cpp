#include "mgsim/market.hpp"

#include <algorithm>
#include <cassert>

namespace mgsim {

namespace {

// Pays the seller side of a trade and books the fee with the contract.
void settle_seller(int seller, double gross_eur, double fee_eur, std::vector<HouseState>& houses,
                   ContractAccount& contract) {
    if (seller == kContractId) {
        contract.record_sale(gross_eur, fee_eur);
    } else {
        houses[static_cast<std::size_t>(seller)].balance_eur += gross_eur - fee_eur;
        if (fee_eur > 0.0) contract.accrue_fee(fee_eur);
    }
}

}  // namespace

Intake submit(std::vector<HouseState>& houses, double expected_price) {
    Intake intake;
    std::uint64_t seq = 0;
    for (auto& house : houses) {
        if (house.excess_wh > 0.0) {
            const double charged = house.battery.charge_in(house.excess_wh);
            house.excess_wh -= charged;
            if (house.excess_wh > 0.0)
                intake.offers.push_back(Offer{house.id(), house.excess_wh, seq++});
            house.need_wh = 0.0;
        } else if (house.excess_wh < 0.0) {
            double need = -house.excess_wh;
            need -= house.battery.discharge_usable(need);
            house.excess_wh = -need;
            house.need_wh = need;
            if (need > 0.0) {
                if (house.balance_eur >= need * expected_price) {
                    intake.buy_requests.push_back(BuyRequest{house.id(), need, seq++});
                } else if (house.battery.remaining_capacity() > 0.0) {
                    const double requested = std::min(need, house.battery.remaining_capacity());
                    intake.share_requests.push_back(ShareRequest{house.id(), requested, seq++});
                }
                // Anything not requestable falls through to the grid.
            }
        } else {
            house.need_wh = 0.0;
        }
    }
    return intake;
}

std::vector<Trade> match_reserved(std::vector<BuyRequest>& buy_requests,
                                  std::vector<HouseState>& houses, ContractAccount& contract,
                                  std::size_t now, std::size_t tau, double price_t,
                                  double fee_rate) {
    // A reservation is sellable for tau timesteps starting at creation.
    struct Candidate {
        std::size_t created_at;
        int host;
        std::uint64_t entry_id;
        int seller;
        double remaining_wh;
    };
    std::vector<Candidate> candidates;
    for (const auto& house : houses) {
        for (const auto& entry : house.battery.entries()) {
            if (now >= entry.created_at && now - entry.created_at < tau)
                candidates.push_back(
                    {entry.created_at, house.id(), entry.id, entry.seller, entry.amount_wh});
        }
    }
    // Oldest first across all hosts; host id then ledger order break ties.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         if (a.created_at != b.created_at) return a.created_at < b.created_at;
                         if (a.host != b.host) return a.host < b.host;
                         return a.entry_id < b.entry_id;
                     });

    std::vector<Trade> trades;
    for (auto& request : buy_requests) {
        for (auto& cand : candidates) {
            if (request.amount_wh <= 0.0) break;
            if (cand.remaining_wh <= 1e-12) continue;  // drained (ledger purges dust)
            if (cand.host == request.consumer) continue;  // own battery, off limits

            auto& host = houses[static_cast<std::size_t>(cand.host)];
            const double drawn = host.battery.draw_reserved(
                cand.entry_id, std::min(request.amount_wh, cand.remaining_wh));
            cand.remaining_wh -= drawn;
            if (drawn <= 0.0) continue;

            auto& buyer = houses[static_cast<std::size_t>(request.consumer)];
            const double gross = drawn * price_t;
            const double fee = gross * fee_rate;
            buyer.balance_eur -= gross;
            buyer.need_wh -= drawn;
            buyer.excess_wh += drawn;
            settle_seller(cand.seller, gross, fee, houses, contract);

            request.amount_wh -= drawn;
            trades.push_back(Trade{request.consumer, cand.seller, drawn, price_t, fee,
                                   TradeSource::ReservedEnergy, now});
        }
    }
    return trades;
}

std::vector<Trade> match_offers(std::vector<BuyRequest>& buy_requests, std::vector<Offer>& offers,
                                std::vector<HouseState>& houses, ContractAccount& contract,
                                double price_t, double fee_rate, std::size_t t) {
    std::vector<Trade> trades;
    std::size_t oi = 0;
    for (auto& request : buy_requests) {
        while (request.amount_wh > 0.0 && oi < offers.size()) {
            auto& offer = offers[oi];
            if (offer.amount_wh <= 0.0) {
                ++oi;
                continue;
            }
            const double amount = std::min(request.amount_wh, offer.amount_wh);
            auto& buyer = houses[static_cast<std::size_t>(request.consumer)];
            auto& seller = houses[static_cast<std::size_t>(offer.prosumer)];
            const double gross = amount * price_t;
            const double fee = gross * fee_rate;

            buyer.balance_eur -= gross;
            buyer.need_wh -= amount;
            buyer.excess_wh += amount;
            settle_seller(offer.prosumer, gross, fee, houses, contract);
            seller.excess_wh -= amount;

            request.amount_wh -= amount;
            offer.amount_wh -= amount;
            trades.push_back(
                Trade{request.consumer, offer.prosumer, amount, price_t, fee,
                      TradeSource::FreshOffer, t});
        }
    }
    return trades;
}

namespace {

template <typename PerPair>
std::vector<SharingEvent> share_impl(std::vector<Offer>& offers,
                                     std::vector<ShareRequest>& share_requests,
                                     std::vector<HouseState>& houses, double eta, std::size_t now,
                                     int seller_of(const Offer&), PerPair&& pay) {
    std::vector<SharingEvent> events;
    const bool any_offer_left =
        std::any_of(offers.begin(), offers.end(), [](const Offer& o) { return o.amount_wh > 0.0; });
    if (!any_offer_left || share_requests.empty()) return events;

    for (auto& offer : offers) {
        for (auto& request : share_requests) {
            if (offer.amount_wh <= 0.0) break;
            if (request.amount_wh <= 0.0) continue;

            const double energy = std::min(offer.amount_wh, request.amount_wh);
            double payout = 0.0;
            if (!pay(offer, energy, payout)) continue;  // unaffordable pair, skip

            auto& consumer = houses[static_cast<std::size_t>(request.consumer)];
            const double reserved = energy * (1.0 - eta);
            const double usable = energy - reserved;
            if (reserved > 0.0)
                consumer.battery.reserve(reserved, seller_of(offer), now);
            consumer.need_wh -= usable;
            consumer.excess_wh += usable;

            offer.amount_wh -= energy;
            request.amount_wh -= energy;
            houses[static_cast<std::size_t>(offer.prosumer)].excess_wh -= energy;

            events.push_back(SharingEvent{offer.prosumer, request.consumer, energy, usable,
                                          reserved, payout > 0.0, payout, now});
        }
    }
    return events;
}

}  // namespace

std::vector<SharingEvent> share_cse(std::vector<Offer>& offers,
                                    std::vector<ShareRequest>& share_requests,
                                    std::vector<HouseState>& houses, ContractAccount& contract,
                                    double price_t, double eta, double fee_rate, std::size_t now) {
    return share_impl(
        offers, share_requests, houses, eta, now,
        [](const Offer&) { return kContractId; },
        [&](const Offer& offer, double energy, double& payout) {
            const double gross = energy * price_t;
            if (!(contract.balance_eur > gross)) return false;
            const double fee = gross * fee_rate;
            contract.pay_sharer(gross, fee);
            payout = gross - fee;
            houses[static_cast<std::size_t>(offer.prosumer)].balance_eur += payout;
            return true;
        });
}

std::vector<SharingEvent> share_p2p(std::vector<Offer>& offers,
                                    std::vector<ShareRequest>& share_requests,
                                    std::vector<HouseState>& houses, double eta, std::size_t now) {
    return share_impl(
        offers, share_requests, houses, eta, now,
        [](const Offer& offer) { return offer.prosumer; },
        [](const Offer&, double, double&) { return true; });
}

GridSettlement settle_grid(std::vector<HouseState>& houses, const std::vector<Offer>& offers,
                           double utility_price) {
    GridSettlement out;
    for (auto& house : houses) {
        if (house.need_wh > 0.0) {
            const double cost = house.need_wh * utility_price;
            house.balance_eur -= cost;
            out.energy_wh += house.need_wh;
            out.paid_eur += cost;
            house.need_wh = 0.0;
        }
        house.excess_wh = 0.0;
    }
    for (const auto& offer : offers)
        if (offer.amount_wh > 0.0) out.wasted_wh += offer.amount_wh;
    return out;
}

}  // namespace mgsim
