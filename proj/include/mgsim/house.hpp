#ifndef MGSIM_HOUSE_HPP
#define MGSIM_HOUSE_HPP

#include "mgsim/battery.hpp"
#include "mgsim/dataset.hpp"

namespace mgsim {

struct HouseState {
    HouseProfile profile;
    double balance_eur = 0.0;
    Battery battery;
    double excess_wh = 0.0;  // ee; negative means unmet need
    double need_wh = 0.0;    // residual unmet need this timestep

    int id() const { return profile.id; }
};

// The smart contract modelled as an in-simulation account: fee sink in C-SE,
// sharer entity that pays prosumers and resells reserved energy.
struct ContractAccount {
    double balance_eur = 0.0;
    double fees_total_eur = 0.0;
    double sales_total_eur = 0.0;
    double disbursed_total_eur = 0.0;

    // Fee skimmed off a house-to-house trade.
    void accrue_fee(double fee_eur) {
        fees_total_eur += fee_eur;
        balance_eur += fee_eur;
    }

    // The contract sells reserved energy; fee (if any) stays with it as a fee.
    void record_sale(double gross_eur, double fee_eur) {
        sales_total_eur += gross_eur - fee_eur;
        fees_total_eur += fee_eur;
        balance_eur += gross_eur;
    }

    // C-SE sharing payout: prosumer is owed `gross`, the fee is deducted and
    // retained, so only the net leaves the balance.
    void pay_sharer(double gross_eur, double fee_eur) {
        disbursed_total_eur += gross_eur;
        fees_total_eur += fee_eur;
        balance_eur -= gross_eur - fee_eur;
    }
};

}  // namespace mgsim

#endif
