// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ledgersim/block.hpp"
#include "ledgersim/contract.hpp"
#include "ledgersim/ledger.hpp"
#include "ledgersim/lifecycle.hpp"

namespace ledgersim::test {

struct Actors {
  Address authenticator;
  Address manufacturer;
  Address recycler;
  Address user;
  Address outsider;  // funded account with no role
};

inline Actors setup_actors(Ledger& ledger) {
  Actors a;
  a.authenticator = ledger.create_account(100'000'000);
  a.manufacturer = ledger.create_account(100'000'000);
  a.recycler = ledger.create_account(10'000'000);
  a.user = ledger.create_account(1'000'000);
  a.outsider = ledger.create_account(1'000'000);
  ledger.set_authenticator(a.authenticator);
  ledger.certify_manufacturer(a.authenticator, a.manufacturer);
  ledger.certify_recycler(a.authenticator, a.recycler);
  return a;
}

inline lifecycle::ChipPassport sample_passport(const std::string& serial) {
  lifecycle::ChipPassport p;
  p.chip_serial = serial;
  p.chip_type = "ssd-controller";
  p.manufacturer_of_chip = "NandWorks";
  p.manufacture_date = "2025-11-02";
  p.months_in_service = 0;
  p.url = "https://assets.example/" + serial;
  return p;
}

// Mints a chip NFT and moves it (with management rights) to the
// manufacturer. Returns the asset id, or 0 if any step failed (ids start
// at 1).
inline AssetId mint_to_manufacturer(Ledger& ledger, const Actors& a,
                                    const std::string& serial) {
  auto minted =
      lifecycle::certify_chip(ledger, a.authenticator, sample_passport(serial));
  if (!minted.ok()) return 0;
  if (!ledger.asset_opt_in(a.manufacturer, minted.value()).ok()) return 0;
  if (!lifecycle::transfer_to_manufacturer(ledger, a.authenticator,
                                           a.manufacturer, minted.value())
           .ok())
    return 0;
  return minted.value();
}

// --- Independent oracles (kept free of the implementation paths they check). -

// Conservation oracle: per-asset holdings summed over the whole account table.
inline std::map<AssetId, std::uint64_t> holdings_by_asset(
    const LedgerState& st) {
  std::map<AssetId, std::uint64_t> sums;
  for (const auto& [addr, acct] : st.accounts)
    for (const auto& [asset, amount] : acct.holdings) sums[asset] += amount;
  return sums;
}

inline bool conservation_holds(const LedgerState& st) {
  auto sums = holdings_by_asset(st);
  for (const auto& [id, asset] : st.assets) {
    if (asset.destroyed) {
      if (sums.count(id) && sums[id] != 0) return false;
      continue;
    }
    if (sums[id] != asset.total) return false;
  }
  return true;
}

// Event oracle: scans a block list for one asset's history and returns the
// event names in order. Written independently of lifecycle::trace.
inline std::vector<std::string> oracle_events(const std::vector<Block>& blocks,
                                              AssetId target) {
  std::vector<std::string> names;
  std::uint64_t assets_created = 0;
  std::uint64_t apps_created = 0;
  std::map<Address, AppId> app_addrs;
  std::map<AppId, std::vector<AssetId>> init_assets;
  for (const auto& block : blocks) {
    for (const auto& rec : block.txns) {
      if (!rec.applied) continue;
      if (rec.txn.as<AssetCreateFields>()) {
        assets_created += 1;
        if (assets_created == target) names.push_back("minted");
      } else if (rec.txn.as<AppCreateFields>()) {
        apps_created += 1;
        app_addrs[contract::app_account_address(apps_created)] = apps_created;
      } else if (const auto* call = rec.txn.as<AppCallFields>()) {
        if (call->args[0] == "Init") {
          init_assets[call->app] = call->foreign_assets;
        } else if (call->args[0] == "Release") {
          for (AssetId id : init_assets[call->app])
            if (id == target) names.push_back("released");
        }
      } else if (const auto* xfer = rec.txn.as<AssetTransferFields>()) {
        if (xfer->asset != target || xfer->amount == 0) continue;
        if (app_addrs.count(xfer->receiver))
          names.push_back("bound");
        else if (app_addrs.count(xfer->sender))
          names.push_back("recycled");
        else
          names.push_back("transferred");
      } else if (const auto* destroy = rec.txn.as<AssetDestroyFields>()) {
        if (destroy->asset == target) names.push_back("destroyed");
      }
    }
  }
  return names;
}

inline std::vector<std::string> event_names(
    const lifecycle::ProvenanceRecord& record) {
  std::vector<std::string> names;
  for (const auto& ev : record.events)
    names.push_back(lifecycle::to_string(ev.kind));
  return names;
}

}  // namespace ledgersim::test
