// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/lifecycle.hpp"

#include <algorithm>
#include <map>

#include "ledgersim/contract.hpp"
#include "ledgersim/digest.hpp"

namespace ledgersim::lifecycle {

std::string ChipPassport::canonical() const {
  std::string out;
  out += "chip_serial=" + chip_serial + "\n";
  out += "chip_type=" + chip_type + "\n";
  out += "manufacturer_of_chip=" + manufacturer_of_chip + "\n";
  out += "manufacture_date=" + manufacture_date + "\n";
  out += "months_in_service=" + std::to_string(months_in_service) + "\n";
  out += "url=" + url + "\n";
  return out;
}

Digest ChipPassport::digest() const { return sha256(canonical()); }

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Minted: return "minted";
    case EventKind::Transferred: return "transferred";
    case EventKind::Bound: return "bound";
    case EventKind::Released: return "released";
    case EventKind::Recycled: return "recycled";
    case EventKind::Destroyed: return "destroyed";
  }
  return "unknown";
}

Outcome<AssetId> certify_chip(Ledger& ledger, const Address& authenticator,
                              const ChipPassport& passport) {
  if (!ledger.registry().is_authenticator(authenticator))
    return RejectReason::NotAuthenticator;
  std::string name = passport.chip_serial.substr(0, kMaxAssetNameLen);
  return ledger.asset_create(authenticator, /*total=*/1, /*decimals=*/0,
                             "CHIP", std::move(name), passport.url,
                             passport.digest(), authenticator);
}

Status transfer_to_manufacturer(Ledger& ledger, const Address& authenticator,
                                const Address& manufacturer, AssetId asset) {
  if (!ledger.registry().is_certified_manufacturer(manufacturer))
    return RejectReason::NotCertifiedManufacturer;
  // Hand over the unit and the management rights in one atomic group.
  AssetTransferFields xfer;
  xfer.sender = authenticator;
  xfer.receiver = manufacturer;
  xfer.asset = asset;
  xfer.amount = 1;
  AssetConfigFields cfg;
  cfg.caller = authenticator;
  cfg.asset = asset;
  cfg.new_manager = manufacturer;
  std::vector<TxRecord> recs = ledger.apply_group_now(
      {make_transaction(xfer), make_transaction(cfg)});
  for (const auto& rec : recs) {
    if (!rec.applied && rec.reason != RejectReason::GroupRejected)
      return rec.reason;
  }
  if (recs.empty() || !recs.front().applied)
    return RejectReason::GroupRejected;
  return {};
}

Outcome<AppId> assemble_product(Ledger& ledger, const Address& manufacturer,
                                const std::vector<AssetId>& assets,
                                const Address& trusted_recycler) {
  if (assets.empty()) return RejectReason::EmptyAssetList;
  // Funding + Init + one transfer per chip must fit one atomic group.
  if (assets.size() + 2 > kMaxGroupSize)
    return RejectReason::MalformedTransaction;
  for (AssetId id : assets) {
    auto asset = ledger.asset(id);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;
    auto holder = ledger.account(manufacturer);
    if (!holder) return RejectReason::UnknownAccount;
    if (holder->holding(id) < 1) return RejectReason::InsufficientHolding;
  }

  auto app = contract::app_create(ledger, manufacturer, trusted_recycler);
  if (!app.ok()) return app.error();
  Address app_addr = contract::app_account_address(app.value());

  std::vector<Transaction> group;
  PaymentFields fund;
  fund.sender = manufacturer;
  fund.receiver = app_addr;
  fund.amount = kAppMinFunding;
  group.push_back(make_transaction(fund));
  group.push_back(contract::make_call_init(manufacturer, app.value(), assets));
  for (AssetId id : assets) {
    AssetTransferFields xfer;
    xfer.sender = manufacturer;
    xfer.receiver = app_addr;
    xfer.asset = id;
    xfer.amount = 1;
    group.push_back(make_transaction(xfer));
  }
  std::vector<TxRecord> recs = ledger.apply_group_now(std::move(group));
  for (const auto& rec : recs) {
    if (!rec.applied && rec.reason != RejectReason::GroupRejected)
      return rec.reason;
  }
  if (recs.empty() || !recs.front().applied) return RejectReason::GroupRejected;
  return app.value();
}

Status distribute(Ledger& ledger, const Address& manufacturer, AppId app,
                  const Address& user) {
  return contract::call_set_user(ledger, manufacturer, app, user);
}

Status return_product(Ledger& ledger, const Address& user, AppId app) {
  return contract::call_release(ledger, user, app);
}

Status recycle(Ledger& ledger, const Address& recycler, AppId app,
               const std::map<AssetId, Disposition>& dispositions) {
  auto record = ledger.app(app);
  if (!record) return RejectReason::UnknownApp;

  std::map<AssetId, Address> destinations;
  std::vector<AssetId> to_destroy;
  for (const auto& [asset_id, disposition] : dispositions) {
    if (disposition.kind == Disposition::Kind::Reuse) {
      destinations.emplace(asset_id, disposition.reuse_to);
    } else {
      auto asset = ledger.asset(asset_id);
      if (!asset) return RejectReason::UnknownAsset;
      destinations.emplace(asset_id, asset->manager);
      to_destroy.push_back(asset_id);
    }
  }

  Status dismantled = contract::dismantle(ledger, recycler, app, destinations);
  if (!dismantled.ok()) return dismantled;

  // Destroy dispositions commit in a second group; the supply is already
  // consolidated with each asset's manager by the dismantle transfers.
  if (!to_destroy.empty()) {
    std::vector<Transaction> group;
    for (AssetId asset_id : to_destroy) {
      AssetDestroyFields f;
      f.caller = ledger.asset(asset_id)->manager;
      f.asset = asset_id;
      group.push_back(make_transaction(f));
    }
    std::vector<TxRecord> recs = ledger.apply_group_now(std::move(group));
    for (const auto& rec : recs) {
      if (!rec.applied && rec.reason != RejectReason::GroupRejected)
        return rec.reason;
    }
    if (recs.empty() || !recs.front().applied)
      return RejectReason::GroupRejected;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Provenance
// ---------------------------------------------------------------------------

Outcome<ProvenanceRecord> trace_blocks(std::span<const Block> blocks,
                                       AssetId asset) {
  ProvenanceRecord record;
  record.asset = asset;

  // Minimal replay of the history: id assignment order plus app bindings.
  AssetId next_asset = 1;
  AppId next_app = 1;
  std::map<Address, AppId> app_by_address;
  std::map<AppId, std::vector<AssetId>> bound_by_app;
  bool exists = false;

  for (const Block& block : blocks) {
    for (const TxRecord& rec : block.txns) {
      if (!rec.applied) continue;
      const Transaction& tx = rec.txn;

      if (tx.as<AssetCreateFields>()) {
        AssetId id = next_asset++;
        if (id == asset) {
          exists = true;
          ProvenanceEvent ev;
          ev.kind = EventKind::Minted;
          ev.round = block.round;
          ev.to = tx.sender();
          record.events.push_back(ev);
        }
        continue;
      }
      if (const auto* f = tx.as<AppCreateFields>()) {
        (void)f;
        AppId id = next_app++;
        app_by_address[contract::app_account_address(id)] = id;
        continue;
      }
      if (const auto* f = tx.as<AppCallFields>()) {
        if (f->args.front() == contract::kSelectorInit) {
          bound_by_app[f->app] = f->foreign_assets;
        } else if (f->args.front() == contract::kSelectorRelease) {
          const auto& bound = bound_by_app[f->app];
          if (std::find(bound.begin(), bound.end(), asset) != bound.end()) {
            ProvenanceEvent ev;
            ev.kind = EventKind::Released;
            ev.round = block.round;
            ev.app = f->app;
            record.events.push_back(ev);
          }
        }
        continue;
      }
      if (const auto* f = tx.as<AssetTransferFields>()) {
        if (f->asset != asset || f->amount == 0) continue;
        ProvenanceEvent ev;
        ev.round = block.round;
        ev.from = f->sender;
        ev.to = f->receiver;
        auto to_app = app_by_address.find(f->receiver);
        auto from_app = app_by_address.find(f->sender);
        if (to_app != app_by_address.end()) {
          ev.kind = EventKind::Bound;
          ev.app = to_app->second;
        } else if (from_app != app_by_address.end()) {
          ev.kind = EventKind::Recycled;
          ev.app = from_app->second;
        } else {
          ev.kind = EventKind::Transferred;
        }
        record.events.push_back(ev);
        continue;
      }
      if (const auto* f = tx.as<AssetDestroyFields>()) {
        if (f->asset != asset) continue;
        ProvenanceEvent ev;
        ev.kind = EventKind::Destroyed;
        ev.round = block.round;
        ev.from = f->caller;
        record.events.push_back(ev);
        continue;
      }
    }
  }

  if (!exists) return RejectReason::UnknownAsset;
  return record;
}

Outcome<ProvenanceRecord> trace(const Ledger& ledger, AssetId asset) {
  return trace_blocks(ledger.blocks(), asset);
}

}  // namespace ledgersim::lifecycle
