// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/contract.hpp"

#include <algorithm>
#include <set>

#include "ledgersim/digest.hpp"
#include "ledgersim/ledger.hpp"

namespace ledgersim::contract {

Address app_account_address(AppId app_id) {
  Encoder enc;
  enc.str("appacct");
  enc.u64(app_id);
  Address addr;
  addr.bytes = sha256(enc.bytes());
  return addr;
}

// ---------------------------------------------------------------------------
// Approval rules
// ---------------------------------------------------------------------------

RejectReason check_app_create(const LedgerState& st, const AppCreateFields& f) {
  if (!st.registry.is_certified_manufacturer(f.creator))
    return RejectReason::NotCertifiedManufacturer;
  return RejectReason::None;
}

AppId apply_app_create(LedgerState& st, const AppCreateFields& f) {
  AppRecord app;
  app.id = st.next_app_id++;
  app.creator = f.creator;
  app.address = app_account_address(app.id);
  app.trusted_recycler = f.trusted_recycler;
  Account acct;
  acct.address = app.address;
  st.accounts.emplace(app.address, std::move(acct));
  st.find_account(f.creator)->created_apps.insert(app.id);
  AppId id = app.id;
  st.apps.emplace(id, std::move(app));
  return id;
}

namespace {

RejectReason check_init(const LedgerState& st, const AppRecord& app,
                        const AppCallFields& f) {
  if (f.caller != app.creator) return RejectReason::NotCreator;
  if (app.state != ContractState::Deployed || app.init_done())
    return RejectReason::WrongState;
  if (f.foreign_assets.empty()) return RejectReason::EmptyAssetList;
  std::set<AssetId> seen;
  for (AssetId id : f.foreign_assets) {
    const Asset* asset = st.find_asset(id);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;
    if (!seen.insert(id).second) return RejectReason::InvalidArguments;
  }
  const Account* app_acct = st.find_account(app.address);
  if (!app_acct || app_acct->balance < kAppMinFunding)
    return RejectReason::AppNotFunded;
  return RejectReason::None;
}

RejectReason check_set_user(const LedgerState& st, const AppRecord& app,
                            const AppCallFields& f) {
  if (f.caller != app.creator) return RejectReason::NotCreator;
  if (app.state != ContractState::Bound) return RejectReason::WrongState;
  if (f.args.size() != 2) return RejectReason::InvalidArguments;
  auto user = Address::from_string(f.args[1]);
  if (!user) return RejectReason::InvalidArguments;
  if (!st.find_account(*user)) return RejectReason::UnknownAccount;
  return RejectReason::None;
}

RejectReason check_release(const LedgerState& st, const AppRecord& app,
                           const AppCallFields& f) {
  (void)st;
  if (app.state != ContractState::InUse) return RejectReason::WrongState;
  if (!app.user || f.caller != *app.user) return RejectReason::NotUser;
  return RejectReason::None;
}

}  // namespace

RejectReason check_app_call(const LedgerState& st, const AppCallFields& f) {
  const AppRecord* app = st.find_app(f.app);
  if (!app) return RejectReason::UnknownApp;
  if (app->state == ContractState::Dismantled) return RejectReason::WrongState;
  const std::string& selector = f.args.front();
  if (selector == kSelectorInit) return check_init(st, *app, f);
  if (selector == kSelectorSetUser) return check_set_user(st, *app, f);
  if (selector == kSelectorRelease) return check_release(st, *app, f);
  return RejectReason::InvalidArguments;
}

void apply_app_call(LedgerState& st, const AppCallFields& f) {
  AppRecord& app = *st.find_app(f.app);
  const std::string& selector = f.args.front();
  if (selector == kSelectorInit) {
    app.bound_assets = f.foreign_assets;
    Account& app_acct = *st.find_account(app.address);
    for (AssetId id : app.bound_assets) app_acct.holdings.emplace(id, 0);
    return;
  }
  if (selector == kSelectorSetUser) {
    app.user = Address::from_string(f.args[1]);
    app.state = ContractState::InUse;
    return;
  }
  if (selector == kSelectorRelease) {
    app.state = ContractState::Released;
    return;
  }
}

RejectReason check_app_delete(const LedgerState& st, const AppDeleteFields& f) {
  const AppRecord* app = st.find_app(f.app);
  if (!app) return RejectReason::UnknownApp;
  if (app->state == ContractState::Dismantled) return RejectReason::WrongState;
  if (f.caller != app->trusted_recycler)
    return RejectReason::NotTrustedRecycler;
  if (!st.registry.is_certified_recycler(f.caller))
    return RejectReason::NotTrustedRecycler;
  if (app->state != ContractState::Released) return RejectReason::WrongState;
  const Account* app_acct = st.find_account(app->address);
  for (AssetId id : app->bound_assets) {
    if (app_acct && app_acct->holding(id) != 0)
      return RejectReason::AppHoldsAssets;
  }
  return RejectReason::None;
}

void apply_app_delete(LedgerState& st, const AppDeleteFields& f) {
  AppRecord& app = *st.find_app(f.app);
  // The application account is closed out; any leftover funding returns to
  // the creator. The record stays behind as a Dismantled tombstone.
  if (Account* app_acct = st.find_account(app.address)) {
    st.find_account(app.creator)->balance += app_acct->balance;
    st.accounts.erase(app.address);
  }
  if (Account* creator = st.find_account(app.creator))
    creator->created_apps.erase(app.id);
  app.state = ContractState::Dismantled;
  app.user.reset();
}

RejectReason check_app_extraction(const LedgerState& st,
                                  const AssetTransferFields& f,
                                  const AppRecord& app,
                                  std::span<const Transaction> group) {
  if (app.state != ContractState::Released) return RejectReason::WrongState;
  if (std::find(app.bound_assets.begin(), app.bound_assets.end(), f.asset) ==
      app.bound_assets.end())
    return RejectReason::UnauthorizedAppSpend;

  // The product contract must be destroyed in the same call.
  bool delete_present = false;
  for (const auto& tx : group) {
    if (const auto* del = tx.as<AppDeleteFields>()) {
      if (del->app == app.id) {
        delete_present = true;
        break;
      }
    }
  }
  if (!delete_present) return RejectReason::GroupRejected;

  const Account* app_acct = st.find_account(app.address);
  if (!app_acct || app_acct->holding(f.asset) < f.amount)
    return RejectReason::InsufficientHolding;

  const Asset* asset = st.find_asset(f.asset);
  const Account* receiver = st.find_account(f.receiver);
  if (!receiver) return RejectReason::UnknownAccount;
  // Destinations: the asset manager, or anyone already opted in.
  if (f.receiver != asset->manager && !receiver->opted_in(f.asset))
    return RejectReason::ReceiverNotOptedIn;
  return RejectReason::None;
}

void notify_custody(LedgerState& st, const Address& app_address) {
  for (auto& [id, app] : st.apps) {
    if (app.address != app_address) continue;
    if (app.state != ContractState::Deployed || !app.init_done()) return;
    const Account* acct = st.find_account(app_address);
    if (!acct) return;
    for (AssetId asset : app.bound_assets)
      if (acct->holding(asset) < 1) return;
    app.state = ContractState::Bound;
    return;
  }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Transaction make_app_create(const Address& creator,
                            const Address& trusted_recycler) {
  AppCreateFields f;
  f.creator = creator;
  f.trusted_recycler = trusted_recycler;
  return make_transaction(f);
}

Transaction make_call_init(const Address& caller, AppId app,
                           const std::vector<AssetId>& assets) {
  AppCallFields f;
  f.caller = caller;
  f.app = app;
  f.args = {std::string(kSelectorInit)};
  f.foreign_assets = assets;
  return make_transaction(f);
}

Transaction make_call_set_user(const Address& caller, AppId app,
                               const Address& user) {
  AppCallFields f;
  f.caller = caller;
  f.app = app;
  f.args = {std::string(kSelectorSetUser), user.to_string()};
  return make_transaction(f);
}

Transaction make_call_release(const Address& caller, AppId app) {
  AppCallFields f;
  f.caller = caller;
  f.app = app;
  f.args = {std::string(kSelectorRelease)};
  return make_transaction(f);
}

Transaction make_app_delete(const Address& caller, AppId app) {
  AppDeleteFields f;
  f.caller = caller;
  f.app = app;
  return make_transaction(f);
}

// ---------------------------------------------------------------------------
// Synchronous drivers
// ---------------------------------------------------------------------------

namespace {

RejectReason representative_reason(const std::vector<TxRecord>& recs) {
  for (const auto& rec : recs)
    if (!rec.applied && rec.reason != RejectReason::GroupRejected)
      return rec.reason;
  return RejectReason::GroupRejected;
}

bool all_applied(const std::vector<TxRecord>& recs) {
  if (recs.empty()) return false;
  for (const auto& rec : recs)
    if (!rec.applied) return false;
  return true;
}

}  // namespace

Outcome<AppId> app_create(Ledger& ledger, const Address& creator,
                          const Address& trusted_recycler) {
  TxRecord rec = ledger.apply_now(make_app_create(creator, trusted_recycler));
  if (!rec.applied) return rec.reason;
  return static_cast<AppId>(*rec.created_id);
}

Status call_init(Ledger& ledger, const Address& caller, AppId app,
                 const std::vector<AssetId>& assets) {
  TxRecord rec = ledger.apply_now(make_call_init(caller, app, assets));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status call_set_user(Ledger& ledger, const Address& caller, AppId app,
                     const Address& user) {
  TxRecord rec = ledger.apply_now(make_call_set_user(caller, app, user));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status call_release(Ledger& ledger, const Address& caller, AppId app) {
  TxRecord rec = ledger.apply_now(make_call_release(caller, app));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status dismantle(Ledger& ledger, const Address& recycler, AppId app_id,
                 const std::map<AssetId, Address>& destinations) {
  auto app = ledger.app(app_id);
  if (!app) return RejectReason::UnknownApp;
  if (app->state == ContractState::Dismantled)
    return RejectReason::WrongState;

  // Destinations must cover the bound assets exactly.
  std::set<AssetId> bound(app->bound_assets.begin(), app->bound_assets.end());
  std::set<AssetId> given;
  for (const auto& [asset, dest] : destinations) given.insert(asset);
  if (bound != given) return RejectReason::IncompleteDestinations;

  std::vector<Transaction> group;
  for (AssetId asset : app->bound_assets) {
    AssetTransferFields f;
    f.sender = app->address;
    f.receiver = destinations.at(asset);
    f.asset = asset;
    f.amount = 1;
    group.push_back(make_transaction(f));
  }
  group.push_back(make_app_delete(recycler, app_id));

  std::vector<TxRecord> recs = ledger.apply_group_now(std::move(group));
  if (all_applied(recs)) return {};
  return representative_reason(recs);
}

}  // namespace ledgersim::contract
