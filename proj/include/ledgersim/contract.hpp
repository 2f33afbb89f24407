// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <vector>

#include "ledgersim/state.hpp"
#include "ledgersim/transaction.hpp"

namespace ledgersim {

class Ledger;

namespace contract {

// Method selectors, byte-for-byte.
inline constexpr std::string_view kSelectorInit = "Init";
inline constexpr std::string_view kSelectorSetUser = "Set user";
inline constexpr std::string_view kSelectorRelease = "Release";

// Application account address, derived from the app id.
Address app_account_address(AppId app_id);

// --- Approval rules, evaluated by the ledger during block production. ---

RejectReason check_app_create(const LedgerState& st, const AppCreateFields& f);
AppId apply_app_create(LedgerState& st, const AppCreateFields& f);

RejectReason check_app_call(const LedgerState& st, const AppCallFields& f);
void apply_app_call(LedgerState& st, const AppCallFields& f);

RejectReason check_app_delete(const LedgerState& st, const AppDeleteFields& f);
void apply_app_delete(LedgerState& st, const AppDeleteFields& f);

// Approval of an asset transfer spending from an application account. Only
// the dismantling flow qualifies: the asset must be bound, the contract
// released, the destination the asset manager or an opted-in account, and
// the same group must destroy the product contract.
RejectReason check_app_extraction(const LedgerState& st,
                                  const AssetTransferFields& f,
                                  const AppRecord& app,
                                  std::span<const Transaction> group);

// Called after an asset lands on an application account; promotes the
// contract to Bound once it holds every bound asset.
void notify_custody(LedgerState& st, const Address& app_address);

// --- Transaction builders. ---

Transaction make_app_create(const Address& creator,
                            const Address& trusted_recycler);
Transaction make_call_init(const Address& caller, AppId app,
                           const std::vector<AssetId>& assets);
Transaction make_call_set_user(const Address& caller, AppId app,
                               const Address& user);
Transaction make_call_release(const Address& caller, AppId app);
Transaction make_app_delete(const Address& caller, AppId app);

// --- Synchronous drivers: submit, produce, report the outcome. ---

Outcome<AppId> app_create(Ledger& ledger, const Address& creator,
                          const Address& trusted_recycler);
Status call_init(Ledger& ledger, const Address& caller, AppId app,
                 const std::vector<AssetId>& assets);
Status call_set_user(Ledger& ledger, const Address& caller, AppId app,
                     const Address& user);
Status call_release(Ledger& ledger, const Address& caller, AppId app);

// One atomic group: every bound asset leaves the application account, then
// the product contract is deleted in the same call.
Status dismantle(Ledger& ledger, const Address& recycler, AppId app,
                 const std::map<AssetId, Address>& destinations);

}  // namespace contract
}  // namespace ledgersim
