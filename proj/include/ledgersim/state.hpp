// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ledgersim/encode.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim {

struct Account {
  Address address;
  MicroUnits balance = 0;
  // A holdings entry exists only after an explicit opt-in; a zero entry
  // means opted in but empty.
  std::map<AssetId, std::uint64_t> holdings;
  std::set<AppId> created_apps;

  bool opted_in(AssetId id) const { return holdings.count(id) != 0; }
  std::uint64_t holding(AssetId id) const {
    auto it = holdings.find(id);
    return it == holdings.end() ? 0 : it->second;
  }
};

struct Asset {
  AssetId id = 0;
  Address creator;
  Address manager;
  std::uint64_t total = 0;  // immutable after creation
  std::uint32_t decimals = 0;
  std::string unit_name;
  std::string asset_name;
  std::string url;
  std::optional<Digest> metadata_hash;
  bool destroyed = false;

  bool is_nft() const { return total == 1 && decimals == 0; }
};

enum class Role : std::uint8_t {
  Authenticator = 0,
  Manufacturer = 1,
  User = 2,
  Recycler = 3,
};

const char* to_string(Role role);

// Who may mint certificates and which manufacturers/recyclers are certified.
// Only the authenticator mutates it.
struct RoleRegistry {
  std::optional<Address> authenticator;
  std::set<Address> certified_manufacturers;
  std::set<Address> certified_recyclers;

  bool is_authenticator(const Address& a) const {
    return authenticator && *authenticator == a;
  }
  bool is_certified_manufacturer(const Address& a) const {
    return certified_manufacturers.count(a) != 0;
  }
  bool is_certified_recycler(const Address& a) const {
    return certified_recyclers.count(a) != 0;
  }
};

// Product contract lifecycle. Transitions are strictly forward:
// Deployed -> Bound -> InUse -> Released -> Dismantled.
enum class ContractState : std::uint8_t {
  Deployed = 0,
  Bound = 1,
  InUse = 2,
  Released = 3,
  Dismantled = 4,
};

const char* to_string(ContractState state);

struct AppRecord {
  AppId id = 0;
  Address creator;           // the manufacturer that deployed the contract
  Address address;           // application account, derived from the app id
  Address trusted_recycler;  // fixed at creation
  std::optional<Address> user;
  std::vector<AssetId> bound_assets;
  ContractState state = ContractState::Deployed;

  bool init_done() const { return !bound_assets.empty(); }
};

struct LedgerState {
  std::map<Address, Account> accounts;
  std::map<AssetId, Asset> assets;
  std::map<AppId, AppRecord> apps;
  RoleRegistry registry;
  std::uint64_t round = 0;
  AssetId next_asset_id = 1;
  AppId next_app_id = 1;
  std::uint64_t account_nonce = 0;

  Account* find_account(const Address& a);
  const Account* find_account(const Address& a) const;
  Asset* find_asset(AssetId id);
  const Asset* find_asset(AssetId id) const;
  AppRecord* find_app(AppId id);
  const AppRecord* find_app(AppId id) const;

  // Live (non-dismantled) application owning this account, if any.
  const AppRecord* find_app_by_address(const Address& a) const;
};

// Accounts, assets, applications and the role registry, in canonical order.
void encode_content(Encoder& enc, const LedgerState& state);

// Full canonical state: config, round, counters, then the content section.
void encode_state(Encoder& enc, const LedgerState& state, const Config& config);

// Inverse of encode_state. Returns false if the input is truncated or the
// trailing bytes do not line up.
bool decode_state(Decoder& dec, LedgerState& state, Config& config);

}  // namespace ledgersim
