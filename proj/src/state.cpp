// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/state.hpp"

namespace ledgersim {

const char* to_string(Role role) {
  switch (role) {
    case Role::Authenticator: return "authenticator";
    case Role::Manufacturer: return "manufacturer";
    case Role::User: return "user";
    case Role::Recycler: return "recycler";
  }
  return "unknown";
}

const char* to_string(ContractState state) {
  switch (state) {
    case ContractState::Deployed: return "Deployed";
    case ContractState::Bound: return "Bound";
    case ContractState::InUse: return "InUse";
    case ContractState::Released: return "Released";
    case ContractState::Dismantled: return "Dismantled";
  }
  return "unknown";
}

Account* LedgerState::find_account(const Address& a) {
  auto it = accounts.find(a);
  return it == accounts.end() ? nullptr : &it->second;
}

const Account* LedgerState::find_account(const Address& a) const {
  auto it = accounts.find(a);
  return it == accounts.end() ? nullptr : &it->second;
}

Asset* LedgerState::find_asset(AssetId id) {
  auto it = assets.find(id);
  return it == assets.end() ? nullptr : &it->second;
}

const Asset* LedgerState::find_asset(AssetId id) const {
  auto it = assets.find(id);
  return it == assets.end() ? nullptr : &it->second;
}

AppRecord* LedgerState::find_app(AppId id) {
  auto it = apps.find(id);
  return it == apps.end() ? nullptr : &it->second;
}

const AppRecord* LedgerState::find_app(AppId id) const {
  auto it = apps.find(id);
  return it == apps.end() ? nullptr : &it->second;
}

const AppRecord* LedgerState::find_app_by_address(const Address& a) const {
  for (const auto& [id, app] : apps) {
    if (app.address == a && app.state != ContractState::Dismantled)
      return &app;
  }
  return nullptr;
}

namespace {

void encode_account(Encoder& enc, const Account& acct) {
  enc.address(acct.address);
  enc.u64(acct.balance);
  enc.u32(static_cast<std::uint32_t>(acct.holdings.size()));
  for (const auto& [asset, amount] : acct.holdings) {
    enc.u64(asset);
    enc.u64(amount);
  }
  enc.u32(static_cast<std::uint32_t>(acct.created_apps.size()));
  for (auto app : acct.created_apps) enc.u64(app);
}

void encode_asset(Encoder& enc, const Asset& asset) {
  enc.u64(asset.id);
  enc.address(asset.creator);
  enc.address(asset.manager);
  enc.u64(asset.total);
  enc.u32(asset.decimals);
  enc.str(asset.unit_name);
  enc.str(asset.asset_name);
  enc.str(asset.url);
  enc.opt_digest(asset.metadata_hash);
  enc.u8(asset.destroyed ? 1 : 0);
}

void encode_app(Encoder& enc, const AppRecord& app) {
  enc.u64(app.id);
  enc.address(app.creator);
  enc.address(app.address);
  enc.address(app.trusted_recycler);
  enc.opt_address(app.user);
  enc.u32(static_cast<std::uint32_t>(app.bound_assets.size()));
  for (auto id : app.bound_assets) enc.u64(id);
  enc.u8(static_cast<std::uint8_t>(app.state));
}

void encode_registry(Encoder& enc, const RoleRegistry& reg) {
  enc.opt_address(reg.authenticator);
  enc.u32(static_cast<std::uint32_t>(reg.certified_manufacturers.size()));
  for (const auto& a : reg.certified_manufacturers) enc.address(a);
  enc.u32(static_cast<std::uint32_t>(reg.certified_recyclers.size()));
  for (const auto& a : reg.certified_recyclers) enc.address(a);
}

Account decode_account(Decoder& dec) {
  Account acct;
  acct.address = dec.address();
  acct.balance = dec.u64();
  std::uint32_t nh = dec.u32();
  for (std::uint32_t i = 0; i < nh && dec.ok(); ++i) {
    AssetId id = dec.u64();
    acct.holdings[id] = dec.u64();
  }
  std::uint32_t na = dec.u32();
  for (std::uint32_t i = 0; i < na && dec.ok(); ++i)
    acct.created_apps.insert(dec.u64());
  return acct;
}

Asset decode_asset(Decoder& dec) {
  Asset asset;
  asset.id = dec.u64();
  asset.creator = dec.address();
  asset.manager = dec.address();
  asset.total = dec.u64();
  asset.decimals = dec.u32();
  asset.unit_name = dec.str();
  asset.asset_name = dec.str();
  asset.url = dec.str();
  asset.metadata_hash = dec.opt_digest();
  asset.destroyed = dec.u8() != 0;
  return asset;
}

AppRecord decode_app(Decoder& dec) {
  AppRecord app;
  app.id = dec.u64();
  app.creator = dec.address();
  app.address = dec.address();
  app.trusted_recycler = dec.address();
  app.user = dec.opt_address();
  std::uint32_t nb = dec.u32();
  for (std::uint32_t i = 0; i < nb && dec.ok(); ++i)
    app.bound_assets.push_back(dec.u64());
  app.state = static_cast<ContractState>(dec.u8());
  return app;
}

RoleRegistry decode_registry(Decoder& dec) {
  RoleRegistry reg;
  reg.authenticator = dec.opt_address();
  std::uint32_t nm = dec.u32();
  for (std::uint32_t i = 0; i < nm && dec.ok(); ++i)
    reg.certified_manufacturers.insert(dec.address());
  std::uint32_t nr = dec.u32();
  for (std::uint32_t i = 0; i < nr && dec.ok(); ++i)
    reg.certified_recyclers.insert(dec.address());
  return reg;
}

}  // namespace

void encode_content(Encoder& enc, const LedgerState& state) {
  enc.u32(static_cast<std::uint32_t>(state.accounts.size()));
  for (const auto& [addr, acct] : state.accounts) encode_account(enc, acct);
  enc.u32(static_cast<std::uint32_t>(state.assets.size()));
  for (const auto& [id, asset] : state.assets) encode_asset(enc, asset);
  enc.u32(static_cast<std::uint32_t>(state.apps.size()));
  for (const auto& [id, app] : state.apps) encode_app(enc, app);
  encode_registry(enc, state.registry);
}

void encode_state(Encoder& enc, const LedgerState& state, const Config& config) {
  enc.u32(config.block_capacity);
  enc.u32(config.round_millis);
  enc.u64(config.flat_fee);
  enc.u64(state.round);
  enc.u64(state.next_asset_id);
  enc.u64(state.next_app_id);
  enc.u64(state.account_nonce);
  encode_content(enc, state);
}

bool decode_state(Decoder& dec, LedgerState& state, Config& config) {
  config.block_capacity = dec.u32();
  config.round_millis = dec.u32();
  config.flat_fee = dec.u64();
  state.round = dec.u64();
  state.next_asset_id = dec.u64();
  state.next_app_id = dec.u64();
  state.account_nonce = dec.u64();

  std::uint32_t n = dec.u32();
  for (std::uint32_t i = 0; i < n && dec.ok(); ++i) {
    Account acct = decode_account(dec);
    state.accounts.emplace(acct.address, std::move(acct));
  }
  n = dec.u32();
  for (std::uint32_t i = 0; i < n && dec.ok(); ++i) {
    Asset asset = decode_asset(dec);
    state.assets.emplace(asset.id, std::move(asset));
  }
  n = dec.u32();
  for (std::uint32_t i = 0; i < n && dec.ok(); ++i) {
    AppRecord app = decode_app(dec);
    state.apps.emplace(app.id, std::move(app));
  }
  state.registry = decode_registry(dec);
  return dec.ok();
}

}  // namespace ledgersim
