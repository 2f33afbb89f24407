// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/transaction.hpp"

#include "ledgersim/digest.hpp"

namespace ledgersim {

namespace {

enum class Tag : std::uint8_t {
  Payment = 1,
  AssetCreate = 2,
  AssetOptIn = 3,
  AssetTransfer = 4,
  AssetDestroy = 5,
  AssetConfig = 6,
  AppCreate = 7,
  AppCall = 8,
  AppDelete = 9,
};

struct FieldEncoder {
  Encoder& enc;

  void operator()(const PaymentFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::Payment));
    enc.address(f.sender);
    enc.address(f.receiver);
    enc.u64(f.amount);
  }
  void operator()(const AssetCreateFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AssetCreate));
    enc.address(f.creator);
    enc.u64(f.total);
    enc.u32(f.decimals);
    enc.str(f.unit_name);
    enc.str(f.asset_name);
    enc.str(f.url);
    enc.opt_digest(f.metadata_hash);
    enc.address(f.manager);
  }
  void operator()(const AssetOptInFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AssetOptIn));
    enc.address(f.account);
    enc.u64(f.asset);
  }
  void operator()(const AssetTransferFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AssetTransfer));
    enc.address(f.sender);
    enc.address(f.receiver);
    enc.u64(f.asset);
    enc.u64(f.amount);
  }
  void operator()(const AssetDestroyFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AssetDestroy));
    enc.address(f.caller);
    enc.u64(f.asset);
  }
  void operator()(const AssetConfigFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AssetConfig));
    enc.address(f.caller);
    enc.u64(f.asset);
    enc.address(f.new_manager);
  }
  void operator()(const AppCreateFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AppCreate));
    enc.address(f.creator);
    enc.address(f.trusted_recycler);
  }
  void operator()(const AppCallFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AppCall));
    enc.address(f.caller);
    enc.u64(f.app);
    enc.u32(static_cast<std::uint32_t>(f.args.size()));
    for (const auto& a : f.args) enc.str(a);
    enc.u32(static_cast<std::uint32_t>(f.foreign_assets.size()));
    for (auto id : f.foreign_assets) enc.u64(id);
  }
  void operator()(const AppDeleteFields& f) {
    enc.u8(static_cast<std::uint8_t>(Tag::AppDelete));
    enc.address(f.caller);
    enc.u64(f.app);
  }
};

// Body encoding shared by the txid (group included) and the group id
// (group excluded).
void encode_body(Encoder& enc, const Transaction& tx, bool with_group) {
  std::visit(FieldEncoder{enc}, tx.fields);
  enc.u64(tx.fee);
  if (with_group) {
    enc.opt_digest(tx.group);
  }
}

}  // namespace

const Address& Transaction::sender() const {
  return std::visit(
      [](const auto& f) -> const Address& {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PaymentFields>) return f.sender;
        else if constexpr (std::is_same_v<T, AssetCreateFields>) return f.creator;
        else if constexpr (std::is_same_v<T, AssetOptInFields>) return f.account;
        else if constexpr (std::is_same_v<T, AssetTransferFields>) return f.sender;
        else if constexpr (std::is_same_v<T, AssetDestroyFields>) return f.caller;
        else if constexpr (std::is_same_v<T, AssetConfigFields>) return f.caller;
        else if constexpr (std::is_same_v<T, AppCreateFields>) return f.creator;
        else if constexpr (std::is_same_v<T, AppCallFields>) return f.caller;
        else return f.caller;
      },
      fields);
}

void encode_transaction(Encoder& enc, const Transaction& tx) {
  encode_body(enc, tx, /*with_group=*/true);
  enc.bytes32(tx.id);
}

Transaction decode_transaction(Decoder& dec) {
  Transaction tx;
  Tag tag = static_cast<Tag>(dec.u8());
  switch (tag) {
    case Tag::Payment: {
      PaymentFields f;
      f.sender = dec.address();
      f.receiver = dec.address();
      f.amount = dec.u64();
      tx.fields = f;
      break;
    }
    case Tag::AssetCreate: {
      AssetCreateFields f;
      f.creator = dec.address();
      f.total = dec.u64();
      f.decimals = dec.u32();
      f.unit_name = dec.str();
      f.asset_name = dec.str();
      f.url = dec.str();
      f.metadata_hash = dec.opt_digest();
      f.manager = dec.address();
      tx.fields = f;
      break;
    }
    case Tag::AssetOptIn: {
      AssetOptInFields f;
      f.account = dec.address();
      f.asset = dec.u64();
      tx.fields = f;
      break;
    }
    case Tag::AssetTransfer: {
      AssetTransferFields f;
      f.sender = dec.address();
      f.receiver = dec.address();
      f.asset = dec.u64();
      f.amount = dec.u64();
      tx.fields = f;
      break;
    }
    case Tag::AssetDestroy: {
      AssetDestroyFields f;
      f.caller = dec.address();
      f.asset = dec.u64();
      tx.fields = f;
      break;
    }
    case Tag::AssetConfig: {
      AssetConfigFields f;
      f.caller = dec.address();
      f.asset = dec.u64();
      f.new_manager = dec.address();
      tx.fields = f;
      break;
    }
    case Tag::AppCreate: {
      AppCreateFields f;
      f.creator = dec.address();
      f.trusted_recycler = dec.address();
      tx.fields = f;
      break;
    }
    case Tag::AppCall: {
      AppCallFields f;
      f.caller = dec.address();
      f.app = dec.u64();
      std::uint32_t nargs = dec.u32();
      for (std::uint32_t i = 0; i < nargs && dec.ok(); ++i)
        f.args.push_back(dec.str());
      std::uint32_t nassets = dec.u32();
      for (std::uint32_t i = 0; i < nassets && dec.ok(); ++i)
        f.foreign_assets.push_back(dec.u64());
      tx.fields = f;
      break;
    }
    case Tag::AppDelete: {
      AppDeleteFields f;
      f.caller = dec.address();
      f.app = dec.u64();
      tx.fields = f;
      break;
    }
  }
  tx.fee = dec.u64();
  tx.group = dec.opt_digest();
  tx.id = dec.bytes32();
  return tx;
}

Digest transaction_id(const Transaction& tx) {
  Encoder enc;
  enc.str("txn");
  encode_body(enc, tx, /*with_group=*/true);
  return sha256(enc.bytes());
}

Digest compute_group_id(std::span<const Transaction> txns) {
  Encoder enc;
  enc.str("grp");
  enc.u32(static_cast<std::uint32_t>(txns.size()));
  for (const auto& tx : txns) {
    Encoder member;
    encode_body(member, tx, /*with_group=*/false);
    enc.bytes32(sha256(member.bytes()));
  }
  return sha256(enc.bytes());
}

const char* variant_name(const Transaction& tx) {
  return std::visit(
      [](const auto& f) -> const char* {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PaymentFields>) return "pay";
        else if constexpr (std::is_same_v<T, AssetCreateFields>) return "acreate";
        else if constexpr (std::is_same_v<T, AssetOptInFields>) return "aoptin";
        else if constexpr (std::is_same_v<T, AssetTransferFields>) return "axfer";
        else if constexpr (std::is_same_v<T, AssetDestroyFields>) return "adestroy";
        else if constexpr (std::is_same_v<T, AssetConfigFields>) return "acfg";
        else if constexpr (std::is_same_v<T, AppCreateFields>) return "appcreate";
        else if constexpr (std::is_same_v<T, AppCallFields>) return "appcall";
        else return "appdelete";
      },
      tx.fields);
}

}  // namespace ledgersim
