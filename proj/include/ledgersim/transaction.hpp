// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ledgersim/encode.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim {

struct PaymentFields {
  Address sender;
  Address receiver;
  MicroUnits amount = 0;
};

struct AssetCreateFields {
  Address creator;
  std::uint64_t total = 0;
  std::uint32_t decimals = 0;
  std::string unit_name;
  std::string asset_name;
  std::string url;
  std::optional<Digest> metadata_hash;
  Address manager;
};

struct AssetOptInFields {
  Address account;
  AssetId asset = 0;
};

struct AssetTransferFields {
  Address sender;
  Address receiver;
  AssetId asset = 0;
  std::uint64_t amount = 0;
};

struct AssetDestroyFields {
  Address caller;
  AssetId asset = 0;
};

// Manager reassignment (the asset configuration transaction). Needed so the
// chip NFT's management rights can follow the component to its buyer.
struct AssetConfigFields {
  Address caller;
  AssetId asset = 0;
  Address new_manager;
};

struct AppCreateFields {
  Address creator;
  Address trusted_recycler;
};

struct AppCallFields {
  Address caller;
  AppId app = 0;
  std::vector<std::string> args;  // args[0] is the method selector
  std::vector<AssetId> foreign_assets;
};

struct AppDeleteFields {
  Address caller;
  AppId app = 0;
};

using TransactionFields =
    std::variant<PaymentFields, AssetCreateFields, AssetOptInFields,
                 AssetTransferFields, AssetDestroyFields, AssetConfigFields,
                 AppCreateFields, AppCallFields, AppDeleteFields>;

struct Transaction {
  TransactionFields fields;
  MicroUnits fee = 0;           // stamped to the flat fee on submission
  std::optional<Digest> group;  // set for members of an atomic group
  Digest id{};                  // digest of the canonical serialization

  // The account that pays the fee and authorizes the operation.
  const Address& sender() const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&fields);
  }
};

inline Transaction make_transaction(TransactionFields fields) {
  Transaction tx;
  tx.fields = std::move(fields);
  return tx;
}

void encode_transaction(Encoder& enc, const Transaction& tx);
Transaction decode_transaction(Decoder& dec);

// Canonical transaction id; covers the group assignment when present.
Digest transaction_id(const Transaction& tx);

// Group id over the member transactions' group-free digests.
Digest compute_group_id(std::span<const Transaction> txns);

const char* variant_name(const Transaction& tx);

}  // namespace ledgersim
