// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ledgersim {

using MicroUnits = std::uint64_t;
using AssetId = std::uint64_t;
using AppId = std::uint64_t;
using Digest = std::array<std::uint8_t, 32>;

// Protocol constants. Block cadence and capacity mirror the target chain;
// the flat per-transaction fee is the modelled constant cost.
inline constexpr std::uint32_t kBlockCapacity = 5000;
inline constexpr std::uint32_t kRoundMillis = 4500;
inline constexpr MicroUnits kFlatFee = 1000;
inline constexpr MicroUnits kAppMinFunding = 1'000'000;
inline constexpr std::size_t kMaxGroupSize = 16;
inline constexpr std::size_t kMaxUnitNameLen = 8;
inline constexpr std::size_t kMaxAssetNameLen = 32;

struct Config {
  std::uint32_t block_capacity = kBlockCapacity;
  std::uint32_t round_millis = kRoundMillis;
  MicroUnits flat_fee = kFlatFee;

  double round_seconds() const { return round_millis / 1000.0; }
};

// Opaque 32-byte account identifier, rendered as 64 hex characters.
struct Address {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const Address&) const = default;

  bool is_zero() const {
    for (auto b : bytes)
      if (b != 0) return false;
    return true;
  }

  std::string to_string() const;
  static std::optional<Address> from_string(std::string_view hex);
};

enum class RejectReason : std::uint8_t {
  None = 0,
  MalformedTransaction,
  UnknownAccount,
  UnknownAsset,
  UnknownApp,
  AssetDestroyed,
  InvalidTotal,
  InsufficientBalance,
  InsufficientHolding,
  SenderNotOptedIn,
  ReceiverNotOptedIn,
  NotManager,
  SupplyNotConsolidated,
  UnauthorizedAppSpend,
  NotCertifiedManufacturer,
  NotAuthenticator,
  NotCreator,
  NotUser,
  NotTrustedRecycler,
  WrongState,
  EmptyAssetList,
  AppNotFunded,
  AppHoldsAssets,
  InvalidArguments,
  IncompleteDestinations,
  GroupRejected,
};

const char* to_string(RejectReason reason);

// Value-or-reason result for operations that can be rejected.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : value_(std::move(value)) {}
  Outcome(RejectReason reason) : reason_(reason) {}

  bool ok() const { return reason_ == RejectReason::None; }
  explicit operator bool() const { return ok(); }
  const T& value() const { return *value_; }
  T& value() { return *value_; }
  RejectReason error() const { return reason_; }

 private:
  std::optional<T> value_;
  RejectReason reason_ = RejectReason::None;
};

class Status {
 public:
  Status() = default;
  Status(RejectReason reason) : reason_(reason) {}

  bool ok() const { return reason_ == RejectReason::None; }
  explicit operator bool() const { return ok(); }
  RejectReason error() const { return reason_; }

 private:
  RejectReason reason_ = RejectReason::None;
};

}  // namespace ledgersim
