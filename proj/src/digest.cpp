// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/digest.hpp"

#include <openssl/sha.h>

namespace ledgersim {

Digest sha256(std::string_view data) {
  Digest out{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
         out.data());
  return out;
}

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(const Digest& digest) {
  std::string out;
  out.reserve(64);
  for (auto b : digest) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Digest> digest_from_hex(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  Digest out{};
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string Address::to_string() const {
  Digest d;
  std::copy(bytes.begin(), bytes.end(), d.begin());
  return to_hex(d);
}

std::optional<Address> Address::from_string(std::string_view hex) {
  auto d = digest_from_hex(hex);
  if (!d) return std::nullopt;
  Address a;
  std::copy(d->begin(), d->end(), a.bytes.begin());
  return a;
}

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::None: return "ok";
    case RejectReason::MalformedTransaction: return "malformed transaction";
    case RejectReason::UnknownAccount: return "unknown account";
    case RejectReason::UnknownAsset: return "unknown asset";
    case RejectReason::UnknownApp: return "unknown application";
    case RejectReason::AssetDestroyed: return "asset destroyed";
    case RejectReason::InvalidTotal: return "invalid total";
    case RejectReason::InsufficientBalance: return "insufficient balance";
    case RejectReason::InsufficientHolding: return "insufficient holding";
    case RejectReason::SenderNotOptedIn: return "sender not opted in";
    case RejectReason::ReceiverNotOptedIn: return "receiver not opted in";
    case RejectReason::NotManager: return "caller is not the asset manager";
    case RejectReason::SupplyNotConsolidated: return "supply not consolidated";
    case RejectReason::UnauthorizedAppSpend: return "unauthorized app spend";
    case RejectReason::NotCertifiedManufacturer:
      return "not a certified manufacturer";
    case RejectReason::NotAuthenticator: return "caller is not the authenticator";
    case RejectReason::NotCreator: return "caller is not the contract creator";
    case RejectReason::NotUser: return "caller is not the contract user";
    case RejectReason::NotTrustedRecycler:
      return "caller is not the trusted recycler";
    case RejectReason::WrongState: return "wrong contract state";
    case RejectReason::EmptyAssetList: return "empty asset list";
    case RejectReason::AppNotFunded: return "application account not funded";
    case RejectReason::AppHoldsAssets: return "application still holds assets";
    case RejectReason::InvalidArguments: return "invalid call arguments";
    case RejectReason::IncompleteDestinations: return "incomplete destinations";
    case RejectReason::GroupRejected: return "group rejected";
  }
  return "unknown";
}

}  // namespace ledgersim
