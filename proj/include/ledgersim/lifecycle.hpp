// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ledgersim/block.hpp"
#include "ledgersim/ledger.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim::lifecycle {

// Off-ledger metadata for one chip; committed on-ledger through its digest,
// so any field mutation is detectable.
struct ChipPassport {
  std::string chip_serial;
  std::string chip_type;
  std::string manufacturer_of_chip;
  std::string manufacture_date;  // ISO date
  std::uint32_t months_in_service = 0;
  std::string url;

  // Canonical serialization: key=value lines in declaration order.
  std::string canonical() const;
  Digest digest() const;
};

enum class EventKind : std::uint8_t {
  Minted,
  Transferred,
  Bound,
  Released,
  Recycled,
  Destroyed,
};

const char* to_string(EventKind kind);

struct ProvenanceEvent {
  EventKind kind = EventKind::Minted;
  std::uint64_t round = 0;
  Address from;
  Address to;
  AppId app = 0;  // Bound/Released/Recycled events
};

struct ProvenanceRecord {
  AssetId asset = 0;
  std::vector<ProvenanceEvent> events;
};

// What happens to a chip NFT when its product is recycled.
struct Disposition {
  enum class Kind : std::uint8_t { Reuse, Destroy };
  Kind kind = Kind::Destroy;
  Address reuse_to;

  static Disposition reuse(const Address& to) {
    return Disposition{Kind::Reuse, to};
  }
  static Disposition destroy() { return Disposition{Kind::Destroy, {}}; }
};

// Mints the chip-passport NFT (total 1, decimals 0). Only the registry's
// authenticator may certify.
Outcome<AssetId> certify_chip(Ledger& ledger, const Address& authenticator,
                              const ChipPassport& passport);

// Hands the NFT and its management rights to a certified manufacturer.
// The manufacturer must have opted in first.
Status transfer_to_manufacturer(Ledger& ledger, const Address& authenticator,
                                const Address& manufacturer, AssetId asset);

// Full packaging sequence: deploy the product contract, fund it, Init with
// the chip NFTs, move them into custody. Ends in state Bound.
Outcome<AppId> assemble_product(Ledger& ledger, const Address& manufacturer,
                                const std::vector<AssetId>& assets,
                                const Address& trusted_recycler);

Status distribute(Ledger& ledger, const Address& manufacturer, AppId app,
                  const Address& user);
Status return_product(Ledger& ledger, const Address& user, AppId app);

// Dismantles the released product and applies the per-asset dispositions:
// Reuse re-enters circulation at the named account, Destroy consolidates to
// the asset manager and burns the NFT.
Status recycle(Ledger& ledger, const Address& recycler, AppId app,
               const std::map<AssetId, Disposition>& dispositions);

// Ordered event history reconstructed from the block log. Pure read.
Outcome<ProvenanceRecord> trace(const Ledger& ledger, AssetId asset);
Outcome<ProvenanceRecord> trace_blocks(std::span<const Block> blocks,
                                       AssetId asset);

}  // namespace ledgersim::lifecycle
