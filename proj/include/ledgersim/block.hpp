// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ledgersim/transaction.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim {

// Administrative ledger mutations (account creation, role registry changes)
// are journaled into the next block so a replay of the block log alone
// reconstructs the full state.
struct AdminOp {
  enum class Kind : std::uint8_t {
    CreateAccount = 1,
    SetAuthenticator = 2,
    CertifyManufacturer = 3,
    CertifyRecycler = 4,
  };

  Kind kind = Kind::CreateAccount;
  Address address;
  MicroUnits balance = 0;  // CreateAccount only
};

// Per-transaction outcome; invalid transactions stay in the block as
// rejected entries with a reason so the history is auditable.
struct TxRecord {
  Transaction txn;
  bool applied = false;
  RejectReason reason = RejectReason::None;
  // First transaction of its pool entry (every singleton, and the head of
  // each atomic group). Recorded so replay rebuilds the exact entries even
  // when identical submissions repeat.
  bool group_start = true;
  // Asset or app id assigned by a create; derivable from replay, so it is
  // not part of the canonical block serialization.
  std::optional<std::uint64_t> created_id;
};

struct Block {
  std::uint64_t round = 0;
  std::uint64_t timestamp_millis = 0;
  Digest prev_hash{};
  std::vector<AdminOp> admin_ops;
  std::vector<TxRecord> txns;
  Digest state_hash{};

  double timestamp_seconds() const { return timestamp_millis / 1000.0; }
};

void encode_block(Encoder& enc, const Block& block);
Block decode_block(Decoder& dec);

// Digest of the canonical block serialization; chained via prev_hash.
Digest block_hash(const Block& block);

}  // namespace ledgersim
