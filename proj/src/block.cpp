// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/block.hpp"

#include "ledgersim/digest.hpp"

namespace ledgersim {

void encode_block(Encoder& enc, const Block& block) {
  enc.u64(block.round);
  enc.u64(block.timestamp_millis);
  enc.bytes32(block.prev_hash);
  enc.u32(static_cast<std::uint32_t>(block.admin_ops.size()));
  for (const auto& op : block.admin_ops) {
    enc.u8(static_cast<std::uint8_t>(op.kind));
    enc.address(op.address);
    enc.u64(op.balance);
  }
  enc.u32(static_cast<std::uint32_t>(block.txns.size()));
  for (const auto& rec : block.txns) {
    encode_transaction(enc, rec.txn);
    enc.u8(rec.applied ? 1 : 0);
    enc.u8(static_cast<std::uint8_t>(rec.reason));
    enc.u8(rec.group_start ? 1 : 0);
  }
  enc.bytes32(block.state_hash);
}

Block decode_block(Decoder& dec) {
  Block block;
  block.round = dec.u64();
  block.timestamp_millis = dec.u64();
  block.prev_hash = dec.bytes32();
  std::uint32_t nops = dec.u32();
  for (std::uint32_t i = 0; i < nops && dec.ok(); ++i) {
    AdminOp op;
    op.kind = static_cast<AdminOp::Kind>(dec.u8());
    op.address = dec.address();
    op.balance = dec.u64();
    block.admin_ops.push_back(op);
  }
  std::uint32_t ntx = dec.u32();
  for (std::uint32_t i = 0; i < ntx && dec.ok(); ++i) {
    TxRecord rec;
    rec.txn = decode_transaction(dec);
    rec.applied = dec.u8() != 0;
    rec.reason = static_cast<RejectReason>(dec.u8());
    rec.group_start = dec.u8() != 0;
    block.txns.push_back(std::move(rec));
  }
  block.state_hash = dec.bytes32();
  return block;
}

Digest block_hash(const Block& block) {
  Encoder enc;
  enc.str("blk");
  encode_block(enc, block);
  return sha256(enc.bytes());
}

}  // namespace ledgersim
