// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "ledgersim/block.hpp"
#include "ledgersim/ledger.hpp"

namespace ledgersim {

// Snapshot: versioned binary file holding the canonical state serialization;
// load(save(L)) reproduces the state hash bit-for-bit.
struct SnapshotError {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

SnapshotError save_snapshot(const Ledger& ledger,
                            const std::filesystem::path& path);

struct LoadedSnapshot {
  bool ok = false;
  std::string message;
  Config config;
  LedgerState state;
  Digest last_block_hash{};

  Ledger restore() const {
    return Ledger::restore(config, state, last_block_hash);
  }
};

LoadedSnapshot load_snapshot(const std::filesystem::path& path);

// Append-only log of canonical block serializations, sufficient for replay.
class BlockLogWriter {
 public:
  bool open(const std::filesystem::path& path, const Config& config);
  void append(const Block& block);
  bool is_open() const { return out_.is_open(); }

 private:
  std::ofstream out_;
};

struct BlockLog {
  bool ok = false;
  std::string message;
  Config config;
  std::vector<Block> blocks;
};

BlockLog read_block_log(const std::filesystem::path& path);

// Replays blocks from genesis through the production path, verifying each
// recorded block byte-for-byte.
struct ReplayResult {
  bool ok = false;
  std::string message;
  std::uint64_t verified_blocks = 0;
};

ReplayResult replay_chain(Ledger& genesis, std::span<const Block> blocks);

}  // namespace ledgersim
