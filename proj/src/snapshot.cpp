// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/snapshot.hpp"

#include <sstream>

namespace ledgersim {

namespace {

constexpr std::string_view kSnapshotMagic = "LSIMSNAP";
constexpr std::string_view kBlockLogMagic = "LSIMBLOG";
constexpr std::uint32_t kFormatVersion = 1;

std::string read_file(const std::filesystem::path& path, std::string& error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    error = "cannot open " + path.string();
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

SnapshotError save_snapshot(const Ledger& ledger,
                            const std::filesystem::path& path) {
  Encoder enc;
  enc.str(kSnapshotMagic);
  enc.u32(kFormatVersion);
  enc.bytes32(ledger.last_block_hash());
  LedgerState state = ledger.state_copy();
  encode_state(enc, state, ledger.config());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return {false, "cannot open " + path.string()};
  out.write(enc.bytes().data(),
            static_cast<std::streamsize>(enc.bytes().size()));
  out.flush();
  if (!out) return {false, "write failed: " + path.string()};
  return {};
}

LoadedSnapshot load_snapshot(const std::filesystem::path& path) {
  LoadedSnapshot loaded;
  std::string data = read_file(path, loaded.message);
  if (!loaded.message.empty()) return loaded;

  Decoder dec(data);
  if (dec.str() != kSnapshotMagic) {
    loaded.message = "not a snapshot file: " + path.string();
    return loaded;
  }
  if (dec.u32() != kFormatVersion) {
    loaded.message = "unsupported snapshot version";
    return loaded;
  }
  loaded.last_block_hash = dec.bytes32();
  if (!decode_state(dec, loaded.state, loaded.config) || !dec.at_end()) {
    loaded.message = "corrupt snapshot: " + path.string();
    return loaded;
  }
  loaded.ok = true;
  return loaded;
}

bool BlockLogWriter::open(const std::filesystem::path& path,
                          const Config& config) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) return false;
  Encoder enc;
  enc.str(kBlockLogMagic);
  enc.u32(kFormatVersion);
  enc.u32(config.block_capacity);
  enc.u32(config.round_millis);
  enc.u64(config.flat_fee);
  out_.write(enc.bytes().data(),
             static_cast<std::streamsize>(enc.bytes().size()));
  out_.flush();
  return static_cast<bool>(out_);
}

void BlockLogWriter::append(const Block& block) {
  if (!out_) return;
  Encoder body;
  encode_block(body, block);
  Encoder framed;
  framed.u64(body.bytes().size());
  out_.write(framed.bytes().data(),
             static_cast<std::streamsize>(framed.bytes().size()));
  out_.write(body.bytes().data(),
             static_cast<std::streamsize>(body.bytes().size()));
  out_.flush();
}

BlockLog read_block_log(const std::filesystem::path& path) {
  BlockLog log;
  std::string data = read_file(path, log.message);
  if (!log.message.empty()) return log;

  Decoder dec(data);
  if (dec.str() != kBlockLogMagic) {
    log.message = "not a block log: " + path.string();
    return log;
  }
  if (dec.u32() != kFormatVersion) {
    log.message = "unsupported block log version";
    return log;
  }
  log.config.block_capacity = dec.u32();
  log.config.round_millis = dec.u32();
  log.config.flat_fee = dec.u64();
  while (dec.ok() && !dec.at_end()) {
    std::uint64_t length = dec.u64();
    if (!dec.ok() || length > dec.remaining()) {
      log.message = "truncated block log: " + path.string();
      return log;
    }
    std::size_t before = dec.remaining();
    Block block = decode_block(dec);
    if (!dec.ok() || before - dec.remaining() != length) {
      log.message = "corrupt block in log: " + path.string();
      return log;
    }
    log.blocks.push_back(std::move(block));
  }
  if (!dec.ok()) {
    log.message = "corrupt block log: " + path.string();
    return log;
  }
  log.ok = true;
  return log;
}

ReplayResult replay_chain(Ledger& genesis, std::span<const Block> blocks) {
  ReplayResult result;
  for (const Block& block : blocks) {
    if (!genesis.replay_block(block)) {
      result.message =
          "replay diverged at round " + std::to_string(block.round);
      return result;
    }
    result.verified_blocks += 1;
  }
  result.ok = true;
  return result;
}

}  // namespace ledgersim
