// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <vector>

#include "ledgersim/block.hpp"
#include "ledgersim/state.hpp"
#include "ledgersim/transaction.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim {

// Deterministic account-based ledger. Transactions queue in a FIFO pool and
// take effect when a block is produced; validation happens at production
// time against the evolving state. Submission is thread-safe; block
// production is single-writer.
class Ledger {
 public:
  explicit Ledger(Config config = {});

  // --- Administrative operations (journaled into the next block). ---

  Address create_account(MicroUnits initial_balance);

  // The authenticator is fixed once; afterwards only it mutates the registry.
  Status set_authenticator(const Address& account);
  Status certify_manufacturer(const Address& caller, const Address& account);
  Status certify_recycler(const Address& caller, const Address& account);

  // --- Transaction pool. ---

  // Stamps the flat fee and the canonical id, then appends in FIFO order.
  // Validation is deferred to block production.
  Outcome<Digest> submit(Transaction tx);

  // Atomic group of 1..16 transactions; applied all-or-nothing.
  Outcome<Digest> submit_group(std::vector<Transaction> txns);

  // Drains up to block_capacity pooled transactions in FIFO order. A group
  // is taken whole; one that would cross the capacity boundary is deferred,
  // closing the block early. Always advances the round clock.
  Block produce_block();

  // --- Synchronous helpers: submit, then produce until the outcome lands. ---

  TxRecord apply_now(Transaction tx);
  std::vector<TxRecord> apply_group_now(std::vector<Transaction> txns);

  Outcome<AssetId> asset_create(const Address& creator, std::uint64_t total,
                                std::uint32_t decimals, std::string unit_name,
                                std::string asset_name, std::string url,
                                std::optional<Digest> metadata_hash,
                                const Address& manager);
  Status asset_opt_in(const Address& account, AssetId asset);
  Status asset_transfer(const Address& sender, const Address& receiver,
                        AssetId asset, std::uint64_t amount);
  Status asset_destroy(const Address& caller, AssetId asset);
  Status asset_reconfigure(const Address& caller, AssetId asset,
                           const Address& new_manager);

  // --- Queries over committed state. ---

  std::optional<Account> account(const Address& address) const;
  std::optional<Asset> asset(AssetId id) const;
  std::optional<AppRecord> app(AppId id) const;
  RoleRegistry registry() const;
  std::uint64_t round() const;
  std::size_t pool_size() const;
  const Config& config() const { return config_; }

  // Committed block history (not thread-safe against concurrent production).
  const std::vector<Block>& blocks() const { return blocks_; }
  Digest last_block_hash() const;

  // Digest of the canonical state serialization (config, round, counters,
  // accounts, assets, apps, registry).
  Digest state_hash() const;

  // Digest over accounts/assets/apps/registry only; unchanged by rounds
  // that had no effect, which makes rejection tests exact.
  Digest content_hash() const;

  // Invoked with each block as it is committed (block log hook).
  void set_block_observer(std::function<void(const Block&)> observer);

  // --- Snapshot / replay support. ---

  LedgerState state_copy() const;
  static Ledger restore(const Config& config, LedgerState state,
                        const Digest& last_block_hash);

  // Re-executes a recorded block through the normal production path and
  // checks the result is bit-identical. False on any divergence.
  bool replay_block(const Block& recorded);

 private:
  struct PoolEntry {
    std::vector<Transaction> txns;  // size 1 and no group id for singletons
  };

  Ledger(const Config& config, LedgerState state, const Digest& last_hash);

  RejectReason well_formed(const Transaction& tx) const;
  RejectReason validate(const LedgerState& st, const Transaction& tx,
                        std::span<const Transaction> group) const;
  void apply(LedgerState& st, const Transaction& tx, TxRecord& rec) const;
  void apply_admin(const AdminOp& op);
  void enqueue_exact(PoolEntry entry);
  Block produce_block_locked();

  Config config_;
  LedgerState state_;
  std::vector<Block> blocks_;
  Digest last_hash_{};
  std::size_t state_bytes_hint_ = 0;

  std::deque<PoolEntry> pool_;
  std::size_t pool_txn_count_ = 0;
  std::vector<AdminOp> admin_journal_;
  std::function<void(const Block&)> block_observer_;

  mutable std::shared_mutex state_mu_;
  mutable std::mutex pool_mu_;
};

}  // namespace ledgersim
