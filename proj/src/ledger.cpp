// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/ledger.hpp"

#include "ledgersim/contract.hpp"
#include "ledgersim/digest.hpp"

namespace ledgersim {

namespace {

Address derive_account_address(std::uint64_t nonce) {
  Encoder enc;
  enc.str("acct");
  enc.u64(nonce);
  Address addr;
  addr.bytes = sha256(enc.bytes());
  return addr;
}

bool is_opt_in(const AssetTransferFields& f) {
  return f.sender == f.receiver && f.amount == 0;
}

}  // namespace

Ledger::Ledger(Config config) : config_(config) {}

Ledger::Ledger(const Config& config, LedgerState state, const Digest& last_hash)
    : config_(config), state_(std::move(state)), last_hash_(last_hash) {}

// ---------------------------------------------------------------------------
// Administrative operations
// ---------------------------------------------------------------------------

void Ledger::apply_admin(const AdminOp& op) {
  switch (op.kind) {
    case AdminOp::Kind::CreateAccount: {
      Account acct;
      acct.address = op.address;
      acct.balance = op.balance;
      state_.accounts.emplace(op.address, std::move(acct));
      state_.account_nonce += 1;
      break;
    }
    case AdminOp::Kind::SetAuthenticator:
      state_.registry.authenticator = op.address;
      break;
    case AdminOp::Kind::CertifyManufacturer:
      state_.registry.certified_manufacturers.insert(op.address);
      break;
    case AdminOp::Kind::CertifyRecycler:
      state_.registry.certified_recyclers.insert(op.address);
      break;
  }
}

Address Ledger::create_account(MicroUnits initial_balance) {
  std::unique_lock state_lock(state_mu_);
  std::lock_guard pool_lock(pool_mu_);
  AdminOp op;
  op.kind = AdminOp::Kind::CreateAccount;
  op.address = derive_account_address(state_.account_nonce);
  op.balance = initial_balance;
  apply_admin(op);
  admin_journal_.push_back(op);
  return op.address;
}

Status Ledger::set_authenticator(const Address& account) {
  std::unique_lock state_lock(state_mu_);
  std::lock_guard pool_lock(pool_mu_);
  if (!state_.find_account(account)) return RejectReason::UnknownAccount;
  if (state_.registry.authenticator) return RejectReason::NotAuthenticator;
  AdminOp op;
  op.kind = AdminOp::Kind::SetAuthenticator;
  op.address = account;
  apply_admin(op);
  admin_journal_.push_back(op);
  return {};
}

Status Ledger::certify_manufacturer(const Address& caller,
                                    const Address& account) {
  std::unique_lock state_lock(state_mu_);
  std::lock_guard pool_lock(pool_mu_);
  if (!state_.registry.is_authenticator(caller))
    return RejectReason::NotAuthenticator;
  if (!state_.find_account(account)) return RejectReason::UnknownAccount;
  AdminOp op;
  op.kind = AdminOp::Kind::CertifyManufacturer;
  op.address = account;
  apply_admin(op);
  admin_journal_.push_back(op);
  return {};
}

Status Ledger::certify_recycler(const Address& caller, const Address& account) {
  std::unique_lock state_lock(state_mu_);
  std::lock_guard pool_lock(pool_mu_);
  if (!state_.registry.is_authenticator(caller))
    return RejectReason::NotAuthenticator;
  if (!state_.find_account(account)) return RejectReason::UnknownAccount;
  AdminOp op;
  op.kind = AdminOp::Kind::CertifyRecycler;
  op.address = account;
  apply_admin(op);
  admin_journal_.push_back(op);
  return {};
}

// ---------------------------------------------------------------------------
// Pool
// ---------------------------------------------------------------------------

RejectReason Ledger::well_formed(const Transaction& tx) const {
  if (const auto* f = tx.as<AssetCreateFields>()) {
    if (f->unit_name.size() > kMaxUnitNameLen ||
        f->asset_name.size() > kMaxAssetNameLen)
      return RejectReason::MalformedTransaction;
  }
  if (const auto* f = tx.as<AppCallFields>()) {
    if (f->args.empty()) return RejectReason::MalformedTransaction;
  }
  return RejectReason::None;
}

Outcome<Digest> Ledger::submit(Transaction tx) {
  if (auto r = well_formed(tx); r != RejectReason::None) return r;
  tx.fee = config_.flat_fee;
  tx.group = std::nullopt;
  tx.id = transaction_id(tx);

  std::lock_guard pool_lock(pool_mu_);
  Digest id = tx.id;
  PoolEntry entry;
  entry.txns.push_back(std::move(tx));
  pool_.push_back(std::move(entry));
  pool_txn_count_ += 1;
  return id;
}

Outcome<Digest> Ledger::submit_group(std::vector<Transaction> txns) {
  if (txns.empty() || txns.size() > kMaxGroupSize ||
      txns.size() > config_.block_capacity)
    return RejectReason::MalformedTransaction;
  for (auto& tx : txns) {
    if (auto r = well_formed(tx); r != RejectReason::None) return r;
    tx.fee = config_.flat_fee;
    tx.group = std::nullopt;
  }
  Digest gid = compute_group_id(txns);
  for (auto& tx : txns) {
    tx.group = gid;
    tx.id = transaction_id(tx);
  }

  std::lock_guard pool_lock(pool_mu_);
  std::size_t n = txns.size();
  PoolEntry entry;
  entry.txns = std::move(txns);
  pool_.push_back(std::move(entry));
  pool_txn_count_ += n;
  return gid;
}

void Ledger::enqueue_exact(PoolEntry entry) {
  std::lock_guard pool_lock(pool_mu_);
  pool_txn_count_ += entry.txns.size();
  pool_.push_back(std::move(entry));
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

RejectReason Ledger::validate(const LedgerState& st, const Transaction& tx,
                              std::span<const Transaction> group) const {
  const Address& sender = tx.sender();
  const Account* payer = st.find_account(sender);
  if (!payer) return RejectReason::UnknownAccount;

  // Application accounts spend only through the dismantle flow below.
  const AppRecord* sender_app = st.find_app_by_address(sender);
  if (sender_app && !tx.as<AssetTransferFields>())
    return RejectReason::UnauthorizedAppSpend;

  if (const auto* f = tx.as<PaymentFields>()) {
    if (payer->balance < tx.fee || payer->balance - tx.fee < f->amount)
      return RejectReason::InsufficientBalance;
    const Account* receiver = st.find_account(f->receiver);
    if (!receiver) return RejectReason::UnknownAccount;
    if (receiver->balance + f->amount < receiver->balance)
      return RejectReason::MalformedTransaction;  // balance overflow
    return RejectReason::None;
  }

  if (const auto* f = tx.as<AssetCreateFields>()) {
    if (f->total < 1) return RejectReason::InvalidTotal;
    if (!st.find_account(f->manager)) return RejectReason::UnknownAccount;
    if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
    return RejectReason::None;
  }

  if (const auto* f = tx.as<AssetOptInFields>()) {
    const Asset* asset = st.find_asset(f->asset);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;
    if (payer->opted_in(f->asset)) return RejectReason::None;  // free no-op
    if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
    return RejectReason::None;
  }

  if (const auto* f = tx.as<AssetTransferFields>()) {
    const Asset* asset = st.find_asset(f->asset);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;

    if (sender_app) {
      if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
      return contract::check_app_extraction(st, *f, *sender_app, group);
    }

    if (is_opt_in(*f)) {
      if (payer->opted_in(f->asset)) return RejectReason::None;  // idempotent
      if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
      return RejectReason::None;
    }
    if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
    if (!payer->opted_in(f->asset)) return RejectReason::SenderNotOptedIn;
    if (payer->holding(f->asset) < f->amount)
      return RejectReason::InsufficientHolding;
    const Account* receiver = st.find_account(f->receiver);
    if (!receiver) return RejectReason::UnknownAccount;
    if (!receiver->opted_in(f->asset))
      return RejectReason::ReceiverNotOptedIn;
    return RejectReason::None;
  }

  if (const auto* f = tx.as<AssetDestroyFields>()) {
    const Asset* asset = st.find_asset(f->asset);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;
    if (asset->manager != f->caller) return RejectReason::NotManager;
    if (payer->holding(f->asset) != asset->total)
      return RejectReason::SupplyNotConsolidated;
    if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
    return RejectReason::None;
  }

  if (const auto* f = tx.as<AssetConfigFields>()) {
    const Asset* asset = st.find_asset(f->asset);
    if (!asset) return RejectReason::UnknownAsset;
    if (asset->destroyed) return RejectReason::AssetDestroyed;
    if (asset->manager != f->caller) return RejectReason::NotManager;
    if (!st.find_account(f->new_manager)) return RejectReason::UnknownAccount;
    if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;
    return RejectReason::None;
  }

  if (payer->balance < tx.fee) return RejectReason::InsufficientBalance;

  if (const auto* f = tx.as<AppCreateFields>())
    return contract::check_app_create(st, *f);
  if (const auto* f = tx.as<AppCallFields>())
    return contract::check_app_call(st, *f);
  if (const auto* f = tx.as<AppDeleteFields>())
    return contract::check_app_delete(st, *f);

  return RejectReason::MalformedTransaction;
}

// ---------------------------------------------------------------------------
// Application (only called after a successful validate)
// ---------------------------------------------------------------------------

void Ledger::apply(LedgerState& st, const Transaction& tx, TxRecord& rec) const {
  const Address& sender = tx.sender();

  if (const auto* f = tx.as<AssetOptInFields>()) {
    Account& acct = *st.find_account(sender);
    if (acct.opted_in(f->asset)) return;  // no-op, no fee
    acct.balance -= tx.fee;
    acct.holdings.emplace(f->asset, 0);
    return;
  }

  if (const auto* f = tx.as<AssetTransferFields>()) {
    if (!st.find_app_by_address(sender) && is_opt_in(*f)) {
      Account& acct = *st.find_account(sender);
      if (acct.opted_in(f->asset)) return;  // no-op, no fee
      acct.balance -= tx.fee;
      acct.holdings.emplace(f->asset, 0);
      return;
    }
    Account& from = *st.find_account(f->sender);
    from.balance -= tx.fee;
    from.holdings[f->asset] -= f->amount;
    Account& to = *st.find_account(f->receiver);
    to.holdings[f->asset] += f->amount;
    if (st.find_app_by_address(f->receiver))
      contract::notify_custody(st, f->receiver);
    return;
  }

  Account& payer = *st.find_account(sender);
  payer.balance -= tx.fee;

  if (const auto* f = tx.as<PaymentFields>()) {
    payer.balance -= f->amount;
    st.find_account(f->receiver)->balance += f->amount;
    return;
  }

  if (const auto* f = tx.as<AssetCreateFields>()) {
    Asset asset;
    asset.id = st.next_asset_id++;
    asset.creator = f->creator;
    asset.manager = f->manager;
    asset.total = f->total;
    asset.decimals = f->decimals;
    asset.unit_name = f->unit_name;
    asset.asset_name = f->asset_name;
    asset.url = f->url;
    asset.metadata_hash = f->metadata_hash;
    rec.created_id = asset.id;
    payer.holdings[asset.id] = asset.total;  // creator auto-opts in
    st.assets.emplace(asset.id, std::move(asset));
    return;
  }

  if (const auto* f = tx.as<AssetDestroyFields>()) {
    st.find_asset(f->asset)->destroyed = true;
    for (auto& [addr, acct] : st.accounts) acct.holdings.erase(f->asset);
    return;
  }

  if (const auto* f = tx.as<AssetConfigFields>()) {
    st.find_asset(f->asset)->manager = f->new_manager;
    return;
  }

  if (const auto* f = tx.as<AppCreateFields>()) {
    rec.created_id = contract::apply_app_create(st, *f);
    return;
  }
  if (const auto* f = tx.as<AppCallFields>()) {
    contract::apply_app_call(st, *f);
    return;
  }
  if (const auto* f = tx.as<AppDeleteFields>()) {
    contract::apply_app_delete(st, *f);
    return;
  }
}

// ---------------------------------------------------------------------------
// Block production
// ---------------------------------------------------------------------------

Block Ledger::produce_block() {
  std::unique_lock state_lock(state_mu_);
  return produce_block_locked();
}

Block Ledger::produce_block_locked() {
  Block block;
  std::vector<PoolEntry> batch;
  {
    std::lock_guard pool_lock(pool_mu_);
    block.admin_ops = std::move(admin_journal_);
    admin_journal_.clear();
    std::size_t used = 0;
    while (!pool_.empty()) {
      PoolEntry& head = pool_.front();
      if (used + head.txns.size() > config_.block_capacity) break;
      used += head.txns.size();
      pool_txn_count_ -= head.txns.size();
      batch.push_back(std::move(head));
      pool_.pop_front();
    }
  }

  for (PoolEntry& entry : batch) {
    if (entry.txns.size() == 1 && !entry.txns[0].group) {
      Transaction& tx = entry.txns[0];
      TxRecord rec;
      RejectReason reason = validate(state_, tx, {});
      rec.applied = reason == RejectReason::None;
      rec.reason = reason;
      if (rec.applied) apply(state_, tx, rec);
      rec.txn = std::move(tx);
      block.txns.push_back(std::move(rec));
      continue;
    }

    // Atomic group: run against a scratch state, commit only if every
    // member applies.
    LedgerState scratch = state_;
    std::vector<TxRecord> recs;
    recs.reserve(entry.txns.size());
    std::size_t failed_at = entry.txns.size();
    RejectReason failure = RejectReason::None;
    for (std::size_t i = 0; i < entry.txns.size(); ++i) {
      const Transaction& tx = entry.txns[i];
      RejectReason reason = validate(scratch, tx, entry.txns);
      TxRecord rec;
      rec.applied = reason == RejectReason::None;
      rec.reason = reason;
      if (!rec.applied) {
        failed_at = i;
        failure = reason;
        recs.push_back(std::move(rec));
        break;
      }
      apply(scratch, tx, rec);
      recs.push_back(std::move(rec));
    }
    if (failed_at == entry.txns.size()) {
      state_ = std::move(scratch);
    } else {
      // All-or-nothing: every member is recorded as rejected, the failing
      // one with its own reason.
      recs.resize(entry.txns.size());
      for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].applied = false;
        recs[i].created_id = std::nullopt;
        recs[i].reason =
            i == failed_at ? failure : RejectReason::GroupRejected;
      }
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
      recs[i].txn = std::move(entry.txns[i]);
      recs[i].group_start = i == 0;
    }
    for (auto& rec : recs) block.txns.push_back(std::move(rec));
  }

  state_.round += 1;
  block.round = state_.round;
  block.timestamp_millis = state_.round * config_.round_millis;
  block.prev_hash = last_hash_;
  {
    Encoder enc;
    enc.reserve(state_bytes_hint_ + state_bytes_hint_ / 4 + 4096);
    encode_state(enc, state_, config_);
    state_bytes_hint_ = enc.bytes().size();
    block.state_hash = sha256(enc.bytes());
  }
  last_hash_ = block_hash(block);
  blocks_.push_back(block);
  if (block_observer_) block_observer_(block);
  return block;
}

// ---------------------------------------------------------------------------
// Synchronous helpers
// ---------------------------------------------------------------------------

TxRecord Ledger::apply_now(Transaction tx) {
  Transaction copy = tx;
  auto submitted = submit(std::move(tx));
  if (!submitted.ok()) {
    TxRecord rec;
    rec.txn = std::move(copy);
    rec.applied = false;
    rec.reason = submitted.error();
    return rec;
  }
  const Digest& id = submitted.value();
  while (true) {
    Block block = produce_block();
    for (auto& rec : block.txns)
      if (rec.txn.id == id) return rec;
    if (pool_size() == 0) break;
  }
  TxRecord rec;
  rec.txn = std::move(copy);
  rec.applied = false;
  rec.reason = RejectReason::MalformedTransaction;
  return rec;
}

std::vector<TxRecord> Ledger::apply_group_now(std::vector<Transaction> txns) {
  std::vector<Transaction> copies = txns;
  auto submitted = submit_group(std::move(txns));
  if (!submitted.ok()) {
    std::vector<TxRecord> recs;
    for (auto& tx : copies) {
      TxRecord rec;
      rec.txn = std::move(tx);
      rec.applied = false;
      rec.reason = submitted.error();
      recs.push_back(std::move(rec));
    }
    return recs;
  }
  const Digest& gid = submitted.value();
  while (true) {
    Block block = produce_block();
    std::vector<TxRecord> recs;
    for (auto& rec : block.txns)
      if (rec.txn.group && *rec.txn.group == gid) recs.push_back(rec);
    if (!recs.empty()) return recs;
    if (pool_size() == 0) break;
  }
  return {};
}

Outcome<AssetId> Ledger::asset_create(const Address& creator,
                                      std::uint64_t total,
                                      std::uint32_t decimals,
                                      std::string unit_name,
                                      std::string asset_name, std::string url,
                                      std::optional<Digest> metadata_hash,
                                      const Address& manager) {
  AssetCreateFields f;
  f.creator = creator;
  f.total = total;
  f.decimals = decimals;
  f.unit_name = std::move(unit_name);
  f.asset_name = std::move(asset_name);
  f.url = std::move(url);
  f.metadata_hash = metadata_hash;
  f.manager = manager;
  TxRecord rec = apply_now(make_transaction(f));
  if (!rec.applied) return rec.reason;
  return *rec.created_id;
}

Status Ledger::asset_opt_in(const Address& account, AssetId asset) {
  AssetOptInFields f;
  f.account = account;
  f.asset = asset;
  TxRecord rec = apply_now(make_transaction(f));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status Ledger::asset_transfer(const Address& sender, const Address& receiver,
                              AssetId asset, std::uint64_t amount) {
  AssetTransferFields f;
  f.sender = sender;
  f.receiver = receiver;
  f.asset = asset;
  f.amount = amount;
  TxRecord rec = apply_now(make_transaction(f));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status Ledger::asset_destroy(const Address& caller, AssetId asset) {
  AssetDestroyFields f;
  f.caller = caller;
  f.asset = asset;
  TxRecord rec = apply_now(make_transaction(f));
  return rec.applied ? Status{} : Status{rec.reason};
}

Status Ledger::asset_reconfigure(const Address& caller, AssetId asset,
                                 const Address& new_manager) {
  AssetConfigFields f;
  f.caller = caller;
  f.asset = asset;
  f.new_manager = new_manager;
  TxRecord rec = apply_now(make_transaction(f));
  return rec.applied ? Status{} : Status{rec.reason};
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

std::optional<Account> Ledger::account(const Address& address) const {
  std::shared_lock lock(state_mu_);
  const Account* acct = state_.find_account(address);
  if (!acct) return std::nullopt;
  return *acct;
}

std::optional<Asset> Ledger::asset(AssetId id) const {
  std::shared_lock lock(state_mu_);
  const Asset* asset = state_.find_asset(id);
  if (!asset) return std::nullopt;
  return *asset;
}

std::optional<AppRecord> Ledger::app(AppId id) const {
  std::shared_lock lock(state_mu_);
  const AppRecord* app = state_.find_app(id);
  if (!app) return std::nullopt;
  return *app;
}

RoleRegistry Ledger::registry() const {
  std::shared_lock lock(state_mu_);
  return state_.registry;
}

std::uint64_t Ledger::round() const {
  std::shared_lock lock(state_mu_);
  return state_.round;
}

std::size_t Ledger::pool_size() const {
  std::lock_guard lock(pool_mu_);
  return pool_txn_count_;
}

Digest Ledger::last_block_hash() const {
  std::shared_lock lock(state_mu_);
  return last_hash_;
}

Digest Ledger::state_hash() const {
  std::shared_lock lock(state_mu_);
  Encoder enc;
  encode_state(enc, state_, config_);
  return sha256(enc.bytes());
}

Digest Ledger::content_hash() const {
  std::shared_lock lock(state_mu_);
  Encoder enc;
  encode_content(enc, state_);
  return sha256(enc.bytes());
}

void Ledger::set_block_observer(std::function<void(const Block&)> observer) {
  std::unique_lock lock(state_mu_);
  block_observer_ = std::move(observer);
}

// ---------------------------------------------------------------------------
// Snapshot / replay
// ---------------------------------------------------------------------------

LedgerState Ledger::state_copy() const {
  std::shared_lock lock(state_mu_);
  return state_;
}

Ledger Ledger::restore(const Config& config, LedgerState state,
                       const Digest& last_block_hash) {
  return Ledger(config, std::move(state), last_block_hash);
}

bool Ledger::replay_block(const Block& recorded) {
  {
    std::unique_lock state_lock(state_mu_);
    std::lock_guard pool_lock(pool_mu_);
    for (const auto& op : recorded.admin_ops) {
      apply_admin(op);
      admin_journal_.push_back(op);
    }
  }
  // Rebuild the original pool entries from the recorded boundaries.
  std::size_t i = 0;
  while (i < recorded.txns.size()) {
    PoolEntry entry;
    entry.txns.push_back(recorded.txns[i].txn);
    std::size_t j = i + 1;
    while (j < recorded.txns.size() && !recorded.txns[j].group_start) {
      entry.txns.push_back(recorded.txns[j].txn);
      ++j;
    }
    enqueue_exact(std::move(entry));
    i = j;
  }
  Block produced = produce_block();
  return block_hash(produced) == block_hash(recorded);
}

}  // namespace ledgersim
