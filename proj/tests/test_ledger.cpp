// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ledgersim/digest.hpp"
#include "ledgersim/ledger.hpp"
#include "test_util.hpp"

using namespace ledgersim;
using namespace ledgersim::test;

TEST_CASE("create_account funds a fresh unique address") {
  Ledger ledger;
  Address a = ledger.create_account(1'000'000);
  CHECK(ledger.account(a)->balance == 1'000'000);

  Address zero = ledger.create_account(0);
  CHECK(ledger.account(zero)->balance == 0);
  CHECK(a != zero);

  Address b = ledger.create_account(1'000'000);
  CHECK(a != b);
}

TEST_CASE("submit appends to the pool without validating") {
  Ledger ledger;
  Address a = ledger.create_account(10'000);
  Address b = ledger.create_account(0);

  CHECK(ledger.pool_size() == 0);
  auto id = ledger.submit(make_transaction(PaymentFields{a, b, 10}));
  REQUIRE(id.ok());
  CHECK(ledger.pool_size() == 1);

  // Even a hopeless payment is pooled; rejection happens at production.
  Address stranger;
  stranger.bytes = sha256("nobody");
  CHECK(ledger.submit(make_transaction(PaymentFields{stranger, b, 1})).ok());
  CHECK(ledger.pool_size() == 2);
}

TEST_CASE("group submission yields one group id covering all members") {
  Ledger ledger;
  Address a = ledger.create_account(100'000);
  Address b = ledger.create_account(0);

  std::vector<Transaction> group;
  for (int i = 0; i < 3; ++i)
    group.push_back(make_transaction(PaymentFields{a, b, 1u + i}));
  auto gid = ledger.submit_group(std::move(group));
  REQUIRE(gid.ok());
  CHECK(ledger.pool_size() == 3);

  Block block = ledger.produce_block();
  REQUIRE(block.txns.size() == 3);
  for (const auto& rec : block.txns) {
    REQUIRE(rec.txn.group.has_value());
    CHECK(*rec.txn.group == gid.value());
  }
}

TEST_CASE("group size limits") {
  Ledger ledger;
  Address a = ledger.create_account(1'000'000);
  Address b = ledger.create_account(0);

  CHECK(ledger.submit_group({}).error() == RejectReason::MalformedTransaction);

  std::vector<Transaction> too_big;
  for (std::size_t i = 0; i < kMaxGroupSize + 1; ++i)
    too_big.push_back(make_transaction(PaymentFields{a, b, i}));
  CHECK(ledger.submit_group(std::move(too_big)).error() ==
        RejectReason::MalformedTransaction);

  std::vector<Transaction> singleton;
  singleton.push_back(make_transaction(PaymentFields{a, b, 1}));
  CHECK(ledger.submit_group(std::move(singleton)).ok());
}

TEST_CASE("identical submissions each take a pool slot") {
  Ledger ledger;
  Address a = ledger.create_account(10'000);
  Address b = ledger.create_account(0);

  Transaction tx = make_transaction(PaymentFields{a, b, 10});
  auto first = ledger.submit(tx);
  auto second = ledger.submit(tx);
  REQUIRE(first.ok());
  REQUIRE(second.ok());
  CHECK(first.value() == second.value());  // same canonical bytes, same id
  CHECK(ledger.pool_size() == 2);

  Block block = ledger.produce_block();
  CHECK(block.txns.size() == 2);
  CHECK(block.txns[0].applied);
  CHECK(block.txns[1].applied);
}

TEST_CASE("payments move value and burn the flat fee") {
  Ledger ledger;
  Address a = ledger.create_account(10'000);
  Address b = ledger.create_account(0);

  TxRecord rec = ledger.apply_now(make_transaction(PaymentFields{a, b, 2'000}));
  CHECK(rec.applied);
  CHECK(ledger.account(a)->balance == 10'000 - 2'000 - kFlatFee);
  CHECK(ledger.account(b)->balance == 2'000);
}

TEST_CASE("payment rejections") {
  Ledger ledger;
  Address a = ledger.create_account(1'000);  // can cover fee only
  Address b = ledger.create_account(0);
  Address ghost;
  ghost.bytes = sha256("ghost");

  SUBCASE("insufficient balance for amount plus fee") {
    TxRecord rec = ledger.apply_now(make_transaction(PaymentFields{a, b, 1}));
    CHECK(!rec.applied);
    CHECK(rec.reason == RejectReason::InsufficientBalance);
    CHECK(ledger.account(a)->balance == 1'000);  // rejected txns cost nothing
  }
  SUBCASE("unknown receiver") {
    TxRecord rec = ledger.apply_now(make_transaction(PaymentFields{a, ghost, 0}));
    CHECK(rec.reason == RejectReason::UnknownAccount);
  }
  SUBCASE("unknown sender") {
    TxRecord rec = ledger.apply_now(make_transaction(PaymentFields{ghost, b, 0}));
    CHECK(rec.reason == RejectReason::UnknownAccount);
  }
}

TEST_CASE("asset_create issues supply to the creator and charges the fee") {
  Ledger ledger;
  Address addr = ledger.create_account(1'000'000);

  auto created = ledger.asset_create(addr, 1000, 0, "uname", "token",
                                     "https://path/", std::nullopt, addr);
  REQUIRE(created.ok());
  AssetId id = created.value();
  CHECK(ledger.account(addr)->holding(id) == 1000);
  CHECK(ledger.account(addr)->balance == 1'000'000 - kFlatFee);

  auto asset = ledger.asset(id);
  REQUIRE(asset.has_value());
  CHECK(asset->total == 1000);
  CHECK(asset->unit_name == "uname");
  CHECK(asset->manager == addr);
  CHECK(!asset->is_nft());
}

TEST_CASE("total 1 with decimals 0 encodes an NFT") {
  Ledger ledger;
  Address computer = ledger.create_account(1'000'000);
  auto nft = ledger.asset_create(computer, 1, 0, "CT1", "CircleToken", "",
                                 std::nullopt, computer);
  REQUIRE(nft.ok());
  CHECK(ledger.asset(nft.value())->is_nft());
}

TEST_CASE("asset_create rejections") {
  Ledger ledger;
  Address rich = ledger.create_account(1'000'000);
  Address broke = ledger.create_account(0);
  Address ghost;
  ghost.bytes = sha256("ghost");

  CHECK(ledger.asset_create(rich, 0, 0, "u", "a", "", std::nullopt, rich)
            .error() == RejectReason::InvalidTotal);
  CHECK(ledger.asset_create(ghost, 1, 0, "u", "a", "", std::nullopt, ghost)
            .error() == RejectReason::UnknownAccount);
  CHECK(ledger.asset_create(broke, 1, 0, "u", "a", "", std::nullopt, broke)
            .error() == RejectReason::InsufficientBalance);
  // unit_name longer than the 8-byte cap is malformed
  CHECK(ledger
            .asset_create(rich, 1, 0, "waytoolongunit", "a", "", std::nullopt,
                          rich)
            .error() == RejectReason::MalformedTransaction);
}

TEST_CASE("opt-in gate controls transfers") {
  Ledger ledger;
  Address creator = ledger.create_account(1'000'000);
  Address user = ledger.create_account(1'000'000);
  AssetId id = ledger
                   .asset_create(creator, 1000, 0, "u", "a", "", std::nullopt,
                                 creator)
                   .value();

  SUBCASE("transfer to non-opted receiver is rejected, state unchanged") {
    Digest before = ledger.content_hash();
    Status s = ledger.asset_transfer(creator, user, id, 1);
    CHECK(s.error() == RejectReason::ReceiverNotOptedIn);
    CHECK(ledger.content_hash() == before);
  }
  SUBCASE("opt-in then transfer succeeds") {
    REQUIRE(ledger.asset_opt_in(user, id).ok());
    REQUIRE(ledger.asset_transfer(creator, user, id, 1).ok());
    CHECK(ledger.account(user)->holding(id) == 1);
    CHECK(ledger.account(creator)->holding(id) == 999);
  }
  SUBCASE("zero-amount self-transfer is an opt-in") {
    CHECK(!ledger.account(user)->opted_in(id));
    REQUIRE(ledger.asset_transfer(user, user, id, 0).ok());
    CHECK(ledger.account(user)->opted_in(id));
    CHECK(ledger.account(user)->holding(id) == 0);
  }
}

TEST_CASE("opt-in is idempotent and the repeat is a free no-op") {
  Ledger ledger;
  Address creator = ledger.create_account(1'000'000);
  Address user = ledger.create_account(1'000'000);
  AssetId id =
      ledger.asset_create(creator, 10, 0, "u", "a", "", std::nullopt, creator)
          .value();

  REQUIRE(ledger.asset_opt_in(user, id).ok());
  Digest before = ledger.content_hash();
  REQUIRE(ledger.asset_opt_in(user, id).ok());
  CHECK(ledger.content_hash() == before);
}

TEST_CASE("opt-in rejections") {
  Ledger ledger;
  Address user = ledger.create_account(1'000'000);
  Address ghost;
  ghost.bytes = sha256("ghost");

  CHECK(ledger.asset_opt_in(user, 42).error() == RejectReason::UnknownAsset);
  CHECK(ledger.asset_opt_in(ghost, 42).error() ==
        RejectReason::UnknownAccount);
}

TEST_CASE("transfer preserves the total supply") {
  Ledger ledger;
  Address creator = ledger.create_account(1'000'000);
  Address user = ledger.create_account(1'000'000);
  AssetId id = ledger
                   .asset_create(creator, 1000, 0, "u", "a", "", std::nullopt,
                                 creator)
                   .value();
  REQUIRE(ledger.asset_opt_in(user, id).ok());
  REQUIRE(ledger.asset_transfer(creator, user, id, 400).ok());

  auto sums = holdings_by_asset(ledger.state_copy());
  CHECK(sums[id] == 1000);
  CHECK(ledger.account(creator)->holding(id) == 600);

  SUBCASE("overdraw is rejected") {
    CHECK(ledger.asset_transfer(user, creator, id, 401).error() ==
          RejectReason::InsufficientHolding);
  }
  SUBCASE("sender without an entry cannot move the asset") {
    Address other = ledger.create_account(1'000'000);
    CHECK(ledger.asset_transfer(other, creator, id, 1).error() ==
          RejectReason::SenderNotOptedIn);
  }
}

TEST_CASE("asset_destroy requires the manager holding the whole supply") {
  Ledger ledger;
  Address manager = ledger.create_account(1'000'000);
  Address other = ledger.create_account(1'000'000);

  SUBCASE("manager holding the NFT destroys it") {
    AssetId nft =
        ledger.asset_create(manager, 1, 0, "u", "a", "", std::nullopt, manager)
            .value();
    REQUIRE(ledger.asset_destroy(manager, nft).ok());
    CHECK(ledger.asset(nft)->destroyed);
    CHECK(!ledger.account(manager)->opted_in(nft));
    // Further operations treat it as gone.
    CHECK(ledger.asset_opt_in(other, nft).error() ==
          RejectReason::AssetDestroyed);
  }
  SUBCASE("non-manager cannot destroy") {
    AssetId nft =
        ledger.asset_create(manager, 1, 0, "u", "a", "", std::nullopt, manager)
            .value();
    CHECK(ledger.asset_destroy(other, nft).error() ==
          RejectReason::NotManager);
  }
  SUBCASE("outstanding holdings block destruction") {
    AssetId id =
        ledger.asset_create(manager, 2, 0, "u", "a", "", std::nullopt, manager)
            .value();
    REQUIRE(ledger.asset_opt_in(other, id).ok());
    REQUIRE(ledger.asset_transfer(manager, other, id, 1).ok());
    // Conservation oracle: supply is split, so consolidation fails.
    auto sums = holdings_by_asset(ledger.state_copy());
    REQUIRE(sums[id] == 2);
    CHECK(ledger.asset_destroy(manager, id).error() ==
          RejectReason::SupplyNotConsolidated);
  }
}

TEST_CASE("asset_reconfigure moves management rights") {
  Ledger ledger;
  Address creator = ledger.create_account(1'000'000);
  Address next = ledger.create_account(1'000'000);
  AssetId id =
      ledger.asset_create(creator, 1, 0, "u", "a", "", std::nullopt, creator)
          .value();

  CHECK(ledger.asset_reconfigure(next, id, next).error() ==
        RejectReason::NotManager);
  REQUIRE(ledger.asset_reconfigure(creator, id, next).ok());
  CHECK(ledger.asset(id)->manager == next);
}

TEST_CASE("identical submission sequences give identical state hashes") {
  auto run = [](bool extra) {
    Ledger ledger;
    Address a = ledger.create_account(50'000);
    Address b = ledger.create_account(0);
    ledger.submit(make_transaction(PaymentFields{a, b, 100}));
    if (extra) ledger.submit(make_transaction(PaymentFields{a, b, 1}));
    ledger.produce_block();
    return ledger.state_hash();
  };
  CHECK(run(false) == run(false));
  CHECK(run(false) != run(true));
}

TEST_CASE("registry mutations are authenticator-gated") {
  Ledger ledger;
  Address auth = ledger.create_account(1'000);
  Address maker = ledger.create_account(1'000);
  Address rogue = ledger.create_account(1'000);

  CHECK(ledger.certify_manufacturer(rogue, maker).error() ==
        RejectReason::NotAuthenticator);
  REQUIRE(ledger.set_authenticator(auth).ok());
  CHECK(ledger.set_authenticator(rogue).error() ==
        RejectReason::NotAuthenticator);
  CHECK(ledger.certify_manufacturer(rogue, maker).error() ==
        RejectReason::NotAuthenticator);
  REQUIRE(ledger.certify_manufacturer(auth, maker).ok());
  CHECK(ledger.registry().is_certified_manufacturer(maker));
  CHECK(ledger.certify_recycler(auth, maker).ok());
}
