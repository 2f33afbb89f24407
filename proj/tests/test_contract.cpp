// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ledgersim/contract.hpp"
#include "ledgersim/ledger.hpp"
#include "test_util.hpp"

using namespace ledgersim;
using namespace ledgersim::test;

namespace {

// Drives a contract to Bound custody over one NFT; returns {app, nft}.
struct BoundProduct {
  AppId app = 0;
  AssetId nft = 0;
};

BoundProduct make_bound(Ledger& ledger, const Actors& a) {
  BoundProduct out;
  out.nft = mint_to_manufacturer(ledger, a, "CHIP-1");
  REQUIRE(out.nft != 0);
  auto app = contract::app_create(ledger, a.manufacturer, a.recycler);
  REQUIRE(app.ok());
  out.app = app.value();
  Address app_addr = contract::app_account_address(out.app);
  REQUIRE(ledger
              .apply_now(make_transaction(
                  PaymentFields{a.manufacturer, app_addr, kAppMinFunding}))
              .applied);
  REQUIRE(contract::call_init(ledger, a.manufacturer, out.app, {out.nft}).ok());
  REQUIRE(ledger.asset_transfer(a.manufacturer, app_addr, out.nft, 1).ok());
  REQUIRE(ledger.app(out.app)->state == ContractState::Bound);
  return out;
}

}  // namespace

TEST_CASE("app_create deploys one contract per call") {
  Ledger ledger;
  Actors a = setup_actors(ledger);

  auto first = contract::app_create(ledger, a.manufacturer, a.recycler);
  REQUIRE(first.ok());
  auto record = ledger.app(first.value());
  REQUIRE(record.has_value());
  CHECK(record->state == ContractState::Deployed);
  CHECK(record->creator == a.manufacturer);
  CHECK(record->trusted_recycler == a.recycler);
  CHECK(record->bound_assets.empty());
  CHECK(ledger.account(record->address).has_value());

  auto second = contract::app_create(ledger, a.manufacturer, a.recycler);
  REQUIRE(second.ok());
  CHECK(first.value() != second.value());
  CHECK(ledger.app(second.value())->address != record->address);
}

TEST_CASE("app_create requires a certified manufacturer") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  Digest before = ledger.content_hash();
  auto denied = contract::app_create(ledger, a.user, a.recycler);
  CHECK(denied.error() == RejectReason::NotCertifiedManufacturer);
  CHECK(ledger.content_hash() == before);
}

TEST_CASE("init records assets, opts the app in, and custody binds") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  AssetId nft = mint_to_manufacturer(ledger, a, "CHIP-1");
  REQUIRE(nft != 0);
  AppId app = contract::app_create(ledger, a.manufacturer, a.recycler).value();
  Address app_addr = contract::app_account_address(app);

  SUBCASE("unfunded app cannot init") {
    CHECK(contract::call_init(ledger, a.manufacturer, app, {nft}).error() ==
          RejectReason::AppNotFunded);
  }

  REQUIRE(ledger
              .apply_now(make_transaction(
                  PaymentFields{a.manufacturer, app_addr, kAppMinFunding}))
              .applied);

  SUBCASE("empty asset list is rejected") {
    CHECK(contract::call_init(ledger, a.manufacturer, app, {}).error() ==
          RejectReason::EmptyAssetList);
  }
  SUBCASE("only the creator may init") {
    CHECK(contract::call_init(ledger, a.user, app, {nft}).error() ==
          RejectReason::NotCreator);
  }
  SUBCASE("happy path reaches Bound after the custody transfer") {
    REQUIRE(contract::call_init(ledger, a.manufacturer, app, {nft}).ok());
    auto record = ledger.app(app);
    CHECK(record->state == ContractState::Deployed);  // custody still pending
    CHECK(record->bound_assets == std::vector<AssetId>{nft});
    CHECK(ledger.account(app_addr)->opted_in(nft));

    REQUIRE(ledger.asset_transfer(a.manufacturer, app_addr, nft, 1).ok());
    CHECK(ledger.app(app)->state == ContractState::Bound);
    CHECK(ledger.account(app_addr)->holding(nft) == 1);

    // Second init is a state violation.
    CHECK(contract::call_init(ledger, a.manufacturer, app, {nft}).error() ==
          RejectReason::WrongState);
  }
}

TEST_CASE("set user and release follow the role and state gates") {
  Ledger ledger;
  Actors a = setup_actors(ledger);

  SUBCASE("set user before Bound is a state violation") {
    AppId app = contract::app_create(ledger, a.manufacturer, a.recycler).value();
    CHECK(contract::call_set_user(ledger, a.manufacturer, app, a.user)
              .error() == RejectReason::WrongState);
  }

  BoundProduct p = make_bound(ledger, a);

  SUBCASE("only the creator assigns the user") {
    CHECK(contract::call_set_user(ledger, a.recycler, p.app, a.user).error() ==
          RejectReason::NotCreator);
  }
  SUBCASE("release before set user is a state violation") {
    CHECK(contract::call_release(ledger, a.user, p.app).error() ==
          RejectReason::WrongState);
  }
  SUBCASE("distribution then return") {
    REQUIRE(contract::call_set_user(ledger, a.manufacturer, p.app, a.user).ok());
    auto record = ledger.app(p.app);
    CHECK(record->state == ContractState::InUse);
    REQUIRE(record->user.has_value());
    CHECK(*record->user == a.user);

    SUBCASE("only the user releases") {
      CHECK(contract::call_release(ledger, a.manufacturer, p.app).error() ==
            RejectReason::NotUser);
    }
    SUBCASE("user releases") {
      REQUIRE(contract::call_release(ledger, a.user, p.app).ok());
      CHECK(ledger.app(p.app)->state == ContractState::Released);
    }
  }
}

TEST_CASE("custody invariant holds through Bound, InUse and Released") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_bound(ledger, a);
  Address app_addr = contract::app_account_address(p.app);

  CHECK(ledger.account(app_addr)->holding(p.nft) == 1);
  REQUIRE(contract::call_set_user(ledger, a.manufacturer, p.app, a.user).ok());
  CHECK(ledger.account(app_addr)->holding(p.nft) == 1);
  REQUIRE(contract::call_release(ledger, a.user, p.app).ok());
  CHECK(ledger.account(app_addr)->holding(p.nft) == 1);
}

namespace {

BoundProduct make_released(Ledger& ledger, const Actors& a) {
  BoundProduct p = make_bound(ledger, a);
  REQUIRE(contract::call_set_user(ledger, a.manufacturer, p.app, a.user).ok());
  REQUIRE(contract::call_release(ledger, a.user, p.app).ok());
  return p;
}

}  // namespace

TEST_CASE("dismantle extracts the asset and deletes the contract atomically") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);
  Address app_addr = contract::app_account_address(p.app);
  MicroUnits manufacturer_before = ledger.account(a.manufacturer)->balance;

  REQUIRE(contract::dismantle(ledger, a.recycler, p.app,
                              {{p.nft, a.manufacturer}})
              .ok());
  CHECK(ledger.account(a.manufacturer)->holding(p.nft) == 1);
  CHECK(ledger.app(p.app)->state == ContractState::Dismantled);
  // Application account is closed and its funding returns to the creator.
  CHECK(!ledger.account(app_addr).has_value());
  CHECK(ledger.account(a.manufacturer)->balance >
        manufacturer_before);
  CHECK(!ledger.account(a.manufacturer)->created_apps.count(p.app));
}

TEST_CASE("dismantle authority checks") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);

  SUBCASE("a different certified recycler is refused") {
    Address other = ledger.create_account(1'000'000);
    REQUIRE(ledger.certify_recycler(a.authenticator, other).ok());
    Digest before = ledger.content_hash();
    CHECK(contract::dismantle(ledger, other, p.app, {{p.nft, a.manufacturer}})
              .error() == RejectReason::NotTrustedRecycler);
    CHECK(ledger.content_hash() == before);
  }
  SUBCASE("a trusted but decertified recycler is refused") {
    // Trusted at creation but never certified in the registry.
    Ledger fresh;
    Actors b = setup_actors(fresh);
    Address rogue = fresh.create_account(1'000'000);
    AssetId nft = mint_to_manufacturer(fresh, b, "CHIP-9");
    auto app = contract::app_create(fresh, b.manufacturer, rogue);
    REQUIRE(app.ok());
    Address app_addr = contract::app_account_address(app.value());
    REQUIRE(fresh
                .apply_now(make_transaction(
                    PaymentFields{b.manufacturer, app_addr, kAppMinFunding}))
                .applied);
    REQUIRE(contract::call_init(fresh, b.manufacturer, app.value(), {nft}).ok());
    REQUIRE(fresh.asset_transfer(b.manufacturer, app_addr, nft, 1).ok());
    REQUIRE(contract::call_set_user(fresh, b.manufacturer, app.value(), b.user).ok());
    REQUIRE(contract::call_release(fresh, b.user, app.value()).ok());
    CHECK(contract::dismantle(fresh, rogue, app.value(),
                              {{nft, b.manufacturer}})
              .error() == RejectReason::NotTrustedRecycler);
  }
  SUBCASE("wrong state is refused") {
    Ledger fresh;
    Actors b = setup_actors(fresh);
    BoundProduct q = make_bound(fresh, b);  // not yet Released
    CHECK(contract::dismantle(fresh, b.recycler, q.app,
                              {{q.nft, b.manufacturer}})
              .error() == RejectReason::WrongState);
  }
  SUBCASE("destinations must cover the bound assets") {
    CHECK(contract::dismantle(ledger, a.recycler, p.app, {}).error() ==
          RejectReason::IncompleteDestinations);
  }
}

TEST_CASE("a dismantle group missing the AppDelete moves nothing") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);
  Address app_addr = contract::app_account_address(p.app);

  Digest before = ledger.content_hash();
  std::vector<Transaction> group;
  group.push_back(make_transaction(
      AssetTransferFields{app_addr, a.manufacturer, p.nft, 1}));
  auto recs = ledger.apply_group_now(std::move(group));
  REQUIRE(recs.size() == 1);
  CHECK(!recs[0].applied);
  CHECK(recs[0].reason == RejectReason::GroupRejected);
  CHECK(ledger.content_hash() == before);
  CHECK(ledger.account(app_addr)->holding(p.nft) == 1);
  CHECK(ledger.app(p.app)->state == ContractState::Released);
}

TEST_CASE("the application account cannot spend outside dismantling") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);
  Address app_addr = contract::app_account_address(p.app);

  SUBCASE("payments out of the app account are refused") {
    TxRecord rec = ledger.apply_now(
        make_transaction(PaymentFields{app_addr, a.manufacturer, 1}));
    CHECK(rec.reason == RejectReason::UnauthorizedAppSpend);
  }
  SUBCASE("an unbound asset cannot ride a dismantle group") {
    AssetId other = mint_to_manufacturer(ledger, a, "CHIP-2");
    std::vector<Transaction> group;
    group.push_back(make_transaction(
        AssetTransferFields{app_addr, a.manufacturer, other, 1}));
    group.push_back(contract::make_app_delete(a.recycler, p.app));
    auto recs = ledger.apply_group_now(std::move(group));
    REQUIRE(recs.size() == 2);
    CHECK(!recs[0].applied);
    CHECK(recs[0].reason == RejectReason::UnauthorizedAppSpend);
  }
}

TEST_CASE("an AppDelete with custody outstanding rejects the group") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);

  std::vector<Transaction> group;
  group.push_back(contract::make_app_delete(a.recycler, p.app));
  auto recs = ledger.apply_group_now(std::move(group));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].reason == RejectReason::AppHoldsAssets);
  CHECK(ledger.app(p.app)->state == ContractState::Released);
}

TEST_CASE("dismantle destination must be the manager or opted in") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);

  SUBCASE("unopted non-manager destination rejects the group") {
    Digest before = ledger.content_hash();
    CHECK(contract::dismantle(ledger, a.recycler, p.app, {{p.nft, a.outsider}})
              .error() == RejectReason::ReceiverNotOptedIn);
    CHECK(ledger.content_hash() == before);
  }
  SUBCASE("opted-in destination works") {
    REQUIRE(ledger.asset_opt_in(a.outsider, p.nft).ok());
    REQUIRE(contract::dismantle(ledger, a.recycler, p.app,
                                {{p.nft, a.outsider}})
                .ok());
    CHECK(ledger.account(a.outsider)->holding(p.nft) == 1);
  }
}

TEST_CASE("calls on a dismantled contract are state violations") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  BoundProduct p = make_released(ledger, a);
  REQUIRE(
      contract::dismantle(ledger, a.recycler, p.app, {{p.nft, a.manufacturer}})
          .ok());

  CHECK(contract::call_set_user(ledger, a.manufacturer, p.app, a.user)
            .error() == RejectReason::WrongState);
  CHECK(contract::call_release(ledger, a.user, p.app).error() ==
        RejectReason::WrongState);
  CHECK(contract::dismantle(ledger, a.recycler, p.app,
                            {{p.nft, a.manufacturer}})
            .error() == RejectReason::WrongState);
}

TEST_CASE("unknown app and selector arguments") {
  Ledger ledger;
  Actors a = setup_actors(ledger);
  CHECK(contract::call_set_user(ledger, a.manufacturer, 404, a.user).error() ==
        RejectReason::UnknownApp);

  AppId app = contract::app_create(ledger, a.manufacturer, a.recycler).value();
  AppCallFields f;
  f.caller = a.manufacturer;
  f.app = app;
  f.args = {"Shutdown"};
  TxRecord rec = ledger.apply_now(make_transaction(f));
  CHECK(rec.reason == RejectReason::InvalidArguments);

  // The selector match is byte-for-byte.
  f.args = {"init"};
  rec = ledger.apply_now(make_transaction(f));
  CHECK(rec.reason == RejectReason::InvalidArguments);
}
