// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ledgersim/digest.hpp"
#include "ledgersim/lifecycle.hpp"

namespace ledgersim::scenario {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    if (token[0] == '#') break;  // trailing comment
    tokens.push_back(token);
  }
  return tokens;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

ParseResult fail(int line, std::string message) {
  ParseResult r;
  r.line = line;
  r.error = "line " + std::to_string(line) + ": " + std::move(message);
  return r;
}

struct StaticContext {
  std::set<std::string> actors;
  std::set<std::string> serials;
  std::set<std::string> products;
  bool has_authenticator = false;
  bool needs_authenticator = false;
};

}  // namespace

ParseResult parse_scenario(std::string_view text) {
  Scenario scenario;
  StaticContext ctx;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "actor") {
      if (tokens.size() != 4)
        return fail(line_no, "actor expects: actor <name> <role> <balance>");
      ScenarioActor actor;
      actor.name = tokens[1];
      actor.line = line_no;
      if (!ctx.actors.insert(actor.name).second)
        return fail(line_no, "duplicate actor '" + actor.name + "'");
      const std::string& role = tokens[2];
      if (role == "authenticator") {
        if (ctx.has_authenticator)
          return fail(line_no, "only one authenticator may be declared");
        ctx.has_authenticator = true;
        actor.role = Role::Authenticator;
      } else if (role == "manufacturer") {
        actor.role = Role::Manufacturer;
        ctx.needs_authenticator = true;
      } else if (role == "recycler") {
        actor.role = Role::Recycler;
        ctx.needs_authenticator = true;
      } else if (role == "user") {
        actor.role = Role::User;
      } else {
        return fail(line_no, "unknown role '" + role + "'");
      }
      if (!parse_u64(tokens[3], actor.balance))
        return fail(line_no, "bad balance '" + tokens[3] + "'");
      scenario.actors.push_back(std::move(actor));
      continue;
    }

    ScenarioAction action;
    action.line = line_no;
    action.args.assign(tokens.begin() + 1, tokens.end());

    auto check_actor = [&](const std::string& name) {
      return ctx.actors.count(name) != 0;
    };

    if (keyword == "mint") {
      if (action.args.size() != 7)
        return fail(line_no,
                    "mint expects: mint <authenticator> <serial> <type> "
                    "<maker> <date> <months> <url>");
      if (!check_actor(action.args[0]))
        return fail(line_no, "unknown actor '" + action.args[0] + "'");
      if (!ctx.serials.insert(action.args[1]).second)
        return fail(line_no, "serial '" + action.args[1] + "' already minted");
      std::uint64_t months;
      if (!parse_u64(action.args[5], months))
        return fail(line_no, "bad months '" + action.args[5] + "'");
      action.kind = ScenarioAction::Kind::Mint;
    } else if (keyword == "transfer") {
      if (action.args.size() != 3)
        return fail(line_no,
                    "transfer expects: transfer <authenticator> "
                    "<manufacturer> <serial>");
      if (!check_actor(action.args[0]))
        return fail(line_no, "unknown actor '" + action.args[0] + "'");
      if (!check_actor(action.args[1]))
        return fail(line_no, "unknown actor '" + action.args[1] + "'");
      if (!ctx.serials.count(action.args[2]))
        return fail(line_no, "unknown serial '" + action.args[2] + "'");
      action.kind = ScenarioAction::Kind::Transfer;
    } else if (keyword == "assemble") {
      if (action.args.size() < 4)
        return fail(line_no,
                    "assemble expects: assemble <manufacturer> <product> "
                    "<recycler> <serial> [...]");
      if (!check_actor(action.args[0]))
        return fail(line_no, "unknown actor '" + action.args[0] + "'");
      if (!ctx.products.insert(action.args[1]).second)
        return fail(line_no,
                    "product '" + action.args[1] + "' already assembled");
      if (!check_actor(action.args[2]))
        return fail(line_no, "unknown actor '" + action.args[2] + "'");
      for (std::size_t i = 3; i < action.args.size(); ++i)
        if (!ctx.serials.count(action.args[i]))
          return fail(line_no, "unknown serial '" + action.args[i] + "'");
      action.kind = ScenarioAction::Kind::Assemble;
    } else if (keyword == "distribute") {
      if (action.args.size() != 3)
        return fail(line_no,
                    "distribute expects: distribute <manufacturer> "
                    "<product> <user>");
      if (!check_actor(action.args[0]) || !check_actor(action.args[2]))
        return fail(line_no, "unknown actor");
      if (!ctx.products.count(action.args[1]))
        return fail(line_no, "unknown product '" + action.args[1] + "'");
      action.kind = ScenarioAction::Kind::Distribute;
    } else if (keyword == "return") {
      if (action.args.size() != 2)
        return fail(line_no, "return expects: return <user> <product>");
      if (!check_actor(action.args[0]))
        return fail(line_no, "unknown actor '" + action.args[0] + "'");
      if (!ctx.products.count(action.args[1]))
        return fail(line_no, "unknown product '" + action.args[1] + "'");
      action.kind = ScenarioAction::Kind::Return;
    } else if (keyword == "recycle") {
      if (action.args.size() < 3)
        return fail(line_no,
                    "recycle expects: recycle <recycler> <product> "
                    "<serial>=reuse:<actor>|destroy ...");
      if (!check_actor(action.args[0]))
        return fail(line_no, "unknown actor '" + action.args[0] + "'");
      if (!ctx.products.count(action.args[1]))
        return fail(line_no, "unknown product '" + action.args[1] + "'");
      for (std::size_t i = 2; i < action.args.size(); ++i) {
        const std::string& spec = action.args[i];
        auto eq = spec.find('=');
        if (eq == std::string::npos)
          return fail(line_no, "bad disposition '" + spec + "'");
        std::string serial = spec.substr(0, eq);
        std::string what = spec.substr(eq + 1);
        if (!ctx.serials.count(serial))
          return fail(line_no, "unknown serial '" + serial + "'");
        if (what == "destroy") continue;
        if (what.rfind("reuse:", 0) == 0) {
          std::string dest = what.substr(6);
          if (!check_actor(dest))
            return fail(line_no, "unknown actor '" + dest + "'");
          continue;
        }
        return fail(line_no, "bad disposition '" + spec + "'");
      }
      action.kind = ScenarioAction::Kind::Recycle;
    } else if (keyword == "produce_block") {
      if (!action.args.empty())
        return fail(line_no, "produce_block takes no arguments");
      action.kind = ScenarioAction::Kind::ProduceBlock;
    } else {
      return fail(line_no, "unknown action '" + keyword + "'");
    }
    scenario.actions.push_back(std::move(action));
  }

  if (ctx.needs_authenticator && !ctx.has_authenticator)
    return fail(0,
                "certified roles declared but no authenticator actor exists");

  ParseResult result;
  result.ok = true;
  result.scenario = std::move(scenario);
  return result;
}

ParseResult parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.error = "cannot open " + path.string();
    return r;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

struct RunContext {
  std::map<std::string, Address> actors;
  std::map<std::string, AssetId> serials;
  std::map<std::string, AppId> products;
};

RunResult action_failed(const ScenarioAction& action, const char* what,
                        RejectReason reason) {
  RunResult r;
  r.error = "line " + std::to_string(action.line) + ": " + what + ": " +
            to_string(reason);
  return r;
}

}  // namespace

RunResult run_scenario(Ledger& ledger, const Scenario& scenario,
                       std::ostream& out) {
  RunContext ctx;

  // Actor setup: accounts first, then the registry.
  std::optional<Address> authenticator;
  for (const auto& actor : scenario.actors) {
    Address addr = ledger.create_account(actor.balance);
    ctx.actors.emplace(actor.name, addr);
    if (actor.role == Role::Authenticator) authenticator = addr;
    out << "actor " << actor.name << " (" << to_string(actor.role) << ") "
        << addr.to_string() << "\n";
  }
  if (authenticator) ledger.set_authenticator(*authenticator);
  for (const auto& actor : scenario.actors) {
    if (actor.role == Role::Manufacturer)
      ledger.certify_manufacturer(*authenticator, ctx.actors.at(actor.name));
    else if (actor.role == Role::Recycler)
      ledger.certify_recycler(*authenticator, ctx.actors.at(actor.name));
  }

  for (const auto& action : scenario.actions) {
    switch (action.kind) {
      case ScenarioAction::Kind::Mint: {
        lifecycle::ChipPassport passport;
        passport.chip_serial = action.args[1];
        passport.chip_type = action.args[2];
        passport.manufacturer_of_chip = action.args[3];
        passport.manufacture_date = action.args[4];
        std::uint64_t months = 0;
        parse_u64(action.args[5], months);
        passport.months_in_service = static_cast<std::uint32_t>(months);
        passport.url = action.args[6];
        auto minted = lifecycle::certify_chip(
            ledger, ctx.actors.at(action.args[0]), passport);
        if (!minted.ok()) return action_failed(action, "mint", minted.error());
        ctx.serials[action.args[1]] = minted.value();
        out << "mint " << action.args[1] << " -> asset " << minted.value()
            << "\n";
        break;
      }
      case ScenarioAction::Kind::Transfer: {
        const Address& manufacturer = ctx.actors.at(action.args[1]);
        AssetId asset = ctx.serials.at(action.args[2]);
        Status opt = ledger.asset_opt_in(manufacturer, asset);
        if (!opt.ok()) return action_failed(action, "transfer", opt.error());
        Status moved = lifecycle::transfer_to_manufacturer(
            ledger, ctx.actors.at(action.args[0]), manufacturer, asset);
        if (!moved.ok()) return action_failed(action, "transfer", moved.error());
        out << "transfer " << action.args[2] << " -> " << action.args[1]
            << "\n";
        break;
      }
      case ScenarioAction::Kind::Assemble: {
        std::vector<AssetId> assets;
        for (std::size_t i = 3; i < action.args.size(); ++i)
          assets.push_back(ctx.serials.at(action.args[i]));
        auto app = lifecycle::assemble_product(
            ledger, ctx.actors.at(action.args[0]), assets,
            ctx.actors.at(action.args[2]));
        if (!app.ok()) return action_failed(action, "assemble", app.error());
        ctx.products[action.args[1]] = app.value();
        out << "assemble " << action.args[1] << " -> app " << app.value()
            << " state=" << to_string(ledger.app(app.value())->state) << "\n";
        break;
      }
      case ScenarioAction::Kind::Distribute: {
        Status s = lifecycle::distribute(ledger, ctx.actors.at(action.args[0]),
                                         ctx.products.at(action.args[1]),
                                         ctx.actors.at(action.args[2]));
        if (!s.ok()) return action_failed(action, "distribute", s.error());
        out << "distribute " << action.args[1] << " -> " << action.args[2]
            << "\n";
        break;
      }
      case ScenarioAction::Kind::Return: {
        Status s = lifecycle::return_product(
            ledger, ctx.actors.at(action.args[0]),
            ctx.products.at(action.args[1]));
        if (!s.ok()) return action_failed(action, "return", s.error());
        out << "return " << action.args[1] << "\n";
        break;
      }
      case ScenarioAction::Kind::Recycle: {
        std::map<AssetId, lifecycle::Disposition> dispositions;
        for (std::size_t i = 2; i < action.args.size(); ++i) {
          const std::string& spec = action.args[i];
          auto eq = spec.find('=');
          AssetId asset = ctx.serials.at(spec.substr(0, eq));
          std::string what = spec.substr(eq + 1);
          if (what == "destroy")
            dispositions.emplace(asset, lifecycle::Disposition::destroy());
          else
            dispositions.emplace(asset, lifecycle::Disposition::reuse(
                                            ctx.actors.at(what.substr(6))));
        }
        Status s = lifecycle::recycle(ledger, ctx.actors.at(action.args[0]),
                                      ctx.products.at(action.args[1]),
                                      dispositions);
        if (!s.ok()) return action_failed(action, "recycle", s.error());
        out << "recycle " << action.args[1] << "\n";
        break;
      }
      case ScenarioAction::Kind::ProduceBlock: {
        Block block = ledger.produce_block();
        out << "block round=" << block.round << " txns=" << block.txns.size()
            << "\n";
        break;
      }
    }
  }

  for (const auto& [name, app_id] : ctx.products) {
    auto app = ledger.app(app_id);
    out << "product " << name << ": "
        << (app ? to_string(app->state) : "missing") << "\n";
  }
  out << "round " << ledger.round() << "\n";
  out << "state_hash " << to_hex(ledger.state_hash()) << "\n";

  RunResult result;
  result.ok = true;
  return result;
}

}  // namespace ledgersim::scenario
