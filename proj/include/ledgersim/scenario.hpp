// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ledgersim/ledger.hpp"
#include "ledgersim/state.hpp"

namespace ledgersim::scenario {

// Line-delimited scenario format. A header of actor declarations binds
// names to fresh accounts and roles:
//
//   actor <name> <authenticator|manufacturer|recycler|user> <balance>
//
// followed by one action per line:
//
//   mint <authenticator> <serial> <type> <maker> <date> <months> <url>
//   transfer <authenticator> <manufacturer> <serial>
//   assemble <manufacturer> <product> <recycler> <serial> [<serial>...]
//   distribute <manufacturer> <product> <user>
//   return <user> <product>
//   recycle <recycler> <product> <serial>=reuse:<actor>|destroy ...
//   produce_block
//
// '#' starts a comment. The whole file is validated before anything runs.

struct ScenarioActor {
  std::string name;
  Role role = Role::User;
  MicroUnits balance = 0;
  int line = 0;
};

struct ScenarioAction {
  enum class Kind : std::uint8_t {
    Mint,
    Transfer,
    Assemble,
    Distribute,
    Return,
    Recycle,
    ProduceBlock,
  };
  Kind kind = Kind::ProduceBlock;
  int line = 0;
  std::vector<std::string> args;
};

struct Scenario {
  std::vector<ScenarioActor> actors;
  std::vector<ScenarioAction> actions;
};

struct ParseResult {
  bool ok = false;
  std::string error;
  int line = 0;
  Scenario scenario;
};

ParseResult parse_scenario(std::string_view text);
ParseResult parse_scenario_file(const std::filesystem::path& path);

struct RunResult {
  bool ok = false;
  std::string error;
};

// Executes the scenario against the ledger, logging one line per action and
// a final summary (product states, round, state hash).
RunResult run_scenario(Ledger& ledger, const Scenario& scenario,
                       std::ostream& out);

}  // namespace ledgersim::scenario
