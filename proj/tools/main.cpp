// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ledgersim/bench.hpp"
#include "ledgersim/digest.hpp"
#include "ledgersim/ledger.hpp"
#include "ledgersim/lifecycle.hpp"
#include "ledgersim/scenario.hpp"
#include "ledgersim/snapshot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

using namespace ledgersim;

struct InitOptions {
  std::string ledger_path;
  std::vector<std::string> accounts;  // name=balance
  std::vector<std::string> roles;     // name=role
  Config config;
};

int cmd_init(const InitOptions& opt) {
  Ledger ledger(opt.config);

  std::map<std::string, Address> named;
  for (const auto& spec : opt.accounts) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --account '" << spec << "', expected name=balance\n";
      return kExitUsage;
    }
    std::string name = spec.substr(0, eq);
    MicroUnits balance = 0;
    try {
      balance = std::stoull(spec.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "bad balance in '" << spec << "'\n";
      return kExitUsage;
    }
    Address addr = ledger.create_account(balance);
    named.emplace(name, addr);
    std::cout << "account " << name << " " << addr.to_string() << "\n";
  }

  std::optional<Address> authenticator;
  std::vector<std::pair<std::string, std::string>> certified;
  for (const auto& spec : opt.roles) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || !named.count(spec.substr(0, eq))) {
      std::cerr << "bad --role '" << spec << "', expected knownname=role\n";
      return kExitUsage;
    }
    std::string name = spec.substr(0, eq);
    std::string role = spec.substr(eq + 1);
    if (role == "authenticator") {
      authenticator = named.at(name);
    } else if (role == "manufacturer" || role == "recycler") {
      certified.emplace_back(name, role);
    } else {
      std::cerr << "unknown role '" << role << "'\n";
      return kExitUsage;
    }
  }
  if (authenticator) ledger.set_authenticator(*authenticator);
  for (const auto& [name, role] : certified) {
    if (!authenticator) {
      std::cerr << "certified roles require an authenticator\n";
      return kExitUsage;
    }
    Status s = role == "manufacturer"
                   ? ledger.certify_manufacturer(*authenticator, named.at(name))
                   : ledger.certify_recycler(*authenticator, named.at(name));
    if (!s.ok()) {
      std::cerr << "role setup failed for " << name << ": "
                << to_string(s.error()) << "\n";
      return kExitFailure;
    }
  }

  // Commit the genesis setup into round 1 so a block log can replay it.
  ledger.produce_block();
  auto err = save_snapshot(ledger, opt.ledger_path);
  if (!err) {
    std::cerr << err.message << "\n";
    return kExitFailure;
  }
  std::cout << "ledger " << opt.ledger_path << " round " << ledger.round()
            << "\nstate_hash " << to_hex(ledger.state_hash()) << "\n";
  return kExitOk;
}

struct RunOptions {
  std::string scenario_path;
  std::string ledger_path;       // optional input snapshot
  std::string save_path;         // optional output snapshot
  std::string blocklog_path;     // optional block log
};

int cmd_run(const RunOptions& opt) {
  LoadedSnapshot snap;
  bool from_snapshot = !opt.ledger_path.empty();
  if (from_snapshot) {
    snap = load_snapshot(opt.ledger_path);
    if (!snap.ok) {
      std::cerr << snap.message << "\n";
      return kExitFailure;
    }
  }
  Ledger ledger = [&]() -> Ledger {
    if (from_snapshot) return snap.restore();
    return Ledger();
  }();

  BlockLogWriter log;
  if (!opt.blocklog_path.empty()) {
    if (!log.open(opt.blocklog_path, ledger.config())) {
      std::cerr << "cannot open block log " << opt.blocklog_path << "\n";
      return kExitFailure;
    }
    ledger.set_block_observer([&log](const Block& b) { log.append(b); });
  }

  auto parsed = scenario::parse_scenario_file(opt.scenario_path);
  if (!parsed.ok) {
    std::cerr << opt.scenario_path << ": " << parsed.error << "\n";
    return kExitFailure;
  }
  auto run = scenario::run_scenario(ledger, parsed.scenario, std::cout);
  if (!run.ok) {
    std::cerr << opt.scenario_path << ": " << run.error << "\n";
    return kExitFailure;
  }
  if (!opt.save_path.empty()) {
    auto err = save_snapshot(ledger, opt.save_path);
    if (!err) {
      std::cerr << err.message << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

struct BenchOptions {
  std::vector<std::uint64_t> sizes;
  unsigned parallelism = 1;
  std::string out_path;
  Config config;
};

int cmd_bench(const BenchOptions& opt) {
  if (opt.sizes.empty()) {
    std::cerr << "--sizes must list at least one batch size\n";
    return kExitUsage;
  }
  bench::SweepReport report =
      bench::run_sweep(opt.sizes, opt.parallelism, opt.config);

  std::ostringstream csv;
  bench::write_csv(csv, report.results);
  if (opt.out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "cannot open " << opt.out_path << "\n";
      return kExitFailure;
    }
    out << csv.str();
    std::cout << "wrote " << opt.out_path << "\n";
  }

  std::printf("theoretical_throughput %.2f txn/s\n",
              bench::theoretical_throughput(opt.config));
  auto print_fit = [](const char* name, const bench::LinearFit& fit) {
    if (fit.degenerate)
      std::printf("%s fit: degenerate (need two distinct sizes)\n", name);
    else
      std::printf("%s fit: slope=%.9f intercept=%.6f r2=%.6f\n", name,
                  fit.slope, fit.intercept, fit.r2);
  };
  print_fit("simulated", report.simulated_fit);
  print_fit("wall", report.wall_fit);
  return kExitOk;
}

struct TraceOptions {
  std::string blocklog_path;
  std::uint64_t asset = 0;
};

int cmd_trace(const TraceOptions& opt) {
  BlockLog log = read_block_log(opt.blocklog_path);
  if (!log.ok) {
    std::cerr << log.message << "\n";
    return kExitFailure;
  }
  auto record = lifecycle::trace_blocks(log.blocks, opt.asset);
  if (!record.ok()) {
    std::cerr << "asset " << opt.asset << ": " << to_string(record.error())
              << "\n";
    return kExitFailure;
  }
  for (const auto& ev : record.value().events) {
    std::cout << "round " << ev.round << " " << lifecycle::to_string(ev.kind);
    switch (ev.kind) {
      case lifecycle::EventKind::Minted:
        std::cout << " by " << ev.to.to_string();
        break;
      case lifecycle::EventKind::Transferred:
        std::cout << " " << ev.from.to_string() << " -> "
                  << ev.to.to_string();
        break;
      case lifecycle::EventKind::Bound:
        std::cout << " app " << ev.app;
        break;
      case lifecycle::EventKind::Released:
        std::cout << " app " << ev.app;
        break;
      case lifecycle::EventKind::Recycled:
        std::cout << " app " << ev.app << " -> " << ev.to.to_string();
        break;
      case lifecycle::EventKind::Destroyed:
        std::cout << " by " << ev.from.to_string();
        break;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_snapshot(const std::string& in_path, const std::string& out_path) {
  LoadedSnapshot snap = load_snapshot(in_path);
  if (!snap.ok) {
    std::cerr << snap.message << "\n";
    return kExitFailure;
  }
  Ledger ledger = snap.restore();
  auto err = save_snapshot(ledger, out_path);
  if (!err) {
    std::cerr << err.message << "\n";
    return kExitFailure;
  }
  std::cout << "state_hash " << to_hex(ledger.state_hash()) << "\n";
  return kExitOk;
}

struct LoadOptions {
  std::string ledger_path;
  std::string blocklog_path;
};

int cmd_load(const LoadOptions& opt) {
  if (opt.ledger_path.empty() == opt.blocklog_path.empty()) {
    std::cerr << "load expects exactly one of --ledger or --blocklog\n";
    return kExitUsage;
  }
  if (!opt.ledger_path.empty()) {
    LoadedSnapshot snap = load_snapshot(opt.ledger_path);
    if (!snap.ok) {
      std::cerr << snap.message << "\n";
      return kExitFailure;
    }
    Ledger ledger = snap.restore();
    std::cout << "round " << ledger.round() << "\naccounts "
              << ledger.state_copy().accounts.size() << "\nassets "
              << ledger.state_copy().assets.size() << "\napps "
              << ledger.state_copy().apps.size() << "\nstate_hash "
              << to_hex(ledger.state_hash()) << "\n";
    return kExitOk;
  }
  BlockLog log = read_block_log(opt.blocklog_path);
  if (!log.ok) {
    std::cerr << log.message << "\n";
    return kExitFailure;
  }
  Ledger ledger(log.config);
  ReplayResult replayed = replay_chain(ledger, log.blocks);
  if (!replayed.ok) {
    std::cerr << replayed.message << "\n";
    return kExitFailure;
  }
  std::cout << "replayed " << replayed.verified_blocks
            << " blocks, all hashes verified\nround " << ledger.round()
            << "\nstate_hash " << to_hex(ledger.state_hash()) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic ledger and token-lifecycle simulator"};
  app.require_subcommand(1);

  InitOptions init_opt;
  auto* init = app.add_subcommand("init", "Create a genesis ledger snapshot");
  init->add_option("--ledger", init_opt.ledger_path, "Output snapshot path")
      ->required();
  init->add_option("--account", init_opt.accounts,
                   "Genesis account, name=balance (repeatable)");
  init->add_option("--role", init_opt.roles,
                   "Role binding, name=authenticator|manufacturer|recycler");
  init->add_option("--capacity", init_opt.config.block_capacity,
                   "Block capacity (default 5000)");
  init->add_option("--round-millis", init_opt.config.round_millis,
                   "Round time in milliseconds (default 4500)");

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--scenario", run_opt.scenario_path, "Scenario file")
      ->required();
  run->add_option("--ledger", run_opt.ledger_path, "Input snapshot");
  run->add_option("--save-snapshot", run_opt.save_path, "Output snapshot");
  run->add_option("--blocklog", run_opt.blocklog_path, "Output block log");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Batch token-creation benchmark");
  bench_cmd->add_option("--sizes", bench_opt.sizes, "Batch sizes")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--parallelism", bench_opt.parallelism,
                        "Submitter threads (default 1)");
  bench_cmd->add_option("--out", bench_opt.out_path, "CSV output path");
  bench_cmd->add_option("--capacity", bench_opt.config.block_capacity,
                        "Block capacity (default 5000)");
  bench_cmd->add_option("--round-millis", bench_opt.config.round_millis,
                        "Round time in milliseconds (default 4500)");

  TraceOptions trace_opt;
  auto* trace = app.add_subcommand("trace", "Provenance of an asset");
  trace->add_option("--blocklog", trace_opt.blocklog_path, "Block log file")
      ->required();
  trace->add_option("--asset", trace_opt.asset, "Asset id")->required();

  std::string snap_in, snap_out;
  auto* snapshot = app.add_subcommand("snapshot", "Re-serialize a snapshot");
  snapshot->add_option("--ledger", snap_in, "Input snapshot")->required();
  snapshot->add_option("--out", snap_out, "Output snapshot")->required();

  LoadOptions load_opt;
  auto* load = app.add_subcommand(
      "load", "Load a snapshot, or replay and verify a block log");
  load->add_option("--ledger", load_opt.ledger_path, "Snapshot path");
  load->add_option("--blocklog", load_opt.blocklog_path, "Block log path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (init->parsed()) return cmd_init(init_opt);
  if (run->parsed()) return cmd_run(run_opt);
  if (bench_cmd->parsed()) return cmd_bench(bench_opt);
  if (trace->parsed()) return cmd_trace(trace_opt);
  if (snapshot->parsed()) return cmd_snapshot(snap_in, snap_out);
  if (load->parsed()) return cmd_load(load_opt);
  return kExitUsage;
}
