// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ledgersim/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace ledgersim::bench {

double theoretical_throughput(const Config& config) {
  return static_cast<double>(config.block_capacity) / config.round_seconds();
}

namespace {

Transaction make_creation(const Address& submitter, std::uint64_t index) {
  AssetCreateFields f;
  f.creator = submitter;
  f.total = 1;
  f.decimals = 0;
  f.unit_name = "CHIP";
  f.asset_name = "chip-" + std::to_string(index);
  f.manager = submitter;
  return make_transaction(f);
}

}  // namespace

Outcome<BenchResult> run_batch_creation(Ledger& ledger, std::uint64_t n,
                                        const Address& submitter,
                                        unsigned parallelism) {
  auto acct = ledger.account(submitter);
  if (!acct) return RejectReason::UnknownAccount;
  MicroUnits fee = ledger.config().flat_fee;
  if (fee > 0 && acct->balance / fee < n)
    return RejectReason::InsufficientBalance;

  BenchResult result;
  result.batch_size = n;
  if (n == 0) return result;

  if (parallelism == 0) parallelism = 1;
  auto start = std::chrono::steady_clock::now();

  if (parallelism == 1) {
    for (std::uint64_t i = 0; i < n; ++i)
      ledger.submit(make_creation(submitter, i));
  } else {
    std::vector<std::thread> submitters;
    submitters.reserve(parallelism);
    for (unsigned t = 0; t < parallelism; ++t) {
      std::uint64_t begin = n * t / parallelism;
      std::uint64_t end = n * (t + 1) / parallelism;
      submitters.emplace_back([&ledger, &submitter, begin, end] {
        for (std::uint64_t i = begin; i < end; ++i)
          ledger.submit(make_creation(submitter, i));
      });
    }
    for (auto& t : submitters) t.join();
  }

  while (ledger.pool_size() > 0) {
    Block block = ledger.produce_block();
    result.blocks_used += 1;
    for (const auto& rec : block.txns)
      if (!rec.applied) result.txns_rejected += 1;
  }
  auto stop = std::chrono::steady_clock::now();

  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  result.simulated_seconds =
      static_cast<double>(result.blocks_used) * ledger.config().round_seconds();
  return result;
}

SweepReport run_sweep(const std::vector<std::uint64_t>& sizes,
                      unsigned parallelism, const Config& config) {
  SweepReport report;
  std::vector<double> xs, sim, wall;
  for (std::uint64_t n : sizes) {
    Ledger ledger(config);
    MicroUnits funding = (n + 1) * config.flat_fee;
    Address submitter = ledger.create_account(funding);
    ledger.set_authenticator(submitter);  // batch creator is the authenticator
    auto run = run_batch_creation(ledger, n, submitter, parallelism);
    report.results.push_back(run.value());
    xs.push_back(static_cast<double>(n));
    sim.push_back(run.value().simulated_seconds);
    wall.push_back(run.value().wall_seconds);
  }
  report.simulated_fit = least_squares(xs, sim);
  report.wall_fit = least_squares(xs, wall);
  return report;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  std::size_t n = std::min(x.size(), y.size());
  if (n < 2) {
    fit.degenerate = true;
    if (n == 1) fit.intercept = y[0];
    return fit;
  }
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mean_x;
    double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    fit.intercept = mean_y;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // constant data, exact fit
    return fit;
  }
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double res = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += res * res;
  }
  fit.r2 = 1.0 - ss_res / syy;
  return fit;
}

void write_csv(std::ostream& out, std::span<const BenchResult> results) {
  out << "batch_size,blocks_used,simulated_seconds,wall_seconds,rejected\n";
  char line[160];
  for (const auto& r : results) {
    std::snprintf(line, sizeof(line), "%llu,%llu,%.1f,%.6f,%llu\n",
                  static_cast<unsigned long long>(r.batch_size),
                  static_cast<unsigned long long>(r.blocks_used),
                  r.simulated_seconds, r.wall_seconds,
                  static_cast<unsigned long long>(r.txns_rejected));
    out << line;
  }
}

}  // namespace ledgersim::bench
