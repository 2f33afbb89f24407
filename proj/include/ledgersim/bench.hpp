// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "ledgersim/ledger.hpp"
#include "ledgersim/types.hpp"

namespace ledgersim::bench {

struct BenchResult {
  std::uint64_t batch_size = 0;
  std::uint64_t blocks_used = 0;
  double simulated_seconds = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t txns_rejected = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool degenerate = false;  // fewer than two distinct x values
};

struct SweepReport {
  std::vector<BenchResult> results;
  LinearFit simulated_fit;
  LinearFit wall_fit;
};

// Block capacity over the round time: 5000 / 4.5 with the defaults.
double theoretical_throughput(const Config& config = {});

// Submits n token creations (all from `submitter`), then produces blocks
// until the pool drains. With parallelism > 1 the submission is split
// across that many threads feeding the same pool.
Outcome<BenchResult> run_batch_creation(Ledger& ledger, std::uint64_t n,
                                        const Address& submitter,
                                        unsigned parallelism = 1);

// Fresh ledger per batch size; the batch creator is registered as the
// authenticator. Reports least-squares fits of simulated and wall time
// against batch size.
SweepReport run_sweep(const std::vector<std::uint64_t>& sizes,
                      unsigned parallelism = 1, const Config& config = {});

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// CSV rows: batch_size,blocks_used,simulated_seconds,wall_seconds,rejected
void write_csv(std::ostream& out, std::span<const BenchResult> results);

}  // namespace ledgersim::bench
