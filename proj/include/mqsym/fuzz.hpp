#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mqsym/realization.hpp"

namespace mqsym {

/// Random registry of `observables` atomic observables named A, B, C, ...
/// each with `dimension` labels k0, k1, ... and integer eigenvalues.
Registry random_registry(std::size_t dimension, std::size_t observables);

/// Random unreduced tree of depth at most `max_depth` over `states`, using
/// sums, differences, products, adjoints, negation, literals, transformation
/// functions, symbols, filters and I. Some trees are wrapped whole in conj or transpose.
Tree random_tree(const std::vector<StateRef>& states, std::size_t max_depth, std::mt19937_64& rng);

struct FuzzConfig {
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 5;
  std::size_t cases = 1000;
  std::uint64_t seed = 7;
  double tolerance = kOracleTolerance;
  std::size_t max_depth = 6;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct FuzzCase {
  std::size_t index = 0;
  std::size_t dimension = 0;
  std::size_t depth = 0;
  double deviation = 0.0;
};

struct FuzzSummary {
  FuzzConfig config;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  std::size_t worst_case = 0;
  std::size_t max_depth_seen = 0;
  /// Failing cases in index order.
  std::vector<FuzzCase> failed;

  bool passed() const { return failures == 0; }
};

/// One oracle case; the same (seed, index) always produces the same case.
FuzzCase run_fuzz_case(const FuzzConfig& config, std::size_t index);

/// Runs every case, possibly in parallel, and aggregates by case index so the
/// summary does not depend on scheduling.
FuzzSummary run_fuzz(const FuzzConfig& config);

}  // namespace mqsym
