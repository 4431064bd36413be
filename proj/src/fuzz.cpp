#include "mqsym/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "mqsym/error.hpp"

namespace mqsym {

Registry random_registry(std::size_t dimension, std::size_t observables) {
  RegistryBuilder builder;
  for (std::size_t o = 0; o < observables; ++o) {
    std::vector<std::string> labels;
    std::vector<Rational> values;
    for (std::size_t k = 0; k < dimension; ++k) {
      labels.push_back("k" + std::to_string(k));
      values.emplace_back(static_cast<long>(k) - static_cast<long>(dimension / 2));
    }
    builder.define_observable(std::string(1, static_cast<char>('A' + o)), std::move(labels), std::move(values));
  }
  return builder.freeze();
}

namespace {

const std::vector<ComplexRational>& literal_pool() {
  static const std::vector<ComplexRational> pool = {
      ComplexRational(1),
      ComplexRational(-1),
      ComplexRational(Rational(1, 2)),
      ComplexRational::i(),
      ComplexRational(Rational(0), Rational(-1, 2)),
      ComplexRational(Rational(1, 2), Rational(1, 2)),
      ComplexRational(Rational(2, 3)),
      ComplexRational(Rational(-3, 4), Rational(1, 4)),
  };
  return pool;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

Tree random_leaf(const std::vector<StateRef>& states, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 99);
  int k = kind(rng);
  if (k < 35) return Tree::symbol(pick(states, rng), pick(states, rng));
  if (k < 60) return Tree::filter(pick(states, rng));
  if (k < 75) return Tree::transform(pick(states, rng), pick(states, rng));
  if (k < 90) return Tree::literal(pick(literal_pool(), rng));
  return Tree::identity();
}

Tree random_node(const std::vector<StateRef>& states, std::size_t depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pct(0, 99);
  if (depth <= 1 || pct(rng) < 25) return random_leaf(states, rng);
  int k = pct(rng);
  if (k < 40) return Tree::product(random_node(states, depth - 1, rng), random_node(states, depth - 1, rng));
  if (k < 65) return Tree::sum(random_node(states, depth - 1, rng), random_node(states, depth - 1, rng));
  if (k < 75) return Tree::difference(random_node(states, depth - 1, rng), random_node(states, depth - 1, rng));
  if (k < 90) return Tree::adjoint(random_node(states, depth - 1, rng));
  return Tree::negate(random_node(states, depth - 1, rng));
}

std::mt19937_64 case_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t(index) >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Tree random_tree(const std::vector<StateRef>& states, std::size_t max_depth, std::mt19937_64& rng) {
  if (states.empty()) throw Error(ErrorCode::ConfigError, "random_tree needs at least one state");
  max_depth = std::max<std::size_t>(max_depth, 1);
  // A whole tree may be moved into the conjugate algebra; mixing the two inside one product is not allowed.
  std::uniform_int_distribution<int> pct(0, 99);
  const int wrap = max_depth > 1 ? pct(rng) : 99;
  if (wrap < 10) return Tree::conjugate(random_node(states, max_depth - 1, rng));
  if (wrap < 20) return Tree::transpose(random_node(states, max_depth - 1, rng));
  return random_node(states, max_depth, rng);
}

FuzzCase run_fuzz_case(const FuzzConfig& config, std::size_t index) {
  auto rng = case_rng(config.seed, index);
  std::uniform_int_distribution<std::size_t> dim_dist(config.dim_lo, config.dim_hi);
  std::uniform_int_distribution<std::size_t> obs_dist(2, 3);
  const std::size_t dim = dim_dist(rng);
  const std::size_t n_obs = obs_dist(rng);

  Registry registry = random_registry(dim, n_obs);
  std::vector<ObservableId> ids;
  std::vector<StateRef> states;
  for (const auto& def : registry.observables()) {
    ids.push_back(def.id);
    for (auto s : registry.states(def.id)) states.push_back(s);
  }
  Realization realization = random_realization(registry, dim, ids, rng());
  Tree tree = random_tree(states, config.max_depth, rng);
  VerifyReport report = verify_normal_form(realization, tree, config.tolerance);
  return {index, dim, tree.depth(), report.deviation};
}

FuzzSummary run_fuzz(const FuzzConfig& config) {
  if (config.dim_lo < 1 || config.dim_hi < config.dim_lo)
    throw Error(ErrorCode::ConfigError, "invalid dimension range");
  if (config.cases < 1) throw Error(ErrorCode::ConfigError, "cases must be at least 1");
  if (!(config.tolerance > 0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");

  std::vector<FuzzCase> results(config.cases);
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.cases));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.cases; i = next++) results[i] = run_fuzz_case(config, i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  FuzzSummary summary;
  summary.config = config;
  summary.cases = config.cases;
  for (const auto& c : results) {
    if (c.deviation > summary.max_deviation) {
      summary.max_deviation = c.deviation;
      summary.worst_case = c.index;
    }
    summary.max_depth_seen = std::max(summary.max_depth_seen, c.depth);
    if (!(c.deviation <= config.tolerance)) {
      ++summary.failures;
      summary.failed.push_back(c);
    }
  }
  return summary;
}

}  // namespace mqsym
