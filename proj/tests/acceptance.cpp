// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <fmt/format.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "laws.hpp"
#include "mqsym/dsl.hpp"
#include "mqsym/functional.hpp"
#include "mqsym/fuzz.hpp"
#include "mqsym/realization.hpp"
#include "support.hpp"

using namespace mqsym;
using namespace mqsym::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kLawSeconds = 5.0;
constexpr double kFuzzSeconds = 10.0;
constexpr double kFuzzTol = 1e-9;
constexpr double kChainTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kSymmetryTol = 1e-12;
constexpr double kBoundTol = 1e-12;
constexpr double kGaugeTol = 1e-12;
constexpr double kCascadeTol = 1e-12;
constexpr double kEigenTol = 1e-10;
constexpr double kCharPolyTol = 1e-9;
constexpr double kHornerTol = 1e-9;
constexpr double kTraceTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kWaveTol = 1e-12;
constexpr int kRealizations = 100;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Three observables A, B, C with n labels each and distinct rational eigenvalues.
Registry abc_registry(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  RegistryBuilder b;
  for (const char* name : {"A", "B", "C"}) {
    std::vector<std::string> labels;
    std::vector<Rational> values;
    for (std::size_t k = 0; k < n; ++k) {
      labels.push_back("k" + std::to_string(k));
      Rational v;
      do {
        v = Rational(num(rng), 7);
      } while (std::find(values.begin(), values.end(), v) != values.end());
      values.push_back(v);
    }
    b.define_observable(name, labels, values);
  }
  return b.freeze();
}

struct Sample {
  Registry reg;
  Realization r;
  std::vector<ObservableId> ids;
};

Sample sample(int seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  const std::size_t n = 2 + static_cast<std::size_t>(seed) % 4;
  Registry reg = abc_registry(n, rng);
  std::vector<ObservableId> ids{reg.id_of("A"), reg.id_of("B"), reg.id_of("C")};
  Realization r = random_realization(reg, n, ids, static_cast<std::uint64_t>(1000 + seed));
  return {reg, r, ids};
}

Outcome algebraic_laws() {
  const auto t0 = std::chrono::steady_clock::now();
  const LawReport report = run_law_suite();
  const double secs = seconds_since(t0);
  std::string detail = fmt::format("{} registries, {} exact checks, {:.2f} s", report.registries, report.checks, secs);
  if (!report.passed()) detail += "; first failure: " + report.failures.front();
  return {report.passed() && report.registries == 84 && secs < kLawSeconds, detail};
}

Outcome oracle_equivalence() {
  FuzzConfig config;
  config.cases = 1000;
  config.dim_lo = 2;
  config.dim_hi = 5;
  config.seed = 7;
  config.max_depth = 6;
  config.tolerance = kFuzzTol;
  const auto t0 = std::chrono::steady_clock::now();
  const FuzzSummary s = run_fuzz(config);
  const double secs = seconds_since(t0);
  return {s.passed() && s.cases >= 1000 && s.max_depth_seen <= 6 && s.max_deviation <= kFuzzTol && secs < kFuzzSeconds,
          fmt::format("{} cases, max depth {}, max deviation {:.3g} (case {}), {} failures, {:.2f} s", s.cases,
                      s.max_depth_seen, s.max_deviation, s.worst_case, s.failures, secs)};
}

Outcome chain_rule() {
  double worst = 0.0;
  for (int seed = 0; seed < kRealizations; ++seed) {
    const auto [reg, r, ids] = sample(seed);
    const std::size_t n = r.dimension();
    for (auto x : ids)
      for (auto y : ids)
        for (auto via : ids)
          for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
              Complex chained = 0.0;
              for (std::uint32_t k = 0; k < n; ++k)
                chained += eval_tf(r, {x, i}, {via, k}) * eval_tf(r, {via, k}, {y, j});
              worst = std::max(worst, std::abs(eval_tf(r, {x, i}, {y, j}) - chained));
            }
  }
  return {worst <= kChainTol, fmt::format("{} realizations, max |<a|b> - sum_c <a|c><c|b>| = {:.3g}", kRealizations, worst)};
}

Outcome probability_suite() {
  double norm_dev = 0.0, sym_dev = 0.0, low = 1.0, high = 0.0;
  for (int seed = 0; seed < kRealizations; ++seed) {
    const auto [reg, r, ids] = sample(seed);
    const std::size_t n = r.dimension();
    for (auto x : ids)
      for (auto y : ids)
        for (std::uint32_t j = 0; j < n; ++j) {
          double total = 0.0;
          for (std::uint32_t i = 0; i < n; ++i) {
            const double p = probability(r, {x, i}, {y, j});
            total += p;
            sym_dev = std::max(sym_dev, std::abs(p - probability(r, {y, j}, {x, i})));
            low = std::min(low, p);
            high = std::max(high, p);
          }
          norm_dev = std::max(norm_dev, std::abs(total - 1.0));
        }
  }
  const bool ok = norm_dev <= kNormTol && sym_dev <= kSymmetryTol && low >= 0.0 && high <= 1.0 + kBoundTol;
  return {ok, fmt::format("normalization {:.3g}, symmetry {:.3g}, range [{:.3g}, {:.17g}]", norm_dev, sym_dev, low, high)};
}

Outcome gauge_invariance() {
  constexpr int kPhaseDraws = 100;
  constexpr int kGaugeRealizations = 10;
  double prob_dev = 0.0, identity_dev = 0.0;
  std::size_t symbolic_failures = 0;
  for (int seed = 0; seed < kGaugeRealizations; ++seed) {
    const auto [reg, r, ids] = sample(seed);
    const auto states = all_states(reg);
    std::mt19937_64 rng(static_cast<std::uint64_t>(500 + seed));
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    for (int draw = 0; draw < kPhaseDraws; ++draw) {
      GaugeAssignment g;
      for (auto s : states) g.phases[s] = angle(rng);
      const Realization rg = r.with_gauge(g);
      for (auto a : states)
        for (auto b : states) {
          prob_dev = std::max(prob_dev, std::abs(probability(rg, a, b) - probability(r, a, b)));
          if (gauge_transform(probability_symbolic(a, b), g) != probability_symbolic(a, b)) ++symbolic_failures;
        }
      // Product identities M_a M_b = <a|b> M_a^b evaluated in the transformed frame.
      std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
      for (int k = 0; k < 5; ++k) {
        const StateRef a = states[pick(rng)], b = states[pick(rng)];
        const AlgebraExpr lhs = mul(filter(reg, a), filter(reg, b));
        const ComplexMatrix direct = matrix_of(rg, filter(reg, a)) * matrix_of(rg, filter(reg, b));
        identity_dev = std::max(identity_dev, max_abs_entry(direct - matrix_of(rg, lhs)));
        identity_dev = std::max(identity_dev, max_abs_entry(matrix_of(rg, lhs) - matrix_of(r, gauge_transform(lhs, g), g.phases)));
      }
    }
  }
  const bool ok = prob_dev <= kGaugeTol && identity_dev <= kGaugeTol && symbolic_failures == 0;
  return {ok, fmt::format("{}x{} phase draws: probability drift {:.3g}, identity drift {:.3g}, symbolic mismatches {}",
                          kGaugeRealizations, kPhaseDraws, prob_dev, identity_dev, symbolic_failures)};
}

Outcome stern_gerlach() {
  const Registry reg = spin_registry();
  const Realization r = spin_realization(reg);
  const StateRef up = reg.state("Z", "up"), plus = reg.state("X", "plus");
  const AlgebraExpr cascade = normalize(mul(mul(filter(reg, up), filter(reg, plus)), filter(reg, up)));
  const ScalarExpr coeff = cascade.coefficient(Word::symbol(up, up));
  const ScalarExpr expected = ScalarExpr::transform(up, plus) * ScalarExpr::transform(plus, up);
  const bool shape = cascade.terms().size() == 1 && coeff == expected;
  const Complex value = eval_scalar(r, coeff);
  const double born = born_probability(r, plus, basis_state(r, up));

  // Oracle from the explicit kets |up> = (1, 0) and |+> = (1, 1)/sqrt(2).
  const double h = 1.0 / std::sqrt(2.0);
  const Complex up_plus = 1.0 * h + 0.0 * h;
  const double oracle = std::norm(up_plus);
  ComplexMatrix pu(2, 2), pp(2, 2);
  pu << 1, 0, 0, 0;
  pp << 0.5, 0.5, 0.5, 0.5;
  const double matrix_dev = max_abs_entry(pu * pp * pu - oracle * pu);

  const bool ok = shape && std::abs(value - oracle) <= kCascadeTol && std::abs(born - oracle) <= kCascadeTol &&
                  matrix_dev <= kCascadeTol;
  return {ok, fmt::format("coefficient <up|+><+|up> = {:.15g}, born(X:+ | Z:up) = {:.15g}, oracle {:.15g}",
                          value.real(), born, oracle)};
}

Outcome spectral_suite() {
  double eigen = 0.0, charpoly = 0.0, horner = 0.0, trace_dev = 0.0;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int seed = 0; seed < kRealizations; ++seed) {
    const auto [reg, r, ids] = sample(seed);
    const std::size_t n = r.dimension();
    for (auto id : ids) {
      const ComplexMatrix a = operator_from_spectrum(r, id);
      const auto& values = *reg.observable(id).values;
      for (std::uint32_t k = 0; k < n; ++k) {
        const ComplexVector v = r.ket({id, k});
        eigen = std::max(eigen, (a * v - values[k].get_d() * v).cwiseAbs().maxCoeff());
      }
      charpoly = std::max(charpoly, char_poly_check(r, id, kCharPolyTol).residual);
      const std::vector<Complex> cubic{{coef(rng), coef(rng)}, {coef(rng), 0}, {coef(rng), coef(rng)}, {1, 0}};
      horner = std::max(horner, max_abs_entry(spectral_function(r, id, cubic) - polynomial_of_matrix(a, cubic)));
      for (auto other : ids)
        for (std::uint32_t j = 0; j < n; ++j) {
          const StateRef b{other, j};
          const Complex tr = (a * matrix_of(r, filter(reg, b))).trace();
          double weighted = 0.0;
          for (std::uint32_t k = 0; k < n; ++k) weighted += probability(r, {id, k}, b) * values[k].get_d();
          trace_dev = std::max(trace_dev, std::abs(tr - weighted));
        }
    }
  }
  const bool ok = eigen <= kEigenTol && charpoly <= kCharPolyTol && horner <= kHornerTol && trace_dev <= kTraceTol;
  return {ok, fmt::format("eigen {:.3g}, char poly {:.3g}, spectral vs Horner {:.3g}, Tr(A M_b) {:.3g}", eigen, charpoly,
                          horner, trace_dev)};
}

Outcome unitary_geometry() {
  double unitary = 0.0, norm_dev = 0.0, round_trip = 0.0;
  for (int seed = 0; seed < kRealizations; ++seed) {
    const auto [reg, r, ids] = sample(seed);
    const std::size_t n = r.dimension();
    for (auto x : ids)
      for (auto y : ids) unitary = std::max(unitary, unitarity_residual(transformation_matrix(r, x, y)));
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::normal_distribution<double> g;
    WaveFunction psi{ids[0], {}};
    double len = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      psi.components.emplace_back(g(rng), g(rng));
      len += std::norm(psi.components.back());
    }
    for (auto& c : psi.components) c /= std::sqrt(len);
    const WaveFunction in_b = change_basis(r, psi, ids[1]);
    const WaveFunction back = change_basis(r, in_b, ids[0]);
    norm_dev = std::max({norm_dev, std::abs(norm(in_b) - norm(psi)), std::abs(norm(change_basis(r, psi, ids[2])) - 1.0)});
    for (std::size_t k = 0; k < n; ++k) round_trip = std::max(round_trip, std::abs(back.components[k] - psi.components[k]));
  }
  const bool ok = unitary <= kUnitaryTol && norm_dev <= kWaveTol && round_trip <= kWaveTol;
  return {ok, fmt::format("U_ab residual {:.3g}, norm drift {:.3g}, round trip {:.3g}", unitary, norm_dev, round_trip)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus(const char* dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(MQSYM_TEST_DIR) / "corpus" / dir))
    if (e.path().extension() == ".mq") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome parser_corpus() {
  std::size_t golden = 0, round_trips = 0, spans = 0;
  std::vector<std::string> problems;
  const auto valid = corpus("valid"), malformed = corpus("malformed");
  for (const auto& f : valid) {
    try {
      const dsl::Program p = dsl::parse_syntax(slurp(f));
      if (dsl::to_sexpr(p) == slurp(fs::path(f).replace_extension(".tree")))
        ++golden;
      else
        problems.push_back(f.filename().string() + " tree");
      if (dsl::structurally_equal(p, dsl::parse_syntax(dsl::render(p))))
        ++round_trips;
      else
        problems.push_back(f.filename().string() + " round trip");
    } catch (const Error& e) {
      problems.push_back(f.filename().string() + ": " + e.what());
    }
  }
  for (const auto& f : malformed) {
    Span want;
    char sep = 0;
    std::istringstream(slurp(fs::path(f).replace_extension(".span"))) >> want.line >> sep >> want.column >> sep >>
        want.length;
    try {
      dsl::parse_syntax(slurp(f));
      problems.push_back(f.filename().string() + " parsed");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SyntaxError && e.span() == want)
        ++spans;
      else
        problems.push_back(f.filename().string() + " span");
    }
  }
  const bool ok = problems.empty() && valid.size() >= 20 && golden == valid.size() && round_trips == valid.size() &&
                  spans == malformed.size() && !malformed.empty();
  std::string detail = fmt::format("{}/{} golden trees, {}/{} round trips, {}/{} error spans", golden, valid.size(),
                                   round_trips, valid.size(), spans, malformed.size());
  if (!problems.empty()) detail += "; " + problems.front();
  return {ok, detail};
}

struct Captured {
  int status;
  std::string out;
};

Captured run_binary(const std::string& args) {
  const std::string cmd = std::string("\"") + MQSYM_BINARY + "\" " + args + " 2>/dev/null";
  Captured c{-1, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

Outcome cli_determinism() {
  const Captured a = run_binary("fuzz --seed 7");
  const Captured b = run_binary("fuzz --seed 7");
  const bool same = a.status == 0 && b.status == 0 && !a.out.empty() && a.out == b.out;

  const std::vector<std::pair<std::string, std::string>> golden = {
      {"normalize M[Z:up]*M[Z:up]", "M[Z:up]\n"},
      {"normalize M[Z:up]*M[Z:down]", "0\n"},
      {"normalize M[A:a]*M[B:b]", "<A:a|B:b>*M[A:a<-B:b]\n"},
      {"normalize M[A:a<-B:b]*M[C:c<-D:d]", "<B:b|C:c>*M[A:a<-D:d]\n"},
      {"normalize M[C:c<-D:d]*M[A:a<-B:b]", "<D:d|A:a>*M[C:c<-B:b]\n"},
      {"normalize (M[A:a]*M[B:b])^+", "<B:b|A:a>*M[B:b<-A:a]\n"},
      {"normalize I*M[A:a] - M[A:a]*I", "0\n"},
      {"normalize 1/2*M[Z:up] + 1/2i*M[Z:up]", "(1/2+1/2i)*M[Z:up]\n"},
      {"trace M[A:a<-B:b]", "<B:b|A:a>\n"},
  };
  std::size_t matched = 0;
  std::string mismatch;
  for (const auto& [expr, want] : golden) {
    const Captured c = run_binary("eval -e '" + expr + "'");
    if (c.status == 0 && c.out == want)
      ++matched;
    else if (mismatch.empty())
      mismatch = "; '" + expr + "' gave '" + c.out + "'";
  }
  const bool ok = same && matched == golden.size();
  return {ok, fmt::format("fuzz --seed 7 twice {}, {}/{} eval goldens{}", same ? "identical" : "DIFFERENT", matched,
                          golden.size(), mismatch)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"algebraic law suite (exact)", algebraic_laws},
      {"oracle equivalence", oracle_equivalence},
      {"chain rule", chain_rule},
      {"probability suite", probability_suite},
      {"gauge invariance", gauge_invariance},
      {"Stern-Gerlach cascade", stern_gerlach},
      {"spectral suite", spectral_suite},
      {"unitary geometry", unitary_geometry},
      {"parser corpus", parser_corpus},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("criterion {:2}: {} {} ({})\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
