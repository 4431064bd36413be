#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mqsym/algebra.hpp"
#include "mqsym/error.hpp"
#include "mqsym/realization.hpp"
#include "mqsym/registry.hpp"

namespace mqsym::testing {

/// Z {up: 1, down: -1} and X {plus: 1, minus: -1}.
inline Registry spin_registry() {
  RegistryBuilder b;
  b.define_observable("Z", {"up", "down"}, std::vector<Rational>{1, -1});
  b.define_observable("X", {"plus", "minus"}, std::vector<Rational>{1, -1});
  return b.freeze();
}

/// Z is the standard basis, X the Hadamard basis.
inline Realization spin_realization(const Registry& reg) {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2);
  x << h, h, h, -h;
  return Realization(reg, 2, kDefaultTolerance, {{reg.id_of("Z"), z}, {reg.id_of("X"), x}});
}

inline const char* spin_basis_json() {
  return R"({
  "dimension": 2,
  "tolerance": 1e-10,
  "observables": {
    "Z": {"labels": ["up", "down"], "values": [1, -1],
          "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
    "X": {"labels": ["plus", "minus"], "values": [1, -1],
          "matrix": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
                     [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]}
  }
})";
}

/// Observables O0, O1, ... with the given label counts; labels s0, s1, ...; values 0, 1, ...
inline Registry shaped_registry(const std::vector<std::size_t>& shape) {
  RegistryBuilder b;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    std::vector<std::string> labels;
    std::vector<Rational> values;
    for (std::size_t j = 0; j < shape[k]; ++j) {
      labels.push_back("s" + std::to_string(j));
      values.emplace_back(static_cast<long>(j));
    }
    b.define_observable("O" + std::to_string(k), labels, values);
  }
  return b.freeze();
}

inline std::vector<StateRef> all_states(const Registry& reg) {
  std::vector<StateRef> out;
  for (const auto& def : reg.observables())
    for (auto s : reg.states(def.id)) out.push_back(s);
  return out;
}

inline ComplexRational small_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

/// A scalar that mixes constants with one or two transformation functions.
inline ScalarExpr random_scalar(const std::vector<StateRef>& states, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
  std::uniform_int_distribution<int> shape(0, 2);
  ScalarExpr s = small_coefficient(rng);
  for (int k = shape(rng); k > 0; --k) s = s * ScalarExpr::transform(states[pick(rng)], states[pick(rng)]);
  return s + ScalarExpr(small_coefficient(rng));
}

inline AlgebraExpr random_expr(const std::vector<StateRef>& states, std::mt19937_64& rng, std::size_t max_terms = 3) {
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1), count(1, max_terms);
  std::bernoulli_distribution identity(0.15);
  AlgebraExpr x;
  for (std::size_t n = count(rng); n > 0; --n) {
    Word w = identity(rng) ? Word::identity() : Word::symbol(states[pick(rng)], states[pick(rng)]);
    x.add_term(w, random_scalar(states, rng));
  }
  return x;
}

}  // namespace mqsym::testing
