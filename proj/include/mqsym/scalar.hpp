#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mqsym/rational.hpp"
#include "mqsym/registry.hpp"

namespace mqsym {

/// The transformation function <bra|ket> between states of two different
/// observables, kept as a symbolic indeterminate.
struct TransformationFunction {
  StateRef bra;
  StateRef ket;
  auto operator<=>(const TransformationFunction&) const = default;

  TransformationFunction swapped() const { return {ket, bra}; }
};

/// Exponents of gauge phases lambda(a) = exp(i*phi[a]); zero entries are never stored.
using PhaseExponents = std::map<StateRef, long>;

/// Commutative product of transformation functions (sorted multiset) times
/// an optional gauge phase exp(i * sum_k n_k * phi[a_k]).
struct Monomial {
  std::vector<TransformationFunction> factors;
  PhaseExponents phase;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool is_unit() const { return factors.empty() && phase.empty(); }
  std::size_t degree() const { return factors.size(); }

  Monomial conjugate() const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
};

/// Adds `exponent` to the phase of `state`, erasing the entry when it cancels.
void add_phase(PhaseExponents& phase, StateRef state, long exponent);

/// Polynomial in transformation functions with exact complex-rational
/// coefficients. Zero coefficients are never stored; the empty polynomial is 0.
class ScalarExpr {
 public:
  using Terms = std::map<Monomial, ComplexRational>;

  ScalarExpr() = default;
  ScalarExpr(ComplexRational constant);  // NOLINT(google-explicit-constructor)
  ScalarExpr(int constant) : ScalarExpr(ComplexRational(constant)) {}  // NOLINT(google-explicit-constructor)

  static ScalarExpr monomial(Monomial m, ComplexRational coeff = 1);

  /// <bra|ket>, reduced to the Kronecker delta when both states belong to the
  /// same observable.
  static ScalarExpr transform(StateRef bra, StateRef ket);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// The value when the polynomial has no indeterminates and no phase.
  std::optional<ComplexRational> as_constant() const;

  /// Swaps bra and ket in every factor, conjugates coefficients, negates phases.
  ScalarExpr conjugate() const;

  ScalarExpr& operator+=(const ScalarExpr& other);
  ScalarExpr& operator-=(const ScalarExpr& other);
  ScalarExpr operator-() const;
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const ComplexRational& coeff);

 private:
  Terms terms_;
};

}  // namespace mqsym
