#pragma once

#include <map>
#include <optional>
#include <utility>

#include "mqsym/registry.hpp"
#include "mqsym/scalar.hpp"

namespace mqsym {

/// A single measurement symbol: either the complete measurement I or
/// M(out <- in), which accepts `in` and emits `out`. M(a <- a) is the filter M_a.
///
/// Conjugated words belong to the complex-conjugate algebra, where
/// conj(M(a<-b)) conj(M(c<-d)) = <c|b> conj(M(a<-d)). I is shared by both.
class Word {
 public:
  static Word identity() { return Word(); }
  static Word symbol(StateRef out, StateRef in, bool conjugated = false) {
    return Word(std::pair{out, in}, conjugated);
  }

  bool is_identity() const { return !ends_; }
  bool is_filter() const { return ends_ && ends_->first == ends_->second; }
  bool is_conjugated() const { return conjugated_; }
  StateRef out() const { return ends_->first; }
  StateRef in() const { return ends_->second; }

  /// The same word in the other algebra; I maps to itself.
  Word conjugated() const { return is_identity() ? *this : Word(*ends_, !conjugated_); }
  /// M(in <- out) in the same algebra.
  Word reversed() const { return is_identity() ? *this : Word(std::pair{in(), out()}, conjugated_); }

  /// Identity sorts first, then (out, in), plain before conjugated.
  auto operator<=>(const Word&) const = default;

 private:
  Word() = default;
  Word(std::pair<StateRef, StateRef> ends, bool conjugated) : ends_(ends), conjugated_(conjugated) {}
  std::optional<std::pair<StateRef, StateRef>> ends_;
  bool conjugated_ = false;
};

/// Normal-form element of the measurement algebra: a linear combination of
/// words with ScalarExpr coefficients. Products never survive as words, zero
/// coefficients are never stored, and the empty map is 0.
class AlgebraExpr {
 public:
  using Terms = std::map<Word, ScalarExpr>;

  AlgebraExpr() = default;

  static AlgebraExpr word(const Word& w, ScalarExpr coeff = 1);
  static AlgebraExpr identity(ScalarExpr coeff = 1) { return word(Word::identity(), std::move(coeff)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of `w`, zero when absent.
  ScalarExpr coefficient(const Word& w) const;

  void add_term(const Word& w, const ScalarExpr& coeff);

  AlgebraExpr& operator+=(const AlgebraExpr& other);
  AlgebraExpr& operator-=(const AlgebraExpr& other);
  AlgebraExpr operator-() const;
  friend AlgebraExpr operator+(AlgebraExpr a, const AlgebraExpr& b) { return a += b; }
  friend AlgebraExpr operator-(AlgebraExpr a, const AlgebraExpr& b) { return a -= b; }
  friend AlgebraExpr operator*(const ScalarExpr& s, const AlgebraExpr& x);
  friend bool operator==(const AlgebraExpr& a, const AlgebraExpr& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// M(out <- in) with coefficient 1; both states are validated against the registry.
AlgebraExpr symbol(const Registry& registry, StateRef out, StateRef in);
/// The filter M_a = M(a <- a).
AlgebraExpr filter(const Registry& registry, StateRef a);
/// Sum over the spectrum of `component` slot `slot` of a joint observable with
/// that slot fixed to `index`: the joint realization of one component's filter.
AlgebraExpr marginal_filter(const Registry& registry, ObservableId joint, std::size_t slot, std::size_t index);

/// coeff * x + y
AlgebraExpr combine(const ScalarExpr& coeff, const AlgebraExpr& x, const AlgebraExpr& y);

/// Word product M(a<-b) M(c<-d) = <b|c> M(a<-d), extended bilinearly.
/// Multiplying a plain word by a conjugated one throws TypeError.
AlgebraExpr mul(const AlgebraExpr& x, const AlgebraExpr& y);
ScalarExpr word_product_scalar(const Word& left, const Word& right);
Word word_product(const Word& left, const Word& right);

/// Drops zero terms and re-canonicalizes. Idempotent.
AlgebraExpr normalize(const AlgebraExpr& x);

/// M(a<-b)^dagger = M(b<-a), scalars conjugated.
AlgebraExpr adjoint(const AlgebraExpr& x);
/// Scalars conjugated, words moved to the other algebra with labels unchanged.
AlgebraExpr conjugate(const AlgebraExpr& x);
/// conj(x)^dagger: words reversed and moved to the other algebra, scalars untouched.
AlgebraExpr transpose(const AlgebraExpr& x);

/// Replaces every I by the complete measurement over `via`.
AlgebraExpr expand_identity(const Registry& registry, const AlgebraExpr& x, ObservableId via);

}  // namespace mqsym
