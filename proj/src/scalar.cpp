#include "mqsym/scalar.hpp"

#include <algorithm>
#include <iterator>

namespace mqsym {

void add_phase(PhaseExponents& phase, StateRef state, long exponent) {
  if (exponent == 0) return;
  auto [it, inserted] = phase.try_emplace(state, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) phase.erase(it);
  }
}

Monomial Monomial::conjugate() const {
  Monomial out;
  out.factors.reserve(factors.size());
  for (const auto& f : factors) out.factors.push_back(f.swapped());
  std::sort(out.factors.begin(), out.factors.end());
  for (const auto& [state, n] : phase) out.phase.emplace(state, -n);
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
             std::back_inserter(out.factors));
  out.phase = a.phase;
  for (const auto& [state, n] : b.phase) add_phase(out.phase, state, n);
  return out;
}

ScalarExpr::ScalarExpr(ComplexRational constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, std::move(constant));
}

ScalarExpr ScalarExpr::monomial(Monomial m, ComplexRational coeff) {
  std::sort(m.factors.begin(), m.factors.end());
  ScalarExpr out;
  out.add_term(m, coeff);
  return out;
}

ScalarExpr ScalarExpr::transform(StateRef bra, StateRef ket) {
  if (bra.observable == ket.observable) return ScalarExpr(bra.index == ket.index ? 1 : 0);
  Monomial m;
  m.factors.push_back({bra, ket});
  return monomial(std::move(m));
}

bool ScalarExpr::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second.is_one();
}

std::optional<ComplexRational> ScalarExpr::as_constant() const {
  if (terms_.empty()) return ComplexRational{};
  if (terms_.size() == 1 && terms_.begin()->first.is_unit()) return terms_.begin()->second;
  return std::nullopt;
}

void ScalarExpr::add_term(const Monomial& m, const ComplexRational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ScalarExpr ScalarExpr::conjugate() const {
  ScalarExpr out;
  for (const auto& [m, c] : terms_) out.add_term(m.conjugate(), c.conj());
  return out;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_one()) return a;
  if (a.is_one()) return b;
  ScalarExpr out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

}  // namespace mqsym
