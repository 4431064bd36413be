#include "mqsym/algebra.hpp"

#include "mqsym/error.hpp"

namespace mqsym {

AlgebraExpr AlgebraExpr::word(const Word& w, ScalarExpr coeff) {
  AlgebraExpr out;
  out.add_term(w, coeff);
  return out;
}

ScalarExpr AlgebraExpr::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? ScalarExpr{} : it->second;
}

void AlgebraExpr::add_term(const Word& w, const ScalarExpr& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraExpr& AlgebraExpr::operator+=(const AlgebraExpr& other) {
  for (const auto& [w, s] : other.terms_) add_term(w, s);
  return *this;
}

AlgebraExpr& AlgebraExpr::operator-=(const AlgebraExpr& other) {
  for (const auto& [w, s] : other.terms_) add_term(w, -s);
  return *this;
}

AlgebraExpr AlgebraExpr::operator-() const {
  AlgebraExpr out;
  for (const auto& [w, s] : terms_) out.terms_.emplace(w, -s);
  return out;
}

AlgebraExpr operator*(const ScalarExpr& s, const AlgebraExpr& x) {
  AlgebraExpr out;
  if (s.is_zero()) return out;
  for (const auto& [w, c] : x.terms_) out.add_term(w, s * c);
  return out;
}

AlgebraExpr symbol(const Registry& registry, StateRef out, StateRef in) {
  registry.validate(out);
  registry.validate(in);
  return AlgebraExpr::word(Word::symbol(out, in));
}

AlgebraExpr filter(const Registry& registry, StateRef a) { return symbol(registry, a, a); }

AlgebraExpr marginal_filter(const Registry& registry, ObservableId joint, std::size_t slot, std::size_t index) {
  const auto& def = registry.observable(joint);
  if (!def.is_joint() || slot >= def.components.size())
    throw Error(ErrorCode::IndexOutOfRange, "'" + def.name + "' has no component slot " + std::to_string(slot));
  AlgebraExpr out;
  for (auto s : registry.states(joint))
    if (registry.component_indices(s)[slot] == index) out.add_term(Word::symbol(s, s), 1);
  if (out.is_zero()) throw Error(ErrorCode::IndexOutOfRange, "component index out of range");
  return out;
}

AlgebraExpr combine(const ScalarExpr& coeff, const AlgebraExpr& x, const AlgebraExpr& y) {
  return coeff * x + y;
}

ScalarExpr word_product_scalar(const Word& left, const Word& right) {
  if (left.is_identity() || right.is_identity()) return 1;
  if (left.is_conjugated() != right.is_conjugated())
    throw Error(ErrorCode::TypeError, "cannot multiply an element of the algebra by one of its conjugate");
  if (left.is_conjugated()) return ScalarExpr::transform(right.out(), left.in());
  return ScalarExpr::transform(left.in(), right.out());
}

Word word_product(const Word& left, const Word& right) {
  if (left.is_identity()) return right;
  if (right.is_identity()) return left;
  return Word::symbol(left.out(), right.in(), left.is_conjugated());
}

AlgebraExpr mul(const AlgebraExpr& x, const AlgebraExpr& y) {
  AlgebraExpr out;
  for (const auto& [wx, sx] : x.terms())
    for (const auto& [wy, sy] : y.terms()) {
      ScalarExpr link = word_product_scalar(wx, wy);
      if (link.is_zero()) continue;
      out.add_term(word_product(wx, wy), sx * link * sy);
    }
  return out;
}

AlgebraExpr normalize(const AlgebraExpr& x) {
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) {
    ScalarExpr clean;
    for (const auto& [m, c] : s.terms()) clean.add_term(m, c);
    out.add_term(w, clean);
  }
  return out;
}

AlgebraExpr adjoint(const AlgebraExpr& x) {
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) out.add_term(w.reversed(), s.conjugate());
  return out;
}

AlgebraExpr conjugate(const AlgebraExpr& x) {
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) out.add_term(w.conjugated(), s.conjugate());
  return out;
}

AlgebraExpr transpose(const AlgebraExpr& x) {
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) out.add_term(w.reversed().conjugated(), s);
  return out;
}

AlgebraExpr expand_identity(const Registry& registry, const AlgebraExpr& x, ObservableId via) {
  const auto states = registry.states(via);
  AlgebraExpr out;
  for (const auto& [w, s] : x.terms()) {
    if (!w.is_identity()) {
      out.add_term(w, s);
      continue;
    }
    for (auto c : states) out.add_term(Word::symbol(c, c), s);
  }
  return out;
}

}  // namespace mqsym
