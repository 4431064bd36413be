#pragma once

#include <string>

#include "mqsym/tree.hpp"

namespace mqsym {

// Canonical text forms. Everything except gauge phases parses back through
// the DSL to the same normal form:
//   state      A:a
//   transform  <A:a|B:b>
//   words      I, M[A:a], M[A:a<-B:b]
//   phase      exp(i*(φ[A:a]-φ[B:b]))
//   terms      joined by " + " / " - ", coefficient factors joined by "*".

std::string render(const Registry& registry, StateRef state);
std::string render(const Registry& registry, const TransformationFunction& tf);
std::string render(const Registry& registry, const Word& word);
std::string render(const Registry& registry, const ScalarExpr& scalar);
std::string render(const Registry& registry, const AlgebraExpr& expr);
std::string render(const Registry& registry, const Value& value);
/// Fully parenthesized DSL text of an unreduced tree.
std::string render(const Registry& registry, const Tree& tree);

}  // namespace mqsym
