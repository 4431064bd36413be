#include "mqsym/tree.hpp"

#include <algorithm>

#include "mqsym/error.hpp"

namespace mqsym {

Tree::Tree(Kind kind, std::vector<Tree> args) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->args = std::move(args);
  node_ = std::move(node);
}

Tree Tree::literal(ComplexRational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Literal;
  node->literal = std::move(value);
  return Tree(std::shared_ptr<const Node>(std::move(node)));
}

Tree Tree::transform(StateRef bra, StateRef ket) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Transform;
  node->out = bra;
  node->in = ket;
  return Tree(std::shared_ptr<const Node>(std::move(node)));
}

Tree Tree::symbol(StateRef out, StateRef in) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symbol;
  node->out = out;
  node->in = in;
  return Tree(std::shared_ptr<const Node>(std::move(node)));
}

Tree Tree::identity() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Identity;
  return Tree(std::shared_ptr<const Node>(std::move(node)));
}

std::size_t Tree::depth() const {
  std::size_t d = 0;
  for (const auto& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

std::size_t Tree::node_count() const {
  std::size_t n = 1;
  for (const auto& a : args()) n += a.node_count();
  return n;
}

bool Tree::any_of(const std::function<bool(const Tree&)>& pred) const {
  if (pred(*this)) return true;
  return std::any_of(args().begin(), args().end(), [&](const Tree& a) { return a.any_of(pred); });
}

std::vector<StateRef> Tree::states() const {
  std::vector<StateRef> out;
  any_of([&](const Tree& t) {
    if (t.kind() == Kind::Symbol || t.kind() == Kind::Transform) {
      out.push_back(t.out());
      out.push_back(t.in());
    }
    return false;
  });
  return out;
}

// ------------------------------------------------------------------ Value

bool is_scalar(const Value& v) { return std::holds_alternative<ScalarExpr>(v); }

AlgebraExpr to_algebra(const Value& v) {
  if (const auto* s = std::get_if<ScalarExpr>(&v)) return AlgebraExpr::identity(*s);
  return std::get<AlgebraExpr>(v);
}

Value add(const Value& a, const Value& b) {
  if (is_scalar(a) && is_scalar(b)) return std::get<ScalarExpr>(a) + std::get<ScalarExpr>(b);
  return to_algebra(a) + to_algebra(b);
}

Value subtract(const Value& a, const Value& b) {
  if (is_scalar(a) && is_scalar(b)) return std::get<ScalarExpr>(a) - std::get<ScalarExpr>(b);
  return to_algebra(a) - to_algebra(b);
}

Value multiply(const Value& a, const Value& b) {
  const auto* sa = std::get_if<ScalarExpr>(&a);
  const auto* sb = std::get_if<ScalarExpr>(&b);
  if (sa && sb) return *sa * *sb;
  if (sa) return *sa * std::get<AlgebraExpr>(b);
  if (sb) return *sb * std::get<AlgebraExpr>(a);
  return mul(std::get<AlgebraExpr>(a), std::get<AlgebraExpr>(b));
}

Value negate(const Value& a) {
  return std::visit([](const auto& x) -> Value { return -x; }, a);
}

Value adjoint(const Value& a) {
  if (const auto* s = std::get_if<ScalarExpr>(&a)) return s->conjugate();
  return adjoint(std::get<AlgebraExpr>(a));
}

Value conjugate(const Value& a) {
  if (const auto* s = std::get_if<ScalarExpr>(&a)) return s->conjugate();
  return conjugate(std::get<AlgebraExpr>(a));
}

Value transpose(const Value& a) {
  if (is_scalar(a)) return a;
  return transpose(std::get<AlgebraExpr>(a));
}

Value evaluate(const Registry& registry, const Tree& tree) {
  using K = Tree::Kind;
  switch (tree.kind()) {
    case K::Sum: return add(evaluate(registry, tree.arg(0)), evaluate(registry, tree.arg(1)));
    case K::Difference: return subtract(evaluate(registry, tree.arg(0)), evaluate(registry, tree.arg(1)));
    case K::Product: return multiply(evaluate(registry, tree.arg(0)), evaluate(registry, tree.arg(1)));
    case K::Negate: return negate(evaluate(registry, tree.arg(0)));
    case K::Adjoint: return adjoint(evaluate(registry, tree.arg(0)));
    case K::Conjugate: return conjugate(evaluate(registry, tree.arg(0)));
    case K::Transpose: return transpose(evaluate(registry, tree.arg(0)));
    case K::Literal: return ScalarExpr(tree.value());
    case K::Transform:
      registry.validate(tree.out());
      registry.validate(tree.in());
      return ScalarExpr::transform(tree.out(), tree.in());
    case K::Symbol: return symbol(registry, tree.out(), tree.in());
    case K::Identity: return AlgebraExpr::identity();
  }
  throw Error(ErrorCode::TypeError, "unknown tree node");
}

Tree expand_identity(const Registry& registry, const Tree& tree, ObservableId via) {
  using K = Tree::Kind;
  if (tree.kind() == K::Identity) {
    auto states = registry.states(via);
    Tree acc = Tree::filter(states.front());
    for (std::size_t k = 1; k < states.size(); ++k) acc = Tree::sum(acc, Tree::filter(states[k]));
    return acc;
  }
  auto rec = [&](std::size_t i) { return expand_identity(registry, tree.arg(i), via); };
  switch (tree.kind()) {
    case K::Sum: return Tree::sum(rec(0), rec(1));
    case K::Difference: return Tree::difference(rec(0), rec(1));
    case K::Product: return Tree::product(rec(0), rec(1));
    case K::Negate: return Tree::negate(rec(0));
    case K::Adjoint: return Tree::adjoint(rec(0));
    case K::Conjugate: return Tree::conjugate(rec(0));
    case K::Transpose: return Tree::transpose(rec(0));
    default: return tree;
  }
}

}  // namespace mqsym
