#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "mqsym/algebra.hpp"

namespace mqsym {

/// Unreduced expression over measurement symbols, transformation functions
/// and complex literals. Evaluating a tree gives the normal form; the
/// realization module evaluates the same tree directly with matrices.
class Tree {
 public:
  enum class Kind {
    Sum,
    Difference,
    Product,
    Negate,
    Literal,
    Transform,
    Symbol,
    Identity,
    Adjoint,
    Conjugate,
    Transpose,
  };

  static Tree sum(Tree a, Tree b) { return Tree(Kind::Sum, {std::move(a), std::move(b)}); }
  static Tree difference(Tree a, Tree b) { return Tree(Kind::Difference, {std::move(a), std::move(b)}); }
  static Tree product(Tree a, Tree b) { return Tree(Kind::Product, {std::move(a), std::move(b)}); }
  static Tree negate(Tree a) { return Tree(Kind::Negate, {std::move(a)}); }
  static Tree adjoint(Tree a) { return Tree(Kind::Adjoint, {std::move(a)}); }
  static Tree conjugate(Tree a) { return Tree(Kind::Conjugate, {std::move(a)}); }
  static Tree transpose(Tree a) { return Tree(Kind::Transpose, {std::move(a)}); }
  static Tree literal(ComplexRational value);
  static Tree transform(StateRef bra, StateRef ket);
  static Tree symbol(StateRef out, StateRef in);
  static Tree filter(StateRef a) { return symbol(a, a); }
  static Tree identity();

  Kind kind() const { return node_->kind; }
  const std::vector<Tree>& args() const { return node_->args; }
  const Tree& arg(std::size_t i) const { return node_->args.at(i); }
  /// Output state of a Symbol, bra of a Transform.
  StateRef out() const { return node_->out; }
  /// Input state of a Symbol, ket of a Transform.
  StateRef in() const { return node_->in; }
  const ComplexRational& value() const { return node_->literal; }

  std::size_t depth() const;
  std::size_t node_count() const;
  /// True when some node satisfies `pred`.
  bool any_of(const std::function<bool(const Tree&)>& pred) const;
  /// Every state referenced by Symbol and Transform nodes.
  std::vector<StateRef> states() const;

 private:
  struct Node {
    Kind kind = Kind::Identity;
    StateRef out{};
    StateRef in{};
    ComplexRational literal;
    std::vector<Tree> args;
  };
  Tree(Kind kind, std::vector<Tree> args);
  explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Result of evaluating a tree: a pure scalar or an algebra element.
/// A scalar s in a sum with algebra elements stands for s * I.
using Value = std::variant<ScalarExpr, AlgebraExpr>;

bool is_scalar(const Value& v);
/// Scalars become s * I.
AlgebraExpr to_algebra(const Value& v);

Value add(const Value& a, const Value& b);
Value subtract(const Value& a, const Value& b);
Value multiply(const Value& a, const Value& b);
Value negate(const Value& a);
Value adjoint(const Value& a);
Value conjugate(const Value& a);
Value transpose(const Value& a);

/// Normal form of `tree`, with every referenced state validated.
Value evaluate(const Registry& registry, const Tree& tree);

/// Replaces every Identity node by the sum of filters over `via`, without reducing.
Tree expand_identity(const Registry& registry, const Tree& tree, ObservableId via);

}  // namespace mqsym
