#include "mqsym/render.hpp"

#include <cstdlib>

namespace mqsym {
namespace {

bool is_negative(const ComplexRational& c) {
  if (c.is_real()) return sgn(c.re) < 0;
  return sgn(c.re) == 0 && sgn(c.im) < 0;
}

std::string render_phase(const Registry& registry, const PhaseExponents& phase) {
  std::string out = "exp(i*(";
  bool first = true;
  for (const auto& [state, n] : phase) {
    if (n < 0)
      out += "-";
    else if (!first)
      out += "+";
    if (std::labs(n) != 1) out += std::to_string(std::labs(n)) + "*";
    out += "φ[" + render(registry, state) + "]";
    first = false;
  }
  return out + "))";
}

// Unsigned body of a single term `magnitude * monomial`.
std::string render_monomial(const Registry& registry, const Monomial& m, const ComplexRational& magnitude) {
  if (m.is_unit()) return to_string(magnitude);
  std::string out;
  auto append = [&](const std::string& part) {
    if (!out.empty()) out += "*";
    out += part;
  };
  if (!magnitude.is_one()) append(to_string(magnitude));
  for (const auto& f : m.factors) append(render(registry, f));
  if (!m.phase.empty()) append(render_phase(registry, m.phase));
  return out;
}

struct SignedTerm {
  bool negative = false;
  std::string body;
};

void join(std::string& out, const SignedTerm& term) {
  if (out.empty()) {
    out = term.negative ? "-" + term.body : term.body;
  } else {
    out += term.negative ? " - " : " + ";
    out += term.body;
  }
}

}  // namespace

std::string render(const Registry& registry, StateRef state) { return registry.state_name(state); }

std::string render(const Registry& registry, const TransformationFunction& tf) {
  return "<" + render(registry, tf.bra) + "|" + render(registry, tf.ket) + ">";
}

std::string render(const Registry& registry, const Word& word) {
  if (word.is_identity()) return "I";
  if (word.is_conjugated()) return "conj(" + render(registry, word.conjugated()) + ")";
  if (word.is_filter()) return "M[" + render(registry, word.out()) + "]";
  return "M[" + render(registry, word.out()) + "<-" + render(registry, word.in()) + "]";
}

std::string render(const Registry& registry, const ScalarExpr& scalar) {
  if (scalar.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : scalar.terms()) {
    bool neg = is_negative(c);
    join(out, {neg, render_monomial(registry, m, neg ? -c : c)});
  }
  return out;
}

std::string render(const Registry& registry, const AlgebraExpr& expr) {
  if (expr.is_zero()) return "0";
  std::string out;
  for (const auto& [w, s] : expr.terms()) {
    const std::string word = render(registry, w);
    if (s.terms().size() == 1) {
      const auto& [m, c] = *s.terms().begin();
      bool neg = is_negative(c);
      std::string coeff = render_monomial(registry, m, neg ? -c : c);
      join(out, {neg, coeff == "1" ? word : coeff + "*" + word});
    } else {
      join(out, {false, "(" + render(registry, s) + ")*" + word});
    }
  }
  return out;
}

std::string render(const Registry& registry, const Value& value) {
  return std::visit([&](const auto& v) { return render(registry, v); }, value);
}

std::string render(const Registry& registry, const Tree& tree) {
  using K = Tree::Kind;
  auto sub = [&](std::size_t i) { return render(registry, tree.arg(i)); };
  switch (tree.kind()) {
    case K::Sum: return "(" + sub(0) + " + " + sub(1) + ")";
    case K::Difference: return "(" + sub(0) + " - " + sub(1) + ")";
    case K::Product: return "(" + sub(0) + " * " + sub(1) + ")";
    case K::Negate: return "(-" + sub(0) + ")";
    case K::Adjoint: return sub(0) + "†";
    case K::Conjugate: return "conj(" + sub(0) + ")";
    case K::Transpose: return "transpose(" + sub(0) + ")";
    case K::Literal: {
      const auto& v = tree.value();
      return is_negative(v) ? "(-" + to_string(ComplexRational(-v)) + ")" : to_string(v);
    }
    case K::Transform: return render(registry, TransformationFunction{tree.out(), tree.in()});
    case K::Symbol: return render(registry, Word::symbol(tree.out(), tree.in()));
    case K::Identity: return "I";
  }
  return "?";
}

}  // namespace mqsym
