#include "mqsym/dsl.hpp"

namespace mqsym::dsl {
namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Sum:
    case Expr::Kind::Difference: return 1;
    case Expr::Kind::Product:
    case Expr::Kind::Scaled: return 2;
    case Expr::Kind::Negate: return 3;
    case Expr::Kind::Adjoint: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = render(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string state_text(const StateName& s) { return s.observable + ":" + s.label; }

std::string literal_text(const ComplexRational& v) {
  // Parsed literals are a single non-negative real or imaginary number.
  return to_string(v);
}

}  // namespace

std::string render(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Sum: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case K::Difference: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case K::Product:
    case K::Scaled: return wrap(*e.args[0], 2) + " * " + wrap(*e.args[1], 3);
    case K::Negate: return "-" + wrap(*e.args[0], 3);
    case K::Adjoint: return wrap(*e.args[0], 4) + "†";
    case K::Conjugate: return "conj(" + render(*e.args[0]) + ")";
    case K::Transpose: return "transpose(" + render(*e.args[0]) + ")";
    case K::Identity: return "I";
    case K::Filter: return "M[" + state_text(e.out) + "]";
    case K::Symbol: return "M[" + state_text(e.out) + " <- " + state_text(e.in) + "]";
    case K::TF: return "<" + state_text(e.out) + "|" + state_text(e.in) + ">";
    case K::ComplexLiteral: return literal_text(e.literal);
    case K::VarRef: return e.name;
  }
  return "?";
}

std::string render(const Stmt& s) {
  using Q = Stmt::QueryKind;
  switch (s.kind) {
    case Stmt::Kind::ObservableDecl: {
      std::string out = "observable " + s.name + " { ";
      for (std::size_t i = 0; i < s.labels.size(); ++i) {
        if (i) out += ", ";
        out += s.labels[i].label;
        if (s.labels[i].value) out += ": " + to_string(*s.labels[i].value);
      }
      return out + " }";
    }
    case Stmt::Kind::JointDecl: {
      std::string out = "joint " + s.name + " = ";
      for (std::size_t i = 0; i < s.components.size(); ++i) {
        if (i) out += " & ";
        out += s.components[i];
      }
      return out;
    }
    case Stmt::Kind::LetBinding: return "let " + s.name + " = " + render(*s.expr);
    case Stmt::Kind::Query:
      switch (s.query) {
        case Q::Normalize: return "normalize " + render(*s.expr);
        case Q::Trace: return "trace " + render(*s.expr);
        case Q::Verify: return "verify " + render(*s.expr);
        case Q::Prob: return "prob(" + state_text(s.first) + " | " + state_text(s.second) + ")";
        case Q::Expect: return "expect(" + s.name + " | " + state_text(s.second) + ")";
        case Q::Spectrum: return "spectrum " + s.name;
      }
  }
  return "?";
}

std::string render(const Program& program) {
  std::string out;
  for (const auto& s : program) out += render(s) + "\n";
  return out;
}

std::string to_sexpr(const Expr& e) {
  using K = Expr::Kind;
  auto args = [&](const char* head) {
    std::string out = std::string("(") + head;
    for (const auto& a : e.args) out += " " + to_sexpr(*a);
    return out + ")";
  };
  switch (e.kind) {
    case K::Sum: return args("+");
    case K::Difference: return args("-");
    case K::Product: return args("*");
    case K::Scaled: return args("scaled");
    case K::Negate: return args("neg");
    case K::Adjoint: return args("adj");
    case K::Conjugate: return args("conj");
    case K::Transpose: return args("transpose");
    case K::Identity: return "I";
    case K::Filter: return "(M " + state_text(e.out) + ")";
    case K::Symbol: return "(M " + state_text(e.out) + " " + state_text(e.in) + ")";
    case K::TF: return "(tf " + state_text(e.out) + " " + state_text(e.in) + ")";
    case K::ComplexLiteral: return literal_text(e.literal);
    case K::VarRef: return "(var " + e.name + ")";
  }
  return "?";
}

std::string to_sexpr(const Stmt& s) {
  using Q = Stmt::QueryKind;
  switch (s.kind) {
    case Stmt::Kind::ObservableDecl: {
      std::string out = "(observable " + s.name;
      for (const auto& l : s.labels) {
        out += " (" + l.label;
        if (l.value) out += " " + to_string(*l.value);
        out += ")";
      }
      return out + ")";
    }
    case Stmt::Kind::JointDecl: {
      std::string out = "(joint " + s.name;
      for (const auto& c : s.components) out += " " + c;
      return out + ")";
    }
    case Stmt::Kind::LetBinding: return "(let " + s.name + " " + to_sexpr(*s.expr) + ")";
    case Stmt::Kind::Query:
      switch (s.query) {
        case Q::Normalize: return "(normalize " + to_sexpr(*s.expr) + ")";
        case Q::Trace: return "(trace " + to_sexpr(*s.expr) + ")";
        case Q::Verify: return "(verify " + to_sexpr(*s.expr) + ")";
        case Q::Prob: return "(prob " + state_text(s.first) + " " + state_text(s.second) + ")";
        case Q::Expect: return "(expect " + s.name + " " + state_text(s.second) + ")";
        case Q::Spectrum: return "(spectrum " + s.name + ")";
      }
  }
  return "?";
}

std::string to_sexpr(const Program& program) {
  std::string out;
  for (const auto& s : program) out += to_sexpr(s) + "\n";
  return out;
}

bool structurally_equal(const Program& a, const Program& b) { return to_sexpr(a) == to_sexpr(b); }

}  // namespace mqsym::dsl
