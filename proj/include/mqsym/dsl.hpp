#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqsym/error.hpp"
#include "mqsym/realization.hpp"
#include "mqsym/tree.hpp"

// Measurement-algebra script language.
//
//   program   := stmt* ;
//   stmt      := obsdecl | jointdecl | letbind | query ;
//   obsdecl   := "observable" IDENT "{" labelent ("," labelent)* "}" ;
//   labelent  := IDENT (":" ["-"] number)? ;
//   jointdecl := "joint" IDENT "=" IDENT ("&" IDENT)+ ;
//   letbind   := "let" IDENT "=" expr ;
//   query     := ("normalize"|"trace"|"verify") expr
//              | "prob" "(" state "|" state ")"
//              | "expect" "(" IDENT "|" state ")"
//              | "spectrum" IDENT ;
//   expr      := term (("+"|"-") term)* ;
//   term      := unary ("*" unary)* ;
//   unary     := "-" unary | postfix ;
//   postfix   := atom ("†" | "^+")* ;
//   atom      := "I" | "M[" state ("<-" state)? "]" | "<" state "|" state ">"
//              | number | IDENT | "(" expr ")"
//              | ("conj"|"transpose") "(" expr ")" ;
//   state     := IDENT ":" IDENT ("." IDENT)* ;
//   number    := digits ("." digits)? ("/" digits)? "i"? ;
//
// `#` starts a comment that runs to the end of the line. Columns count bytes.

namespace mqsym::dsl {

struct StateName {
  std::string observable;
  std::string label;
  Span span;
  Span observable_span;
  Span label_span;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Sum,
    Difference,
    Product,
    /// Literal on the left of `*`.
    Scaled,
    Negate,
    Symbol,
    Filter,
    Identity,
    Adjoint,
    Transpose,
    Conjugate,
    TF,
    ComplexLiteral,
    VarRef,
  };

  Kind kind = Kind::Identity;
  Span span;
  std::vector<ExprPtr> args;
  /// Symbol: output and input. Filter: `out`. TF: bra and ket.
  StateName out;
  StateName in;
  ComplexRational literal;
  std::string name;
};

struct LabelEntry {
  std::string label;
  std::optional<Rational> value;
  Span span;
};

struct Stmt {
  enum class Kind { ObservableDecl, JointDecl, LetBinding, Query };
  enum class QueryKind { Normalize, Trace, Verify, Prob, Expect, Spectrum };

  Kind kind = Kind::Query;
  QueryKind query = QueryKind::Normalize;
  Span span;
  /// Declared observable, joint or variable; observable of expect/spectrum.
  std::string name;
  Span name_span;
  std::vector<LabelEntry> labels;
  std::vector<std::string> components;
  std::vector<Span> component_spans;
  /// let, normalize, trace, verify
  ExprPtr expr;
  /// prob(first | second), expect(name | second)
  StateName first;
  StateName second;
};

using Program = std::vector<Stmt>;

/// Syntax only. Throws Error(SyntaxError) with the span of the offending token
/// and the expected token set in the message.
Program parse_syntax(std::string_view source);

struct ParseOptions {
  /// Observables known before the script starts (from a basis file).
  std::vector<BasisDeclaration> predeclared;
  /// Undeclared `Obs:label` references declare Obs and its labels on first use.
  bool implicit_observables = false;
};

/// Registry implied by a program plus name-resolution checks.
/// Throws UnboundVariable, UnknownObservable, UnknownLabel, DuplicateName,
/// DuplicateLabel, ValueCountMismatch, UnknownComponent, DuplicateComponent,
/// always with a span.
Registry analyze(const Program& program, const ParseOptions& options = {});

/// parse_syntax followed by analyze.
Program parse(std::string_view source, const ParseOptions& options = {});

/// Source text with minimal parentheses; parse(render(p)) is structurally p.
std::string render(const Program& program);
std::string render(const Stmt& stmt);
std::string render(const Expr& expr);

/// S-expression dump used for golden trees and structural comparison; spans are omitted.
std::string to_sexpr(const Program& program);
std::string to_sexpr(const Stmt& stmt);
std::string to_sexpr(const Expr& expr);

bool structurally_equal(const Program& a, const Program& b);

/// Variable bindings of a running script: name -> unreduced tree.
using Environment = std::map<std::string, Tree, std::less<>>;

StateRef resolve(const Registry& registry, const StateName& state);
/// Replaces variables by their bound trees and names by registry references.
Tree lower(const Expr& expr, const Registry& registry, const Environment& env);

}  // namespace mqsym::dsl
