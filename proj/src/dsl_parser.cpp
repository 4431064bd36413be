#include <cctype>
#include <set>

#include "mqsym/dsl.hpp"

namespace mqsym::dsl {
namespace {

enum class Tok {
  Ident,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Equals,
  Amp,
  Pipe,
  Less,
  Greater,
  Arrow,
  Star,
  Plus,
  Minus,
  Dagger,
  Dot,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
  bool imaginary = false;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::Arrow: return "'<-'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Dagger: return "'†'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) return out;
    }
  }

 private:
  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && pos_ < src_.size(); ++k) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  Token make(Tok kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(pos_, len)), {line_, col_, len}};
    advance(len);
    return t;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t len) {
    throw Error(ErrorCode::SyntaxError, what, Span{line_, col_, len});
  }

  Token next() {
    if (pos_ >= src_.size()) return Token{Tok::End, "", {line_, col_, 0}};
    char c = src_[pos_];
    auto peek = [&](std::size_t k) { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; };

    if (ident_start(c)) {
      std::size_t len = 1;
      while (ident_char(peek(len))) ++len;
      return make(Tok::Ident, len);
    }
    if (digit(c)) return number();
    if (src_.substr(pos_, 3) == "†") return make(Tok::Dagger, 3);
    switch (c) {
      case '{': return make(Tok::LBrace, 1);
      case '}': return make(Tok::RBrace, 1);
      case '(': return make(Tok::LParen, 1);
      case ')': return make(Tok::RParen, 1);
      case '[': return make(Tok::LBracket, 1);
      case ']': return make(Tok::RBracket, 1);
      case ',': return make(Tok::Comma, 1);
      case ':': return make(Tok::Colon, 1);
      case '=': return make(Tok::Equals, 1);
      case '&': return make(Tok::Amp, 1);
      case '|': return make(Tok::Pipe, 1);
      case '>': return make(Tok::Greater, 1);
      case '*': return make(Tok::Star, 1);
      case '+': return make(Tok::Plus, 1);
      case '-': return make(Tok::Minus, 1);
      case '.': return make(Tok::Dot, 1);
      case '<': return peek(1) == '-' ? make(Tok::Arrow, 2) : make(Tok::Less, 1);
      case '^':
        if (peek(1) == '+') return make(Tok::Dagger, 2);
        fail("expected '^+'", 1);
      default: break;
    }
    fail(std::string("unexpected character '") + c + "'", 1);
  }

  Token number() {
    std::size_t len = 0;
    auto peek = [&](std::size_t k) { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; };
    while (digit(peek(len))) ++len;
    bool dotted = false;
    if (peek(len) == '.' && digit(peek(len + 1))) {
      dotted = true;
      ++len;
      while (digit(peek(len))) ++len;
    }
    if (!dotted && peek(len) == '/' && digit(peek(len + 1))) {
      ++len;
      while (digit(peek(len))) ++len;
    }
    bool imaginary = peek(len) == 'i' && !ident_char(peek(len + 1));
    std::size_t total = len + (imaginary ? 1 : 0);
    Token t{Tok::Number, std::string(src_.substr(pos_, len)), {line_, col_, total}, imaginary};
    advance(total);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string, std::less<>>& reserved_words() {
  static const std::set<std::string, std::less<>> words = {
      "observable", "joint", "let", "normalize", "trace", "verify", "prob",
      "expect", "spectrum", "I", "M", "conj", "transpose",
  };
  return words;
}

Span cover(const Span& a, const Span& b) {
  Span s = a;
  if (b.line == a.line && b.column + b.length >= a.column) s.length = b.column + b.length - a.column;
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program out;
    while (peek().kind != Tok::End) out.push_back(statement());
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& prev() const { return toks_[pos_ - 1]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string msg = "expected ";
    if (expected.size() > 1) msg += "one of ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    const Token& t = peek();
    msg += t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'";
    throw Error(ErrorCode::SyntaxError, msg, t.span);
  }

  Token expect(Tok kind) {
    if (!at(kind)) fail({describe(kind)});
    return take();
  }

  Token expect_name(const char* what) {
    if (!at(Tok::Ident)) fail({what});
    if (reserved_words().contains(peek().text))
      throw Error(ErrorCode::SyntaxError, "'" + peek().text + "' is a reserved word", peek().span);
    return take();
  }

  Stmt statement() {
    const Token& head = peek();
    if (head.kind == Tok::Ident) {
      const std::string& w = head.text;
      if (w == "observable") return observable_decl();
      if (w == "joint") return joint_decl();
      if (w == "let") return let_binding();
      if (w == "normalize") return expr_query(Stmt::QueryKind::Normalize);
      if (w == "trace") return expr_query(Stmt::QueryKind::Trace);
      if (w == "verify") return expr_query(Stmt::QueryKind::Verify);
      if (w == "prob") return prob_query();
      if (w == "expect") return expect_query();
      if (w == "spectrum") return spectrum_query();
    }
    fail({"'observable'", "'joint'", "'let'", "'normalize'", "'trace'", "'verify'", "'prob'", "'expect'",
          "'spectrum'"});
  }

  Stmt begin(Stmt::Kind kind) {
    Stmt s;
    s.kind = kind;
    s.span = take().span;
    return s;
  }

  void finish(Stmt& s) const { s.span = cover(s.span, prev().span); }

  Stmt observable_decl() {
    Stmt s = begin(Stmt::Kind::ObservableDecl);
    Token name = expect_name("observable name");
    s.name = name.text;
    s.name_span = name.span;
    expect(Tok::LBrace);
    for (;;) {
      Token label = expect(Tok::Ident);
      LabelEntry e{label.text, std::nullopt, label.span};
      if (at(Tok::Colon)) {
        take();
        bool negative = false;
        if (at(Tok::Minus)) {
          take();
          negative = true;
        }
        Token num = expect(Tok::Number);
        if (num.imaginary) throw Error(ErrorCode::SyntaxError, "eigenvalues must be real", num.span);
        Rational v = parse_rational(num.text);
        e.value = negative ? Rational(-v) : v;
      }
      s.labels.push_back(std::move(e));
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      if (at(Tok::RBrace)) break;
      fail({"','", "'}'"});
    }
    take();
    finish(s);
    return s;
  }

  Stmt joint_decl() {
    Stmt s = begin(Stmt::Kind::JointDecl);
    Token name = expect_name("joint observable name");
    s.name = name.text;
    s.name_span = name.span;
    expect(Tok::Equals);
    Token first = expect(Tok::Ident);
    s.components.push_back(first.text);
    s.component_spans.push_back(first.span);
    if (!at(Tok::Amp)) fail({"'&'"});
    while (at(Tok::Amp)) {
      take();
      Token c = expect(Tok::Ident);
      s.components.push_back(c.text);
      s.component_spans.push_back(c.span);
    }
    finish(s);
    return s;
  }

  Stmt let_binding() {
    Stmt s = begin(Stmt::Kind::LetBinding);
    Token name = expect_name("variable name");
    s.name = name.text;
    s.name_span = name.span;
    expect(Tok::Equals);
    s.expr = expr();
    finish(s);
    return s;
  }

  Stmt expr_query(Stmt::QueryKind q) {
    Stmt s = begin(Stmt::Kind::Query);
    s.query = q;
    s.expr = expr();
    finish(s);
    return s;
  }

  Stmt prob_query() {
    Stmt s = begin(Stmt::Kind::Query);
    s.query = Stmt::QueryKind::Prob;
    expect(Tok::LParen);
    s.first = state();
    expect(Tok::Pipe);
    s.second = state();
    expect(Tok::RParen);
    finish(s);
    return s;
  }

  Stmt expect_query() {
    Stmt s = begin(Stmt::Kind::Query);
    s.query = Stmt::QueryKind::Expect;
    expect(Tok::LParen);
    Token obs = expect(Tok::Ident);
    s.name = obs.text;
    s.name_span = obs.span;
    expect(Tok::Pipe);
    s.second = state();
    expect(Tok::RParen);
    finish(s);
    return s;
  }

  Stmt spectrum_query() {
    Stmt s = begin(Stmt::Kind::Query);
    s.query = Stmt::QueryKind::Spectrum;
    Token obs = expect(Tok::Ident);
    s.name = obs.text;
    s.name_span = obs.span;
    finish(s);
    return s;
  }

  StateName state() {
    StateName st;
    Token obs = expect(Tok::Ident);
    st.observable = obs.text;
    st.observable_span = obs.span;
    expect(Tok::Colon);
    Token label = expect(Tok::Ident);
    st.label = label.text;
    st.label_span = label.span;
    while (at(Tok::Dot)) {
      take();
      Token part = expect(Tok::Ident);
      st.label += kJointLabelSeparator + part.text;
      st.label_span = cover(st.label_span, part.span);
    }
    st.span = cover(obs.span, st.label_span);
    return st;
  }

  static ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  static ExprPtr binary(Expr::Kind kind, ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = kind;
    e.span = cover(l->span, r->span);
    e.args = {std::move(l), std::move(r)};
    return node(std::move(e));
  }

  ExprPtr expr() {
    ExprPtr acc = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      auto kind = take().kind == Tok::Plus ? Expr::Kind::Sum : Expr::Kind::Difference;
      acc = binary(kind, acc, term());
    }
    return acc;
  }

  ExprPtr term() {
    ExprPtr acc = unary();
    while (at(Tok::Star)) {
      take();
      auto kind = acc->kind == Expr::Kind::ComplexLiteral ? Expr::Kind::Scaled : Expr::Kind::Product;
      acc = binary(kind, acc, unary());
    }
    return acc;
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      Span start = take().span;
      ExprPtr inner = unary();
      Expr e;
      e.kind = Expr::Kind::Negate;
      e.span = cover(start, inner->span);
      e.args = {inner};
      return node(std::move(e));
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr acc = atom();
    while (at(Tok::Dagger)) {
      Span end = take().span;
      Expr e;
      e.kind = Expr::Kind::Adjoint;
      e.span = cover(acc->span, end);
      e.args = {acc};
      acc = node(std::move(e));
    }
    return acc;
  }

  ExprPtr atom() {
    const Token& t = peek();
    Expr e;
    e.span = t.span;
    switch (t.kind) {
      case Tok::Number: {
        Token num = take();
        Rational v = parse_rational(num.text);
        e.kind = Expr::Kind::ComplexLiteral;
        e.literal = num.imaginary ? ComplexRational(Rational(0), v) : ComplexRational(v);
        return node(std::move(e));
      }
      case Tok::Less: {
        take();
        e.kind = Expr::Kind::TF;
        e.out = state();
        expect(Tok::Pipe);
        e.in = state();
        e.span = cover(e.span, expect(Tok::Greater).span);
        return node(std::move(e));
      }
      case Tok::LParen: {
        take();
        ExprPtr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Ident: {
        if (t.text == "I") {
          take();
          e.kind = Expr::Kind::Identity;
          return node(std::move(e));
        }
        if (t.text == "M" && peek(1).kind == Tok::LBracket) {
          take();
          take();
          e.out = state();
          if (at(Tok::Arrow)) {
            take();
            e.in = state();
            e.kind = Expr::Kind::Symbol;
          } else if (at(Tok::RBracket)) {
            e.kind = Expr::Kind::Filter;
          } else {
            fail({"']'", "'<-'"});
          }
          e.span = cover(e.span, expect(Tok::RBracket).span);
          return node(std::move(e));
        }
        if ((t.text == "conj" || t.text == "transpose") && peek(1).kind == Tok::LParen) {
          e.kind = t.text == "conj" ? Expr::Kind::Conjugate : Expr::Kind::Transpose;
          take();
          take();
          e.args = {expr()};
          e.span = cover(e.span, expect(Tok::RParen).span);
          return node(std::move(e));
        }
        if (reserved_words().contains(t.text)) break;
        Token name = take();
        e.kind = Expr::Kind::VarRef;
        e.name = name.text;
        return node(std::move(e));
      }
      default: break;
    }
    fail({"'I'", "'M['", "'<'", "number", "identifier", "'('", "'conj('", "'transpose('", "'-'"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_syntax(std::string_view source) { return Parser(Lexer(source).run()).program(); }

Program parse(std::string_view source, const ParseOptions& options) {
  Program p = parse_syntax(source);
  analyze(p, options);
  return p;
}

}  // namespace mqsym::dsl
