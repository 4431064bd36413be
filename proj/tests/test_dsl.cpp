#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mqsym/dsl.hpp"
#include "mqsym/render.hpp"
#include "support.hpp"

using namespace mqsym;
using namespace mqsym::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> scripts(const char* dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(MQSYM_TEST_DIR) / "corpus" / dir))
    if (e.path().extension() == ".mq") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Span parse_span(const std::string& text) {
  Span s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> s.line >> c1 >> s.column >> c2 >> s.length;
  return s;
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::ConfigError, "");
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("golden trees") {
    const auto files = scripts("valid");
    CHECK(files.size() >= 20);
    for (const auto& f : files) {
      CAPTURE(f.filename().string());
      const dsl::Program p = dsl::parse_syntax(slurp(f));
      CHECK(dsl::to_sexpr(p) == slurp(fs::path(f).replace_extension(".tree")));
    }
  }

  TEST_CASE("render then reparse is structurally identical") {
    for (const auto& f : scripts("valid")) {
      CAPTURE(f.filename().string());
      const dsl::Program p = dsl::parse_syntax(slurp(f));
      const std::string rendered = dsl::render(p);
      const dsl::Program q = dsl::parse_syntax(rendered);
      CHECK(dsl::structurally_equal(p, q));
      CHECK(dsl::render(q) == rendered);
    }
  }

  TEST_CASE("malformed scripts report a syntax error at the expected span") {
    const auto files = scripts("malformed");
    CHECK(files.size() >= 20);
    for (const auto& f : files) {
      CAPTURE(f.filename().string());
      const Error e = error_of([&] { dsl::parse_syntax(slurp(f)); });
      CHECK(e.code() == ErrorCode::SyntaxError);
      REQUIRE(e.span().has_value());
      CHECK(*e.span() == parse_span(slurp(fs::path(f).replace_extension(".span"))));
    }
  }

  TEST_CASE("semantic errors carry spans") {
    for (const auto& f : scripts("invalid")) {
      CAPTURE(f.filename().string());
      std::istringstream expected(slurp(fs::path(f).replace_extension(".span")));
      std::string code, where;
      expected >> code >> where;
      const Error e = error_of([&] { dsl::parse(slurp(f)); });
      CHECK(to_string(e.code()) == code);
      REQUIRE(e.span().has_value());
      CHECK(*e.span() == parse_span(where));
    }
  }

  TEST_CASE("syntax error messages list what was expected") {
    const Error e = error_of([] { dsl::parse_syntax("normalize M[Z:up"); });
    CHECK(std::string(e.what()) == "expected one of ']', '<-' at end of input");
    const Error f = error_of([] { dsl::parse_syntax("prob(Z:up, X:plus)"); });
    CHECK(std::string(f.what()) == "expected '|', found ','");
  }

  TEST_CASE("node spans point into the source") {
    const dsl::Program p = dsl::parse_syntax("observable Z { up: 1, down: -1 }\nnormalize M[Z:up] * M[X:plus]");
    REQUIRE(p.size() == 2);
    CHECK(p[0].span == Span{1, 1, 32});
    CHECK(p[0].labels.size() == 2);
    CHECK(p[0].labels[1].value == Rational(-1));
    const auto& e = *p[1].expr;
    CHECK(e.kind == dsl::Expr::Kind::Product);
    CHECK(e.span == Span{2, 11, 19});
    CHECK(e.args[0]->span == Span{2, 11, 7});
    CHECK(e.args[1]->span == Span{2, 21, 9});
  }

  TEST_CASE("implicit observables collect labels in order of use") {
    dsl::ParseOptions opts;
    opts.implicit_observables = true;
    const dsl::Program p = dsl::parse_syntax("normalize M[Z:up] * M[X:plus] * M[Z:down]");
    const Registry reg = dsl::analyze(p, opts);
    CHECK(reg.observable(reg.id_of("Z")).labels == std::vector<std::string>{"up", "down"});
    CHECK(reg.observable(reg.id_of("X")).labels == std::vector<std::string>{"plus"});
    CHECK_THROWS_AS(dsl::analyze(p), Error);
  }

  TEST_CASE("predeclared observables come first and may be restated") {
    dsl::ParseOptions opts;
    opts.predeclared = {{"Z", {"up", "down"}, std::vector<Rational>{1, -1}}};
    const Registry reg = dsl::analyze(dsl::parse_syntax("observable X { p, m }\nobservable Z { up: 1, down: -1 }"), opts);
    CHECK(reg.id_of("Z").value == 0);
    CHECK(reg.id_of("X").value == 1);
    const Error e = error_of([&] { dsl::analyze(dsl::parse_syntax("observable Z { down, up }"), opts); });
    CHECK(e.code() == ErrorCode::DuplicateName);
  }

  TEST_CASE("lowering and evaluation") {
    const std::string src =
        "observable Z { up: 1, down: -1 }\nobservable X { plus: 1, minus: -1 }\n"
        "let p = M[Z:up]\nnormalize p * M[X:plus] * p";
    const dsl::Program prog = dsl::parse_syntax(src);
    const Registry reg = dsl::analyze(prog);
    dsl::Environment env;
    env.emplace("p", dsl::lower(*prog[2].expr, reg, env));
    const Tree t = dsl::lower(*prog[3].expr, reg, env);
    CHECK(render(reg, evaluate(reg, t)) == "<Z:up|X:plus>*<X:plus|Z:up>*M[Z:up]");
  }

  TEST_CASE("canonical renderings of normal forms parse back to the same normal form") {
    const Registry reg = shaped_registry({2, 3, 2});
    const auto states = all_states(reg);
    dsl::ParseOptions opts;
    for (const auto& def : reg.observables()) opts.predeclared.push_back({def.name, def.labels, def.values});
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const AlgebraExpr x = random_expr(states, rng, 4);
      const std::string text = render(reg, x);
      CAPTURE(text);
      const dsl::Program p = dsl::parse_syntax("normalize " + text);
      const Registry again = dsl::analyze(p, opts);
      const Value v = evaluate(again, dsl::lower(*p[0].expr, again, {}));
      CHECK(to_algebra(v) == x);
    }
  }
}
