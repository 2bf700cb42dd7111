#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "superforms/dsl/eval.hpp"
#include "superforms/dsl/syntax.hpp"
#include "superforms/equivariant.hpp"

using namespace superforms;
using namespace superforms::dsl;

namespace {

Program parse_ok(std::string_view src) {
  ParseResult r = parse(src);
  EXPECT_TRUE(r.ok()) << src << "\n" << (r.ok() ? "" : render(r.diagnostics[0], src));
  return r.program;
}

Evaluator run_script(std::string_view src, const std::string& action = "") {
  Evaluator ev = action.empty() ? Evaluator() : Evaluator(action);
  ev.run(parse_ok(src));
  return ev;
}

SuperFunction last_function(const Evaluator& ev) {
  auto v = ev.last_value();
  EXPECT_TRUE(v && std::holds_alternative<SuperFunction>(*v));
  return std::get<SuperFunction>(*v);
}

std::string reformat(std::string_view src) { return format(*parse_ok(src).stmts.at(0).expr); }

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(SUPERFORMS_CORPUS_DIR))
    if (e.path().extension() == ".sf") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random expression source over a few names, calls and operators, with
// redundant parentheses sprinkled in.
std::string random_expr(std::mt19937& rng, int depth) {
  static const char* atoms[] = {"x", "y", "xi", "eta", "z", "2", "17", "i"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (depth == 0 || pick(4) == 0) return atoms[pick(8)];
  std::string a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
  switch (pick(9)) {
    case 0:
      return a + " + " + b;
    case 1:
      return a + " - " + b;
    case 2:
      return a + "*" + b;
    case 3:
      return a + "/" + b;
    case 4:
      return "(" + a + ")^" + b;
    case 5:
      return "-" + a;
    case 6:
      return "(" + a + ")";
    case 7:
      return "exp(" + a + ")";
    default:
      return "int(" + a + "; x, xi)";
  }
}

}  // namespace

TEST(Parse, Statements) {
  Program p = parse_ok("even x y; odd xi; param z; let f = x*xi; check f == f; f");
  ASSERT_EQ(p.stmts.size(), 6u);
  EXPECT_EQ(p.stmts[0].kind, Stmt::Kind::Declare);
  EXPECT_EQ(p.stmts[0].keyword, "even");
  ASSERT_EQ(p.stmts[0].names.size(), 2u);
  EXPECT_EQ(p.stmts[0].names[1].name, "y");
  EXPECT_EQ(p.stmts[3].kind, Stmt::Kind::Let);
  EXPECT_EQ(p.stmts[4].kind, Stmt::Kind::Check);
  EXPECT_EQ(p.stmts[5].kind, Stmt::Kind::Evaluate);
}

TEST(Parse, PrecedenceAndAssociativity) {
  Program p = parse_ok("-a^b^c*d + e");
  const Expr& top = *p.stmts[0].expr;
  ASSERT_EQ(top.kind, Expr::Kind::Binary);
  EXPECT_EQ(top.op, '+');
  const Expr& prod = *top.args[0];
  EXPECT_EQ(prod.op, '*');
  const Expr& neg = *prod.args[0];
  ASSERT_EQ(neg.kind, Expr::Kind::Unary);
  const Expr& pow = *neg.args[0];
  EXPECT_EQ(pow.op, '^');
  EXPECT_EQ(pow.args[0]->text, "a");
  EXPECT_EQ(pow.args[1]->op, '^');  // right associative
}

TEST(Parse, CallsAndMatrices) {
  Program p = parse_ok("int(xi*eta; xi, eta); smat (1|1) [[1, 0], [0, 2]]");
  const Expr& call = *p.stmts[0].expr;
  EXPECT_EQ(call.kind, Expr::Kind::Call);
  EXPECT_EQ(call.text, "int");
  ASSERT_EQ(call.bound.size(), 2u);
  EXPECT_EQ(call.bound[1].name, "eta");
  const Expr& m = *p.stmts[1].expr;
  EXPECT_EQ(m.kind, Expr::Kind::Matrix);
  EXPECT_EQ(m.even, 1);
  EXPECT_EQ(m.odd, 1);
  EXPECT_EQ(m.rows.size(), 2u);
}

TEST(Parse, SpansPointAtSource) {
  std::string src = "odd xi;\n  exp(xi * xi)";
  Program p = parse_ok(src);
  const Expr& call = *p.stmts[1].expr;
  EXPECT_EQ(call.span.line, 2);
  EXPECT_EQ(call.span.column, 3);
  EXPECT_EQ(src.substr(call.span.offset, static_cast<size_t>(call.span.length)), "exp(xi * xi)");
  const Expr& prod = *call.args[0];
  EXPECT_EQ(src.substr(prod.span.offset, static_cast<size_t>(prod.span.length)), "xi * xi");
  // Child spans nest inside parent spans.
  for (const auto& a : prod.args) {
    EXPECT_GE(a->span.offset, prod.span.offset);
    EXPECT_LE(a->span.offset + static_cast<size_t>(a->span.length),
              prod.span.offset + static_cast<size_t>(prod.span.length));
  }
}

TEST(Parse, Diagnostics) {
  struct Case {
    std::string src, code;
    int column;
  };
  std::vector<Case> cases = {
      {"odd let;", "ReservedWord", 5},
      {"x + ;", "SyntaxError", 5},
      {"exp(x", "SyntaxError", 6},
      {"even ;", "SyntaxError", 6},
      {"smat (1|1) [[1, 2]]", "SyntaxError", 19},
      {"x $ y", "SyntaxError", 3},
  };
  for (const auto& c : cases) {
    ParseResult r = parse(c.src);
    ASSERT_FALSE(r.ok()) << c.src;
    EXPECT_EQ(r.diagnostics[0].code, c.code) << c.src;
    EXPECT_EQ(r.diagnostics[0].span.column, c.column) << c.src;
    for (const auto& d : r.diagnostics) EXPECT_LE(d.span.offset, c.src.size()) << c.src;
  }
}

TEST(Parse, RecoversAtSemicolons) {
  ParseResult r = parse("x + ; odd let; y * ;");
  EXPECT_EQ(r.diagnostics.size(), 3u);
}

TEST(Parse, RenderDrawsCaret) {
  std::string src = "odd xi;\nfoo + ;";
  ParseResult r = parse(src);
  ASSERT_FALSE(r.ok());
  std::string text = render(r.diagnostics[0], src);
  EXPECT_NE(text.find("2:7"), std::string::npos) << text;
  EXPECT_NE(text.find("foo + ;"), std::string::npos);
  EXPECT_NE(text.find("      ^"), std::string::npos) << text;
}

TEST(Format, MinimalParentheses) {
  EXPECT_EQ(reformat("(a*b)*c"), "a*b*c");
  EXPECT_EQ(reformat("a*(b*c)"), "a*(b*c)");
  EXPECT_EQ(reformat("a - (b - c)"), "a - (b - c)");
  EXPECT_EQ(reformat("(a - b) - c"), "a - b - c");
  EXPECT_EQ(reformat("a/(b*c)"), "a/(b*c)");
  EXPECT_EQ(reformat("a^(b^c)"), "a^b^c");
  EXPECT_EQ(reformat("(a^b)^c"), "(a^b)^c");
  EXPECT_EQ(reformat("-(x^2)"), "-x^2");
  EXPECT_EQ(reformat("(-x)^2"), "(-x)^2");
  EXPECT_EQ(reformat("exp((((xi*eta))))"), "exp(xi*eta)");
  EXPECT_EQ(reformat("int( f ;x,y )"), "int(f; x, y)");
  EXPECT_EQ(reformat("smat (1|1) [[1,0],[0,  2]]"), "smat (1|1) [[1, 0], [0, 2]]");
}

TEST(Format, CorpusRoundTrip) {
  auto files = corpus();
  ASSERT_GE(files.size(), 5u);
  for (const auto& f : files) {
    std::string src = slurp(f);
    Program p = parse_ok(src);
    std::string once = format(p);
    Program q = parse_ok(once);
    EXPECT_TRUE(same_structure(p, q)) << f;
    EXPECT_EQ(format(q), once) << f;
    // Comments are dropped; the formatted script evaluates to the same outputs.
    Evaluator a, b;
    a.run(p);
    b.run(q);
    ASSERT_EQ(a.outputs().size(), b.outputs().size()) << f;
    for (size_t k = 0; k < a.outputs().size(); ++k) EXPECT_EQ(a.outputs()[k].value, b.outputs()[k].value) << f;
    EXPECT_TRUE(a.verified()) << f;
  }
}

TEST(Format, RandomRoundTrip) {
  std::mt19937 rng(2024);
  for (int k = 0; k < 300; ++k) {
    std::string src = random_expr(rng, 4);
    Program p = parse_ok(src);
    std::string once = format(p);
    Program q = parse_ok(once);
    EXPECT_TRUE(same_structure(p, q)) << src << " -> " << once;
    EXPECT_EQ(format(q), once);
  }
}

TEST(Eval, Examples) {
  {
    Evaluator ev = run_script("odd xi eta; exp(xi*eta)");
    SuperFunction f = last_function(ev);
    auto t = f.table();
    EXPECT_EQ(f, SuperFunction::constant(t, Scalar(1)) + SuperFunction::var(t, "xi") * SuperFunction::var(t, "eta"));
  }
  {
    Evaluator ev = run_script("odd xi eta; int(xi*eta; xi, eta)");
    EXPECT_EQ(last_function(ev), SuperFunction::constant(last_function(ev).table(), Scalar(-1)));
  }
}

TEST(Eval, GaussianMoments) {
  Evaluator ev = run_script("even x y; param a; int(x^2*exp(-a*(x^2 + y^2)/2); x, y)");
  SuperFunction f = last_function(ev);
  Scalar a = Scalar::param("a");
  EXPECT_EQ(f, SuperFunction::constant(f.table(), Scalar::two_pi() / (a * a)));
}

TEST(Eval, ThomMatchesEngine) {
  Evaluator ev = run_script("param z; thom(z*X0)", "rot02");
  LinearAction a = *registered_action("rot02");
  ThomForm th = mathai_quillen_thom(a, {Scalar::param("z")});
  EXPECT_EQ(last_function(ev), th.theta.rebased(last_function(ev).table()));
  EXPECT_FALSE(ev.caveats().empty());
}

TEST(Eval, UseStatementMatchesConstructor) {
  Evaluator a = run_script("use rot22; spf(z1*X0 + z2*X1)");
  Evaluator b = run_script("spf(z1*X0 + z2*X1)", "rot22");
  ASSERT_TRUE(a.last_value() && b.last_value());
  EXPECT_EQ(value_json(*a.last_value()), value_json(*b.last_value()));
  EXPECT_EQ(std::get<Scalar>(*a.last_value()), Scalar::param("z1") / Scalar::param("z2"));
}

TEST(Eval, FailedCheckClearsVerified) {
  EXPECT_TRUE(run_script("odd xi; check xi*xi == 0").verified());
  EXPECT_FALSE(run_script("odd xi; check xi == 0").verified());
}

TEST(Eval, ScriptErrors) {
  struct Case {
    std::string src, code, action;
  };
  std::vector<Case> cases = {
      {"odd xi; yy", "UnknownIdentifier", ""},
      {"odd xi; odd xi", "Redeclared", ""},
      {"odd xi; foo(xi)", "UnknownFunction", ""},
      {"odd xi; exp(xi, xi)", "ArityError", ""},
      {"thom(1)", "NoAction", ""},
      {"odd xi; use rot02", "ActionConflict", ""},
      {"odd xi; xi/0", "DivisionByZero", ""},
      {"smat (1|1) [[1, 2], [0, 1]]", "ParityMismatch", ""},
      {"odd xi; ber(xi)", "TypeError", ""},
  };
  for (const auto& c : cases) {
    Program p = parse_ok(c.src);
    Evaluator ev;
    try {
      ev.run(p);
      ADD_FAILURE() << c.src << " did not fail";
    } catch (const ScriptError& e) {
      EXPECT_EQ(e.diagnostic().code, c.code) << c.src << ": " << e.what();
      EXPECT_LE(e.diagnostic().span.offset + static_cast<size_t>(e.diagnostic().span.length), c.src.size());
      EXPECT_GT(e.diagnostic().span.length, 0) << c.src;
    }
  }
}

TEST(Eval, UnknownIdentifierSpan) {
  std::string src = "odd xi;\nxi*zeta";
  Evaluator ev;
  try {
    ev.run(parse_ok(src));
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_EQ(e.diagnostic().span.line, 2);
    EXPECT_EQ(e.diagnostic().span.column, 4);
    EXPECT_EQ(e.diagnostic().span.length, 4);
  }
}
