#include <algorithm>
#include <array>
#include <cctype>

#include "superforms/dsl/syntax.hpp"

namespace superforms::dsl {

namespace {

constexpr std::array<std::string_view, 12> kReserved = {"even", "odd",  "param", "let",   "use",  "action",
                                                        "coords", "form", "gens",  "check", "smat", "i"};

struct Token {
  enum class Kind { Ident, Int, Punct, EqEq, End };
  Kind kind = Kind::End;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Span s{line_, col_, 0, pos_};
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::End, "", s});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t b = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
        out.push_back(finish(Token::Kind::Ident, b, s));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t b = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back(finish(Token::Kind::Int, b, s));
      } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        size_t b = pos_;
        advance();
        advance();
        out.push_back(finish(Token::Kind::EqEq, b, s));
      } else if (std::string_view("+-*/^()[],;=|").find(c) != std::string_view::npos) {
        size_t b = pos_;
        advance();
        out.push_back(finish(Token::Kind::Punct, b, s));
      } else {
        s.length = 1;
        diags.push_back({"SyntaxError", std::string("unexpected character '") + c + "'", s});
        advance();
      }
    }
  }

 private:
  Token finish(Token::Kind k, size_t begin, Span s) {
    s.length = static_cast<int>(pos_ - begin);
    return {k, std::string(src_.substr(begin, pos_ - begin)), s};
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
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

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct Failure {
  Diagnostic diag;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program program(std::vector<Diagnostic>& diags) {
    Program p;
    while (peek().kind != Token::Kind::End) {
      size_t start = i_;
      try {
        p.stmts.push_back(statement());
      } catch (const Failure& f) {
        diags.push_back(f.diag);
        if (i_ == start) ++i_;
        while (peek().kind != Token::Kind::End && !is_punct(";")) ++i_;
        if (is_punct(";")) ++i_;
      }
    }
    return p;
  }

 private:
  const Token& peek(size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool is_punct(std::string_view p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg, const Token& at, const char* code = "SyntaxError") const {
    Span s = at.span;
    if (s.length == 0) s.length = 1;
    throw Failure{{code, msg, s}};
  }

  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'", peek());
    return t_[i_++];
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'", peek());
    ++i_;
  }

  Identifier identifier() {
    const Token& tok = peek();
    if (tok.kind != Token::Kind::Ident) fail("expected an identifier", tok);
    if (is_reserved(tok.text)) fail("'" + tok.text + "' is a reserved word", tok, "ReservedWord");
    ++i_;
    return {tok.text, tok.span};
  }

  // ';' is optional before the end of input.
  Span terminator() {
    if (peek().kind == Token::Kind::End) return t_[i_ - 1].span;
    return expect_punct(";").span;
  }

  Stmt statement() {
    Stmt s;
    Span start = peek().span;
    if (is_word("even") || is_word("odd") || is_word("param")) {
      s.kind = Stmt::Kind::Declare;
      s.keyword = t_[i_++].text;
      do s.names.push_back(identifier());
      while (peek().kind == Token::Kind::Ident && !is_punct(";"));
    } else if (is_word("let")) {
      ++i_;
      s.kind = Stmt::Kind::Let;
      s.names.push_back(identifier());
      expect_punct("=");
      s.expr = expression();
    } else if (is_word("use")) {
      ++i_;
      s.kind = Stmt::Kind::Use;
      s.names.push_back(identifier());
    } else if (is_word("action")) {
      ++i_;
      s.kind = Stmt::Kind::Action;
      s.names.push_back(identifier());
      expect_word("coords");
      do s.names.push_back(identifier());
      while (!is_word("form") && peek().kind == Token::Kind::Ident);
      expect_word("form");
      s.expr = expression();
      expect_word("gens");
      do {
        Identifier g = identifier();
        expect_punct("=");
        s.generators.emplace_back(g, expression());
      } while (is_punct(",") && (++i_, true));
    } else if (is_word("check")) {
      ++i_;
      s.kind = Stmt::Kind::Check;
      s.expr = expression();
      if (peek().kind != Token::Kind::EqEq) fail("expected '=='", peek());
      ++i_;
      s.rhs = expression();
    } else {
      s.kind = Stmt::Kind::Evaluate;
      s.expr = expression();
    }
    s.span = cover(start, terminator());
    return s;
  }

  ExprPtr binary(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->span = cover(l->span, r->span);
    e->args = {std::move(l), std::move(r)};
    return e;
  }

  ExprPtr expression() {
    ExprPtr l = product();
    while (is_punct("+") || is_punct("-")) {
      char op = t_[i_++].text[0];
      l = binary(op, l, product());
    }
    return l;
  }

  ExprPtr product() {
    ExprPtr l = unary();
    while (is_punct("*") || is_punct("/")) {
      char op = t_[i_++].text[0];
      l = binary(op, l, unary());
    }
    return l;
  }

  ExprPtr unary() {
    if (is_punct("-")) {
      Span s = t_[i_++].span;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Unary;
      e->op = '-';
      e->args = {unary()};
      e->span = cover(s, e->args[0]->span);
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (is_punct("^")) {
      ++i_;
      return binary('^', base, unary());
    }
    return base;
  }

  ExprPtr primary() {
    const Token& tok = peek();
    auto e = std::make_shared<Expr>();
    e->span = tok.span;
    if (tok.kind == Token::Kind::Int) {
      ++i_;
      e->kind = Expr::Kind::Number;
      e->text = tok.text;
      return e;
    }
    if (is_punct("(")) {
      ++i_;
      ExprPtr inner = expression();
      expect_punct(")");
      return inner;
    }
    if (is_word("smat")) return matrix();
    if (tok.kind != Token::Kind::Ident) fail("expected an expression", tok);
    if (is_reserved(tok.text) && tok.text != "i") fail("'" + tok.text + "' is a reserved word", tok, "ReservedWord");
    ++i_;
    e->text = tok.text;
    if (!is_punct("(")) {
      e->kind = Expr::Kind::Name;
      return e;
    }
    ++i_;
    e->kind = Expr::Kind::Call;
    if (!is_punct(")") && !is_punct(";")) {
      e->args.push_back(expression());
      while (is_punct(",")) {
        ++i_;
        e->args.push_back(expression());
      }
    }
    if (is_punct(";")) {
      ++i_;
      e->has_bound = true;
      e->bound.push_back(identifier());
      while (is_punct(",")) {
        ++i_;
        e->bound.push_back(identifier());
      }
    }
    e->span = cover(tok.span, expect_punct(")").span);
    return e;
  }

  int small_int() {
    const Token& tok = peek();
    if (tok.kind != Token::Kind::Int || tok.text.size() > 2) fail("expected a dimension", tok);
    ++i_;
    return std::stoi(tok.text);
  }

  ExprPtr matrix() {
    Span start = t_[i_++].span;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Matrix;
    expect_punct("(");
    e->even = small_int();
    expect_punct("|");
    e->odd = small_int();
    expect_punct(")");
    expect_punct("[");
    size_t n = static_cast<size_t>(e->even + e->odd);
    while (true) {
      const Token& open = peek();
      expect_punct("[");
      std::vector<ExprPtr> row{expression()};
      while (is_punct(",")) {
        ++i_;
        row.push_back(expression());
      }
      expect_punct("]");
      if (row.size() != n) fail("row length differs from the dimension", open);
      e->rows.push_back(std::move(row));
      if (!is_punct(",")) break;
      ++i_;
    }
    if (e->rows.size() != n) fail("row count differs from the dimension", peek());
    e->span = cover(start, expect_punct("]").span);
    return e;
  }

  std::vector<Token> t_;
  size_t i_ = 0;
};

bool same_ids(const std::vector<Identifier>& a, const std::vector<Identifier>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Identifier& x, const Identifier& y) { return x.name == y.name; });
}

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_structure(*a, *b);
}

}  // namespace

bool is_reserved(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

Span cover(const Span& a, const Span& b) {
  const Span& first = a.offset <= b.offset ? a : b;
  size_t end = std::max(a.offset + a.length, b.offset + b.length);
  Span s = first;
  s.length = static_cast<int>(end - first.offset);
  return s;
}

std::string render(const Diagnostic& d, std::string_view source) {
  std::string out = std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " + d.code + ": " +
                    d.message + "\n";
  size_t b = source.rfind('\n', d.span.offset == 0 ? 0 : d.span.offset - 1);
  b = (b == std::string_view::npos || d.span.offset == 0) ? 0 : b + 1;
  size_t e = source.find('\n', d.span.offset);
  if (e == std::string_view::npos) e = source.size();
  out += "  " + std::string(source.substr(b, e - b)) + "\n  ";
  out += std::string(static_cast<size_t>(d.span.column - 1), ' ');
  out += std::string(static_cast<size_t>(std::max(1, d.span.length)), '^');
  return out;
}

ParseResult parse(std::string_view source) {
  ParseResult r;
  std::vector<Token> toks = Lexer(source).run(r.diagnostics);
  r.program = Parser(std::move(toks)).program(r.diagnostics);
  return r;
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.op != b.op || a.has_bound != b.has_bound || a.even != b.even ||
      a.odd != b.odd || a.args.size() != b.args.size() || a.rows.size() != b.rows.size() || !same_ids(a.bound, b.bound))
    return false;
  for (size_t k = 0; k < a.args.size(); ++k)
    if (!same_ptr(a.args[k], b.args[k])) return false;
  for (size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (size_t c = 0; c < a.rows[r].size(); ++c)
      if (!same_ptr(a.rows[r][c], b.rows[r][c])) return false;
  }
  return true;
}

bool same_structure(const Program& a, const Program& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (size_t k = 0; k < a.stmts.size(); ++k) {
    const Stmt &x = a.stmts[k], &y = b.stmts[k];
    if (x.kind != y.kind || x.keyword != y.keyword || !same_ids(x.names, y.names) || !same_ptr(x.expr, y.expr) ||
        !same_ptr(x.rhs, y.rhs) || x.generators.size() != y.generators.size())
      return false;
    for (size_t g = 0; g < x.generators.size(); ++g)
      if (x.generators[g].first.name != y.generators[g].first.name ||
          !same_ptr(x.generators[g].second, y.generators[g].second))
        return false;
  }
  return true;
}

}  // namespace superforms::dsl
