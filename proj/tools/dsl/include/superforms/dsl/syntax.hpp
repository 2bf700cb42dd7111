#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superforms::dsl {

// 1-based line and column; offset is the byte offset into the source.
struct Span {
  int line = 1;
  int column = 1;
  int length = 0;
  size_t offset = 0;
};

// Smallest span covering both.
Span cover(const Span& a, const Span& b);

struct Diagnostic {
  std::string code;  // SyntaxError, ReservedWord, UnknownIdentifier, TypeError, ...
  std::string message;
  Span span;
};

std::string render(const Diagnostic& d, std::string_view source);

// Thrown by the evaluator for problems attributable to the script.
class ScriptError : public std::runtime_error {
 public:
  explicit ScriptError(Diagnostic d) : std::runtime_error(d.code + ": " + d.message), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Identifier {
  std::string name;
  Span span;
};

struct Expr {
  enum class Kind { Number, Name, Call, Unary, Binary, Matrix };
  Kind kind = Kind::Number;
  Span span;
  std::string text;             // digits, identifier or callee
  char op = 0;                  // Unary: '-'; Binary: + - * / ^
  std::vector<ExprPtr> args;    // Call arguments, Unary/Binary operands
  std::vector<Identifier> bound;  // Call: identifiers after ';'
  bool has_bound = false;
  int even = 0, odd = 0;        // Matrix: (even|odd)
  std::vector<std::vector<ExprPtr>> rows;
};

struct Stmt {
  enum class Kind { Declare, Let, Use, Action, Check, Evaluate };
  Kind kind = Kind::Evaluate;
  Span span;
  std::string keyword;  // Declare: even / odd / param
  std::vector<Identifier> names;  // Declare names; Let/Use/Action name in names[0]; Action coords after it
  ExprPtr expr;         // Let, Evaluate, Check lhs, Action form
  ExprPtr rhs;          // Check rhs
  std::vector<std::pair<Identifier, ExprPtr>> generators;  // Action
};

struct Program {
  std::vector<Stmt> stmts;
};

// Structural equality; spans are ignored.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Program& a, const Program& b);

struct ParseResult {
  Program program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

ParseResult parse(std::string_view source);

std::string format(const Expr& e);
std::string format(const Stmt& s);
std::string format(const Program& p);

bool is_reserved(std::string_view word);

}  // namespace superforms::dsl
