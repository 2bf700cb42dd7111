#include "superforms/dsl/syntax.hpp"

namespace superforms::dsl {

namespace {

// + - : 1, * / : 2, unary minus : 3, ^ : 4, atoms : 5
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      if (e.op == '+' || e.op == '-') return 1;
      if (e.op == '*' || e.op == '/') return 2;
      return 4;
    case Expr::Kind::Unary:
      return 3;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + format(e) + ")" : format(e); }

std::string join_ids(const std::vector<Identifier>& ids, const char* sep, size_t from = 0) {
  std::string out;
  for (size_t k = from; k < ids.size(); ++k) out += (k > from ? sep : "") + ids[k].name;
  return out;
}

}  // namespace

std::string format(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Name:
      return e.text;
    case Expr::Kind::Unary:
      return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
    case Expr::Kind::Binary: {
      const Expr &l = *e.args[0], &r = *e.args[1];
      if (e.op == '^') return wrap(l, precedence(l) <= 4) + "^" + wrap(r, precedence(r) < 3);
      int p = precedence(e);
      std::string op = p == 1 ? std::string(" ") + e.op + " " : std::string(1, e.op);
      return wrap(l, precedence(l) < p) + op + wrap(r, precedence(r) <= p);
    }
    case Expr::Kind::Call: {
      std::string out = e.text + "(";
      for (size_t k = 0; k < e.args.size(); ++k) out += (k ? ", " : "") + format(*e.args[k]);
      if (e.has_bound) out += (e.args.empty() ? "; " : "; ") + join_ids(e.bound, ", ");
      return out + ")";
    }
    case Expr::Kind::Matrix: {
      std::string out = "smat (" + std::to_string(e.even) + "|" + std::to_string(e.odd) + ") [";
      for (size_t r = 0; r < e.rows.size(); ++r) {
        out += r ? ", [" : "[";
        for (size_t c = 0; c < e.rows[r].size(); ++c) out += (c ? ", " : "") + format(*e.rows[r][c]);
        out += "]";
      }
      return out + "]";
    }
  }
  return {};
}

std::string format(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Declare:
      return s.keyword + " " + join_ids(s.names, " ") + ";";
    case Stmt::Kind::Let:
      return "let " + s.names[0].name + " = " + format(*s.expr) + ";";
    case Stmt::Kind::Use:
      return "use " + s.names[0].name + ";";
    case Stmt::Kind::Action: {
      std::string out = "action " + s.names[0].name + " coords " + join_ids(s.names, " ", 1) + " form " +
                        format(*s.expr) + " gens ";
      for (size_t g = 0; g < s.generators.size(); ++g)
        out += (g ? ", " : "") + s.generators[g].first.name + " = " + format(*s.generators[g].second);
      return out + ";";
    }
    case Stmt::Kind::Check:
      return "check " + format(*s.expr) + " == " + format(*s.rhs) + ";";
    case Stmt::Kind::Evaluate:
      return format(*s.expr) + ";";
  }
  return {};
}

std::string format(const Program& p) {
  std::string out;
  for (const auto& s : p.stmts) out += format(s) + "\n";
  return out;
}

}  // namespace superforms::dsl
