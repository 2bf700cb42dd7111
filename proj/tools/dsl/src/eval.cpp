#include "superforms/dsl/eval.hpp"

#include <algorithm>

#include "superforms/errors.hpp"

namespace superforms::dsl {

namespace {

const Parity E = Parity::Even, O = Parity::Odd;

Scalar q(long n) { return Scalar(n); }

ScalarMatrix block(size_t n, std::initializer_list<std::tuple<size_t, size_t, long>> entries) {
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (auto [i, j, v] : entries) m[i][j] = q(v);
  return m;
}

// Kind of a Value for diagnostics.
const char* kind_name(const Value& v) {
  switch (v.index()) {
    case 0:
      return "scalar";
    case 1:
      return "function";
    case 2:
      return "element";
    case 3:
      return "matrix";
    default:
      return "report";
  }
}

}  // namespace

std::optional<LinearAction> registered_action(const std::string& name) {
  ScalarMatrix symp = block(2, {{0, 1, 1}, {1, 0, -1}});
  if (name == "rot02")
    return LinearAction({O, O}, BilinearForm({O, O}, symp), {symp}, {"xi", "eta"}, {"z"});
  if (name == "hyp02")
    return LinearAction({O, O}, BilinearForm({O, O}, symp), {block(2, {{0, 0, 1}, {1, 1, -1}})}, {"xi", "eta"},
                        {"z"});
  if (name == "rot20")
    return LinearAction({E, E}, BilinearForm({E, E}, block(2, {{0, 0, 1}, {1, 1, 1}})),
                        {block(2, {{0, 1, -1}, {1, 0, 1}})}, {"x", "y"}, {"z"});
  if (name == "rot22") {
    ScalarMatrix qm = block(4, {{0, 0, 1}, {1, 1, 1}, {2, 3, 1}, {3, 2, -1}});
    return LinearAction({E, E, O, O}, BilinearForm({E, E, O, O}, qm),
                        {block(4, {{0, 1, -1}, {1, 0, 1}}), block(4, {{2, 3, 1}, {3, 2, -1}})},
                        {"x", "y", "xi", "eta"}, {"z1", "z2"});
  }
  return std::nullopt;
}

std::vector<std::string> registered_action_names() { return {"hyp02", "rot02", "rot20", "rot22"}; }

nlohmann::json assumptions_json(const AssumptionLog& log) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : log.entries()) {
    nlohmann::json pivots = nlohmann::json::array();
    for (const auto& p : c.pivots) pivots.push_back(p.to_string());
    out.push_back({{"variables", c.variables}, {"pivots", pivots}, {"root", c.root.to_string()}, {"rule", c.rule}});
  }
  return out;
}

nlohmann::json value_json(const Value& v) {
  switch (v.index()) {
    case 0:
      return {{"kind", "scalar"}, {"value", std::get<Scalar>(v).to_string()}};
    case 1:
      return {{"kind", "function"}, {"value", std::get<SuperFunction>(v).to_string()}};
    case 2: {
      nlohmann::json c = nlohmann::json::array();
      for (const auto& s : std::get<Element>(v).coeff) c.push_back(s.to_string());
      return {{"kind", "element"}, {"coefficients", c}};
    }
    case 3:
      return {{"kind", "matrix"}, {"value", std::get<SuperMatrix>(v).to_string()}};
    default: {
      nlohmann::json r = std::get<Report>(v).data;
      r["kind"] = "report";
      return r;
    }
  }
}

Evaluator::Evaluator(const std::string& action_name) {
  auto a = registered_action(action_name);
  if (!a) throw ScriptError({"UnknownAction", "no registered action '" + action_name + "'", {}});
  std::vector<std::string> names;
  for (size_t k = 0; k < a->generators().size(); ++k) names.push_back("X" + std::to_string(k));
  set_action(std::move(*a), std::move(names));
}

void Evaluator::fail(const std::string& code, const std::string& msg, const Span& at) const {
  throw ScriptError({code, msg, at});
}

void Evaluator::set_action(LinearAction a, std::vector<std::string> generator_names) {
  action_ = std::move(a);
  generator_names_ = std::move(generator_names);
  for (const auto& p : action_->params())
    if (std::find(params_.begin(), params_.end(), p) == params_.end()) params_.push_back(p);
  rebuild_table();
}

void Evaluator::rebuild_table() {
  std::vector<Generator> g;
  if (action_) g = action_->form_table()->generators();
  g.insert(g.end(), declared_.begin(), declared_.end());
  table_ = VariableTable::make(g);
}

const LinearAction& Evaluator::need_action(const Expr& at) const {
  if (!action_) fail("NoAction", "no action is active; use 'use NAME;' or declare one", at.span);
  return *action_;
}

void Evaluator::run(const Program& p) {
  for (const auto& s : p.stmts) execute(s);
}

void Evaluator::execute(const Stmt& s) {
  auto taken = [&](const std::string& n) {
    return table_->find(n).has_value() || std::find(params_.begin(), params_.end(), n) != params_.end() ||
           lets_.count(n) || std::find(generator_names_.begin(), generator_names_.end(), n) != generator_names_.end();
  };
  switch (s.kind) {
    case Stmt::Kind::Declare:
      for (const auto& id : s.names) {
        // Restating a parameter the action already introduced is harmless.
        bool known_param = std::find(params_.begin(), params_.end(), id.name) != params_.end();
        if (s.keyword == "param" && known_param && !lets_.count(id.name)) continue;
        if (taken(id.name)) fail("Redeclared", "'" + id.name + "' is already defined", id.span);
        if (s.keyword == "param") {
          params_.push_back(id.name);
          continue;
        }
        Parity p = s.keyword == "even" ? E : O;
        if (taken("d" + id.name)) fail("Redeclared", "'d" + id.name + "' is already defined", id.span);
        declared_.push_back({id.name, p, Role::Coordinate, ""});
        declared_.push_back({"d" + id.name, flip(p), Role::Differential, id.name});
      }
      rebuild_table();
      break;
    case Stmt::Kind::Let:
      if (taken(s.names[0].name)) fail("Redeclared", "'" + s.names[0].name + "' is already defined", s.names[0].span);
      lets_[s.names[0].name] = evaluate(*s.expr);
      break;
    case Stmt::Kind::Use: {
      auto a = registered_action(s.names[0].name);
      if (!a) fail("UnknownAction", "no registered action '" + s.names[0].name + "'", s.names[0].span);
      if (action_ || !declared_.empty()) fail("ActionConflict", "an action must be chosen before declarations", s.span);
      std::vector<std::string> names;
      for (size_t k = 0; k < a->generators().size(); ++k) names.push_back("X" + std::to_string(k));
      set_action(std::move(*a), std::move(names));
      break;
    }
    case Stmt::Kind::Action: {
      if (action_ || !declared_.empty()) fail("ActionConflict", "an action must be chosen before declarations", s.span);
      Value form = evaluate(*s.expr);
      if (!std::holds_alternative<SuperMatrix>(form)) fail("TypeError", "form must be an smat literal", s.expr->span);
      const SuperMatrix& qm = std::get<SuperMatrix>(form);
      std::vector<std::string> coords;
      for (size_t k = 1; k < s.names.size(); ++k) coords.push_back(s.names[k].name);
      if (coords.size() != qm.size()) fail("DimensionMismatch", "one coordinate per basis vector", s.span);
      std::vector<ScalarMatrix> gens;
      std::vector<std::string> names, params;
      for (const auto& [id, ge] : s.generators) {
        Value g = evaluate(*ge);
        if (!std::holds_alternative<SuperMatrix>(g)) fail("TypeError", "generator must be an smat literal", ge->span);
        gens.push_back(std::get<SuperMatrix>(g).to_scalars());
        names.push_back(id.name);
        params.push_back("z_" + id.name);
      }
      set_action(LinearAction(qm.basis(), BilinearForm(qm.basis(), qm.to_scalars()), gens, coords, params),
                 names);
      break;
    }
    case Stmt::Kind::Check: {
      SuperFunction l = as_function(evaluate(*s.expr), *s.expr), r = as_function(evaluate(*s.rhs), *s.rhs);
      bool ok = l.rebased(table_) == r.rebased(table_);
      verified_ = verified_ && ok;
      nlohmann::json v = {{"kind", "check"}, {"holds", ok}};
      if (!ok) v["difference"] = (l.rebased(table_) - r.rebased(table_)).to_string();
      outputs_.push_back({format(s), v});
      break;
    }
    case Stmt::Kind::Evaluate: {
      Value v = evaluate(*s.expr);
      if (auto* r = std::get_if<Report>(&v)) verified_ = verified_ && r->verified;
      outputs_.push_back({format(s), value_json(v)});
      last_ = v;
      break;
    }
  }
}

SuperFunction Evaluator::as_function(const Value& v, const Expr& at) {
  if (auto* s = std::get_if<Scalar>(&v)) return SuperFunction::constant(table_, *s);
  if (auto* f = std::get_if<SuperFunction>(&v)) return f->rebased(table_);
  fail("TypeError", std::string("expected a function, got a ") + kind_name(v), at.span);
}

Scalar Evaluator::as_scalar(const Value& v, const Expr& at) {
  if (auto* s = std::get_if<Scalar>(&v)) return *s;
  if (auto* f = std::get_if<SuperFunction>(&v))
    if (f->is_zero() || f->is_constant()) return f->is_zero() ? Scalar() : f->constant_term();
  fail("TypeError", std::string("expected a scalar, got a ") + kind_name(v), at.span);
}

Element Evaluator::as_element(const Value& v, const Expr& at) {
  if (auto* e = std::get_if<Element>(&v)) return *e;
  fail("TypeError", std::string("expected a Lie algebra element, got a ") + kind_name(v), at.span);
}

Value Evaluator::evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return Scalar::parse(e.text);
    case Expr::Kind::Name: {
      if (auto it = lets_.find(e.text); it != lets_.end()) return it->second;
      if (table_->find(e.text)) return SuperFunction::var(table_, e.text);
      if (std::find(params_.begin(), params_.end(), e.text) != params_.end()) return Scalar::param(e.text);
      auto g = std::find(generator_names_.begin(), generator_names_.end(), e.text);
      if (g != generator_names_.end()) {
        Element el{std::vector<Scalar>(generator_names_.size())};
        el.coeff[static_cast<size_t>(g - generator_names_.begin())] = Scalar(1);
        return el;
      }
      if (e.text == "i") return Scalar::i();
      if (e.text == "twopi") return Scalar::two_pi();
      if (e.text == "tau") return Scalar::tau();
      fail("UnknownIdentifier", "'" + e.text + "' is not declared", e.span);
    }
    case Expr::Kind::Unary:
      return binary(e, Scalar(-1), evaluate(*e.args[0]));
    case Expr::Kind::Binary:
      return binary(e, evaluate(*e.args[0]), evaluate(*e.args[1]));
    case Expr::Kind::Call:
      return call(e);
    case Expr::Kind::Matrix: {
      size_t k = static_cast<size_t>(e.even), l = static_cast<size_t>(e.odd);
      SuperMatrix m(SuperMatrix::standard_basis(k, l), table_);
      for (size_t r = 0; r < k + l; ++r)
        for (size_t c = 0; c < k + l; ++c) m.at(r, c) = as_function(evaluate(*e.rows[r][c]), *e.rows[r][c]);
      if (!m.parity_consistent()) fail("ParityMismatch", "entries do not respect the block parities", e.span);
      return m;
    }
  }
  fail("InternalError", "unhandled expression", e.span);
}

Value Evaluator::binary(const Expr& e, Value l, Value r) {
  char op = e.kind == Expr::Kind::Unary ? '*' : e.op;
  const Expr& le = e.kind == Expr::Kind::Unary ? e : *e.args[0];
  const Expr& re = e.kind == Expr::Kind::Unary ? *e.args[0] : *e.args[1];
  bool ls = std::holds_alternative<Scalar>(l), rs = std::holds_alternative<Scalar>(r);

  if (op == '^') {
    Scalar ex = as_scalar(r, re);
    if (!ex.is_constant() || !ex.constant_value().is_real() || ex.constant_value().re().get_den() != 1 ||
        !ex.constant_value().re().get_num().fits_slong_p())
      fail("TypeError", "exponent must be an integer", re.span);
    long n = ex.constant_value().re().get_num().get_si();
    if (ls) return std::get<Scalar>(l).pow(n);
    if (n < 0) fail("TypeError", "negative powers need a scalar base", re.span);
    SuperFunction base = as_function(l, le), out = SuperFunction::constant(table_, Scalar(1));
    for (long k = 0; k < n; ++k) out = out * base;
    return out;
  }

  if (std::holds_alternative<Element>(l) || std::holds_alternative<Element>(r)) {
    Element out;
    if (op == '*' && ls) {
      out = std::get<Element>(r);
      for (auto& c : out.coeff) c *= std::get<Scalar>(l);
    } else if ((op == '*' || op == '/') && rs) {
      out = std::get<Element>(l);
      Scalar s = op == '*' ? std::get<Scalar>(r) : std::get<Scalar>(r).inverse();
      for (auto& c : out.coeff) c *= s;
    } else if ((op == '+' || op == '-') && std::holds_alternative<Element>(l) && std::holds_alternative<Element>(r)) {
      out = std::get<Element>(l);
      const auto& o = std::get<Element>(r).coeff;
      for (size_t k = 0; k < out.coeff.size(); ++k) out.coeff[k] += op == '+' ? o[k] : -o[k];
    } else {
      fail("TypeError", "unsupported operation on Lie algebra elements", e.span);
    }
    return out;
  }

  if (std::holds_alternative<SuperMatrix>(l) || std::holds_alternative<SuperMatrix>(r)) {
    if (std::holds_alternative<SuperMatrix>(l) && std::holds_alternative<SuperMatrix>(r)) {
      const auto &a = std::get<SuperMatrix>(l), &b = std::get<SuperMatrix>(r);
      if (op == '+') return a + b;
      if (op == '-') return a - b;
      if (op == '*') return a * b;
    } else if (op == '*' && ls) {
      return std::get<SuperMatrix>(r) * std::get<Scalar>(l);
    } else if (op == '*' && rs) {
      return std::get<SuperMatrix>(l) * std::get<Scalar>(r);
    }
    fail("TypeError", "unsupported operation on matrices", e.span);
  }

  if (std::holds_alternative<Report>(l) || std::holds_alternative<Report>(r))
    fail("TypeError", "reports cannot be combined", e.span);

  if (ls && rs) {
    const Scalar &a = std::get<Scalar>(l), &b = std::get<Scalar>(r);
    if (op == '/' && b.is_zero()) fail("DivisionByZero", "division by zero", re.span);
    switch (op) {
      case '+':
        return a + b;
      case '-':
        return a - b;
      case '*':
        return a * b;
      default:
        return a / b;
    }
  }
  SuperFunction a = as_function(l, le);
  if (op == '/') {
    if (rs) {
      if (std::get<Scalar>(r).is_zero()) fail("DivisionByZero", "division by zero", re.span);
      return a * std::get<Scalar>(r).inverse();
    }
    return a * inverse_even(as_function(r, re));
  }
  SuperFunction b = as_function(r, re);
  if (op == '+') return a + b;
  if (op == '-') return a - b;
  return a * b;
}

Value Evaluator::call(const Expr& e) {
  const std::string& f = e.text;
  auto arity = [&](size_t n, bool bound) {
    if (e.args.size() != n || e.has_bound != bound)
      fail("ArityError", f + " expects " + std::to_string(n) + " argument(s)" + (bound ? " and '; variables'" : ""),
           e.span);
  };
  auto arg = [&](size_t k) { return evaluate(*e.args[k]); };
  auto bound_names = [&] {
    std::vector<std::string> names;
    for (const auto& id : e.bound) {
      if (!table_->find(id.name)) fail("UnknownIdentifier", "'" + id.name + "' is not a variable", id.span);
      names.push_back(id.name);
    }
    return names;
  };
  auto element = [&](size_t k) { return as_element(arg(k), *e.args[k]).coeff; };
  auto caveat = [&](const std::string& c) {
    if (std::find(caveats_.begin(), caveats_.end(), c) == caveats_.end()) caveats_.push_back(c);
  };

  if (f == "d") {
    arity(1, false);
    return exterior_d(as_function(arg(0), *e.args[0]));
  }
  if (f == "exp") {
    arity(1, false);
    return exp_even(as_function(arg(0), *e.args[0]));
  }
  if (f == "iota" || f == "lie" || f == "dg") {
    arity(2, false);
    const LinearAction& a = need_action(e);
    auto x = element(0);
    SuperFunction g = as_function(arg(1), *e.args[1]);
    if (f == "dg") return equivariant_d(a, x, g);
    VectorField v = vector_field_of(a, x);
    return f == "iota" ? contraction(v, g) : lie_derivative(v, g);
  }
  if (f == "int") {
    arity(1, true);
    IntegrationSpec spec;
    spec.variables = bound_names();
    IntegrationResult r = integrate_superspace(as_function(arg(0), *e.args[0]), spec);
    log_.append(r.assumptions);
    return r.value.rebased(table_);
  }
  if (f == "fourier") {
    arity(1, true);
    FourierSpace sp;
    for (const auto& n : bound_names()) {
      bool even = table_->get(n).parity == E;
      (even ? sp.even : sp.odd).push_back(n);
      (even ? sp.dual_even : sp.dual_odd).push_back("hat_" + n);
    }
    FourierResult r = fourier_transform(as_function(arg(0), *e.args[0]), sp, FourierDirection::FunctionToDistribution);
    log_.append(r.assumptions);
    caveat("fourier: the value is a density against " + r.measure);
    return r.value;
  }
  if (f == "ber" || f == "str") {
    arity(1, false);
    Value m = arg(0);
    if (!std::holds_alternative<SuperMatrix>(m)) fail("TypeError", f + " expects a matrix", e.args[0]->span);
    return f == "ber" ? berezinian(std::get<SuperMatrix>(m)) : supertrace(std::get<SuperMatrix>(m));
  }
  if (f == "beta") {
    arity(1, false);
    const LinearAction& a = need_action(e);
    return beta_form(a, element(0)).beta.rebased(table_);
  }
  if (f == "thom") {
    arity(1, false);
    const LinearAction& a = need_action(e);
    ThomForm th = mathai_quillen_thom(a, element(0));
    log_.append(th.assumptions);
    if (a.odd_dim() > 0)
      caveat("thom: theta carries the (2pi)^{-l/2} fibre normalization fixed by pi_* theta = 1");
    if (!th.closed || !th.pushforward_is_one) verified_ = false;
    return th.theta.rebased(table_);
  }
  if (f == "spf") {
    arity(1, false);
    const LinearAction& a = need_action(e);
    SpfResult s = spf(a, element(0));
    log_.append(s.assumptions);
    return s.value;
  }
  if (f == "euler") {
    arity(1, false);
    const LinearAction& a = need_action(e);
    EulerResult r = euler_form(a, element(0));
    log_.append(r.assumptions);
    if (!r.relation_holds) verified_ = false;
    return r.euler;
  }
  if (f == "localize") {
    arity(2, false);
    const LinearAction& a = need_action(e);
    SuperFunction alpha = as_function(arg(0), *e.args[0]).rebased(a.form_table());
    LocalizationReport r = localize_linear(a, element(1), alpha);
    log_.append(r.assumptions);
    Report rep;
    rep.data = {{"lhs", r.lhs.to_string()},
                {"rhs", r.rhs.to_string()},
                {"jstar", r.jstar.to_string()},
                {"spf", r.spf.to_string()},
                {"equal", r.equal}};
    rep.verified = r.equal;
    return rep;
  }
  fail("UnknownFunction", "no function named '" + f + "'", e.span);
}

}  // namespace superforms::dsl
