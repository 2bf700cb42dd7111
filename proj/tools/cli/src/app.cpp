#include "superforms/cli/app.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "superforms/cli/reference.hpp"
#include "superforms/cli/suites.hpp"
#include "superforms/dsl/eval.hpp"
#include "superforms/errors.hpp"

namespace superforms::cli {

namespace {

using nlohmann::json;

struct Outcome {
  int status = kOk;
  json result = json::object();
  json assumptions = json::array();
  std::vector<std::string> caveats;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* status_name(int s) {
  switch (s) {
    case kOk:
      return "ok";
    case kVerificationFailed:
      return "verification_failed";
    case kUsageError:
      return "usage_error";
    default:
      return "engine_error";
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string read_source(const std::string& file, const std::string& expr) {
  if (!expr.empty() && !file.empty()) throw UsageError("give either a file or -e, not both");
  if (!expr.empty()) return expr;
  if (file.empty()) throw UsageError("no input: give a file or -e EXPR");
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json diagnostic_json(const dsl::Diagnostic& d) {
  return {{"code", d.code},
          {"message", d.message},
          {"line", d.span.line},
          {"column", d.span.column},
          {"length", d.span.length}};
}

// Parses and runs a script; parse and script errors become usage errors.
dsl::Evaluator evaluate_script(const std::string& source, const std::string& action, Outcome& o,
                               std::ostream& err) {
  dsl::ParseResult parsed = dsl::parse(source);
  if (!parsed.ok()) {
    json diags = json::array();
    for (const auto& d : parsed.diagnostics) {
      diags.push_back(diagnostic_json(d));
      err << dsl::render(d, source) << "\n";
    }
    o.result = {{"diagnostics", diags}};
    throw UsageError("the script does not parse");
  }
  try {
    dsl::Evaluator ev = action.empty() ? dsl::Evaluator() : dsl::Evaluator(action);
    ev.run(parsed.program);
    o.assumptions = dsl::assumptions_json(ev.assumptions());
    o.caveats = ev.caveats();
    return ev;
  } catch (const dsl::ScriptError& e) {
    err << dsl::render(e.diagnostic(), source) << "\n";
    o.result = {{"diagnostics", json::array({diagnostic_json(e.diagnostic())})}};
    throw UsageError(e.what());
  }
}

struct ActionChoice {
  std::string space = "0,2";
  std::string kind = "rot";
  std::string params;
  std::string point;
};

std::string registered_name(const ActionChoice& c) {
  std::string space = c.space;
  space.erase(std::remove(space.begin(), space.end(), ' '), space.end());
  std::map<std::pair<std::string, std::string>, std::string> table = {{{"0,2", "rot"}, "rot02"},
                                                                      {{"0,2", "hyp"}, "hyp02"},
                                                                      {{"2,0", "rot"}, "rot20"},
                                                                      {{"2,2", "rot"}, "rot22"}};
  auto it = table.find({space, c.kind});
  if (it == table.end()) throw UsageError("no test action '" + c.kind + "' on R^(" + space + ")");
  return it->second;
}

// Generic element with the given parameter names, specialized by --point.
std::vector<Scalar> element_for(const LinearAction& a, const ActionChoice& c) {
  std::vector<std::string> names = c.params.empty() ? a.params() : split(c.params, ',');
  if (names.size() != a.generators().size())
    throw UsageError("need " + std::to_string(a.generators().size()) + " parameter name(s)");
  std::map<std::string, std::string> point;
  for (const auto& kv : split(c.point, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--point expects name=value pairs");
    point[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  std::vector<Scalar> x;
  for (const auto& n : names) {
    auto it = point.find(n);
    x.push_back(it == point.end() ? Scalar::param(n) : Scalar::parse(it->second));
    if (it != point.end()) point.erase(it);
  }
  if (!point.empty()) throw UsageError("--point names unknown parameter '" + point.begin()->first + "'");
  return x;
}

json element_json(const std::vector<Scalar>& x) {
  json out = json::array();
  for (const auto& s : x) out.push_back(s.to_string());
  return out;
}

const std::string kNormalizationCaveat =
    "normalization: theta is normalized so that pi_* theta = 1, i.e. with the fibre measure (2pi)^{-l/2}; "
    "closed forms written without that measure differ by the global factor (2pi)^{l/2}";

void thom_command(const ActionChoice& c, Outcome& o) {
  std::string name = registered_name(c);
  LinearAction a = *dsl::registered_action(name);
  auto x = element_for(a, c);
  ThomForm th = mathai_quillen_thom(a, x);
  o.result = {{"action", name},
              {"element", element_json(x)},
              {"theta", th.theta.to_string()},
              {"normalization", th.normalization.to_string()},
              {"orientation", th.orientation},
              {"closed", th.closed},
              {"pushforward", th.pushforward.to_string()},
              {"pushforward_is_one", th.pushforward_is_one}};
  o.assumptions = dsl::assumptions_json(th.assumptions);
  if (a.odd_dim() > 0) o.caveats.push_back(kNormalizationCaveat);
  if (name == "rot02" && x.size() == 1 && x[0] == Scalar::param("z")) {
    ClosedFormCheck w = rot02_closed_form_check();
    o.result["closed_form_check"] = {{"reference", w.reference.to_string()},
                                     {"scaled_theta", w.scaled.to_string()},
                                     {"matches", w.matches},
                                     {"matches_at_minus_z", w.matches_at_minus_z}};
    if (!w.matches)
      o.caveats.push_back(w.matches_at_minus_z
                              ? "closed form: (2pi) theta matches the reference closed form only after z -> -z"
                              : "closed form: (2pi) theta does not match the reference closed form");
  }
  if (!th.closed || !th.pushforward_is_one) o.status = kVerificationFailed;
}

void spf_command(const ActionChoice& c, Outcome& o) {
  std::string name = registered_name(c);
  LinearAction a = *dsl::registered_action(name);
  auto x = element_for(a, c);
  EulerResult e = euler_form(a, x);
  o.result = {{"action", name},
              {"element", element_json(x)},
              {"spf", e.spf.to_string()},
              {"euler", e.euler.to_string()},
              {"relation_holds", e.relation_holds}};
  o.assumptions = dsl::assumptions_json(e.assumptions);
  if (a.odd_dim() > 0) o.caveats.push_back(kNormalizationCaveat);
  if (!e.relation_holds) o.status = kVerificationFailed;
}

void localize_command(const ActionChoice& c, const std::string& alpha_name, Outcome& o) {
  std::string name = registered_name(c);
  LinearAction a = *dsl::registered_action(name);
  auto x = element_for(a, c);
  ThomForm th = mathai_quillen_thom(a, x);
  SuperFunction alpha;
  if (alpha_name == "theta") {
    alpha = th.theta;
  } else if (alpha_name == "ctheta") {
    alpha = th.theta * (x[0] * x[0] + Scalar(1));
  } else if (alpha_name == "ptheta") {
    BetaForm b = beta_form(a, x);
    alpha = th.theta * (b.d_g_beta * b.d_g_beta + b.d_g_beta * Scalar(2) +
                        SuperFunction::constant(a.form_table(), Scalar(1)));
  } else {
    throw UsageError("--alpha must be one of theta, ctheta, ptheta");
  }
  LocalizationReport r = localize_linear(a, x, alpha);
  o.result = {{"action", name},
              {"element", element_json(x)},
              {"alpha", alpha_name},
              {"lhs", r.lhs.to_string()},
              {"rhs", r.rhs.to_string()},
              {"jstar", r.jstar.to_string()},
              {"spf", r.spf.to_string()},
              {"equal", r.equal}};
  o.assumptions = dsl::assumptions_json(th.assumptions);
  for (auto& entry : dsl::assumptions_json(r.assumptions)) o.assumptions.push_back(entry);
  if (!r.equal) o.status = kVerificationFailed;
}

void fourier_command(const std::string& source, const std::string& vars, Outcome& o, std::ostream& err) {
  dsl::Evaluator ev = evaluate_script(source, "", o, err);
  auto last = ev.last_value();
  if (!last) throw UsageError("the script has no value to transform");
  SuperFunction f = std::holds_alternative<Scalar>(*last)
                        ? SuperFunction::constant(ev.table(), std::get<Scalar>(*last))
                        : std::holds_alternative<SuperFunction>(*last) ? std::get<SuperFunction>(*last)
                                                                      : throw UsageError("expected a function");
  FourierSpace sp;
  for (const auto& n : split(vars, ',')) {
    if (!f.table()->find(n)) throw UsageError("'" + n + "' is not a variable of the script");
    bool even = f.table()->get(n).parity == Parity::Even;
    (even ? sp.even : sp.odd).push_back(n);
    (even ? sp.dual_even : sp.dual_odd).push_back("hat_" + n);
  }
  if (sp.even.empty() && sp.odd.empty()) throw UsageError("--vars is required");
  FourierResult fwd = fourier_transform(f, sp, FourierDirection::FunctionToDistribution);
  FourierResult back = fourier_transform(fwd.value, sp, FourierDirection::DistributionToFunction);
  bool round_trip = back.value == f.rebased(back.value.table());
  o.result = {{"input", f.to_string()},
              {"transform", fwd.value.to_string()},
              {"measure", fwd.measure},
              {"inverse_round_trip", round_trip}};
  o.assumptions = dsl::assumptions_json(fwd.assumptions);
  if (!round_trip) o.status = kVerificationFailed;
}

void ber_command(const std::string& source, Outcome& o, std::ostream& err) {
  dsl::Evaluator ev = evaluate_script(source, "", o, err);
  auto last = ev.last_value();
  if (!last || !std::holds_alternative<SuperMatrix>(*last)) throw UsageError("the script must end with a matrix");
  const SuperMatrix& m = std::get<SuperMatrix>(*last);
  o.result = {{"matrix", m.to_string()}, {"ber", berezinian(m).to_string()}, {"str", supertrace(m).to_string()}};
}

void check_command(const std::string& suite, uint64_t seed, Outcome& o) {
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  json suites = json::array();
  size_t cases = 0, failures = 0;
  for (const auto& n : names) {
    SuiteResult r;
    try {
      r = run_suite(n, seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    suites.push_back(r.to_json());
    cases += r.cases.size();
    failures += r.failures();
  }
  o.result = {{"seed", seed}, {"suites", suites}, {"cases", cases}, {"failures", failures}};
  if (failures) o.status = kVerificationFailed;
}

void render_text(const json& j, int indent, std::ostream& out) {
  std::string pad(static_cast<size_t>(indent), ' ');
  auto scalar_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render_text(v, indent + 2, out);
      } else {
        out << pad << k << ": " << (v.is_structured() ? v.dump() : scalar_text(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        out << pad << "-\n";
        render_text(v, indent + 2, out);
      } else {
        out << pad << "- " << scalar_text(v) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

bool use_color(bool to_file) {
  const char* env = std::getenv("SUPERFORMS_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return !to_file && isatty(STDOUT_FILENO);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus on linear supermanifolds", "superforms"};
  app.fallthrough();
  app.require_subcommand(1);
  bool as_json = false;
  uint64_t seed = 0;
  std::string output, expr, suite_flag;
  app.add_flag("--json", as_json, "Emit JSON");
  app.add_option("--seed", seed, "Seed for the randomized suites")->capture_default_str();
  app.add_option("-o", output, "Write the output to FILE");
  app.add_option("-e", expr, "Inline script");
  app.add_option("--suite", suite_flag, "Suite name for check");

  std::string file, action_name;
  auto* eval = app.add_subcommand("eval", "Evaluate a script");
  eval->add_option("file", file, "Script file");
  eval->add_option("--action", action_name, "Registered action to start from");

  ActionChoice choice;
  std::string alpha = "theta", vars, suite_pos;
  auto add_action_options = [&](CLI::App* sub) {
    sub->add_option("--space", choice.space, "k,l")->capture_default_str();
    sub->add_option("--action", choice.kind, "rot or hyp")->capture_default_str();
    sub->add_option("--param", choice.params, "Parameter names, comma separated");
    sub->add_option("--point", choice.point, "Values, e.g. z=1");
  };
  auto* thom = app.add_subcommand("thom", "Thom form of a test action");
  add_action_options(thom);
  auto* spf_cmd = app.add_subcommand("spf", "Spf and the Euler relation of a test action");
  add_action_options(spf_cmd);
  auto* localize = app.add_subcommand("localize", "Verify the localization formula");
  add_action_options(localize);
  localize->add_option("--alpha", alpha, "theta, ctheta or ptheta")->capture_default_str();
  auto* fourier = app.add_subcommand("fourier", "Fourier transform of a script's value");
  fourier->add_option("file", file, "Script file");
  fourier->add_option("--vars", vars, "Variables to transform, comma separated");
  auto* ber = app.add_subcommand("ber", "Berezinian and supertrace of a script's matrix");
  ber->add_option("file", file, "Script file");
  auto* check = app.add_subcommand("check", "Run invariant suites");
  check->add_option("suite", suite_pos, "Suite name or 'all'");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "superforms: " << e.what() << "\n";
    return kUsageError;
  }

  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    if (eval->parsed()) {
      dsl::Evaluator ev = evaluate_script(read_source(file, expr), action_name, o, err);
      json stmts = json::array();
      for (const auto& s : ev.outputs()) stmts.push_back({{"source", s.source}, {"value", s.value}});
      o.result = {{"statements", stmts}};
      if (!ev.verified()) o.status = kVerificationFailed;
    } else if (thom->parsed()) {
      thom_command(choice, o);
    } else if (spf_cmd->parsed()) {
      spf_command(choice, o);
    } else if (localize->parsed()) {
      localize_command(choice, alpha, o);
    } else if (fourier->parsed()) {
      fourier_command(read_source(file, expr), vars, o, err);
    } else if (ber->parsed()) {
      ber_command(read_source(file, expr), o, err);
    } else if (check->parsed()) {
      if (!suite_pos.empty() && !suite_flag.empty() && suite_pos != suite_flag)
        throw UsageError("conflicting suite names");
      check_command(!suite_pos.empty() ? suite_pos : !suite_flag.empty() ? suite_flag : "all", seed, o);
    }
  } catch (const UsageError& e) {
    o.status = kUsageError;
    o.result["error"] = {{"code", "UsageError"}, {"message", e.what()}};
  } catch (const Error& e) {
    o.status = e.code() == ErrorCode::ParseError ? kUsageError : kEngineError;
    o.result = {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    o.status = kEngineError;
    o.result = {{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  json doc = {{"status", status_name(o.status)},
              {"result", o.result},
              {"assumptions", o.assumptions},
              {"caveats", o.caveats},
              {"timing_ms", ms}};

  std::ofstream file_out;
  if (!output.empty()) {
    file_out.open(output);
    if (!file_out) {
      err << "superforms: cannot write '" << output << "'\n";
      return kUsageError;
    }
  }
  std::ostream& sink = output.empty() ? out : file_out;
  if (as_json) {
    sink << doc.dump(2) << "\n";
  } else {
    bool color = use_color(!output.empty());
    const char* paint = o.status == kOk ? "\033[32m" : "\033[31m";
    sink << "status: " << (color ? paint : "") << status_name(o.status) << (color ? "\033[0m" : "") << "\n";
    render_text(json{{"result", doc["result"]}}, 0, sink);
    if (!o.assumptions.empty()) render_text(json{{"assumptions", o.assumptions}}, 0, sink);
    if (!o.caveats.empty()) render_text(json{{"caveats", o.caveats}}, 0, sink);
    sink << "timing_ms: " << ms << "\n";
  }
  return o.status;
}

}  // namespace superforms::cli
