#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "superforms/dsl/syntax.hpp"
#include "superforms/equivariant.hpp"

namespace superforms::dsl {

// Test actions shipped with the tool, by name: rot02, hyp02, rot20, rot22.
// The generic element uses parameter z (z1, z2 for rot22).
std::optional<LinearAction> registered_action(const std::string& name);
std::vector<std::string> registered_action_names();

// Lie algebra element as coefficients on the action's generators.
struct Element {
  std::vector<Scalar> coeff;
};

struct Report {
  nlohmann::json data;
  bool verified = true;
};

using Value = std::variant<Scalar, SuperFunction, Element, SuperMatrix, Report>;

nlohmann::json assumptions_json(const AssumptionLog& log);
nlohmann::json value_json(const Value& v);

struct StatementOutput {
  std::string source;  // formatted statement
  nlohmann::json value;
};

class Evaluator {
 public:
  Evaluator() = default;
  explicit Evaluator(const std::string& action_name);

  // Throws ScriptError for script problems and superforms::Error from the engine.
  void run(const Program& p);
  Value evaluate(const Expr& e);

  const std::vector<StatementOutput>& outputs() const { return outputs_; }
  std::optional<Value> last_value() const { return last_; }
  bool verified() const { return verified_; }
  const AssumptionLog& assumptions() const { return log_; }
  const std::vector<std::string>& caveats() const { return caveats_; }
  const TablePtr& table() const { return table_; }

 private:
  void execute(const Stmt& s);
  void set_action(LinearAction a, std::vector<std::string> generator_names);
  void rebuild_table();
  Value call(const Expr& e);
  Value binary(const Expr& e, Value l, Value r);
  SuperFunction as_function(const Value& v, const Expr& at);
  Scalar as_scalar(const Value& v, const Expr& at);
  Element as_element(const Value& v, const Expr& at);
  const LinearAction& need_action(const Expr& at) const;
  [[noreturn]] void fail(const std::string& code, const std::string& msg, const Span& at) const;

  std::optional<LinearAction> action_;
  std::vector<std::string> generator_names_;
  std::vector<Generator> declared_;
  std::vector<std::string> params_;
  std::map<std::string, Value> lets_;
  TablePtr table_ = VariableTable::make({});
  std::vector<StatementOutput> outputs_;
  std::optional<Value> last_;
  bool verified_ = true;
  AssumptionLog log_;
  std::vector<std::string> caveats_;
};

}  // namespace superforms::dsl
