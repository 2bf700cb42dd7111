// Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is the number of failed criteria (capped at 10).

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "superforms/cli/app.hpp"
#include "superforms/cli/reference.hpp"
#include "superforms/cli/suites.hpp"
#include "superforms/dsl/eval.hpp"
#include "superforms/equivariant.hpp"

namespace sf = superforms;
namespace cli = superforms::cli;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::map<std::string, cli::SuiteResult>& suites() {
  static std::map<std::string, cli::SuiteResult> cache;
  return cache;
}

const cli::SuiteResult& suite(const std::string& name) {
  auto it = suites().find(name);
  if (it == suites().end()) it = suites().emplace(name, cli::run_suite(name, 0)).first;
  return it->second;
}

// Requires at least `min` cases under `prefix`, all passing.
bool require(const cli::SuiteResult& s, const std::string& prefix, size_t min, std::ostringstream& d) {
  size_t n = s.count(prefix), ok = s.passed(prefix);
  d << " " << s.name << ":" << prefix << " " << ok << "/" << n;
  if (n < min) d << " (need " << min << ")";
  return n >= min && ok == n;
}

bool require_case(const cli::SuiteResult& s, const std::string& name, std::ostringstream& d) {
  for (const auto& c : s.cases)
    if (c.name == name) {
      d << " " << name << (c.passed ? " ok" : " FAILED");
      return c.passed;
    }
  d << " " << name << " missing";
  return false;
}

std::string first_failure(const cli::SuiteResult& s) {
  for (const auto& c : s.cases)
    if (!c.passed) return "; first failure " + c.name + ": " + c.detail;
  return "";
}

Verdict rot02_closed_form_check() {
  cli::ClosedFormCheck w = cli::rot02_closed_form_check();
  std::ostringstream out, err;
  cli::run({"thom", "--space", "0,2", "--action", "rot", "--json"}, out, err);
  json doc = json::parse(out.str());
  bool caveat = false;
  for (const auto& c : doc["caveats"])
    if (c.get<std::string>().rfind("normalization:", 0) == 0) caveat = true;
  std::ostringstream d;
  d << "2pi*theta = " << w.scaled.to_string() << "; reference = " << w.reference.to_string()
    << "; literal match " << (w.matches ? "yes" : "no") << ", match after z -> -z "
    << (w.matches_at_minus_z ? "yes" : "no") << "; pi_* theta = " << w.thom.pushforward.to_string()
    << "; closed " << (w.thom.closed ? "yes" : "no") << "; normalization caveat " << (caveat ? "yes" : "no");
  return {w.matches && w.thom.pushforward_is_one && caveat, d.str()};
}

Verdict thom_closed() {
  std::ostringstream d;
  bool ok = true;
  for (const char* name : {"rot02", "rot20", "rot22"}) {
    sf::LinearAction a = *sf::dsl::registered_action(name);
    auto x = a.generic_element();
    sf::ThomForm th = sf::mathai_quillen_thom(a, x);
    bool zero = sf::equivariant_d(a, x, th.theta).is_zero();
    d << " " << name << (zero ? " closed" : " NOT closed");
    ok = ok && zero;
  }
  return {ok, d.str()};
}

Verdict localization() {
  const auto& s = suite("localization");
  std::ostringstream d;
  bool ok = true;
  for (const char* name : {"rot02", "rot22"})
    for (const char* alpha : {"theta", "c_theta", "theta_p_dgbeta"})
      ok = require_case(s, std::string(name) + "/" + alpha, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

Verdict euler() {
  const auto& s = suite("euler");
  std::ostringstream d;
  bool ok = true;
  for (const auto& name : sf::dsl::registered_action_names()) ok = require_case(s, name, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

Verdict fourier() {
  const auto& s = suite("fourier");
  std::ostringstream d;
  bool ok = require(s, "odd_example", 1, d);
  ok = require(s, "involution_", 50, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

Verdict berezinian() {
  const auto& s = suite("berezinian");
  std::ostringstream d;
  bool ok = require(s, "multiplicative/", 100, d);
  ok = require(s, "spo_exp/", 50, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

Verdict moment() {
  const auto& s = suite("moment");
  std::ostringstream d;
  return {require(s, "poisson/", 64, d), d.str() + first_failure(s)};
}

Verdict integration() {
  const auto& s = suite("integration");
  std::ostringstream d;
  bool ok = require(s, "fubini/", 50, d);
  ok = require(s, "translation_odd/", 1, d) && ok;
  ok = require(s, "translation_even/", 1, d) && ok;
  ok = require(s, "change_of_variables/", 50, d) && ok;
  ok = require(s, "liouville/", 1, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

Verdict cartan() {
  const auto& s = suite("cartan");
  std::ostringstream d;
  bool ok = require(s, "rot02/", 100, d);
  ok = require(s, "hyp02/", 100, d) && ok;
  return {ok, d.str() + first_failure(s)};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  for (size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  status = pclose(p);
  return out;
}

std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.find("\"timing_ms\":") == std::string::npos) kept += line + "\n";
  return kept;
}

Verdict determinism() {
  const std::string cmd = std::string("'") + SUPERFORMS_CLI_PATH + "' check all --json --seed 0";
  int s1 = 0, s2 = 0;
  std::string a = capture(cmd, s1), b = capture(cmd, s2);
  std::ostringstream d;
  d << " run sizes " << a.size() << " and " << b.size() << " bytes";
  if (a.empty()) return {false, d.str() + "; no output"};
  bool same = without_timing(a) == without_timing(b);
  d << "; identical apart from timing_ms: " << (same ? "yes" : "no")
    << "; identical including timing_ms: " << (a == b ? "yes" : "no");
  return {same && s1 == s2, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"closed-form Thom form on R^(0,2)", rot02_closed_form_check},
      {"Thom closedness on R^(0,2), R^(2,0), R^(2,2)", thom_closed},
      {"linear localization on R^(0,2), R^(2,2)", localization},
      {"Euler/Spf relation for all test actions", euler},
      {"Fourier example and involution", fourier},
      {"Berezinian multiplicativity and Ber(exp X) = 1", berezinian},
      {"moment map Poisson morphism on spo(2|2)", moment},
      {"integration conventions", integration},
      {"Cartan relations under rotation and hyperbolic actions", cartan},
      {"determinism of check all --json --seed 0", determinism},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << (k + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[k].first
              << "  [" << v.detail << " ]" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed;
}
