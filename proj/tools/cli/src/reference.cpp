#include "superforms/cli/reference.hpp"

#include "superforms/dsl/eval.hpp"

namespace superforms::cli {

ClosedFormCheck rot02_closed_form_check() {
  LinearAction a = *dsl::registered_action("rot02");
  const TablePtr& t = a.form_table();
  Scalar z = Scalar::param("z");
  auto v = [&](const char* n) { return SuperFunction::var(t, n); };

  ClosedFormCheck w;
  w.thom = mathai_quillen_thom(a, {z});
  SuperFunction exponent = v("xi") * v("eta") - (v("dxi") * v("dxi") + v("deta") * v("deta")) *
                                                    (Scalar::i() / (Scalar(2) * z));
  w.reference = exp_even(exponent) * (Scalar(2) * Scalar::i() * Scalar::two_pi() / (Scalar(2) * z));
  w.scaled = w.thom.theta * Scalar::two_pi();
  w.matches = w.scaled == w.reference;
  w.matches_at_minus_z = mathai_quillen_thom(a, {-z}).theta * Scalar::two_pi() == w.reference;
  return w;
}

}  // namespace superforms::cli
