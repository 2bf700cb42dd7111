#pragma once

#include "superforms/equivariant.hpp"

namespace superforms::cli {

// Comparison of the (0|2) rotation Thom form against the closed form
// (2 i pi / z) exp(xi eta - (i / 2z)(dxi^2 + deta^2)), allowing one global
// factor (2pi)^{l/2} = 2pi between the two normalizations.
struct ClosedFormCheck {
  ThomForm thom;
  SuperFunction reference;  // the closed form above, on the form table
  SuperFunction scaled;     // (2pi) theta(z)
  bool matches = false;     // scaled == reference
  bool matches_at_minus_z = false;  // (2pi) theta(-z) == reference
};

ClosedFormCheck rot02_closed_form_check();

}  // namespace superforms::cli
