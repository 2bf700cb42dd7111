#pragma once

#include <map>
#include <string>
#include <vector>

#include "superforms/berezin.hpp"
#include "superforms/superlinalg.hpp"

namespace superforms {

// Linear action of an even abelian Lie algebra with generators G_1..G_r on
// V = R^{(k,l)}, preserving an even super-symmetric form Q. Elements are
// coefficient vectors X = sum x_k G_k; the generic element uses the dual
// parameters z_k as coefficients.
class LinearAction {
 public:
  // Throws NotInvariant if a generator does not preserve Q or two generators
  // do not commute, DimensionMismatch on shape errors.
  LinearAction(std::vector<Parity> basis, BilinearForm q, std::vector<ScalarMatrix> generators,
               std::vector<std::string> coords, std::vector<std::string> params);

  const std::vector<Parity>& basis() const { return basis_; }
  const BilinearForm& form() const { return q_; }
  const std::vector<ScalarMatrix>& generators() const { return gens_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<std::string>& params() const { return params_; }
  size_t even_dim() const;
  size_t odd_dim() const;

  std::vector<std::string> even_coords() const;
  std::vector<std::string> odd_coords() const;
  // Coordinates followed by their differentials "d<name>".
  const TablePtr& form_table() const { return table_; }

  std::vector<Scalar> generic_element() const;
  ScalarMatrix rho(const std::vector<Scalar>& x) const;

 private:
  std::vector<Parity> basis_;
  BilinearForm q_;
  std::vector<ScalarMatrix> gens_;
  std::vector<std::string> coords_, params_;
  TablePtr table_;
};

// Derivation sum_v coeff[v] d/dv (left derivatives) of the given parity.
struct VectorField {
  TablePtr table;
  int parity = 0;
  std::map<std::string, SuperFunction> coeff;

  SuperFunction apply(const SuperFunction& f) const;
};

// X_M z^i = -sum_j rho(X)_ij z^j.
VectorField vector_field_of(const LinearAction& action, const std::vector<Scalar>& x);

// d = sum dz d/dz over coordinates that have a differential in the table.
SuperFunction exterior_d(const SuperFunction& f);
// iota(zeta) = (-1)^{p(zeta)} sum zeta^v d/d(dv).
SuperFunction contraction(const VectorField& zeta, const SuperFunction& f);
// L = d iota + iota d.
SuperFunction lie_derivative(const VectorField& zeta, const SuperFunction& f);
// The derivation extending z -> zeta(z), dz -> d(zeta(z)); must agree with lie_derivative.
SuperFunction lie_derivation(const VectorField& zeta, const SuperFunction& f);
// d_g(X) = d - i iota(X_M).
SuperFunction equivariant_d(const LinearAction& action, const std::vector<Scalar>& x, const SuperFunction& f);

// beta(Y) = sum Q_ab c_a dz_b with Y_M = sum c_a d/dz_a; iota(Y_M) beta = Q(Y_M, Y_M).
struct BetaForm {
  SuperFunction beta;
  SuperFunction d_g_beta;
  SuperFunction zero_form_part;  // 0-form part of d_g beta
  SuperFunction expected_zero_form;  // -i Q(Y_M, Y_M)
};
BetaForm beta_form(const LinearAction& action, const std::vector<Scalar>& y);

Scalar pfaffian(const ScalarMatrix& a);

struct ThomForm {
  SuperFunction theta;     // on the form table
  SuperFunction omega;     // on the form table extended by the auxiliaries
  std::vector<std::string> auxiliaries;
  Scalar normalization;    // the D_{Pi V} constant
  int orientation = 1;     // sign of Pf(-Q_odd): orientation of V_1 compatible with Q
  bool closed = false;     // d_g(X) theta == 0
  SuperFunction pushforward;  // pi_* theta with the compatible orientation
  bool pushforward_is_one = false;
  AssumptionLog assumptions;
};

// Mathai-Quillen Thom form of the linear action at X (M = point).
ThomForm mathai_quillen_thom(const LinearAction& action, const std::vector<Scalar>& x);

// omega = -1/2 Q(v,v) + i sum (-1)^{p_a} Q_ab dz_a w_b + (i/2) sum (Q rho(X))_ab w_a w_b,
// written out directly; used to cross-check the construction.
SuperFunction thom_exponent_closed_form(const LinearAction& action, const std::vector<Scalar>& x,
                                        const TablePtr& table, const std::vector<std::string>& aux);

struct SpfResult {
  Scalar value;
  AssumptionLog assumptions;
};
// i^{(k-l)/2} * integral over Pi V of exp(i mu(rho(X))) with the D_{Pi V} measure.
SpfResult spf(const LinearAction& action, const std::vector<Scalar>& x);

struct EulerResult {
  Scalar euler;   // j^* theta
  Scalar spf;
  bool relation_holds = false;  // euler * i^{(k-l)/2} == spf
  AssumptionLog assumptions;
};
EulerResult euler_form(const LinearAction& action, const std::vector<Scalar>& x);

struct LocalizationReport {
  SuperFunction lhs;  // integral over V with the compatible orientation
  SuperFunction rhs;  // i^{(m-n)/2} (2pi)^{(n+m)/2} j^*alpha / Spf
  Scalar jstar;
  Scalar spf;
  bool equal = false;
  AssumptionLog assumptions;
};
// Throws NotClosed when d_g(X) alpha != 0.
LocalizationReport localize_linear(const LinearAction& action, const std::vector<Scalar>& x,
                                   const SuperFunction& alpha);

enum class Membership { U, UPlus };
bool u_membership(const LinearAction& action, const std::vector<Scalar>& x, Membership which);

struct ZeroLocus {
  std::vector<std::vector<Scalar>> even, odd;
};
ZeroLocus zero_locus_linear(const LinearAction& action, const std::vector<Scalar>& x);

// i^n for integer n.
Scalar i_power(long n);

}  // namespace superforms
