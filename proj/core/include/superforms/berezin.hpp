#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superforms/superfunction.hpp"
#include "superforms/superlinalg.hpp"

namespace superforms {

// One formal square-root choice made while integrating a Gaussian kernel.
struct BranchChoice {
  std::vector<std::string> variables;
  std::vector<Scalar> pivots;
  // Chosen root of the product of pivots.
  Scalar root;
  std::string rule;
};

class AssumptionLog {
 public:
  void add(BranchChoice c) { entries_.push_back(std::move(c)); }
  void append(const AssumptionLog& o) { entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end()); }
  const std::vector<BranchChoice>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<BranchChoice> entries_;
};

struct IntegrationResult {
  SuperFunction value;
  AssumptionLog assumptions;
};

enum class Normalization { Raw, Liouville };

struct IntegrationSpec {
  // Integration variables; the odd ones are integrated in the listed order.
  std::vector<std::string> variables;
  Normalization normalization = Normalization::Raw;
  // Liouville only: a symplectic form on exactly `variables` (same order and
  // parities) and the orientation of its odd part.
  std::optional<BilinearForm> form;
  int orientation = 1;
  // Liouville only: use this symplectic basis instead of computing one.
  std::optional<ScalarMatrix> basis;
};

// d_(v1..vn) = d/dv1 o ... o d/dvn. The result lives on the table without the
// integrated variables.
SuperFunction berezin_integral(const SuperFunction& f, const std::vector<std::string>& odd_vars);

// Gaussian integration over even variables by completing squares. Each kernel
// contributes (2pi)^{k/2} / sqrt(product of pivots); the root is chosen to
// agree with the product of principal roots at parameters = 1 and logged.
IntegrationResult gaussian_integral_even(const SuperFunction& f, const std::vector<std::string>& even_vars);

// Even variables first (they commute with everything), then Berezin over the
// odd ones in the listed order.
IntegrationResult integrate_superspace(const SuperFunction& f, const IntegrationSpec& spec);

// Order x, dxi, dx, xi used for integrating pseudodifferential forms.
std::vector<std::string> form_integration_order(const TablePtr& table, const std::vector<std::string>& even_coords,
                                                const std::vector<std::string>& odd_coords);

struct ChangeOfVariables {
  bool equal = false;
  SuperFunction transformed;  // integral of Ber_(1,0)(J(h)) * f(h(v))
  SuperFunction original;     // integral of f
  AssumptionLog assumptions;
};

// h acts linearly on the coordinate vector of `variables`: h(z)_i = sum_j H_ij z_j.
// Entries of H may depend on generators outside `variables`.
ChangeOfVariables change_of_variables_verify(const SuperFunction& f, const SuperMatrix& h,
                                             const std::vector<std::string>& variables);

// Jacobian J_ij = d y_j / d z_i of the linear pullback y = h(z).
SuperMatrix linear_jacobian(const SuperMatrix& h, const TablePtr& table, const std::vector<std::string>& variables);

enum class FourierDirection { FunctionToDistribution, DistributionToFunction };

struct FourierSpace {
  std::vector<std::string> even, odd;            // coordinates x, xi
  std::vector<std::string> dual_even, dual_odd;  // dual coordinates y, f
};

struct FourierResult {
  SuperFunction value;
  // Berezin measure the value is a density against; empty for functions.
  std::string measure;
  AssumptionLog assumptions;
};

// Pairing P = sum x_i y_i + sum f_j xi_j.
// FunctionToDistribution: N * integral d_(x,xi) phi e^{iP}, N = (-1)^{n(n-1)/2} i^n / (2pi)^m.
// DistributionToFunction: integral d_(y,f) psi e^{-iP}.
// Missing variables of the target side are appended to the table.
FourierResult fourier_transform(const SuperFunction& f, const FourierSpace& space, FourierDirection direction);

// (2pi)^{-(k+l)/2} times the integral over the fibre coordinates and their
// differentials, in form order.
IntegrationResult direct_image(const SuperFunction& f, const std::vector<std::string>& fibre_even,
                               const std::vector<std::string>& fibre_odd);

}  // namespace superforms
