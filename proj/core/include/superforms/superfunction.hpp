#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "superforms/scalar.hpp"
#include "superforms/variable_table.hpp"

namespace superforms {

// exp(-1/2 v^T A v + b^T v + c) over the even generators of a table.
// A is symmetric and stored by its upper triangle, indexed by even slots.
struct GaussianKernel {
  std::map<std::pair<size_t, size_t>, Scalar> A;
  std::map<size_t, Scalar> b;
  Scalar c;

  bool is_trivial() const { return A.empty() && b.empty() && c.is_zero(); }
  Scalar a(size_t i, size_t j) const;
  void set_a(size_t i, size_t j, const Scalar& v);
  GaussianKernel operator+(const GaussianKernel& o) const;
  GaussianKernel operator-() const;
  bool involves(size_t even_slot) const;

  friend bool operator==(const GaussianKernel& x, const GaussianKernel& y) {
    return x.A == y.A && x.b == y.b && x.c == y.c;
  }
  friend bool operator<(const GaussianKernel& x, const GaussianKernel& y) {
    if (x.A != y.A) return x.A < y.A;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

// Monomial xi^I * x^alpha: odd part as an ascending bitset of odd slots,
// even part as dense exponents over even slots.
struct MonoKey {
  uint64_t odd = 0;
  std::vector<int> even;

  int odd_degree() const { return __builtin_popcountll(odd); }
  int even_degree() const;
  friend bool operator==(const MonoKey& a, const MonoKey& b) { return a.odd == b.odd && a.even == b.even; }
  friend bool operator<(const MonoKey& a, const MonoKey& b);
};

using PolyPart = std::map<MonoKey, Scalar>;

// Sign of xi^a * xi^b = sign * xi^(a|b); 0 when a & b != 0.
int koszul_sign(uint64_t a, uint64_t b);

class SuperFunction {
 public:
  SuperFunction() = default;
  explicit SuperFunction(TablePtr table) : table_(std::move(table)) {}

  static SuperFunction constant(TablePtr table, const Scalar& c);
  static SuperFunction var(TablePtr table, const std::string& name);
  static SuperFunction kernel(TablePtr table, GaussianKernel k);

  const TablePtr& table() const { return table_; }
  const std::map<GaussianKernel, PolyPart>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  bool has_kernels() const;
  // The kernel-free part.
  PolyPart polynomial_part() const;

  void add_term(const GaussianKernel& k, const MonoKey& m, const Scalar& c);
  MonoKey unit_key() const { return MonoKey{0, std::vector<int>(table_->n_even(), 0)}; }

  SuperFunction operator-() const;
  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  SuperFunction operator*(const Scalar& s) const;
  friend SuperFunction operator*(const Scalar& s, const SuperFunction& f) { return f * s; }
  friend bool operator==(const SuperFunction& a, const SuperFunction& b);
  friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

  // Left derivative.
  SuperFunction derive(const std::string& name) const;
  // Right derivative: f = sum (f d/dz) z with z moved to the right.
  SuperFunction derive_right(const std::string& name) const;

  // Parity: 0 even, 1 odd, -1 mixed. Zero is even.
  int parity() const;

  // Coefficient of the constant monomial with trivial kernel.
  Scalar constant_term() const;
  bool is_constant() const;
  // Only the constant part, i.e. no generators and trivial kernels.
  bool is_scalar() const { return is_constant(); }

  // Replace generators by SuperFunctions on `target` (missing ones map to
  // themselves by name). Kernels are re-expanded via exp_even, so their
  // substituted exponents must stay Gaussian-polynomial.
  SuperFunction substitute(const std::map<std::string, SuperFunction>& images, const TablePtr& target) const;
  // Same function on another table containing every generator that occurs.
  SuperFunction rebased(const TablePtr& target) const;
  // Set the named generators to zero.
  SuperFunction set_zero(const std::vector<std::string>& names) const;
  std::vector<std::string> occurring_generators() const;

  std::string to_string() const;

 private:
  void check_table(const SuperFunction& o) const;

  TablePtr table_;
  std::map<GaussianKernel, PolyPart> parts_;
};

// exp of an even function Q + N with Q of degree <= 2 in even generators and
// N nilpotent.
SuperFunction exp_even(const SuperFunction& f);
// Square root by the finite Taylor series around a constant body.
SuperFunction sqrt_even(const SuperFunction& f);
// Exponent -1/2 v^T A v + b^T v + c as a polynomial SuperFunction.
SuperFunction kernel_exponent(const TablePtr& table, const GaussianKernel& k);

// Value of f at a point of a finite Grassmann envelope. `point` maps every
// generator of f's table to an element over `envelope` (a table of odd
// generators only); even generators must get even values, odd ones odd values.
SuperFunction evaluate_at_point(const SuperFunction& f, const std::map<std::string, SuperFunction>& point,
                                const TablePtr& envelope);

const char* parity_name(int parity);

}  // namespace superforms
