#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "superforms/gaussian_rational.hpp"

namespace superforms {

// Name of the root variable tau with tau^2 = 2*pi. Parameter names are
// identifiers, so this key can never collide with one.
inline constexpr const char* kTau = "2pi";

// Variable order: parameter roots by name, tau last.
bool root_var_less(const std::string& a, const std::string& b);

// Sparse monomial in root variables, sorted by root_var_less, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(const std::string& name, int exp = 1);

  const std::vector<std::pair<std::string, int>>& factors() const { return f_; }
  int degree() const;
  int exponent(const std::string& name) const;
  bool is_one() const { return f_.empty(); }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // this / o; requires o.divides(*this)
  Monomial quotient(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  Monomial without(const std::string& name) const;

  // Degree-lexicographic comparison.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

 private:
  std::vector<std::pair<std::string, int>> f_;
};

// Polynomial over Q(i) in root variables; terms kept in descending deglex order.
class Polynomial {
 public:
  using Term = std::pair<Monomial, GaussRat>;

  Polynomial() = default;
  Polynomial(GaussRat c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial monomial(Monomial m, GaussRat c);
  static Polynomial var(const std::string& name) { return monomial(Monomial::var(name), GaussRat(1)); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  GaussRat constant_value() const;
  const Term& leading() const { return terms_.front(); }

  std::set<std::string> variables() const;
  int degree_in(const std::string& x) const;
  Polynomial coeff_in(const std::string& x, int k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussRat& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return compare(a, b) == 0; }

  friend int compare(const Polynomial& a, const Polynomial& b);

  // Exact quotient a / b if b divides a.
  static bool divide_exact(const Polynomial& a, const Polynomial& b, Polynomial* quotient);
  // Monic greatest common divisor; gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);
  Polynomial monic() const;

 private:
  struct Greater {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  };
  using Accumulator = std::map<Monomial, GaussRat, Greater>;
  static Polynomial from_accumulator(Accumulator&& acc);

  std::vector<Term> terms_;
};

}  // namespace superforms
