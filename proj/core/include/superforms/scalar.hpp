#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "superforms/polynomial.hpp"

namespace superforms {

// Element of Q(i)(q_1..q_r, tau): a reduced fraction of polynomials in the
// root variables q_p = p^(1/2) of named parameters and tau = (2pi)^(1/2).
// The denominator is monic and coprime to the numerator, so structural
// equality is field equality.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(GaussRat v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(Polynomial num, Polynomial den);

  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar rational(long num, long den) { return Scalar(GaussRat(mpq_class(num, den))); }
  // The parameter p itself, i.e. q_p^2.
  static Scalar param(const std::string& name);
  // q_p = p^(1/2).
  static Scalar param_root(const std::string& name);
  static Scalar two_pi();
  static Scalar tau();

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_constant() && den_.is_constant() && num_.constant_value().is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Value in Q(i) when is_constant().
  GaussRat constant_value() const { return num_.constant_value(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend int compare(const Scalar& a, const Scalar& b);

  Scalar inverse() const;
  Scalar pow(long n) const;

  // Numerator and denominator are single terms.
  bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }

  // Exact rational evaluation; roots of parameters (and tau) must come out
  // rational at the point, i.e. appear with even exponent or at perfect squares.
  std::pair<mpq_class, mpq_class> eval_numeric(const std::map<std::string, mpq_class>& assignment,
                                               const mpq_class& pi_value) const;
  // Floating evaluation with real positive parameters, used for branch choices.
  std::complex<double> eval_complex(const std::map<std::string, double>& assignment,
                                    double pi_value = 3.14159265358979323846) const;
  std::set<std::string> parameters() const;

  std::string to_string() const;
  static Scalar parse(std::string_view text);

 private:
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

// s with s*s = a for a monomial a; root variables take the place of odd
// half-powers. The coefficient root is the principal one in Q(i).
Scalar sqrt_monomial(const Scalar& a);

// a^(n/2) for integer n, using sqrt_monomial when n is odd.
Scalar half_power(const Scalar& a, long n);

std::string format_polynomial(const Polynomial& p);

}  // namespace superforms
