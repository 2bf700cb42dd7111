#include "superforms/scalar.hpp"

#include <cctype>
#include <cmath>

#include "superforms/errors.hpp"

namespace superforms {

namespace {

Polynomial quotient(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!Polynomial::divide_exact(a, b, &q)) throw Error(ErrorCode::InvalidArgument, "internal: inexact division");
  return q;
}

}  // namespace

Scalar::Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  canonicalize();
}

Scalar Scalar::param(const std::string& name) {
  return Scalar(Polynomial::monomial(Monomial::var(name, 2), GaussRat(1)), Polynomial(1));
}

Scalar Scalar::param_root(const std::string& name) { return Scalar(Polynomial::var(name), Polynomial(1)); }

Scalar Scalar::two_pi() { return param(kTau); }

Scalar Scalar::tau() { return param_root(kTau); }

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = quotient(num_, g);
      den_ = quotient(den_, g);
    }
  }
  const GaussRat& lc = den_.leading().second;
  if (!lc.is_one()) {
    GaussRat inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Polynomial g1 = Polynomial::gcd(num_, o.den_);
  Polynomial g2 = Polynomial::gcd(o.num_, den_);
  Polynomial n1 = g1.is_constant() ? num_ : quotient(num_, g1);
  Polynomial d2 = g1.is_constant() ? o.den_ : quotient(o.den_, g1);
  Polynomial n2 = g2.is_constant() ? o.num_ : quotient(o.num_, g2);
  Polynomial d1 = g2.is_constant() ? den_ : quotient(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  const GaussRat& lc = den_.leading().second;
  if (!lc.is_one()) {
    GaussRat inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of the zero Scalar");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  const GaussRat& lc = r.den_.leading().second;
  if (!lc.is_one()) {
    GaussRat inv = lc.inverse();
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

int compare(const Scalar& a, const Scalar& b) {
  int c = compare(a.num_, b.num_);
  if (c != 0) return c;
  return compare(a.den_, b.den_);
}

std::set<std::string> Scalar::parameters() const {
  auto out = num_.variables();
  for (const auto& v : den_.variables()) out.insert(v);
  out.erase(kTau);
  return out;
}

Scalar sqrt_monomial(const Scalar& a) {
  if (a.is_zero()) return a;
  if (!a.is_monomial()) throw Error(ErrorCode::NotAMonomial, "cannot take a formal root of " + a.to_string());
  const auto& [mn, cn] = a.num().leading();
  const auto& [md, cd] = a.den().leading();
  auto root_coeff = (cn / cd).sqrt();
  if (!root_coeff) throw Error(ErrorCode::NoFormalRoot, "coefficient of " + a.to_string() + " has no root in Q(i)");
  Monomial up, down;
  for (const auto& [v, e] : mn.factors()) {
    if (e % 2 != 0) throw Error(ErrorCode::NoFormalRoot, "odd root exponent in " + a.to_string());
    up = up * Monomial::var(v, e / 2);
  }
  for (const auto& [v, e] : md.factors()) {
    if (e % 2 != 0) throw Error(ErrorCode::NoFormalRoot, "odd root exponent in " + a.to_string());
    down = down * Monomial::var(v, e / 2);
  }
  return Scalar(Polynomial::monomial(up, *root_coeff), Polynomial::monomial(down, GaussRat(1)));
}

Scalar half_power(const Scalar& a, long n) {
  if (n % 2 == 0) return a.pow(n / 2);
  return sqrt_monomial(a).pow(n);
}

// ---------------------------------------------------------------- evaluation

namespace {

std::pair<mpq_class, mpq_class> eval_poly(const Polynomial& p, const std::map<std::string, mpq_class>& assignment,
                                          const mpq_class& pi_value) {
  mpq_class re = 0, im = 0;
  for (const auto& [m, c] : p.terms()) {
    mpq_class f = 1;
    for (const auto& [v, e] : m.factors()) {
      mpq_class base;
      if (v == kTau) {
        base = 2 * pi_value;
      } else {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw Error(ErrorCode::UnassignedParameter, "parameter " + v + " has no value");
        base = it->second;
      }
      if (e % 2 != 0) {
        auto r = rational_sqrt(base);
        if (!r) throw Error(ErrorCode::NonRationalRoot, "root of " + base.get_str() + " is not rational");
        for (int k = 0; k < e; ++k) f *= *r;
      } else {
        for (int k = 0; k < e / 2; ++k) f *= base;
      }
    }
    re += f * c.re();
    im += f * c.im();
  }
  return {re, im};
}

std::complex<double> eval_poly_complex(const Polynomial& p, const std::map<std::string, double>& assignment,
                                       double pi_value) {
  std::complex<double> out = 0;
  for (const auto& [m, c] : p.terms()) {
    double f = 1;
    for (const auto& [v, e] : m.factors()) {
      double base;
      if (v == kTau) {
        base = 2 * pi_value;
      } else {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw Error(ErrorCode::UnassignedParameter, "parameter " + v + " has no value");
        base = it->second;
      }
      f *= std::pow(std::sqrt(base), e);
    }
    out += f * c.to_complex();
  }
  return out;
}

}  // namespace

std::pair<mpq_class, mpq_class> Scalar::eval_numeric(const std::map<std::string, mpq_class>& assignment,
                                                     const mpq_class& pi_value) const {
  auto [nr, ni] = eval_poly(num_, assignment, pi_value);
  auto [dr, di] = eval_poly(den_, assignment, pi_value);
  if (sgn(dr) == 0 && sgn(di) == 0) throw Error(ErrorCode::PoleAtPoint, "denominator vanishes at the point");
  GaussRat q = GaussRat(nr, ni) / GaussRat(dr, di);
  return {q.re(), q.im()};
}

std::complex<double> Scalar::eval_complex(const std::map<std::string, double>& assignment, double pi_value) const {
  return eval_poly_complex(num_, assignment, pi_value) / eval_poly_complex(den_, assignment, pi_value);
}

// ------------------------------------------------------------------- display

namespace {

std::string factor_string(const std::string& v, int e) {
  std::string base = v == kTau ? "(2pi)" : v;
  if (e % 2 == 0) {
    int k = e / 2;
    if (k == 1) return base;
    if (k > 0) return base + "^" + std::to_string(k);
    return base + "^(" + std::to_string(k) + ")";
  }
  return base + "^(" + std::to_string(e) + "/2)";
}

std::string term_string(const GaussRat& c, const std::vector<std::pair<std::string, int>>& factors) {
  if (factors.empty()) return c.to_string();
  // (2pi) leads the factor list in display, parameters follow by name.
  std::string f;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [v, e] : factors) {
      if ((v == kTau) != (pass == 0)) continue;
      if (!f.empty()) f += "*";
      f += factor_string(v, e);
    }
  }
  if (c.is_one()) return f;
  if (c == GaussRat(-1)) return "-" + f;
  return c.to_string() + "*" + f;
}

std::string join_terms(const std::vector<std::string>& terms) {
  std::string out;
  for (const auto& t : terms) {
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_polynomial(const Polynomial& p) {
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) terms.push_back(term_string(c, m.factors()));
  return join_terms(terms);
}

std::string Scalar::to_string() const {
  if (den_.is_constant()) return format_polynomial(num_);
  if (den_.is_monomial()) {
    std::vector<std::pair<std::string, int>> inv;
    for (const auto& [v, e] : den_.leading().first.factors()) inv.emplace_back(v, -e);
    if (num_.is_monomial()) {
      std::vector<std::pair<std::string, int>> merged;
      const auto& nf = num_.leading().first.factors();
      size_t i = 0, j = 0;
      while (i < nf.size() || j < inv.size()) {
        if (j == inv.size() || (i < nf.size() && root_var_less(nf[i].first, inv[j].first))) {
          merged.push_back(nf[i++]);
        } else if (i == nf.size() || root_var_less(inv[j].first, nf[i].first)) {
          merged.push_back(inv[j++]);
        } else {
          // cannot happen for coprime numerator and denominator
          merged.emplace_back(nf[i].first, nf[i].second + inv[j].second);
          ++i;
          ++j;
        }
      }
      return term_string(num_.leading().second, merged);
    }
    return "(" + format_polynomial(num_) + ")*" + term_string(GaussRat(1), inv);
  }
  std::string n = format_polynomial(num_);
  if (!num_.is_monomial()) n = "(" + n + ")";
  return n + "/(" + format_polynomial(den_) + ")";
}

// -------------------------------------------------------------------- parser

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse_all() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in scalar literal");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    return power();
  }

  long integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  // Exponent as a count of halves.
  long exponent_halves() {
    if (eat('(')) {
      long sign = eat('-') ? -1 : 1;
      long n = integer();
      long d = 1;
      if (eat('/')) d = integer();
      if (!eat(')')) fail("expected ')'");
      if (d == 1) return sign * 2 * n;
      if (d == 2) return sign * n;
      fail("only integer and half-integer exponents are supported");
    }
    return 2 * integer();
  }

  Scalar power() {
    Scalar base = atom();
    if (eat('^')) return half_power(base, exponent_halves());
    return base;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if (digits == "2" && s_.substr(pos_, 2) == "pi") {
        pos_ += 2;
        return Scalar::two_pi();
      }
      return Scalar(GaussRat(mpq_class(mpz_class(digits))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "i") return Scalar::i();
      return Scalar::param(name);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse_all(); }

}  // namespace superforms
