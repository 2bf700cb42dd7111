#include "superforms/polynomial.hpp"

#include <algorithm>

#include "superforms/errors.hpp"

namespace superforms {

bool root_var_less(const std::string& a, const std::string& b) {
  if (a == b) return false;
  if (a == kTau) return false;
  if (b == kTau) return true;
  return a < b;
}

Monomial Monomial::var(const std::string& name, int exp) {
  Monomial m;
  if (exp != 0) m.f_.emplace_back(name, exp);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : f_) d += e;
  return d;
}

int Monomial::exponent(const std::string& name) const {
  for (const auto& [v, e] : f_)
    if (v == name) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    if (f_[i].first == o.f_[j].first) {
      r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
      ++i;
      ++j;
    } else if (root_var_less(f_[i].first, o.f_[j].first)) {
      r.f_.push_back(f_[i++]);
    } else {
      r.f_.push_back(o.f_[j++]);
    }
  }
  while (i < f_.size()) r.f_.push_back(f_[i++]);
  while (j < o.f_.size()) r.f_.push_back(o.f_[j++]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (const auto& [v, e] : f_)
    if (o.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r;
  for (const auto& [v, e] : f_) {
    int k = e - o.exponent(v);
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "monomial quotient is not exact");
    if (k > 0) r.f_.emplace_back(v, k);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  for (const auto& [v, e] : f_) {
    int k = std::min(e, o.exponent(v));
    if (k > 0) r.f_.emplace_back(v, k);
  }
  return r;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial r;
  for (const auto& p : f_)
    if (p.first != name) r.f_.push_back(p);
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  size_t i = 0, j = 0;
  while (i < a.f_.size() && j < b.f_.size()) {
    const auto& [va, ea] = a.f_[i];
    const auto& [vb, eb] = b.f_[j];
    if (va == vb) {
      if (ea != eb) return ea > eb ? 1 : -1;
      ++i;
      ++j;
    } else {
      return root_var_less(va, vb) ? 1 : -1;
    }
  }
  if (i < a.f_.size()) return 1;
  if (j < b.f_.size()) return -1;
  return 0;
}

Polynomial::Polynomial(GaussRat c) {
  if (!c.is_zero()) terms_.emplace_back(Monomial(), std::move(c));
}

Polynomial Polynomial::monomial(Monomial m, GaussRat c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.emplace_back(std::move(m), std::move(c));
  return p;
}

Polynomial Polynomial::from_accumulator(Accumulator&& acc) {
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
  return p;
}

GaussRat Polynomial::constant_value() const {
  if (terms_.empty()) return GaussRat();
  if (!terms_.back().first.is_one()) return GaussRat();
  return terms_.back().second;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) out.insert(v);
  return out;
}

int Polynomial::degree_in(const std::string& x) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(x));
  return d;
}

Polynomial Polynomial::coeff_in(const std::string& x, int k) const {
  Accumulator acc;
  for (const auto& [m, c] : terms_)
    if (m.exponent(x) == k) acc.emplace(m.without(x), c);
  return from_accumulator(std::move(acc));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = compare(terms_[i].first, o.terms_[j].first);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      GaussRat s = terms_[i].second + o.terms_[j].second;
      if (!s.is_zero()) out.emplace_back(std::move(terms_[i].first), std::move(s));
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) out.push_back(std::move(terms_[i++]));
  while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::scaled(const GaussRat& c) const {
  if (c.is_zero()) return Polynomial();
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  if (a.is_monomial()) return b.times_monomial(a.terms_[0].first).scaled(a.terms_[0].second);
  if (b.is_monomial()) return a.times_monomial(b.terms_[0].first).scaled(b.terms_[0].second);
  Polynomial::Accumulator acc;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return Polynomial::from_accumulator(std::move(acc));
}

int compare(const Polynomial& a, const Polynomial& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t k = 0; k < n; ++k) {
    int c = compare(a.terms_[k].first, b.terms_[k].first);
    if (c != 0) return c;
    c = a.terms_[k].second.compare(b.terms_[k].second);
    if (c != 0) return c;
  }
  if (a.terms_.size() == b.terms_.size()) return 0;
  return a.terms_.size() > b.terms_.size() ? 1 : -1;
}

bool Polynomial::divide_exact(const Polynomial& a, const Polynomial& b, Polynomial* quotient) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by 0");
  if (b.is_monomial()) {
    const auto& [mb, cb] = b.terms_[0];
    Polynomial q;
    q.terms_.reserve(a.terms_.size());
    GaussRat inv = cb.inverse();
    for (const auto& [m, c] : a.terms_) {
      if (!mb.divides(m)) return false;
      q.terms_.emplace_back(m.quotient(mb), c * inv);
    }
    *quotient = std::move(q);
    return true;
  }
  Accumulator q;
  Polynomial r = a;
  const auto& [lm, lc] = b.leading();
  GaussRat inv = lc.inverse();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!lm.divides(rm)) return false;
    Monomial tm = rm.quotient(lm);
    GaussRat tc = rc * inv;
    r -= b.times_monomial(tm).scaled(tc);
    q.emplace(std::move(tm), std::move(tc));
  }
  *quotient = from_accumulator(std::move(q));
  return true;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  if (leading().second.is_one()) return *this;
  return scaled(leading().second.inverse());
}

namespace {

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!Polynomial::divide_exact(a, b, &q)) throw Error(ErrorCode::InvalidArgument, "internal: inexact gcd division");
  return q;
}

Polynomial content_in(const Polynomial& p, const std::string& x) {
  Polynomial g;
  int d = p.degree_in(x);
  for (int k = d; k >= 0; --k) {
    Polynomial c = p.coeff_in(x, k);
    if (c.is_zero()) continue;
    g = Polynomial::gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial x_power(const std::string& x, int k) { return Polynomial::monomial(Monomial::var(x, k), GaussRat(1)); }

// Sparse pseudo-remainder of a by b with respect to x.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, const std::string& x) {
  int db = b.degree_in(x);
  Polynomial lcb = b.coeff_in(x, db);
  while (!a.is_zero()) {
    int da = a.degree_in(x);
    if (da < db) break;
    Polynomial lca = a.coeff_in(x, da);
    a = lcb * a - lca * x_power(x, da - db) * b;
  }
  return a;
}

Polynomial monomial_gcd(const Monomial& m, const Polynomial& p) {
  Monomial g = m;
  for (const auto& [pm, pc] : p.terms()) {
    g = g.gcd(pm);
    if (g.is_one()) break;
  }
  return Polynomial::monomial(g, GaussRat(1));
}

// Coefficients by degree in one variable, after evaluating all the others.
using Dense = std::vector<GaussRat>;

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Dense image_in(const Polynomial& p, const std::string& x, const std::map<std::string, long>& point) {
  Dense out(static_cast<size_t>(p.degree_in(x)) + 1);
  for (const auto& [m, c] : p.terms()) {
    GaussRat v = c;
    int e = 0;
    for (const auto& [name, k] : m.factors()) {
      if (name == x) {
        e = k;
        continue;
      }
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(point.at(name)), static_cast<unsigned long>(k));
      v *= GaussRat(mpq_class(power));
    }
    out[static_cast<size_t>(e)] += v;
  }
  trim(out);
  return out;
}

// a mod b over Q(i); b nonempty.
Dense remainder(Dense a, const Dense& b) {
  GaussRat inv = b.back().inverse();
  while (a.size() >= b.size()) {
    GaussRat q = a.back() * inv;
    size_t shift = a.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

size_t gcd_degree(Dense a, Dense b) {
  while (!b.empty()) {
    a = remainder(std::move(a), b);
    std::swap(a, b);
  }
  return a.size() - 1;
}

// True when a and b (both of positive degree in x) are shown to have a gcd
// free of x: at a point where neither leading coefficient in x vanishes, the
// image gcd has degree >= the x-degree of the true gcd.
bool coprime_in(const Polynomial& a, const Polynomial& b, const std::string& x) {
  std::set<std::string> others = a.variables();
  for (const auto& v : b.variables()) others.insert(v);
  others.erase(x);
  for (long attempt = 0; attempt < 3; ++attempt) {
    std::map<std::string, long> point;
    long j = 0;
    for (const auto& v : others) point[v] = 2 + j++ + 5 * attempt;
    Dense ia = image_in(a, x, point), ib = image_in(b, x, point);
    if (static_cast<int>(ia.size()) - 1 != a.degree_in(x) || static_cast<int>(ib.size()) - 1 != b.degree_in(x))
      continue;
    return gcd_degree(std::move(ia), std::move(ib)) == 0;
  }
  return false;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return monomial_gcd(a.leading().first, b);
  if (b.is_monomial()) return monomial_gcd(b.leading().first, a);
  if (a == b) return a.monic();

  auto va = a.variables();
  auto vb = b.variables();
  // A variable present in only one argument cannot occur in the gcd.
  for (const auto& x : va)
    if (!vb.count(x)) return gcd(content_in(a, x), b);
  for (const auto& x : vb)
    if (!va.count(x)) return gcd(a, content_in(b, x));

  const std::string x = *va.begin();
  Polynomial ca = content_in(a, x);
  Polynomial cb = content_in(b, x);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = exact_quotient(a, ca);
  Polynomial pb = exact_quotient(b, cb);
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  if (coprime_in(pa, pb, x)) return c.monic();

  Polynomial g;
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, x);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(x) == 0) {
      g = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = exact_quotient(r, content_in(r, x)).monic();
  }
  if (!g.is_constant()) g = exact_quotient(g, content_in(g, x));
  return (c * g).monic();
}

}  // namespace superforms
