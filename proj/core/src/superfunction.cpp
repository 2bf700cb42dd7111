#include "superforms/superfunction.hpp"

#include <algorithm>
#include <numeric>

#include "superforms/errors.hpp"

namespace superforms {

// ------------------------------------------------------------------ kernels

Scalar GaussianKernel::a(size_t i, size_t j) const {
  auto it = A.find({std::min(i, j), std::max(i, j)});
  return it == A.end() ? Scalar() : it->second;
}

void GaussianKernel::set_a(size_t i, size_t j, const Scalar& v) {
  auto key = std::make_pair(std::min(i, j), std::max(i, j));
  if (v.is_zero()) {
    A.erase(key);
  } else {
    A[key] = v;
  }
}

GaussianKernel GaussianKernel::operator+(const GaussianKernel& o) const {
  GaussianKernel r = *this;
  for (const auto& [k, v] : o.A) r.set_a(k.first, k.second, r.a(k.first, k.second) + v);
  for (const auto& [k, v] : o.b) {
    Scalar s = (r.b.count(k) ? r.b[k] : Scalar()) + v;
    if (s.is_zero()) {
      r.b.erase(k);
    } else {
      r.b[k] = s;
    }
  }
  r.c += o.c;
  return r;
}

GaussianKernel GaussianKernel::operator-() const {
  GaussianKernel r = *this;
  for (auto& [k, v] : r.A) v = -v;
  for (auto& [k, v] : r.b) v = -v;
  r.c = -r.c;
  return r;
}

bool GaussianKernel::involves(size_t s) const {
  if (b.count(s)) return true;
  for (const auto& [k, v] : A)
    if (k.first == s || k.second == s) return true;
  return false;
}

// ---------------------------------------------------------------- monomials

int MonoKey::even_degree() const { return std::accumulate(even.begin(), even.end(), 0); }

bool operator<(const MonoKey& a, const MonoKey& b) {
  int da = a.odd_degree(), db = b.odd_degree();
  if (da != db) return da < db;
  if (a.odd != b.odd) return a.odd < b.odd;
  int ea = a.even_degree(), eb = b.even_degree();
  if (ea != eb) return ea < eb;
  return a.even > b.even;
}

int koszul_sign(uint64_t a, uint64_t b) {
  if (a & b) return 0;
  int swaps = 0;
  uint64_t rest = b;
  while (rest) {
    int j = __builtin_ctzll(rest);
    rest &= rest - 1;
    uint64_t above = j >= 63 ? 0 : (a >> (j + 1));
    swaps += __builtin_popcountll(above);
  }
  return (swaps & 1) ? -1 : 1;
}

const char* parity_name(int parity) {
  if (parity == 0) return "even";
  if (parity == 1) return "odd";
  return "mixed";
}

// ---------------------------------------------------------- SuperFunction

SuperFunction SuperFunction::constant(TablePtr table, const Scalar& c) {
  SuperFunction f(std::move(table));
  f.add_term(GaussianKernel{}, f.unit_key(), c);
  return f;
}

SuperFunction SuperFunction::var(TablePtr table, const std::string& name) {
  SuperFunction f(table);
  size_t k = table->index_of(name);
  MonoKey m = f.unit_key();
  if (table->at(k).parity == Parity::Odd) {
    m.odd = uint64_t{1} << table->slot(k);
  } else {
    m.even[table->slot(k)] = 1;
  }
  f.add_term(GaussianKernel{}, m, Scalar(1));
  return f;
}

SuperFunction SuperFunction::kernel(TablePtr table, GaussianKernel k) {
  SuperFunction f(std::move(table));
  f.add_term(k, f.unit_key(), Scalar(1));
  return f;
}

bool SuperFunction::has_kernels() const {
  for (const auto& [k, p] : parts_)
    if (!k.is_trivial()) return true;
  return false;
}

PolyPart SuperFunction::polynomial_part() const {
  auto it = parts_.find(GaussianKernel{});
  return it == parts_.end() ? PolyPart{} : it->second;
}

void SuperFunction::add_term(const GaussianKernel& k, const MonoKey& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto pit = parts_.find(k);
  if (pit == parts_.end()) {
    parts_[k][m] = c;
    return;
  }
  auto& poly = pit->second;
  auto [it, inserted] = poly.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) poly.erase(it);
  }
  if (poly.empty()) parts_.erase(pit);
}

void SuperFunction::check_table(const SuperFunction& o) const {
  if (!same_table(table_, o.table_)) throw Error(ErrorCode::TableMismatch, "operands live on different variable tables");
}

SuperFunction SuperFunction::operator-() const {
  SuperFunction r = *this;
  for (auto& [k, p] : r.parts_)
    for (auto& [m, c] : p) c = -c;
  return r;
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  if (!table_) table_ = o.table_;
  if (o.is_zero()) return *this;
  check_table(o);
  for (const auto& [k, p] : o.parts_)
    for (const auto& [m, c] : p) add_term(k, m, c);
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) { return *this += -o; }

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  a.check_table(b);
  SuperFunction r(a.table_);
  for (const auto& [ka, pa] : a.parts_) {
    for (const auto& [kb, pb] : b.parts_) {
      GaussianKernel k = ka + kb;
      for (const auto& [ma, ca] : pa) {
        for (const auto& [mb, cb] : pb) {
          int s = koszul_sign(ma.odd, mb.odd);
          if (s == 0) continue;
          MonoKey m{ma.odd | mb.odd, ma.even};
          for (size_t j = 0; j < m.even.size(); ++j) m.even[j] += mb.even[j];
          Scalar c = ca * cb;
          r.add_term(k, m, s > 0 ? c : -c);
        }
      }
    }
  }
  return r;
}

SuperFunction SuperFunction::operator*(const Scalar& s) const {
  if (s.is_zero()) return SuperFunction(table_);
  SuperFunction r = *this;
  for (auto& [k, p] : r.parts_)
    for (auto& [m, c] : p) c *= s;
  return r;
}

bool operator==(const SuperFunction& a, const SuperFunction& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return same_table(a.table_, b.table_) && a.parts_ == b.parts_;
}

SuperFunction SuperFunction::derive(const std::string& name) const {
  size_t k = table_->index_of(name);
  size_t s = table_->slot(k);
  SuperFunction r(table_);
  if (table_->at(k).parity == Parity::Odd) {
    uint64_t bitmask = uint64_t{1} << s;
    for (const auto& [ker, p] : parts_) {
      for (const auto& [m, c] : p) {
        if (!(m.odd & bitmask)) continue;
        int before = __builtin_popcountll(m.odd & (bitmask - 1));
        r.add_term(ker, MonoKey{m.odd & ~bitmask, m.even}, (before & 1) ? -c : c);
      }
    }
    return r;
  }
  for (const auto& [ker, p] : parts_) {
    // chain-rule factor -(A v)_s + b_s
    std::vector<std::pair<size_t, Scalar>> lin;
    for (size_t j = 0; j < table_->n_even(); ++j) {
      Scalar a = ker.a(s, j);
      if (!a.is_zero()) lin.emplace_back(j, -a);
    }
    auto bit = ker.b.find(s);
    for (const auto& [m, c] : p) {
      if (m.even[s] > 0) {
        MonoKey d = m;
        d.even[s] -= 1;
        r.add_term(ker, d, c * Scalar(m.even[s]));
      }
      for (const auto& [j, a] : lin) {
        MonoKey d = m;
        d.even[j] += 1;
        r.add_term(ker, d, c * a);
      }
      if (bit != ker.b.end()) r.add_term(ker, m, c * bit->second);
    }
  }
  return r;
}

SuperFunction SuperFunction::derive_right(const std::string& name) const {
  size_t k = table_->index_of(name);
  if (table_->at(k).parity == Parity::Even) return derive(name);
  uint64_t bitmask = uint64_t{1} << table_->slot(k);
  SuperFunction r(table_);
  for (const auto& [ker, p] : parts_) {
    for (const auto& [m, c] : p) {
      if (!(m.odd & bitmask)) continue;
      int after = __builtin_popcountll(m.odd & ~((bitmask << 1) - 1));
      r.add_term(ker, MonoKey{m.odd & ~bitmask, m.even}, (after & 1) ? -c : c);
    }
  }
  return r;
}

int SuperFunction::parity() const {
  bool even = false, odd = false;
  for (const auto& [k, p] : parts_)
    for (const auto& [m, c] : p) (m.odd_degree() % 2 ? odd : even) = true;
  if (odd && even) return -1;
  return odd ? 1 : 0;
}

Scalar SuperFunction::constant_term() const {
  auto it = parts_.find(GaussianKernel{});
  if (it == parts_.end()) return Scalar();
  auto mt = it->second.find(unit_key());
  return mt == it->second.end() ? Scalar() : mt->second;
}

bool SuperFunction::is_constant() const {
  if (parts_.empty()) return true;
  if (parts_.size() != 1 || !parts_.begin()->first.is_trivial()) return false;
  const auto& p = parts_.begin()->second;
  return p.size() == 1 && p.begin()->first == unit_key();
}

std::vector<std::string> SuperFunction::occurring_generators() const {
  std::vector<bool> seen(table_ ? table_->size() : 0, false);
  for (const auto& [k, p] : parts_) {
    for (const auto& [ij, v] : k.A) {
      seen[table_->even_generator(ij.first)] = true;
      seen[table_->even_generator(ij.second)] = true;
    }
    for (const auto& [j, v] : k.b) seen[table_->even_generator(j)] = true;
    for (const auto& [m, c] : p) {
      for (size_t j = 0; j < table_->n_odd(); ++j)
        if (m.odd >> j & 1) seen[table_->odd_generator(j)] = true;
      for (size_t j = 0; j < m.even.size(); ++j)
        if (m.even[j]) seen[table_->even_generator(j)] = true;
    }
  }
  std::vector<std::string> out;
  for (size_t k = 0; k < seen.size(); ++k)
    if (seen[k]) out.push_back(table_->at(k).name);
  return out;
}

SuperFunction kernel_exponent(const TablePtr& table, const GaussianKernel& k) {
  SuperFunction e(table);
  MonoKey unit{0, std::vector<int>(table->n_even(), 0)};
  for (const auto& [ij, v] : k.A) {
    MonoKey m = unit;
    m.even[ij.first] += 1;
    m.even[ij.second] += 1;
    // -1/2 (A_ij + A_ji) x_i x_j for i != j, -1/2 A_ii x_i^2
    e.add_term(GaussianKernel{}, m, ij.first == ij.second ? v * Scalar::rational(-1, 2) : -v);
  }
  for (const auto& [j, v] : k.b) {
    MonoKey m = unit;
    m.even[j] = 1;
    e.add_term(GaussianKernel{}, m, v);
  }
  e.add_term(GaussianKernel{}, unit, k.c);
  return e;
}

namespace {

// Lazily computed powers of generator images.
class PowerCache {
 public:
  explicit PowerCache(const SuperFunction& base) : powers_{SuperFunction::constant(base.table(), Scalar(1)), base} {}
  const SuperFunction& get(int e) {
    while (static_cast<int>(powers_.size()) <= e) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[e];
  }

 private:
  std::vector<SuperFunction> powers_;
};

SuperFunction substitute_poly(const TablePtr& table, const PolyPart& poly, std::vector<SuperFunction>& odd_images,
                              std::vector<PowerCache>& even_powers, const TablePtr& target) {
  SuperFunction out(target);
  for (const auto& [m, c] : poly) {
    SuperFunction t = SuperFunction::constant(target, c);
    for (size_t j = 0; j < table->n_odd(); ++j)
      if (m.odd >> j & 1) t = t * odd_images[j];
    for (size_t j = 0; j < m.even.size(); ++j)
      if (m.even[j]) t = t * even_powers[j].get(m.even[j]);
    out += t;
  }
  return out;
}

}  // namespace

SuperFunction SuperFunction::substitute(const std::map<std::string, SuperFunction>& images,
                                        const TablePtr& target) const {
  std::vector<SuperFunction> odd_images;
  std::vector<PowerCache> even_powers;
  auto image_of = [&](const std::string& name) {
    auto it = images.find(name);
    if (it != images.end()) {
      if (!it->second.table()) return SuperFunction(target);
      if (!same_table(it->second.table(), target))
        throw Error(ErrorCode::TableMismatch, "image of " + name + " is not on the target table");
      return it->second;
    }
    if (!target->find(name)) throw Error(ErrorCode::UnknownGenerator, name + " is missing from the target table");
    return SuperFunction::var(target, name);
  };
  auto used = occurring_generators();
  auto is_used = [&](const std::string& n) { return std::find(used.begin(), used.end(), n) != used.end(); };
  for (size_t j = 0; j < table_->n_odd(); ++j) {
    const auto& n = table_->odd_name(j);
    odd_images.push_back(is_used(n) ? image_of(n) : SuperFunction(target));
  }
  for (size_t j = 0; j < table_->n_even(); ++j) {
    const auto& n = table_->even_name(j);
    even_powers.emplace_back(is_used(n) ? image_of(n) : SuperFunction(target));
  }
  SuperFunction out(target);
  for (const auto& [k, p] : parts_) {
    SuperFunction poly = substitute_poly(table_, p, odd_images, even_powers, target);
    if (k.is_trivial()) {
      out += poly;
      continue;
    }
    SuperFunction e = kernel_exponent(table_, k);
    SuperFunction e_image = substitute_poly(table_, e.polynomial_part(), odd_images, even_powers, target);
    out += exp_even(e_image) * poly;
  }
  return out;
}

SuperFunction SuperFunction::rebased(const TablePtr& target) const {
  if (same_table(table_, target)) {
    SuperFunction r = *this;
    r.table_ = target;
    return r;
  }
  return substitute({}, target);
}

SuperFunction SuperFunction::set_zero(const std::vector<std::string>& names) const {
  std::map<std::string, SuperFunction> images;
  for (const auto& n : names) images[n] = SuperFunction(table_);
  return substitute(images, table_);
}

// ------------------------------------------------------------ exp and sqrt

SuperFunction exp_even(const SuperFunction& f) {
  const TablePtr& t = f.table();
  if (f.is_zero()) return SuperFunction::constant(t, Scalar(1));
  if (f.parity() != 0) throw Error(ErrorCode::NotEven, "exp of a non-even function");
  if (f.has_kernels()) throw Error(ErrorCode::HasKernel, "exp of a function that already carries a Gaussian kernel");
  GaussianKernel k;
  SuperFunction nil(t);
  for (const auto& [m, c] : f.polynomial_part()) {
    if (m.odd != 0) {
      nil.add_term(GaussianKernel{}, m, c);
      continue;
    }
    std::vector<size_t> slots;
    for (size_t j = 0; j < m.even.size(); ++j)
      for (int e = 0; e < m.even[j]; ++e) slots.push_back(j);
    if (slots.size() > 2) throw Error(ErrorCode::DegreeTooHigh, "even part of degree > 2 in exp");
    if (slots.empty()) {
      k.c += c;
    } else if (slots.size() == 1) {
      k.b[slots[0]] = c;
    } else if (slots[0] == slots[1]) {
      k.set_a(slots[0], slots[0], c * Scalar(-2));
    } else {
      k.set_a(slots[0], slots[1], -c);
    }
  }
  SuperFunction sum = SuperFunction::constant(t, Scalar(1));
  SuperFunction term = sum;
  for (int n = 1; !nil.is_zero(); ++n) {
    term = term * nil * Scalar::rational(1, n);
    if (term.is_zero()) break;
    sum += term;
  }
  return SuperFunction::kernel(t, k) * sum;
}

SuperFunction sqrt_even(const SuperFunction& f) {
  const TablePtr& t = f.table();
  if (f.has_kernels()) throw Error(ErrorCode::HasKernel, "sqrt of a function with a Gaussian kernel");
  if (f.parity() != 0) throw Error(ErrorCode::NotEven, "sqrt of a non-even function");
  SuperFunction body(t);
  for (const auto& [m, c] : f.polynomial_part())
    if (m.odd == 0) body.add_term(GaussianKernel{}, m, c);
  if (!body.is_constant()) throw Error(ErrorCode::NonInvertibleBody, "body is not a constant");
  Scalar b = body.constant_term();
  if (b.is_zero()) throw Error(ErrorCode::NonInvertibleBody, "body is zero");
  if (b.is_constant() && b.constant_value().is_real() && sgn(b.constant_value().re()) < 0)
    throw Error(ErrorCode::NonInvertibleBody, "body is negative");
  Scalar root = sqrt_monomial(b);
  SuperFunction n = (f - body) * b.inverse();
  SuperFunction sum = SuperFunction::constant(t, Scalar(1));
  SuperFunction power = sum;
  Scalar binom(1);  // binomial(1/2, k)
  for (int k = 1; !n.is_zero(); ++k) {
    power = power * n;
    if (power.is_zero()) break;
    binom *= (Scalar::rational(1, 2) - Scalar(k - 1)) / Scalar(k);
    sum += power * binom;
  }
  return sum * root;
}

SuperFunction evaluate_at_point(const SuperFunction& f, const std::map<std::string, SuperFunction>& point,
                                const TablePtr& envelope) {
  if (envelope->n_even() != 0) throw Error(ErrorCode::InvalidArgument, "envelope must have odd generators only");
  for (const auto& [name, value] : point) {
    const auto& g = f.table()->get(name);
    int p = value.parity();
    if (p == -1 || (!value.is_zero() && p != bit(g.parity)))
      throw Error(ErrorCode::ParityMismatch, "value for " + name + " has the wrong parity");
  }
  for (const auto& name : f.occurring_generators())
    if (!point.count(name)) throw Error(ErrorCode::UnknownGenerator, "point assigns no value to " + name);
  std::map<std::string, SuperFunction> images = point;
  for (const auto& [k, p] : f.parts()) {
    if (k.is_trivial()) continue;
    SuperFunction e = kernel_exponent(f.table(), k).substitute(images, envelope);
    if (!e.constant_term().is_zero())
      throw Error(ErrorCode::NonNilpotentExponentBody, "kernel exponent has nonzero body " + e.constant_term().to_string());
  }
  return f.substitute(images, envelope);
}

// ------------------------------------------------------------------ display

namespace {

std::string monomial_string(const VariableTable& t, const MonoKey& m) {
  std::string out;
  for (size_t j = 0; j < t.n_odd(); ++j) {
    if (!(m.odd >> j & 1)) continue;
    if (!out.empty()) out += "*";
    out += t.odd_name(j);
  }
  for (size_t j = 0; j < m.even.size(); ++j) {
    if (!m.even[j]) continue;
    if (!out.empty()) out += "*";
    out += t.even_name(j);
    if (m.even[j] > 1) out += "^" + std::to_string(m.even[j]);
  }
  return out;
}

std::string coefficient_term(const Scalar& c, const std::string& mono) {
  std::string s = c.to_string();
  bool simple = c.num().is_monomial() && (c.den().is_monomial());
  if (mono.empty()) return simple ? s : "(" + s + ")";
  if (c.is_one()) return mono;
  if (c == Scalar(-1)) return "-" + mono;
  if (simple) return s + "*" + mono;
  return "(" + s + ")*" + mono;
}

std::string poly_string(const VariableTable& t, const PolyPart& p) {
  std::string out;
  for (const auto& [m, c] : p) {
    std::string term = coefficient_term(c, monomial_string(t, m));
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string SuperFunction::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [k, p] : parts_) {
    std::string piece;
    if (k.is_trivial()) {
      piece = poly_string(*table_, p);
    } else {
      piece = "exp(" + poly_string(*table_, kernel_exponent(table_, k).polynomial_part()) + ")";
      bool unit = p.size() == 1 && p.begin()->first == unit_key() && p.begin()->second.is_one();
      if (!unit) piece += "*(" + poly_string(*table_, p) + ")";
    }
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

}  // namespace superforms
