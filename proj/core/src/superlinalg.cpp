#include "superforms/superlinalg.hpp"

#include <algorithm>

#include "superforms/errors.hpp"

namespace superforms {

// ------------------------------------------------------- scalar matrices

ScalarMatrix scalar_identity(size_t n) {
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

ScalarMatrix scalar_mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ScalarMatrix r(n, std::vector<Scalar>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        if (!b[t][j].is_zero()) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

ScalarMatrix scalar_transpose(const ScalarMatrix& a) {
  if (a.empty()) return a;
  ScalarMatrix r(a[0].size(), std::vector<Scalar>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

ScalarMatrix scalar_inverse(const ScalarMatrix& a) {
  size_t n = a.size();
  ScalarMatrix m = a, inv = scalar_identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::Degenerate, "singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Scalar p = m[col][col].inverse();
    for (size_t j = 0; j < n; ++j) {
      m[col][j] *= p;
      inv[col][j] *= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        if (!m[col][j].is_zero()) m[r][j] -= f * m[col][j];
        if (!inv[col][j].is_zero()) inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Scalar scalar_det(const ScalarMatrix& a) {
  size_t n = a.size();
  ScalarMatrix m = a;
  Scalar det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Scalar p = m[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Scalar f = m[r][col] * p;
      for (size_t j = col; j < n; ++j)
        if (!m[col][j].is_zero()) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

std::vector<std::vector<Scalar>> scalar_nullspace(const ScalarMatrix& a) {
  if (a.empty()) return {};
  size_t rows = a.size(), cols = a[0].size();
  ScalarMatrix m = a;
  std::vector<size_t> pivot_cols;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Scalar p = m[r][c].inverse();
    for (size_t j = 0; j < cols; ++j) m[r][j] *= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (size_t j = 0; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Scalar> v(cols);
    v[free] = Scalar(1);
    for (size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ------------------------------------------------------------ SuperMatrix

SuperMatrix::SuperMatrix(std::vector<Parity> basis, TablePtr table, int parity)
    : basis_(std::move(basis)), table_(std::move(table)), parity_(parity) {
  e_.assign(basis_.size() * basis_.size(), SuperFunction(table_));
}

std::vector<Parity> SuperMatrix::standard_basis(size_t k, size_t l) {
  std::vector<Parity> b(k, Parity::Even);
  b.insert(b.end(), l, Parity::Odd);
  return b;
}

SuperMatrix SuperMatrix::identity(std::vector<Parity> basis, TablePtr table) {
  SuperMatrix m(std::move(basis), std::move(table));
  for (size_t i = 0; i < m.size(); ++i) m.at(i, i) = SuperFunction::constant(m.table_, 1);
  return m;
}

SuperMatrix SuperMatrix::from_scalars(std::vector<Parity> basis, TablePtr table, const ScalarMatrix& s, int parity) {
  SuperMatrix m(std::move(basis), std::move(table), parity);
  if (s.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "matrix size does not match basis");
  for (size_t i = 0; i < m.size(); ++i) {
    if (s[i].size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    for (size_t j = 0; j < m.size(); ++j) m.at(i, j) = SuperFunction::constant(m.table_, s[i][j]);
  }
  return m;
}

size_t SuperMatrix::even_dim() const { return std::count(basis_.begin(), basis_.end(), Parity::Even); }
size_t SuperMatrix::odd_dim() const { return size() - even_dim(); }

bool SuperMatrix::entries_are_scalars() const {
  return std::all_of(e_.begin(), e_.end(), [](const SuperFunction& f) { return f.is_constant(); });
}

ScalarMatrix SuperMatrix::to_scalars() const {
  ScalarMatrix m(size(), std::vector<Scalar>(size()));
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j) {
      if (!at(i, j).is_constant()) throw Error(ErrorCode::InvalidArgument, "matrix entry is not a scalar");
      m[i][j] = at(i, j).constant_term();
    }
  return m;
}

bool SuperMatrix::parity_consistent() const {
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j) {
      const auto& f = at(i, j);
      if (f.is_zero()) continue;
      int expected = (parity_ + bit(basis_[i]) + bit(basis_[j])) % 2;
      // Scalar entries of an odd matrix sit in the odd blocks and are even numbers.
      int actual = f.parity();
      if (f.is_constant()) {
        if (expected != 0) return false;
        continue;
      }
      if (actual != expected) return false;
    }
  return true;
}

void SuperMatrix::check_compatible(const SuperMatrix& o) const {
  if (basis_ != o.basis_) throw Error(ErrorCode::DimensionMismatch, "supermatrix shapes differ");
  if (!same_table(table_, o.table_)) throw Error(ErrorCode::TableMismatch, "supermatrices over different algebras");
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
  check_compatible(o);
  SuperMatrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
  return r;
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const {
  check_compatible(o);
  SuperMatrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
  return r;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
  check_compatible(o);
  SuperMatrix r(basis_, table_, (parity_ + o.parity_) % 2);
  size_t n = size();
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (at(i, k).is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        if (!o.at(k, j).is_zero()) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

SuperMatrix SuperMatrix::operator*(const Scalar& s) const {
  SuperMatrix r = *this;
  for (auto& f : r.e_) f = f * s;
  return r;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.basis_ != b.basis_) return false;
  for (size_t k = 0; k < a.e_.size(); ++k)
    if (a.e_[k] != b.e_[k]) return false;
  return true;
}

SuperMatrix SuperMatrix::bracket(const SuperMatrix& x, const SuperMatrix& y) {
  SuperMatrix xy = x * y, yx = y * x;
  return (x.parity_ * y.parity_) ? xy + yx : xy - yx;
}

std::string SuperMatrix::to_string() const {
  std::string out = "[";
  for (size_t i = 0; i < size(); ++i) {
    out += i ? ", [" : "[";
    for (size_t j = 0; j < size(); ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

// ------------------------------------------------ even Grassmann elements

Scalar body(const SuperFunction& f) { return f.constant_term(); }

SuperFunction inverse_even(const SuperFunction& f) {
  Scalar b = body(f);
  if (b.is_zero()) throw Error(ErrorCode::NonInvertibleBody, "element with zero body is not invertible");
  const TablePtr& t = f.table();
  SuperFunction n = (f - SuperFunction::constant(t, b)) * (-b.inverse());
  SuperFunction sum = SuperFunction::constant(t, 1), power = sum;
  for (int k = 0; k < 130; ++k) {
    power = power * n;
    if (power.is_zero()) return sum * b.inverse();
    sum += power;
  }
  throw Error(ErrorCode::NonInvertibleBody, "soul is not nilpotent");
}

namespace {

SuperFunction laplace_det(const std::vector<std::vector<SuperFunction>>& m, const TablePtr& table) {
  size_t n = m.size();
  if (n == 0) return SuperFunction::constant(table, 1);
  if (n == 1) return m[0][0];
  SuperFunction det(table);
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<SuperFunction>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<SuperFunction> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    SuperFunction term = m[0][j] * laplace_det(minor, table);
    det += (j % 2) ? -term : term;
  }
  return det;
}

}  // namespace

SuperFunction determinant_even(const std::vector<std::vector<SuperFunction>>& input, const TablePtr& table) {
  size_t n = input.size();
  if (n == 0) return SuperFunction::constant(table, 1);
  // Fraction-free Bareiss elimination; the exact divisions by previous pivots
  // are multiplications by their inverses, so pivots need invertible bodies.
  auto m = input;
  SuperFunction prev = SuperFunction::constant(table, 1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && body(m[piv][k]).is_zero()) ++piv;
    if (piv == n) return laplace_det(input, table);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    SuperFunction prev_inv = inverse_even(prev);
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * prev_inv;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

SuperFunction supertrace(const SuperMatrix& m) {
  SuperFunction s(m.table());
  for (size_t i = 0; i < m.size(); ++i) {
    if (m.basis()[i] == Parity::Even) {
      s += m.at(i, i);
    } else {
      s -= m.at(i, i);
    }
  }
  return s;
}

namespace {

using Block = std::vector<std::vector<SuperFunction>>;

Block block(const SuperMatrix& m, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  Block b(rows.size(), std::vector<SuperFunction>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) b[i][j] = m.at(rows[i], cols[j]);
  return b;
}

Block block_mul(const Block& a, const Block& b, const TablePtr& t) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Block r(n, std::vector<SuperFunction>(m, SuperFunction(t)));
  for (size_t i = 0; i < n; ++i)
    for (size_t s = 0; s < k; ++s)
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][s] * b[s][j];
  return r;
}

Block even_inverse(Block d, const TablePtr& t) {
  size_t n = d.size();
  Block inv(n, std::vector<SuperFunction>(n, SuperFunction(t)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = SuperFunction::constant(t, 1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && body(d[piv][col]).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::SingularD, "odd-odd block is not invertible");
    std::swap(d[piv], d[col]);
    std::swap(inv[piv], inv[col]);
    SuperFunction p = inverse_even(d[col][col]);
    for (size_t j = 0; j < n; ++j) {
      d[col][j] = p * d[col][j];
      inv[col][j] = p * inv[col][j];
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || d[r][col].is_zero()) continue;
      SuperFunction f = d[r][col];
      for (size_t j = 0; j < n; ++j) {
        d[r][j] -= f * d[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

SuperFunction berezinian(const SuperMatrix& m, BerVariant variant) {
  if (m.parity() != 0) throw Error(ErrorCode::InvalidArgument, "Berezinian of an odd supermatrix");
  const TablePtr& t = m.table();
  std::vector<size_t> ev, od;
  for (size_t i = 0; i < m.size(); ++i) (m.basis()[i] == Parity::Even ? ev : od).push_back(i);
  Block A = block(m, ev, ev), B = block(m, ev, od), C = block(m, od, ev), D = block(m, od, od);
  SuperFunction det_d_inv = SuperFunction::constant(t, 1);
  Block S = A;
  if (!od.empty()) {
    Block d_inv = even_inverse(D, t);
    det_d_inv = inverse_even(determinant_even(D, t));
    Block bdc = block_mul(block_mul(B, d_inv, t), C, t);
    for (size_t i = 0; i < S.size(); ++i)
      for (size_t j = 0; j < S.size(); ++j) S[i][j] -= bdc[i][j];
  }
  SuperFunction det_s = determinant_even(S, t);
  if (variant == BerVariant::OneZero) {
    Scalar b = body(det_s);
    if (b.is_zero()) throw Error(ErrorCode::NonInvertibleBody, "|det| needs a nonzero body");
    if (!b.is_constant() || !b.constant_value().is_real())
      throw Error(ErrorCode::ParameterizedPoint, "|det| needs a real rational body, got " + b.to_string());
    if (sgn(b.constant_value().re()) < 0) det_s = -det_s;
  }
  return det_s * det_d_inv;
}

SuperMatrix matrix_exp_nilpotent(const SuperMatrix& x) {
  SuperMatrix sum = SuperMatrix::identity(x.basis(), x.table());
  SuperMatrix term = sum;
  for (int n = 1; n <= 130; ++n) {
    term = term * x * Scalar::rational(1, n);
    bool zero = true;
    for (size_t i = 0; i < x.size() && zero; ++i)
      for (size_t j = 0; j < x.size() && zero; ++j) zero = term.at(i, j).is_zero();
    if (zero) return sum;
    sum = sum + term;
  }
  throw Error(ErrorCode::InvalidArgument, "matrix is not nilpotent");
}

// ----------------------------------------------------------- bilinear forms

BilinearForm::BilinearForm(std::vector<Parity> basis, ScalarMatrix m) : basis_(std::move(basis)), m_(std::move(m)) {
  if (m_.size() != basis_.size()) throw Error(ErrorCode::DimensionMismatch, "form matrix does not match basis");
  for (const auto& row : m_)
    if (row.size() != basis_.size()) throw Error(ErrorCode::DimensionMismatch, "form matrix is not square");
}

bool BilinearForm::is_even() const {
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j)
      if (basis_[i] != basis_[j] && !m_[i][j].is_zero()) return false;
  return true;
}

BilinearForm::Symmetry BilinearForm::symmetry() const {
  bool sym = true, anti = true;
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j) {
      Scalar swapped = (bit(basis_[i]) * bit(basis_[j])) ? -m_[j][i] : m_[j][i];
      if (m_[i][j] != swapped) sym = false;
      if (m_[i][j] != -swapped) anti = false;
    }
  if (sym && anti) return Symmetry::Both;
  if (sym) return Symmetry::Symmetric;
  if (anti) return Symmetry::Antisymmetric;
  return Symmetry::Neither;
}

bool BilinearForm::nondegenerate() const { return !scalar_det(m_).is_zero(); }

BilinearForm BilinearForm::operator-() const {
  BilinearForm r = *this;
  for (auto& row : r.m_)
    for (auto& v : row) v = -v;
  return r;
}

const char* symmetry_name(BilinearForm::Symmetry s) {
  switch (s) {
    case BilinearForm::Symmetry::Symmetric:
      return "symmetric";
    case BilinearForm::Symmetry::Antisymmetric:
      return "antisymmetric";
    case BilinearForm::Symmetry::Both:
      return "zero";
    case BilinearForm::Symmetry::Neither:
      return "neither";
  }
  return "neither";
}

SuperFunction BilinearForm::evaluate(const std::vector<SuperFunction>& a, const std::vector<SuperFunction>& b) const {
  if (a.size() != size() || b.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coefficient count");
  TablePtr t;
  for (const auto& f : a)
    if (f.table()) t = f.table();
  SuperFunction out(t);
  for (size_t i = 0; i < size(); ++i) {
    if (a[i].is_zero()) continue;
    int pa = a[i].parity();
    if (pa < 0) throw Error(ErrorCode::ParityMismatch, "coefficients must be homogeneous");
    for (size_t j = 0; j < size(); ++j) {
      if (m_[i][j].is_zero() || b[j].is_zero()) continue;
      Scalar c = (pa * bit(basis_[j])) ? -m_[i][j] : m_[i][j];
      out += (a[i] * b[j]) * c;
    }
  }
  return out;
}

namespace {

int entry_parity(const SuperFunction& f) {
  if (f.is_zero() || f.is_constant()) return 0;
  return f.parity();
}

}  // namespace

bool check_osp_spo(const SuperMatrix& x, const BilinearForm& b) {
  if (x.basis() != b.basis()) throw Error(ErrorCode::DimensionMismatch, "matrix and form have different bases");
  if (!x.parity_consistent()) return false;
  size_t n = x.size();
  const TablePtr& t = x.table();
  for (size_t a = 0; a < n; ++a)
    for (size_t c = 0; c < n; ++c) {
      SuperFunction s(t);
      for (size_t i = 0; i < n; ++i) {
        const auto& xia = x.at(i, a);
        if (!xia.is_zero() && !b.at(i, c).is_zero()) {
          int sign = (entry_parity(xia) * bit(b.basis()[c])) ? -1 : 1;
          s += xia * (b.at(i, c) * Scalar(sign));
        }
        const auto& xic = x.at(i, c);
        if (!xic.is_zero() && !b.at(a, i).is_zero()) {
          int sign = (x.parity() * bit(b.basis()[a])) ? -1 : 1;
          s += xic * (b.at(a, i) * Scalar(sign));
        }
      }
      if (!s.is_zero()) return false;
    }
  return true;
}

std::vector<SuperMatrix> preserving_algebra_basis(const BilinearForm& b, int parity, const TablePtr& table) {
  size_t n = b.size();
  std::vector<std::pair<size_t, size_t>> unknowns;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if ((bit(b.basis()[i]) + bit(b.basis()[j])) % 2 == parity) unknowns.emplace_back(i, j);
  // Row (a,c): sum_i B_ic X_ia + (-1)^{p p_a} sum_i B_ai X_ic = 0.
  ScalarMatrix sys;
  for (size_t a = 0; a < n; ++a)
    for (size_t c = 0; c < n; ++c) {
      std::vector<Scalar> row(unknowns.size());
      for (size_t u = 0; u < unknowns.size(); ++u) {
        auto [i, j] = unknowns[u];
        if (j == a) row[u] += b.at(i, c);
        if (j == c) row[u] += (parity * bit(b.basis()[a])) ? -b.at(a, i) : b.at(a, i);
      }
      sys.push_back(std::move(row));
    }
  std::vector<SuperMatrix> out;
  for (const auto& v : scalar_nullspace(sys)) {
    ScalarMatrix m(n, std::vector<Scalar>(n));
    for (size_t u = 0; u < unknowns.size(); ++u) m[unknowns[u].first][unknowns[u].second] = v[u];
    out.push_back(SuperMatrix::from_scalars(b.basis(), table, m, parity));
  }
  return out;
}

BilinearForm pi_flip_form(const BilinearForm& b) {
  if (!b.is_even()) throw Error(ErrorCode::NotEven, "parity flip needs an even form");
  std::vector<Parity> basis;
  for (auto p : b.basis()) basis.push_back(flip(p));
  ScalarMatrix m = b.matrix();
  for (size_t i = 0; i < b.size(); ++i)
    if (b.basis()[i] == Parity::Odd)
      for (auto& v : m[i]) v = -v;
  return BilinearForm(basis, m);
}

namespace {

Scalar pair_value(const BilinearForm& b, const std::vector<Scalar>& u, const std::vector<Scalar>& w) {
  Scalar s;
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (size_t j = 0; j < w.size(); ++j)
      if (!w[j].is_zero() && !b.at(i, j).is_zero()) s += u[i] * b.at(i, j) * w[j];
  }
  return s;
}

std::vector<Scalar> axpy(const std::vector<Scalar>& y, const Scalar& a, const std::vector<Scalar>& x) {
  std::vector<Scalar> r = y;
  if (a.is_zero()) return r;
  for (size_t i = 0; i < r.size(); ++i)
    if (!x[i].is_zero()) r[i] += a * x[i];
  return r;
}

std::vector<Scalar> scaled(const std::vector<Scalar>& x, const Scalar& a) {
  std::vector<Scalar> r = x;
  for (auto& v : r) v *= a;
  return r;
}

}  // namespace

ScalarMatrix symplectic_standard_form(const BilinearForm& b) {
  size_t n = b.size();
  ScalarMatrix m(n, std::vector<Scalar>(n));
  std::vector<size_t> ev, od;
  for (size_t i = 0; i < n; ++i) (b.basis()[i] == Parity::Even ? ev : od).push_back(i);
  for (size_t k = 0; k + 1 < ev.size(); k += 2) {
    m[ev[k]][ev[k + 1]] = Scalar(1);
    m[ev[k + 1]][ev[k]] = Scalar(-1);
  }
  for (size_t i : od) m[i][i] = Scalar(1);
  return m;
}

SymplecticBasis symplectic_basis(const BilinearForm& b, int orientation) {
  if (!b.is_even()) throw Error(ErrorCode::NotEven, "symplectic basis needs an even form");
  size_t n = b.size();
  std::vector<size_t> ev, od;
  for (size_t i = 0; i < n; ++i) (b.basis()[i] == Parity::Even ? ev : od).push_back(i);
  auto unit = [n](size_t i) {
    std::vector<Scalar> v(n);
    v[i] = Scalar(1);
    return v;
  };
  SymplecticBasis out;
  out.T = ScalarMatrix(n, std::vector<Scalar>(n));
  auto place = [&](size_t col, const std::vector<Scalar>& v) {
    for (size_t i = 0; i < n; ++i) out.T[i][col] = v[i];
  };

  // Even part: symplectic Gram-Schmidt.
  std::vector<std::vector<Scalar>> work;
  for (size_t i : ev) work.push_back(unit(i));
  size_t slot = 0;
  while (!work.empty()) {
    auto e = work.front();
    work.erase(work.begin());
    size_t k = 0;
    while (k < work.size() && pair_value(b, e, work[k]).is_zero()) ++k;
    if (k == work.size()) throw Error(ErrorCode::Degenerate, "even part of the form is degenerate");
    auto f = scaled(work[k], pair_value(b, e, work[k]).inverse());
    work.erase(work.begin() + static_cast<long>(k));
    for (auto& w : work) w = axpy(axpy(w, pair_value(b, f, w), e), -pair_value(b, e, w), f);
    place(ev[slot++], e);
    place(ev[slot++], f);
  }

  // Odd part: congruence diagonalization, then rescale to +1.
  work.clear();
  for (size_t i : od) work.push_back(unit(i));
  std::vector<Scalar> diag;
  slot = 0;
  while (!work.empty()) {
    size_t k = 0;
    while (k < work.size() && pair_value(b, work[k], work[k]).is_zero()) ++k;
    if (k == work.size()) {
      bool fixed = false;
      for (size_t i = 0; i < work.size() && !fixed; ++i)
        for (size_t j = i + 1; j < work.size() && !fixed; ++j)
          if (!pair_value(b, work[i], work[j]).is_zero()) {
            work[i] = axpy(work[i], Scalar(1), work[j]);
            k = i;
            fixed = true;
          }
      if (!fixed) throw Error(ErrorCode::Degenerate, "odd part of the form is degenerate");
    }
    auto w = work[k];
    work.erase(work.begin() + static_cast<long>(k));
    Scalar d = pair_value(b, w, w);
    for (auto& u : work) u = axpy(u, -(pair_value(b, w, u) / d), w);
    Scalar t;
    try {
      t = sqrt_monomial(d.inverse());
    } catch (const Error&) {
      throw Error(ErrorCode::OddDiagonalizationFailure, "no formal root of 1/" + d.to_string());
    }
    if (d.eval_complex({}).real() < 0) ++out.negative_count;
    diag.push_back(d);
    place(od[slot++], scaled(w, t));
  }

  out.orientation_factor = Scalar(1);
  out.orientation_sign = 1;
  if (!od.empty()) {
    ScalarMatrix t_odd(od.size(), std::vector<Scalar>(od.size()));
    for (size_t i = 0; i < od.size(); ++i)
      for (size_t j = 0; j < od.size(); ++j) t_odd[i][j] = out.T[od[i]][od[j]];
    Scalar f = Scalar(GaussRat(0, -1)).pow(out.negative_count) / scalar_det(t_odd);
    int sign = f.eval_complex({}).real() > 0 ? 1 : -1;
    if (orientation != 0 && sign != orientation) {
      size_t last = od.back();
      for (size_t i = 0; i < n; ++i) out.T[i][last] = -out.T[i][last];
      f = -f;
      sign = -sign;
    }
    out.orientation_factor = f;
    out.orientation_sign = sign;
  }
  return out;
}

// ------------------------------------------------------ moment and Poisson

std::vector<std::string> default_dual_names(const std::vector<Parity>& basis) {
  std::vector<std::string> names;
  for (size_t i = 0; i < basis.size(); ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

TablePtr dual_coordinate_table(const std::vector<Parity>& basis, const std::vector<std::string>& names) {
  std::vector<Generator> g;
  for (size_t i = 0; i < basis.size(); ++i) g.push_back({names[i], basis[i], Role::ParameterDual, ""});
  return VariableTable::make(g);
}

namespace {

SuperFunction entry_on(const SuperFunction& f, const TablePtr& table) {
  if (f.is_zero()) return SuperFunction(table);
  if (same_table(f.table(), table)) return f.rebased(table);
  if (f.is_constant()) return SuperFunction::constant(table, f.constant_term());
  throw Error(ErrorCode::TableMismatch, "matrix entries live on another table");
}

}  // namespace

SuperFunction moment_map(const SuperMatrix& x, const BilinearForm& b, const TablePtr& table,
                         const std::vector<std::string>& coords) {
  if (coords.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "one coordinate per basis vector");
  if (!check_osp_spo(x, b)) throw Error(ErrorCode::NotInSpo, "matrix does not preserve the form");
  std::vector<SuperFunction> v, xv;
  for (size_t i = 0; i < b.size(); ++i) {
    const auto& g = table->get(coords[i]);
    if (g.parity != b.basis()[i]) throw Error(ErrorCode::ParityMismatch, coords[i] + " has the wrong parity");
    v.push_back(SuperFunction::var(table, coords[i]));
  }
  for (size_t i = 0; i < b.size(); ++i) {
    SuperFunction c(table);
    for (size_t j = 0; j < b.size(); ++j)
      if (!x.at(i, j).is_zero()) c += entry_on(x.at(i, j), table) * v[j];
    xv.push_back(c);
  }
  return b.evaluate(v, xv) * Scalar::rational(-1, 2);
}

SuperFunction poisson_bracket(const SuperFunction& f, const SuperFunction& g, const BilinearForm& b,
                              const std::vector<std::string>& coords) {
  if (f.has_kernels() || g.has_kernels()) throw Error(ErrorCode::KernelNotSupported, "Poisson bracket of kernels");
  ScalarMatrix inv = scalar_inverse(b.matrix());
  SuperFunction out(f.table() ? f.table() : g.table());
  for (size_t a = 0; a < coords.size(); ++a) {
    SuperFunction fa = f.derive_right(coords[a]);
    if (fa.is_zero()) continue;
    for (size_t c = 0; c < coords.size(); ++c) {
      const Scalar& p = inv[c][a];
      if (p.is_zero()) continue;
      SuperFunction gc = g.derive(coords[c]);
      if (!gc.is_zero()) out += (fa * gc) * p;
    }
  }
  return out;
}

}  // namespace superforms
