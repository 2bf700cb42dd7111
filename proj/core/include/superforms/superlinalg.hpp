#pragma once

#include <string>
#include <vector>

#include "superforms/superfunction.hpp"

namespace superforms {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

ScalarMatrix scalar_identity(size_t n);
ScalarMatrix scalar_mul(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix scalar_transpose(const ScalarMatrix& a);
// Throws Degenerate when singular.
ScalarMatrix scalar_inverse(const ScalarMatrix& a);
Scalar scalar_det(const ScalarMatrix& a);
// Basis of {v : a v = 0}, as columns.
std::vector<std::vector<Scalar>> scalar_nullspace(const ScalarMatrix& a);

// Square supermatrix over a Grassmann coefficient algebra (SuperFunctions on
// `table`). Basis vector i has parity basis[i]; entry (i,j) of a matrix of
// parity p has Grassmann parity p + p_i + p_j. The usual (k|l) layout is
// basis = k evens followed by l odds.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(std::vector<Parity> basis, TablePtr table, int parity = 0);
  static std::vector<Parity> standard_basis(size_t k, size_t l);
  static SuperMatrix identity(std::vector<Parity> basis, TablePtr table);
  static SuperMatrix from_scalars(std::vector<Parity> basis, TablePtr table, const ScalarMatrix& m, int parity = 0);

  size_t size() const { return basis_.size(); }
  const std::vector<Parity>& basis() const { return basis_; }
  const TablePtr& table() const { return table_; }
  int parity() const { return parity_; }
  size_t even_dim() const;
  size_t odd_dim() const;

  const SuperFunction& at(size_t i, size_t j) const { return e_[i * size() + j]; }
  SuperFunction& at(size_t i, size_t j) { return e_[i * size() + j]; }
  // Scalar value of every entry; throws if an entry is not a constant.
  ScalarMatrix to_scalars() const;
  bool entries_are_scalars() const;

  // Entries respect the parity discipline.
  bool parity_consistent() const;

  SuperMatrix operator+(const SuperMatrix& o) const;
  SuperMatrix operator-(const SuperMatrix& o) const;
  SuperMatrix operator*(const SuperMatrix& o) const;
  SuperMatrix operator*(const Scalar& s) const;
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

  // [X, Y] = XY - (-1)^{p(X)p(Y)} YX
  static SuperMatrix bracket(const SuperMatrix& x, const SuperMatrix& y);

  std::string to_string() const;

 private:
  void check_compatible(const SuperMatrix& o) const;

  std::vector<Parity> basis_;
  TablePtr table_;
  int parity_ = 0;
  std::vector<SuperFunction> e_;
};

// Inverse of an even element with invertible body (finite Neumann series).
SuperFunction inverse_even(const SuperFunction& f);
// Body of an even Grassmann element: its constant part.
Scalar body(const SuperFunction& f);

// Determinant of a matrix with even, mutually commuting entries.
SuperFunction determinant_even(const std::vector<std::vector<SuperFunction>>& m, const TablePtr& table);

SuperFunction supertrace(const SuperMatrix& m);

enum class BerVariant { Standard, OneZero };
SuperFunction berezinian(const SuperMatrix& m, BerVariant variant = BerVariant::Standard);

// exp of a matrix with nilpotent entries.
SuperMatrix matrix_exp_nilpotent(const SuperMatrix& x);

// Even bilinear form on a free module with homogeneous basis g_i: entries B(g_i, g_j).
class BilinearForm {
 public:
  enum class Symmetry { Symmetric, Antisymmetric, Both, Neither };

  BilinearForm() = default;
  BilinearForm(std::vector<Parity> basis, ScalarMatrix m);

  const std::vector<Parity>& basis() const { return basis_; }
  const ScalarMatrix& matrix() const { return m_; }
  size_t size() const { return basis_.size(); }
  const Scalar& at(size_t i, size_t j) const { return m_[i][j]; }

  // Even: B(g_i, g_j) = 0 whenever p_i != p_j.
  bool is_even() const;
  // Super sign rule: symmetric means B(v,w) = (-1)^{p(v)p(w)} B(w,v).
  Symmetry symmetry() const;
  bool nondegenerate() const;

  // B(sum g_i a_i, sum g_j b_j) = sum (-1)^{p(a_i)p(g_j)} B_ij a_i b_j for
  // homogeneous coefficient functions a_i, b_j.
  SuperFunction evaluate(const std::vector<SuperFunction>& a, const std::vector<SuperFunction>& b) const;

  friend bool operator==(const BilinearForm& x, const BilinearForm& y) {
    return x.basis_ == y.basis_ && x.m_ == y.m_;
  }
  BilinearForm operator-() const;

 private:
  std::vector<Parity> basis_;
  ScalarMatrix m_;
};

const char* symmetry_name(BilinearForm::Symmetry s);

// True iff B(Xv,w) + (-1)^{p(X)p(v)} B(v,Xw) = 0 on all basis pairs.
bool check_osp_spo(const SuperMatrix& x, const BilinearForm& b);

// Basis of the homogeneous part of parity p of {X : check_osp_spo(X, B)} with
// Scalar entries, from the nullspace of the defining linear system.
std::vector<SuperMatrix> preserving_algebra_basis(const BilinearForm& b, int parity, const TablePtr& table);

// Pi B(Pi g_i, Pi g_j) = (-1)^{p(g_i)} B(g_i, g_j), on the flipped basis in the same order.
BilinearForm pi_flip_form(const BilinearForm& b);

struct SymplecticBasis {
  // Columns are the new basis vectors in terms of the old: g'_j = sum_i g_i T_ij.
  ScalarMatrix T;
  // (-i)^q xi'^1...xi'^n = orientation_factor * xi^1...xi^n over the odd basis vectors.
  Scalar orientation_factor;
  int orientation_sign = 1;
  int negative_count = 0;
};

// Standard form: on even vectors consecutive pairs with B(e_1, e_2) = 1; on
// odd vectors B(f_i, f_j) = delta_ij. `orientation` (+1/-1) picks the sign of
// the odd top form relative to the original odd coordinates by negating the
// last odd column if needed; 0 keeps the basis the algorithm finds.
SymplecticBasis symplectic_basis(const BilinearForm& b, int orientation = 0);
// The standard form itself, for the basis layout of b.
ScalarMatrix symplectic_standard_form(const BilinearForm& b);

// A table with one dual coordinate per basis vector (parity matching), role parameter-dual.
TablePtr dual_coordinate_table(const std::vector<Parity>& basis, const std::vector<std::string>& names);
std::vector<std::string> default_dual_names(const std::vector<Parity>& basis);

// mu(X)(v) = -1/2 B(v, Xv) at the generic point v = sum g_i z^i.
SuperFunction moment_map(const SuperMatrix& x, const BilinearForm& b, const TablePtr& table,
                         const std::vector<std::string>& coords);

// Biderivation extending {z^a, z^b} = B(v_a, v_b) on the dual coordinates.
SuperFunction poisson_bracket(const SuperFunction& f, const SuperFunction& g, const BilinearForm& b,
                              const std::vector<std::string>& coords);

}  // namespace superforms
