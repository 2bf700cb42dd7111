#include "superforms/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "superforms/errors.hpp"

namespace superforms {

namespace {

void check_distinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars)
    if (!seen.insert(v).second) throw Error(ErrorCode::InvalidArgument, v + " is listed twice");
}

std::map<std::string, double> unit_point(const Scalar& s) {
  std::map<std::string, double> p;
  for (const auto& name : s.parameters()) p[name] = 1.0;
  return p;
}

// Replace t^n by its Gaussian moment against exp(-a t^2/2), without the
// common (2pi)^{1/2} a^{-1/2} factor.
SuperFunction integrate_moments(const SuperFunction& p, size_t slot, const Scalar& a) {
  SuperFunction out(p.table());
  Scalar a_inv = a.inverse();
  for (const auto& [k, poly] : p.parts())
    for (const auto& [m, c] : poly) {
      int n = m.even[slot];
      if (n > 64) throw Error(ErrorCode::UnboundedPolynomialDegree, "moment of degree " + std::to_string(n));
      if (n % 2) continue;
      Scalar w = a_inv.pow(n / 2);
      for (int j = n - 1; j > 0; j -= 2) w *= Scalar(j);
      MonoKey stripped = m;
      stripped.even[slot] = 0;
      out.add_term(k, stripped, c * w);
    }
  return out;
}

// No remaining diagonal entry: substitute v_s -> v_s + e v_j (e = +-1, unit
// Jacobian) for a coupled remaining pair, making A_jj nonzero.
void shear_for_pivot(const TablePtr& t, const std::vector<size_t>& remaining, GaussianKernel& k, SuperFunction& p) {
  for (size_t s : remaining)
    for (size_t j : remaining) {
      if (s == j || k.a(s, j).is_zero()) continue;
      long e = (k.a(j, j) + k.a(s, j) * Scalar(2)).is_zero() ? -1 : 1;
      GaussianKernel next = k;
      for (size_t i = 0; i < t->n_even(); ++i) {
        if (i == j) continue;
        Scalar v = k.a(i, j) + k.a(i, s) * Scalar(e);
        next.set_a(i, j, v);
      }
      next.set_a(j, j, k.a(j, j) + k.a(s, j) * Scalar(2 * e) + k.a(s, s));
      Scalar bs = k.b.count(s) ? k.b.at(s) : Scalar();
      Scalar bj = (k.b.count(j) ? k.b.at(j) : Scalar()) + bs * Scalar(e);
      if (bj.is_zero()) {
        next.b.erase(j);
      } else {
        next.b[j] = bj;
      }
      k = next;
      const std::string& name = t->even_name(s);
      p = p.substitute({{name, SuperFunction::var(t, name) + SuperFunction::var(t, t->even_name(j)) * Scalar(e)}}, t);
      return;
    }
  throw Error(ErrorCode::SingularKernel, "no invertible pivot among the remaining integration variables");
}

}  // namespace

SuperFunction berezin_integral(const SuperFunction& f, const std::vector<std::string>& odd_vars) {
  check_distinct(odd_vars);
  const TablePtr& t = f.table();
  for (const auto& v : odd_vars)
    if (t->get(v).parity != Parity::Odd) throw Error(ErrorCode::NotOdd, v + " is not odd");
  SuperFunction g = f;
  for (auto it = odd_vars.rbegin(); it != odd_vars.rend(); ++it) g = g.derive(*it);
  return g.rebased(t->without(odd_vars));
}

IntegrationResult gaussian_integral_even(const SuperFunction& f, const std::vector<std::string>& even_vars) {
  check_distinct(even_vars);
  const TablePtr& t = f.table();
  std::vector<size_t> slots;
  for (const auto& v : even_vars) {
    size_t k = t->index_of(v);
    if (t->at(k).parity != Parity::Even) throw Error(ErrorCode::NotEven, v + " is not even");
    slots.push_back(t->slot(k));
  }
  IntegrationResult out{SuperFunction(t), {}};
  if (slots.empty()) {
    out.value = f;
    return out;
  }
  for (const auto& [kernel, poly] : f.parts()) {
    SuperFunction p(t);
    for (const auto& [m, c] : poly) p.add_term(GaussianKernel{}, m, c);
    GaussianKernel k = kernel;
    std::vector<size_t> remaining = slots;
    std::vector<Scalar> pivots;
    std::vector<std::string> order;
    while (!remaining.empty()) {
      auto pick = std::find_if(remaining.begin(), remaining.end(), [&](size_t s) { return !k.a(s, s).is_zero(); });
      if (pick == remaining.end()) {
        shear_for_pivot(t, remaining, k, p);
        pick = std::find_if(remaining.begin(), remaining.end(), [&](size_t s) { return !k.a(s, s).is_zero(); });
      }
      size_t s = *pick;
      remaining.erase(pick);
      Scalar a = k.a(s, s), a_inv = a.inverse();
      Scalar bs = k.b.count(s) ? k.b.at(s) : Scalar();
      const std::string& name = t->even_name(s);

      // Shift t -> t + (b_s - sum_j A_sj v_j)/a.
      std::vector<size_t> nbrs;
      for (size_t j = 0; j < t->n_even(); ++j)
        if (j != s && !k.a(s, j).is_zero()) nbrs.push_back(j);
      SuperFunction shifted = SuperFunction::var(t, name) + SuperFunction::constant(t, bs * a_inv);
      for (size_t j : nbrs) shifted -= SuperFunction::var(t, t->even_name(j)) * (k.a(s, j) * a_inv);
      p = p.substitute({{name, shifted}}, t);

      GaussianKernel next = k;
      for (size_t x = 0; x < nbrs.size(); ++x)
        for (size_t y = x; y < nbrs.size(); ++y) {
          size_t i = nbrs[x], j = nbrs[y];
          next.set_a(i, j, k.a(i, j) - k.a(s, i) * k.a(s, j) * a_inv);
        }
      for (size_t j : nbrs) {
        Scalar bj = (next.b.count(j) ? next.b.at(j) : Scalar()) - bs * k.a(s, j) * a_inv;
        if (bj.is_zero()) {
          next.b.erase(j);
        } else {
          next.b[j] = bj;
        }
        next.set_a(s, j, Scalar());
      }
      next.set_a(s, s, Scalar());
      next.b.erase(s);
      next.c += bs * bs * a_inv * Scalar::rational(1, 2);
      k = next;

      p = integrate_moments(p, s, a);
      pivots.push_back(a);
      order.push_back(name);
    }

    Scalar product(1);
    std::complex<double> reference(1.0, 0.0);
    for (const auto& a : pivots) {
      product *= a;
      reference *= std::sqrt(a.eval_complex(unit_point(a)));
    }
    Scalar root = sqrt_monomial(product);
    std::complex<double> r = root.eval_complex(unit_point(root));
    if (std::abs(r + reference) < std::abs(r - reference)) root = -root;
    out.assumptions.add({order, pivots, root, "product of principal roots at parameters = 1"});

    Scalar factor = Scalar::tau().pow(static_cast<long>(pivots.size())) / root;
    out.value += SuperFunction::kernel(t, k) * p * factor;
  }
  out.value = out.value.rebased(t->without(even_vars));
  return out;
}

IntegrationResult integrate_superspace(const SuperFunction& f, const IntegrationSpec& spec) {
  check_distinct(spec.variables);
  const TablePtr& t = f.table();
  SuperFunction g = f;
  size_t m = 0;
  std::vector<std::string> evens, odds;
  for (const auto& v : spec.variables) {
    if (t->get(v).parity == Parity::Even) {
      evens.push_back(v);
      ++m;
    } else {
      odds.push_back(v);
    }
  }
  if (spec.normalization == Normalization::Liouville) {
    if (!spec.form) throw Error(ErrorCode::InvalidArgument, "Liouville integration needs a symplectic form");
    const BilinearForm& b = *spec.form;
    if (b.size() != spec.variables.size())
      throw Error(ErrorCode::DimensionMismatch, "form size differs from the variable count");
    for (size_t i = 0; i < b.size(); ++i)
      if (b.basis()[i] != t->get(spec.variables[i]).parity)
        throw Error(ErrorCode::ParityMismatch, spec.variables[i] + " has the wrong parity for the form");
    ScalarMatrix tm;
    if (spec.basis) {
      tm = *spec.basis;
      auto tbt = scalar_mul(scalar_transpose(tm), scalar_mul(b.matrix(), tm));
      if (tbt != symplectic_standard_form(b))
        throw Error(ErrorCode::InvalidArgument, "given basis is not symplectic for the form");
      std::vector<size_t> od;
      for (size_t i = 0; i < b.size(); ++i)
        if (b.basis()[i] == Parity::Odd) od.push_back(i);
      if (!od.empty()) {
        ScalarMatrix t_odd(od.size(), std::vector<Scalar>(od.size()));
        long q = 0;
        for (size_t j = 0; j < od.size(); ++j) {
          bool imaginary = true;
          for (size_t i = 0; i < od.size(); ++i) {
            t_odd[i][j] = tm[od[i]][od[j]];
            if (!t_odd[i][j].is_zero() && std::abs(t_odd[i][j].eval_complex(unit_point(t_odd[i][j])).real()) > 1e-12)
              imaginary = false;
          }
          if (imaginary) ++q;
        }
        Scalar factor = Scalar(GaussRat(0, -1)).pow(q) / scalar_det(t_odd);
        int sign = factor.eval_complex(unit_point(factor)).real() > 0 ? 1 : -1;
        if (sign != spec.orientation) throw Error(ErrorCode::InvalidArgument, "given basis has the other orientation");
      }
    } else {
      tm = symplectic_basis(b, spec.orientation).T;
    }
    std::map<std::string, SuperFunction> images;
    for (size_t i = 0; i < b.size(); ++i) {
      SuperFunction img(t);
      for (size_t j = 0; j < b.size(); ++j)
        if (!tm[i][j].is_zero()) img += SuperFunction::var(t, spec.variables[j]) * tm[i][j];
      images[spec.variables[i]] = img;
    }
    g = g.substitute(images, t);
  }
  IntegrationResult r = gaussian_integral_even(g, evens);
  r.value = berezin_integral(r.value, odds);
  if (spec.normalization == Normalization::Liouville) r.value = r.value * Scalar::tau().pow(-static_cast<long>(m));
  return r;
}

std::vector<std::string> form_integration_order(const TablePtr& table, const std::vector<std::string>& even_coords,
                                                const std::vector<std::string>& odd_coords) {
  std::vector<std::string> order = even_coords;
  for (const auto& xi : odd_coords) order.push_back(table->differential_of(xi));
  for (const auto& x : even_coords) order.push_back(table->differential_of(x));
  order.insert(order.end(), odd_coords.begin(), odd_coords.end());
  return order;
}

namespace {

SuperFunction on_table(const SuperFunction& f, const TablePtr& t) {
  if (f.is_zero()) return SuperFunction(t);
  if (same_table(f.table(), t)) return f.rebased(t);
  if (f.is_constant()) return SuperFunction::constant(t, f.constant_term());
  return f.rebased(t);
}

std::map<std::string, SuperFunction> linear_images(const SuperMatrix& h, const TablePtr& t,
                                                   const std::vector<std::string>& vars) {
  if (h.size() != vars.size()) throw Error(ErrorCode::DimensionMismatch, "map size differs from the variable count");
  std::map<std::string, SuperFunction> images;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (h.basis()[i] != t->get(vars[i]).parity)
      throw Error(ErrorCode::ParityMismatch, vars[i] + " has the wrong parity for the map");
    SuperFunction img(t);
    for (size_t j = 0; j < vars.size(); ++j)
      if (!h.at(i, j).is_zero()) img += on_table(h.at(i, j), t) * SuperFunction::var(t, vars[j]);
    images[vars[i]] = img;
  }
  return images;
}

}  // namespace

SuperMatrix linear_jacobian(const SuperMatrix& h, const TablePtr& table, const std::vector<std::string>& variables) {
  auto images = linear_images(h, table, variables);
  SuperMatrix j(h.basis(), table);
  for (size_t i = 0; i < variables.size(); ++i)
    for (size_t k = 0; k < variables.size(); ++k) j.at(i, k) = images.at(variables[k]).derive(variables[i]);
  return j;
}

ChangeOfVariables change_of_variables_verify(const SuperFunction& f, const SuperMatrix& h,
                                             const std::vector<std::string>& variables) {
  const TablePtr& t = f.table();
  auto images = linear_images(h, t, variables);
  SuperFunction ber = berezinian(linear_jacobian(h, t, variables), BerVariant::OneZero);
  IntegrationSpec spec;
  spec.variables = variables;
  ChangeOfVariables out;
  IntegrationResult lhs = integrate_superspace(ber * f.substitute(images, t), spec);
  IntegrationResult rhs = integrate_superspace(f, spec);
  out.transformed = lhs.value;
  out.original = rhs.value;
  out.assumptions = lhs.assumptions;
  out.assumptions.append(rhs.assumptions);
  out.equal = out.transformed == out.original;
  return out;
}

namespace {

TablePtr with_variables(const TablePtr& t, const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  std::vector<Generator> more;
  for (const auto& v : even)
    if (!t->find(v)) more.push_back({v, Parity::Even, Role::ParameterDual, ""});
  for (const auto& v : odd)
    if (!t->find(v)) more.push_back({v, Parity::Odd, Role::ParameterDual, ""});
  for (const auto& v : even)
    if (t->find(v) && t->get(v).parity != Parity::Even) throw Error(ErrorCode::ParityMismatch, v + " must be even");
  for (const auto& v : odd)
    if (t->find(v) && t->get(v).parity != Parity::Odd) throw Error(ErrorCode::ParityMismatch, v + " must be odd");
  return more.empty() ? t : t->extended(more);
}

}  // namespace

FourierResult fourier_transform(const SuperFunction& f, const FourierSpace& space, FourierDirection direction) {
  if (space.even.size() != space.dual_even.size() || space.odd.size() != space.dual_odd.size())
    throw Error(ErrorCode::DimensionMismatch, "dual variables must match the coordinates");
  bool forward = direction == FourierDirection::FunctionToDistribution;
  TablePtr t = forward ? with_variables(f.table(), space.dual_even, space.dual_odd)
                       : with_variables(f.table(), space.even, space.odd);
  SuperFunction g = f.rebased(t);
  SuperFunction pairing(t);
  for (size_t i = 0; i < space.even.size(); ++i)
    pairing += SuperFunction::var(t, space.even[i]) * SuperFunction::var(t, space.dual_even[i]);
  for (size_t j = 0; j < space.odd.size(); ++j)
    pairing += SuperFunction::var(t, space.dual_odd[j]) * SuperFunction::var(t, space.odd[j]);
  Scalar phase = forward ? Scalar::i() : -Scalar::i();
  IntegrationSpec spec;
  if (forward) {
    spec.variables = space.even;
    spec.variables.insert(spec.variables.end(), space.odd.begin(), space.odd.end());
  } else {
    spec.variables = space.dual_even;
    spec.variables.insert(spec.variables.end(), space.dual_odd.begin(), space.dual_odd.end());
  }
  IntegrationResult r = integrate_superspace(g * exp_even(pairing * phase), spec);
  FourierResult out{r.value, "", r.assumptions};
  if (forward) {
    long n = static_cast<long>(space.odd.size()), m = static_cast<long>(space.even.size());
    Scalar norm = Scalar::i().pow(n) * Scalar::two_pi().pow(-m);
    if ((n * (n - 1) / 2) % 2) norm = -norm;
    out.value = out.value * norm;
    std::string tag = "d_(";
    for (size_t i = 0; i < space.dual_even.size() + space.dual_odd.size(); ++i) {
      if (i) tag += ",";
      tag += i < space.dual_even.size() ? space.dual_even[i] : space.dual_odd[i - space.dual_even.size()];
    }
    out.measure = tag + ")";
  }
  return out;
}

IntegrationResult direct_image(const SuperFunction& f, const std::vector<std::string>& fibre_even,
                               const std::vector<std::string>& fibre_odd) {
  IntegrationSpec spec;
  spec.variables = form_integration_order(f.table(), fibre_even, fibre_odd);
  IntegrationResult r = integrate_superspace(f, spec);
  long rank = static_cast<long>(fibre_even.size() + fibre_odd.size());
  r.value = r.value * Scalar::tau().pow(-rank);
  return r;
}

}  // namespace superforms
