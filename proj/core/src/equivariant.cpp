#include "superforms/equivariant.hpp"

#include "superforms/errors.hpp"

namespace superforms {

Scalar i_power(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return Scalar(1);
    case 1:
      return Scalar::i();
    case 2:
      return Scalar(-1);
    default:
      return -Scalar::i();
  }
}

// ------------------------------------------------------------ LinearAction

LinearAction::LinearAction(std::vector<Parity> basis, BilinearForm q, std::vector<ScalarMatrix> generators,
                           std::vector<std::string> coords, std::vector<std::string> params)
    : basis_(std::move(basis)),
      q_(std::move(q)),
      gens_(std::move(generators)),
      coords_(std::move(coords)),
      params_(std::move(params)) {
  size_t n = basis_.size();
  if (q_.basis() != basis_ || coords_.size() != n || params_.size() != gens_.size())
    throw Error(ErrorCode::DimensionMismatch, "action data do not fit the basis");
  if (!q_.is_even() || q_.symmetry() != BilinearForm::Symmetry::Symmetric || !q_.nondegenerate())
    throw Error(ErrorCode::Degenerate, "Q must be even, symmetric and nondegenerate");
  auto empty = VariableTable::make({});
  for (const auto& g : gens_) {
    if (g.size() != n) throw Error(ErrorCode::DimensionMismatch, "generator size differs from the basis");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (basis_[i] != basis_[j] && !g[i][j].is_zero()) throw Error(ErrorCode::NotEven, "generator is not even");
    if (!check_osp_spo(SuperMatrix::from_scalars(basis_, empty, g), q_))
      throw Error(ErrorCode::NotInvariant, "generator does not preserve Q");
  }
  for (size_t a = 0; a < gens_.size(); ++a)
    for (size_t b = a + 1; b < gens_.size(); ++b)
      if (scalar_mul(gens_[a], gens_[b]) != scalar_mul(gens_[b], gens_[a]))
        throw Error(ErrorCode::NotInvariant, "generators do not commute");
  std::vector<Generator> g;
  for (size_t i = 0; i < n; ++i) g.push_back({coords_[i], basis_[i], Role::Coordinate, ""});
  for (size_t i = 0; i < n; ++i) g.push_back({"d" + coords_[i], flip(basis_[i]), Role::Differential, coords_[i]});
  table_ = VariableTable::make(g);
}

size_t LinearAction::even_dim() const { return std::count(basis_.begin(), basis_.end(), Parity::Even); }
size_t LinearAction::odd_dim() const { return basis_.size() - even_dim(); }

std::vector<std::string> LinearAction::even_coords() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == Parity::Even) out.push_back(coords_[i]);
  return out;
}

std::vector<std::string> LinearAction::odd_coords() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == Parity::Odd) out.push_back(coords_[i]);
  return out;
}

std::vector<Scalar> LinearAction::generic_element() const {
  std::vector<Scalar> x;
  for (const auto& p : params_) x.push_back(Scalar::param(p));
  return x;
}

ScalarMatrix LinearAction::rho(const std::vector<Scalar>& x) const {
  if (x.size() != gens_.size()) throw Error(ErrorCode::DimensionMismatch, "one coefficient per generator");
  size_t n = basis_.size();
  ScalarMatrix r(n, std::vector<Scalar>(n));
  for (size_t k = 0; k < gens_.size(); ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!gens_[k][i][j].is_zero() && !x[k].is_zero()) r[i][j] += x[k] * gens_[k][i][j];
  return r;
}

// ------------------------------------------------------------ Cartan calculus

SuperFunction VectorField::apply(const SuperFunction& f) const {
  SuperFunction out(f.table());
  for (const auto& [v, c] : coeff)
    if (!c.is_zero()) out += c * f.derive(v);
  return out;
}

VectorField vector_field_of(const LinearAction& action, const std::vector<Scalar>& x) {
  ScalarMatrix y = action.rho(x);
  const TablePtr& t = action.form_table();
  VectorField v{t, 0, {}};
  const auto& z = action.coords();
  for (size_t i = 0; i < z.size(); ++i) {
    SuperFunction c(t);
    for (size_t j = 0; j < z.size(); ++j)
      if (!y[i][j].is_zero()) c -= SuperFunction::var(t, z[j]) * y[i][j];
    v.coeff[z[i]] = c;
  }
  return v;
}

SuperFunction exterior_d(const SuperFunction& f) {
  const TablePtr& t = f.table();
  SuperFunction out(t);
  for (const auto& g : t->generators()) {
    if (g.role != Role::Differential) continue;
    SuperFunction df = f.derive(g.base);
    if (!df.is_zero()) out += SuperFunction::var(t, g.name) * df;
  }
  return out;
}

SuperFunction contraction(const VectorField& zeta, const SuperFunction& f) {
  const TablePtr& t = f.table();
  SuperFunction out(t);
  for (const auto& [v, c] : zeta.coeff) {
    if (c.is_zero()) continue;
    SuperFunction part = f.derive(t->differential_of(v));
    if (!part.is_zero()) out += c.rebased(t) * part;
  }
  return zeta.parity ? -out : out;
}

SuperFunction lie_derivative(const VectorField& zeta, const SuperFunction& f) {
  return exterior_d(contraction(zeta, f)) + contraction(zeta, exterior_d(f));
}

SuperFunction lie_derivation(const VectorField& zeta, const SuperFunction& f) {
  if (zeta.parity != 0) throw Error(ErrorCode::NotEven, "Lie derivation is implemented for even fields");
  const TablePtr& t = f.table();
  SuperFunction out(t);
  for (const auto& [v, c] : zeta.coeff) {
    if (c.is_zero()) continue;
    SuperFunction cf = c.rebased(t);
    out += cf * f.derive(v);
    out += exterior_d(cf) * f.derive(t->differential_of(v));
  }
  return out;
}

SuperFunction equivariant_d(const LinearAction& action, const std::vector<Scalar>& x, const SuperFunction& f) {
  VectorField xm = vector_field_of(action, x);
  return exterior_d(f) - contraction(xm, f) * Scalar::i();
}

BetaForm beta_form(const LinearAction& action, const std::vector<Scalar>& y) {
  const TablePtr& t = action.form_table();
  VectorField ym = vector_field_of(action, y);
  const auto& z = action.coords();
  const auto& q = action.form();
  std::vector<SuperFunction> c;
  for (const auto& name : z) c.push_back(ym.coeff.at(name));
  BetaForm out;
  out.beta = SuperFunction(t);
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = 0; b < z.size(); ++b)
      if (!q.at(a, b).is_zero()) out.beta += c[a] * SuperFunction::var(t, "d" + z[b]) * q.at(a, b);
  out.d_g_beta = equivariant_d(action, y, out.beta);
  std::vector<std::string> diffs;
  for (const auto& name : z) diffs.push_back("d" + name);
  out.zero_form_part = out.d_g_beta.set_zero(diffs);
  out.expected_zero_form = q.evaluate(c, c) * (-Scalar::i());
  return out;
}

Scalar pfaffian(const ScalarMatrix& a) {
  size_t n = a.size();
  if (n == 0) return Scalar(1);
  if (n % 2) return Scalar();
  Scalar out;
  for (size_t j = 1; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<size_t> keep;
    for (size_t k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    ScalarMatrix minor(keep.size(), std::vector<Scalar>(keep.size()));
    for (size_t r = 0; r < keep.size(); ++r)
      for (size_t c = 0; c < keep.size(); ++c) minor[r][c] = a[keep[r]][keep[c]];
    Scalar term = a[0][j] * pfaffian(minor);
    out += (j % 2) ? term : -term;
  }
  return out;
}

// ------------------------------------------------------------- Thom form

namespace {

struct Blocks {
  std::vector<size_t> even, odd;
};

Blocks blocks_of(const std::vector<Parity>& basis) {
  Blocks b;
  for (size_t i = 0; i < basis.size(); ++i) (basis[i] == Parity::Even ? b.even : b.odd).push_back(i);
  return b;
}

ScalarMatrix sub(const ScalarMatrix& m, const std::vector<size_t>& idx) {
  ScalarMatrix r(idx.size(), std::vector<Scalar>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) r[i][j] = m[idx[i]][idx[j]];
  return r;
}

int real_sign(const Scalar& s) {
  std::map<std::string, double> p;
  for (const auto& n : s.parameters()) p[n] = 1.0;
  return s.eval_complex(p).real() > 0 ? 1 : -1;
}

void require_invertible_on_odd(const LinearAction& action, const ScalarMatrix& y) {
  auto b = blocks_of(action.basis());
  if (!b.odd.empty() && scalar_det(sub(y, b.odd)).is_zero())
    throw Error(ErrorCode::NotInvertibleOnOdd, "rho(X) is not invertible on the odd part");
}

std::vector<std::string> aux_names(const LinearAction& action) {
  std::vector<std::string> names;
  for (const auto& c : action.coords()) names.push_back("pi_" + c);
  return names;
}

std::vector<Generator> aux_generators(const LinearAction& action) {
  std::vector<Generator> g;
  auto names = aux_names(action);
  for (size_t i = 0; i < names.size(); ++i) g.push_back({names[i], flip(action.basis()[i]), Role::Auxiliary, ""});
  return g;
}

// Auxiliaries of the odd basis vectors (even) first, then those of the even ones (odd).
std::vector<std::string> aux_integration_order(const LinearAction& action) {
  auto names = aux_names(action);
  std::vector<std::string> order;
  for (size_t i = 0; i < names.size(); ++i)
    if (action.basis()[i] == Parity::Odd) order.push_back(names[i]);
  for (size_t i = 0; i < names.size(); ++i)
    if (action.basis()[i] == Parity::Even) order.push_back(names[i]);
  return order;
}

// D_{Pi V} = (2pi)^{-l/2} |Pf(-Q_odd)| det(Q_even)^{-1/2}.
Scalar pi_v_measure(const LinearAction& action) {
  auto b = blocks_of(action.basis());
  const ScalarMatrix& q = action.form().matrix();
  ScalarMatrix neg_odd = sub(q, b.odd);
  for (auto& row : neg_odd)
    for (auto& v : row) v = -v;
  Scalar pf = pfaffian(neg_odd);
  if (real_sign(pf) < 0) pf = -pf;
  Scalar det_even = scalar_det(sub(q, b.even));
  return Scalar::tau().pow(-static_cast<long>(b.odd.size())) * pf / sqrt_monomial(det_even);
}

int compatible_orientation(const LinearAction& action) {
  auto b = blocks_of(action.basis());
  if (b.odd.empty()) return 1;
  ScalarMatrix neg_odd = sub(action.form().matrix(), b.odd);
  for (auto& row : neg_odd)
    for (auto& v : row) v = -v;
  return real_sign(pfaffian(neg_odd));
}

SuperMatrix flipped_operator(const LinearAction& action, const ScalarMatrix& y, const TablePtr& table) {
  std::vector<Parity> flipped;
  for (auto p : action.basis()) flipped.push_back(flip(p));
  return SuperMatrix::from_scalars(flipped, table, y);
}

std::vector<std::string> all_form_generators(const LinearAction& action) {
  std::vector<std::string> names;
  for (const auto& g : action.form_table()->generators()) names.push_back(g.name);
  return names;
}

Scalar constant_value_of(const SuperFunction& f, const char* what) {
  if (f.is_zero()) return Scalar();
  if (!f.is_constant()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not a scalar: " + f.to_string());
  return f.constant_term();
}

}  // namespace

SuperFunction thom_exponent_closed_form(const LinearAction& action, const std::vector<Scalar>& x,
                                        const TablePtr& table, const std::vector<std::string>& aux) {
  ScalarMatrix y = action.rho(x);
  const ScalarMatrix& q = action.form().matrix();
  ScalarMatrix qy = scalar_mul(q, y);
  const auto& z = action.coords();
  const auto& basis = action.basis();
  SuperFunction omega(table);
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = 0; b < z.size(); ++b) {
      if (!q[a][b].is_zero()) {
        // -1/2 Q(v,v) = -1/2 sum (-1)^{p_a} Q_ab z_a z_b for even Q.
        Scalar c = basis[a] == Parity::Odd ? q[a][b] : -q[a][b];
        omega += SuperFunction::var(table, z[a]) * SuperFunction::var(table, z[b]) * (c * Scalar::rational(1, 2));
        Scalar s = basis[a] == Parity::Odd ? -q[a][b] : q[a][b];
        omega += SuperFunction::var(table, "d" + z[a]) * SuperFunction::var(table, aux[b]) * (s * Scalar::i());
      }
      if (!qy[a][b].is_zero())
        omega += SuperFunction::var(table, aux[a]) * SuperFunction::var(table, aux[b]) *
                 (qy[a][b] * Scalar::i() * Scalar::rational(1, 2));
    }
  return omega;
}

ThomForm mathai_quillen_thom(const LinearAction& action, const std::vector<Scalar>& x) {
  ScalarMatrix y = action.rho(x);
  require_invertible_on_odd(action, y);
  const TablePtr& ft = action.form_table();
  TablePtr t = ft->extended(aux_generators(action));
  auto aux = aux_names(action);
  const auto& z = action.coords();
  const BilinearForm& q = action.form();

  std::vector<SuperFunction> v, w;
  for (size_t i = 0; i < z.size(); ++i) {
    v.push_back(SuperFunction::var(t, z[i]));
    w.push_back(SuperFunction::var(t, aux[i]));
  }
  ThomForm out;
  out.auxiliaries = aux;
  out.omega = q.evaluate(v, v) * Scalar::rational(-1, 2);
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = 0; b < z.size(); ++b) {
      if (q.at(a, b).is_zero()) continue;
      Scalar s = action.basis()[a] == Parity::Odd ? -q.at(a, b) : q.at(a, b);
      out.omega += SuperFunction::var(t, "d" + z[a]) * w[b] * (s * Scalar::i());
    }
  out.omega += moment_map(flipped_operator(action, y, t), pi_flip_form(q), t, aux) * Scalar::i();

  IntegrationSpec spec;
  spec.variables = aux_integration_order(action);
  IntegrationResult r = integrate_superspace(exp_even(out.omega), spec);
  out.assumptions = r.assumptions;
  out.normalization = pi_v_measure(action);
  out.theta = (r.value * out.normalization).rebased(ft);
  out.orientation = compatible_orientation(action);
  out.closed = equivariant_d(action, x, out.theta).is_zero();
  IntegrationResult push = direct_image(out.theta, action.even_coords(), action.odd_coords());
  out.assumptions.append(push.assumptions);
  out.pushforward = push.value * Scalar(out.orientation);
  out.pushforward_is_one = out.pushforward == SuperFunction::constant(out.pushforward.table(), Scalar(1));
  return out;
}

SpfResult spf(const LinearAction& action, const std::vector<Scalar>& x) {
  ScalarMatrix y = action.rho(x);
  require_invertible_on_odd(action, y);
  long k = static_cast<long>(action.even_dim()), l = static_cast<long>(action.odd_dim());
  SpfResult out;
  if (k % 2) return out;
  TablePtr t = VariableTable::make(aux_generators(action));
  auto aux = aux_names(action);
  SuperFunction mu = moment_map(flipped_operator(action, y, t), pi_flip_form(action.form()), t, aux);
  IntegrationSpec spec;
  spec.variables = aux_integration_order(action);
  IntegrationResult r = integrate_superspace(exp_even(mu * Scalar::i()), spec);
  out.assumptions = r.assumptions;
  out.value = constant_value_of(r.value, "Spf integral") * pi_v_measure(action) * i_power((k - l) / 2);
  return out;
}

EulerResult euler_form(const LinearAction& action, const std::vector<Scalar>& x) {
  ThomForm th = mathai_quillen_thom(action, x);
  SpfResult s = spf(action, x);
  EulerResult out;
  out.euler = constant_value_of(th.theta.set_zero(all_form_generators(action)).rebased(VariableTable::make({})),
                                "j^* theta");
  out.spf = s.value;
  out.assumptions = th.assumptions;
  out.assumptions.append(s.assumptions);
  long k = static_cast<long>(action.even_dim()), l = static_cast<long>(action.odd_dim());
  out.relation_holds = k % 2 ? s.value.is_zero() : out.euler * i_power((k - l) / 2) == out.spf;
  return out;
}

LocalizationReport localize_linear(const LinearAction& action, const std::vector<Scalar>& x,
                                   const SuperFunction& alpha) {
  if (!equivariant_d(action, x, alpha).is_zero()) throw Error(ErrorCode::NotClosed, "alpha is not d_g-closed");
  long m = static_cast<long>(action.even_dim()), n = static_cast<long>(action.odd_dim());
  LocalizationReport out;
  IntegrationSpec spec;
  spec.variables = form_integration_order(action.form_table(), action.even_coords(), action.odd_coords());
  IntegrationResult r = integrate_superspace(alpha, spec);
  out.lhs = r.value * Scalar(compatible_orientation(action));
  out.assumptions = r.assumptions;
  SpfResult s = spf(action, x);
  out.assumptions.append(s.assumptions);
  out.spf = s.value;
  if (s.value.is_zero()) throw Error(ErrorCode::Degenerate, "Spf vanishes");
  out.jstar = constant_value_of(alpha.set_zero(all_form_generators(action)).rebased(VariableTable::make({})),
                                "j^* alpha");
  Scalar rhs = i_power((m - n) / 2) * Scalar::tau().pow(n + m) * out.jstar / out.spf;
  out.rhs = SuperFunction::constant(out.lhs.table(), rhs);
  out.equal = out.lhs == out.rhs;
  return out;
}

bool u_membership(const LinearAction& action, const std::vector<Scalar>& x, Membership which) {
  ScalarMatrix y = action.rho(x);
  auto b = blocks_of(action.basis());
  if (which == Membership::U) return b.odd.empty() || !scalar_det(sub(y, b.odd)).is_zero();
  for (const auto& c : x)
    if (!c.is_constant() || !c.constant_value().is_real())
      throw Error(ErrorCode::ParameterizedPoint, "U_plus needs a numeric real element");
  ScalarMatrix qy = sub(scalar_mul(action.form().matrix(), y), b.odd);
  size_t n = qy.size();
  ScalarMatrix s(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) s[i][j] = (qy[i][j] + qy[j][i]) * Scalar::rational(1, 2);
  for (size_t k = 1; k <= n; ++k) {
    ScalarMatrix lead(k, std::vector<Scalar>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) lead[i][j] = s[i][j];
    Scalar d = scalar_det(lead);
    if (d.is_zero() || sgn(d.constant_value().re()) <= 0) return false;
  }
  return true;
}

ZeroLocus zero_locus_linear(const LinearAction& action, const std::vector<Scalar>& x) {
  ScalarMatrix y = action.rho(x);
  auto b = blocks_of(action.basis());
  ZeroLocus out;
  auto embed = [&](const std::vector<size_t>& idx, std::vector<std::vector<Scalar>>& dest) {
    if (idx.empty()) return;
    for (const auto& v : scalar_nullspace(sub(y, idx))) {
      std::vector<Scalar> full(action.basis().size());
      for (size_t i = 0; i < idx.size(); ++i) full[idx[i]] = v[i];
      dest.push_back(full);
    }
  };
  embed(b.even, out.even);
  embed(b.odd, out.odd);
  return out;
}

}  // namespace superforms
