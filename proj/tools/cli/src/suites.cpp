#include "superforms/cli/suites.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "superforms/dsl/eval.hpp"
#include "superforms/equivariant.hpp"
#include "superforms/errors.hpp"

namespace superforms::cli {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1)); }

TablePtr table_of(const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  std::vector<Generator> g;
  for (const auto& n : even) g.push_back({n, Parity::Even, Role::Coordinate, ""});
  for (const auto& n : odd) g.push_back({n, Parity::Odd, Role::Coordinate, ""});
  return VariableTable::make(g);
}

Scalar coefficient(Rng& rng) {
  int re = uniform(rng, -3, 3), im = uniform(rng, 0, 4) == 0 ? uniform(rng, -3, 3) : 0;
  if (re == 0 && im == 0) re = 1;
  Scalar s(GaussRat(re, im));
  if (uniform(rng, 0, 5) == 0) s *= Scalar::param("z");
  return s;
}

// Kernel-free function of the given parity with up to max_terms terms.
SuperFunction function(Rng& rng, const TablePtr& t, int parity, int max_terms, int even_degree = 2,
                       bool with_constant = true) {
  SuperFunction f(t);
  int n = uniform(rng, 1, max_terms);
  size_t no = t->n_odd(), ne = t->n_even();
  for (int attempts = 0; n > 0 && attempts < 200; ++attempts) {
    MonoKey m = f.unit_key();
    for (size_t j = 0; j < no; ++j)
      if (uniform(rng, 0, 2) == 0) m.odd |= uint64_t{1} << j;
    if (m.odd_degree() % 2 != parity) {
      if (no == 0) return f;
      m.odd ^= uint64_t{1} << (rng() % no);
    }
    if (ne > 0 && even_degree > 0)
      for (int k = uniform(rng, 0, even_degree); k > 0; --k) m.even[rng() % ne] += 1;
    if (!with_constant && m.odd == 0) continue;
    f.add_term(GaussianKernel{}, m, coefficient(rng));
    --n;
  }
  return f;
}

// Positive definite 2x2 integer kernel on the first two even slots with a
// square determinant (rational normalization); with square_second the (1,1)
// entry is a square too, so the second variable alone can be integrated.
GaussianKernel kernel_2(Rng& rng, bool with_linear, bool square_second = false) {
  for (;;) {
    int p = uniform(rng, 1, 5), r = uniform(rng, 1, 5), q = uniform(rng, -2, 2);
    int det = p * r - q * q;
    if (det <= 0 || (square_second && r != 1 && r != 4)) continue;
    int s = static_cast<int>(std::lround(std::sqrt(det)));
    if (s * s != det) continue;
    GaussianKernel k;
    k.set_a(0, 0, Scalar(p));
    k.set_a(1, 1, Scalar(r));
    if (q) k.set_a(0, 1, Scalar(q));
    if (with_linear) {
      if (int b = uniform(rng, -2, 2)) k.b[0] = Scalar::rational(b, 2);
      if (int b = uniform(rng, -2, 2)) k.b[1] = Scalar(b);
    }
    return k;
  }
}

Scalar random_scalar(Rng& rng) {
  Scalar z = Scalar::param("z"), w = Scalar::param("w");
  Scalar num = coefficient(rng) + coefficient(rng) * z + coefficient(rng) * z * w;
  Scalar den = Scalar(uniform(rng, 1, 3)) + Scalar(uniform(rng, -2, 2)) * w;
  return num / den;
}

// Even (k|l) supermatrix whose bodies form an invertible block-diagonal matrix.
SuperMatrix even_matrix(Rng& rng, const TablePtr& t, size_t k, size_t l) {
  auto basis = SuperMatrix::standard_basis(k, l);
  for (;;) {
    SuperMatrix m(basis, t);
    ScalarMatrix bodies(k + l, std::vector<Scalar>(k + l));
    for (size_t i = 0; i < k + l; ++i)
      for (size_t j = 0; j < k + l; ++j) {
        if ((i < k) == (j < k)) {
          bodies[i][j] = Scalar(uniform(rng, -3, 3));
          m.at(i, j) = SuperFunction::constant(t, bodies[i][j]);
          if (rng() % 2) m.at(i, j) += function(rng, t, 0, 2, 0, false);
        } else if (rng() % 3) {
          m.at(i, j) = function(rng, t, 1, 2);
        }
      }
    if (!scalar_det(bodies).is_zero()) return m;
  }
}

BilinearForm spo_22() {
  ScalarMatrix m(4, std::vector<Scalar>(4));
  m[0][1] = Scalar(1);
  m[1][0] = Scalar(-1);
  m[2][2] = Scalar(1);
  m[3][3] = Scalar(1);
  return BilinearForm(SuperMatrix::standard_basis(2, 2), m);
}

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  // Runs one case; engine exceptions count as failures with their message.
  void run(const std::string& name, const std::function<std::string()>& body) {
    CaseResult c{name, false, ""};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    r_.cases.push_back(std::move(c));
  }

  SuiteResult done() { return std::move(r_); }

 private:
  SuiteResult r_;
};

std::string expect_equal(const SuperFunction& a, const SuperFunction& b, const std::string& what) {
  return a == b ? "" : what + ": " + a.to_string() + " != " + b.to_string();
}

// ----------------------------------------------------------------- suites

SuiteResult scalars(uint64_t seed) {
  Recorder rec("scalars");
  Rng rng(seed ^ 0x5ca1a75ULL);
  for (int k = 0; k < 100; ++k) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    rec.run("field/" + std::to_string(k), [&]() -> std::string {
      if ((a + b) + c != a + (b + c)) return "addition is not associative";
      if (a * (b + c) != a * b + a * c) return "distributivity fails";
      if (a * b != b * a) return "multiplication is not commutative";
      if (!a.is_zero() && a * a.inverse() != Scalar(1)) return "a * a^-1 != 1 for " + a.to_string();
      if (!b.is_zero() && (a * b) / b != a) return "(a b)/b != a";
      if (Scalar::tau() * Scalar::tau() != Scalar::two_pi()) return "tau^2 != 2pi";
      return "";
    });
  }
  return rec.done();
}

SuiteResult grassmann(uint64_t seed) {
  Recorder rec("grassmann");
  Rng rng(seed ^ 0x6a55ULL);
  auto t = table_of({"x"}, {"t1", "t2", "t3"});
  for (int k = 0; k < 100; ++k) {
    int p = uniform(rng, 0, 1), q = uniform(rng, 0, 1);
    SuperFunction f = function(rng, t, p, 5), g = function(rng, t, q, 5), h = function(rng, t, 0, 3);
    rec.run("algebra/" + std::to_string(k), [&]() -> std::string {
      SuperFunction fg = f * g, gf = g * f;
      if (fg != (p * q ? -gf : gf)) return "supercommutativity fails";
      if ((f * g) * h != f * (g * h)) return "associativity fails";
      for (const char* v : {"t1", "t2", "x"}) {
        SuperFunction lhs = fg.derive(v), df = f.derive(v) * g, fdg = f * g.derive(v);
        Parity pv = t->get(v).parity;
        SuperFunction rhs = df + ((pv == Parity::Odd && p) ? -fdg : fdg);
        if (lhs != rhs) return std::string("Leibniz rule fails for ") + v;
      }
      return "";
    });
  }
  return rec.done();
}

SuiteResult berezinian_suite(uint64_t seed) {
  Recorder rec("berezinian");
  Rng rng(seed ^ 0xbe4ULL);
  std::vector<Generator> cs;
  for (int k = 1; k <= 4; ++k) cs.push_back({"c" + std::to_string(k), Parity::Odd, Role::Coordinate, ""});
  auto t = VariableTable::make(cs);
  for (int k = 0; k < 110; ++k) {
    SuperMatrix m = even_matrix(rng, t, 2, 2), n = even_matrix(rng, t, 2, 2);
    rec.run("multiplicative/" + std::to_string(k), [&]() {
      return expect_equal(berezinian(m * n), berezinian(m) * berezinian(n), "Ber(MN)");
    });
  }
  auto b = spo_22();
  auto even = preserving_algebra_basis(b, 0, t);
  auto odd = preserving_algebra_basis(b, 1, t);
  for (int k = 0; k < 60; ++k) {
    SuperMatrix x(b.basis(), t);
    for (const auto& e : even) {
      SuperFunction s = function(rng, t, 0, 2, 0, false);
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) x.at(i, j) += e.at(i, j) * s;
    }
    // spo (x) Lambda: odd generators times odd parameters, with the row sign.
    for (const auto& g : odd) {
      SuperFunction c = function(rng, t, 1, 2);
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
          SuperFunction entry = g.at(i, j) * c;
          x.at(i, j) += b.basis()[i] == Parity::Odd ? -entry : entry;
        }
    }
    rec.run("spo_exp/" + std::to_string(k), [&]() -> std::string {
      if (!check_osp_spo(x, b)) return "sample is not in spo";
      return expect_equal(berezinian(matrix_exp_nilpotent(x)), SuperFunction::constant(t, Scalar(1)), "Ber(exp X)");
    });
  }
  return rec.done();
}

SuiteResult moment(uint64_t) {
  Recorder rec("moment");
  auto b = spo_22();
  std::vector<std::string> coords = {"x1", "x2", "y1", "y2"};
  auto t = dual_coordinate_table(b.basis(), coords);
  std::vector<SuperMatrix> basis = preserving_algebra_basis(b, 0, t);
  for (auto& g : preserving_algebra_basis(b, 1, t)) basis.push_back(g);
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t c = 0; c < basis.size(); ++c)
      rec.run("poisson/" + std::to_string(a) + "," + std::to_string(c), [&]() {
        SuperFunction lhs = poisson_bracket(moment_map(basis[a], b, t, coords), moment_map(basis[c], b, t, coords), b,
                                            coords);
        return expect_equal(lhs, moment_map(SuperMatrix::bracket(basis[a], basis[c]), b, t, coords), "{mu,mu}");
      });
  return rec.done();
}

SuiteResult integration(uint64_t seed) {
  Recorder rec("integration");
  Rng rng(seed ^ 0x1a7ULL);
  {
    auto t = table_of({"x", "y"}, {"t1", "t2", "t3"});
    std::vector<std::string> all = {"x", "y", "t1", "t2", "t3"};
    for (int k = 0; k < 60; ++k) {
      SuperFunction f = SuperFunction::kernel(t, kernel_2(rng, true, true)) * function(rng, t, k % 2, 6);
      size_t cut = 1 + rng() % (all.size() - 1);
      rec.run("fubini/" + std::to_string(k), [&]() {
        IntegrationSpec joint, inner, outer;
        joint.variables = all;
        inner.variables.assign(all.begin() + static_cast<long>(cut), all.end());
        outer.variables.assign(all.begin(), all.begin() + static_cast<long>(cut));
        SuperFunction whole = integrate_superspace(f, joint).value;
        SuperFunction iterated = integrate_superspace(integrate_superspace(f, inner).value, outer).value;
        return expect_equal(whole, iterated.rebased(whole.table()), "split at " + std::to_string(cut));
      });
    }
  }
  {
    auto t = table_of({"x"}, {"t1", "t2", "t3"});
    for (int k = 0; k < 60; ++k) {
      SuperFunction g = function(rng, t, k % 2, 6);
      rec.run("translation_odd/" + std::to_string(k), [&]() -> std::string {
        for (const char* v : {"t1", "t2", "t3"})
          if (!berezin_integral(g.derive(v), {v}).is_zero()) return std::string("nonzero for ") + v;
        return "";
      });
    }
    auto te = table_of({"x", "y"}, {"t1"});
    for (int k = 0; k < 30; ++k) {
      SuperFunction f = SuperFunction::kernel(te, kernel_2(rng, true)) * function(rng, te, 0, 4);
      rec.run("translation_even/" + std::to_string(k), [&]() -> std::string {
        IntegrationSpec s;
        s.variables = {"x", "y", "t1"};
        for (const char* v : {"x", "y"})
          if (!integrate_superspace(f.derive(v), s).value.is_zero()) return std::string("nonzero for d/d") + v;
        return "";
      });
    }
  }
  {
    auto t = table_of({"x", "y"}, {"t1", "t2", "c1", "c2"});
    std::vector<std::string> vars = {"x", "y", "t1", "t2"};
    auto basis = SuperMatrix::standard_basis(2, 2);
    for (int k = 0; k < 60; ++k) {
      SuperMatrix h(basis, t);
      // Even block unimodular up to sign, so Gaussian roots stay rational.
      ScalarMatrix even = {{Scalar(1), Scalar(uniform(rng, -2, 2))}, {Scalar(0), Scalar(rng() % 2 ? 1 : -1)}};
      if (rng() % 2) std::swap(even[0], even[1]);
      auto odd_block = [&] {
        return ScalarMatrix{{Scalar(uniform(rng, -2, 2)), Scalar(uniform(rng, -2, 2))},
                            {Scalar(uniform(rng, -2, 2)), Scalar(uniform(rng, -2, 2))}};
      };
      ScalarMatrix odd = odd_block();
      while (scalar_det(odd).is_zero()) odd = odd_block();
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
          h.at(i, j) = SuperFunction::constant(t, even[i][j]);
          h.at(2 + i, 2 + j) = SuperFunction::constant(t, odd[i][j]);
          if (rng() % 2) h.at(i, 2 + j) = SuperFunction::var(t, rng() % 2 ? "c1" : "c2") * Scalar(uniform(rng, -2, 2));
          if (rng() % 2) h.at(2 + i, j) = SuperFunction::var(t, rng() % 2 ? "c1" : "c2") * Scalar(uniform(rng, -2, 2));
        }
      GaussianKernel g;
      g.set_a(0, 0, Scalar(1));
      g.set_a(1, 1, Scalar(1));
      SuperFunction f = SuperFunction::kernel(t, g) * function(rng, t, k % 2, 6);
      rec.run("change_of_variables/" + std::to_string(k), [&]() {
        ChangeOfVariables r = change_of_variables_verify(f, h, vars);
        return r.equal ? std::string() : expect_equal(r.transformed, r.original, "change of variables");
      });
    }
  }
  {
    // Two distinct symplectic bases of R^(2,2): the computed one and its image
    // under a shear in Sp(2) times a rotation in SO(2).
    auto t = table_of({"x1", "x2"}, {"t1", "t2"});
    ScalarMatrix bm(4, std::vector<Scalar>(4));
    bm[0][1] = Scalar(2);
    bm[1][0] = Scalar(-2);
    bm[2][2] = Scalar(1);
    bm[3][3] = Scalar(4);
    BilinearForm b(SuperMatrix::standard_basis(2, 2), bm);
    ScalarMatrix t1 = symplectic_basis(b, 1).T, s = scalar_identity(4);
    s[0][1] = Scalar(3);
    s[2][2] = Scalar::rational(3, 5);
    s[2][3] = Scalar::rational(-4, 5);
    s[3][2] = Scalar::rational(4, 5);
    s[3][3] = Scalar::rational(3, 5);
    ScalarMatrix t2 = scalar_mul(t1, s);
    for (int k = 0; k < 20; ++k) {
      // det = a^2 or 4a^2, so the Gaussian normalization stays in Q(i).
      GaussianKernel g;
      long a = uniform(rng, 1, 3);
      g.set_a(0, 0, Scalar(a));
      g.set_a(1, 1, Scalar(a * (k % 2 ? 4 : 1)));
      SuperFunction f = SuperFunction::kernel(t, g) * function(rng, t, 0, 5);
      rec.run("liouville/" + std::to_string(k), [&]() {
        IntegrationSpec a, c;
        a.variables = c.variables = {"x1", "x2", "t1", "t2"};
        a.normalization = c.normalization = Normalization::Liouville;
        a.form = c.form = b;
        a.basis = t1;
        c.basis = t2;
        return expect_equal(integrate_superspace(f, a).value, integrate_superspace(f, c).value, "Liouville");
      });
    }
  }
  return rec.done();
}

SuiteResult fourier(uint64_t seed) {
  Recorder rec("fourier");
  Rng rng(seed ^ 0xf0f0ULL);
  rec.run("odd_example", [] {
    auto t = table_of({}, {"xi"});
    Scalar a = Scalar::param("a"), b = Scalar::param("b");
    SuperFunction phi = SuperFunction::constant(t, a) + SuperFunction::var(t, "xi") * b;
    FourierSpace sp{{}, {"xi"}, {}, {"f"}};
    FourierResult psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
    auto tf = psi.value.table();
    // phi = a + xi b  ->  i (b - i a f)
    SuperFunction expected = (SuperFunction::constant(tf, b) - SuperFunction::var(tf, "f") * (Scalar::i() * a)) *
                             Scalar::i();
    return expect_equal(psi.value, expected, "F(a + xi b)");
  });
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> odd, dual;
    for (int j = 1; j <= n; ++j) {
      odd.push_back("t" + std::to_string(j));
      dual.push_back("f" + std::to_string(j));
    }
    auto t = table_of({}, odd);
    FourierSpace sp{{}, odd, {}, dual};
    for (int k = 0; k < 14; ++k) {
      SuperFunction phi = function(rng, t, k % 2, 6);
      rec.run("involution_0_" + std::to_string(n) + "/" + std::to_string(k), [&]() {
        FourierResult psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
        FourierResult back = fourier_transform(psi.value, sp, FourierDirection::DistributionToFunction);
        return expect_equal(back.value, phi.rebased(back.value.table()), "F^-1 F");
      });
    }
  }
  auto t = table_of({"x1", "x2"}, {});
  FourierSpace sp{{"x1", "x2"}, {}, {"y1", "y2"}, {}};
  for (int k = 0; k < 20; ++k) {
    SuperFunction phi = SuperFunction::kernel(t, kernel_2(rng, false)) * function(rng, t, 0, 3);
    rec.run("involution_2_0/" + std::to_string(k), [&]() {
      FourierResult psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
      FourierResult back = fourier_transform(psi.value, sp, FourierDirection::DistributionToFunction);
      return expect_equal(back.value, phi.rebased(back.value.table()), "F^-1 F");
    });
  }
  return rec.done();
}

std::vector<std::string> cartan_failures(const LinearAction& a, const std::vector<Scalar>& x,
                                         const std::vector<Scalar>& y, const SuperFunction& f) {
  VectorField xm = vector_field_of(a, x), ym = vector_field_of(a, y);
  std::vector<std::string> bad;
  SuperFunction lx = lie_derivative(xm, f);
  if (!exterior_d(exterior_d(f)).is_zero()) bad.push_back("d^2");
  if (!contraction(xm, contraction(xm, f)).is_zero()) bad.push_back("iota^2");
  if (exterior_d(lx) != lie_derivative(xm, exterior_d(f))) bad.push_back("[L,d]");
  if (contraction(xm, lie_derivative(ym, f)) != lie_derivative(ym, contraction(xm, f))) bad.push_back("[iota,L]");
  if (lx != lie_derivation(xm, f)) bad.push_back("L = d iota + iota d");
  if (lie_derivative(xm, lie_derivative(ym, f)) != lie_derivative(ym, lx)) bad.push_back("[L,L]");
  if (equivariant_d(a, x, equivariant_d(a, x, f)) != lx * (-Scalar::i())) bad.push_back("d_g^2 = -i L");
  return bad;
}

SuiteResult cartan(uint64_t seed) {
  Recorder rec("cartan");
  Rng rng(seed ^ 0xca47a7ULL);
  for (const char* name : {"rot02", "hyp02", "rot22"}) {
    LinearAction a = *dsl::registered_action(name);
    std::vector<Scalar> x = a.generic_element(), y;
    if (x.size() == 1) {
      y = {Scalar(3)};
    } else {
      y = {Scalar(2), Scalar::param("w")};
    }
    for (int k = 0; k < 110; ++k) {
      SuperFunction f = function(rng, a.form_table(), uniform(rng, 0, 1), 6);
      rec.run(std::string(name) + "/" + std::to_string(k), [&]() -> std::string {
        auto bad = cartan_failures(a, x, y, f);
        std::string out;
        for (const auto& b : bad) out += (out.empty() ? "" : ", ") + b;
        return out.empty() ? out : out + " on " + f.to_string();
      });
    }
  }
  return rec.done();
}

SuiteResult thom(uint64_t) {
  Recorder rec("thom");
  for (const auto& name : dsl::registered_action_names()) {
    LinearAction a = *dsl::registered_action(name);
    auto x = a.generic_element();
    rec.run(name + "/closed_and_normalized", [&]() -> std::string {
      ThomForm th = mathai_quillen_thom(a, x);
      if (!th.closed) return "d_g theta != 0";
      if (!th.pushforward_is_one) return "pi_* theta = " + th.pushforward.to_string();
      if (th.omega != thom_exponent_closed_form(a, x, th.omega.table(), th.auxiliaries))
        return "exponent differs from its closed form";
      return "";
    });
    rec.run(name + "/beta", [&]() -> std::string {
      BetaForm b = beta_form(a, x);
      if (b.zero_form_part != b.expected_zero_form) return "0-form part of d_g beta";
      if (!lie_derivative(vector_field_of(a, x), b.beta).is_zero()) return "L beta != 0";
      return "";
    });
  }
  return rec.done();
}

SuiteResult euler(uint64_t) {
  Recorder rec("euler");
  for (const auto& name : dsl::registered_action_names()) {
    LinearAction a = *dsl::registered_action(name);
    rec.run(name, [&]() -> std::string {
      EulerResult e = euler_form(a, a.generic_element());
      return e.relation_holds ? "" : "j^* theta = " + e.euler.to_string() + ", Spf = " + e.spf.to_string();
    });
  }
  return rec.done();
}

SuiteResult localization(uint64_t) {
  Recorder rec("localization");
  for (const auto& name : dsl::registered_action_names()) {
    LinearAction a = *dsl::registered_action(name);
    auto x = a.generic_element();
    const TablePtr& t = a.form_table();
    ThomForm th = mathai_quillen_thom(a, x);
    BetaForm b = beta_form(a, x);
    Scalar c = x[0] * x[0] + Scalar(1);
    ScalarMatrix q2 = a.form().matrix();
    for (auto& row : q2)
      for (auto& e : row) e *= Scalar(2);
    LinearAction scaled(a.basis(), BilinearForm(a.basis(), q2), a.generators(), a.coords(), a.params());
    SuperFunction one = SuperFunction::constant(t, Scalar(1));
    std::vector<std::pair<std::string, SuperFunction>> corpus = {
        {"theta", th.theta},
        {"c_theta", th.theta * c},
        {"theta_p_dgbeta", th.theta * (b.d_g_beta * b.d_g_beta + b.d_g_beta * Scalar(2) + one)},
        {"theta_theta2Q", th.theta * mathai_quillen_thom(scaled, x).theta.rebased(t)},
    };
    for (const auto& [label, alpha] : corpus)
      rec.run(name + "/" + label, [&]() -> std::string {
        LocalizationReport r = localize_linear(a, x, alpha);
        return r.equal ? "" : "lhs " + r.lhs.to_string() + " rhs " + r.rhs.to_string();
      });
  }
  return rec.done();
}

const std::map<std::string, SuiteResult (*)(uint64_t)>& registry() {
  static const std::map<std::string, SuiteResult (*)(uint64_t)> r = {
      {"berezinian", berezinian_suite}, {"cartan", cartan},   {"euler", euler},
      {"fourier", fourier},             {"grassmann", grassmann}, {"integration", integration},
      {"localization", localization},   {"moment", moment},   {"scalars", scalars},
      {"thom", thom},
  };
  return r;
}

}  // namespace

size_t SuiteResult::failures() const {
  size_t n = 0;
  for (const auto& c : cases) n += !c.passed;
  return n;
}

size_t SuiteResult::count(const std::string& prefix) const {
  size_t n = 0;
  for (const auto& c : cases) n += c.name.rfind(prefix, 0) == 0;
  return n;
}

size_t SuiteResult::passed(const std::string& prefix) const {
  size_t n = 0;
  for (const auto& c : cases) n += c.passed && c.name.rfind(prefix, 0) == 0;
  return n;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& c : cases)
    if (!c.passed) failed.push_back({{"case", c.name}, {"detail", c.detail}});
  return {{"suite", name}, {"cases", cases.size()}, {"failures", failures()}, {"failed", failed}};
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [n, f] : registry()) names.push_back(n);
  return names;
}

SuiteResult run_suite(const std::string& name, uint64_t seed) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second(seed);
}

}  // namespace superforms::cli
