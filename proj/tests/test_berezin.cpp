#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "superforms/berezin.hpp"
#include "superforms/errors.hpp"
#include "test_support.hpp"

using namespace superforms;
using superforms::testing::random_function;

namespace {

TablePtr make_table(const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  std::vector<Generator> g;
  for (const auto& n : even) g.push_back({n, Parity::Even, Role::Coordinate, ""});
  for (const auto& n : odd) g.push_back({n, Parity::Odd, Role::Coordinate, ""});
  return VariableTable::make(g);
}

SuperFunction var(const TablePtr& t, const std::string& n) { return SuperFunction::var(t, n); }
SuperFunction cst(const TablePtr& t, const Scalar& s) { return SuperFunction::constant(t, s); }

// Positive definite integer 2x2 kernel with square determinant, so the
// Gaussian normalisation stays rational. With square_second the (y,y) entry
// is a square too, so y alone can be integrated first.
GaussianKernel random_kernel_2(std::mt19937& rng, bool with_linear, bool square_second = false) {
  std::uniform_int_distribution<int> d(1, 5), off(-2, 2), lin(-2, 2);
  for (;;) {
    int p = d(rng), r = d(rng), q = off(rng);
    int det = p * r - q * q;
    if (det <= 0) continue;
    if (square_second && r != 1 && r != 4) continue;
    int s = static_cast<int>(std::lround(std::sqrt(det)));
    if (s * s != det) continue;
    GaussianKernel k;
    k.set_a(0, 0, Scalar(p));
    k.set_a(1, 1, Scalar(r));
    if (q) k.set_a(0, 1, Scalar(q));
    if (with_linear) {
      if (int b = lin(rng)) k.b[0] = Scalar::rational(b, 2);
      if (int b = lin(rng)) k.b[1] = Scalar(b);
    }
    return k;
  }
}

// Numeric value of a function with no generators; kernels may only carry
// their constant exp(c).
std::complex<double> eval_at(const SuperFunction& f, const std::map<std::string, double>& params) {
  std::complex<double> v = 0;
  for (const auto& [k, poly] : f.parts()) {
    EXPECT_TRUE(k.A.empty() && k.b.empty()) << f.to_string();
    for (const auto& [m, c] : poly) {
      EXPECT_TRUE(m.odd == 0 && m.even_degree() == 0) << f.to_string();
      v += std::exp(k.c.eval_complex(params)) * c.eval_complex(params);
    }
  }
  return v;
}

}  // namespace

TEST(BerezinIntegral, Examples) {
  auto t = make_table({}, {"xi", "eta"});
  auto a = Scalar::param("a"), b = Scalar::param("b");
  auto f = cst(t, a) + var(t, "xi") * b;
  auto r = berezin_integral(f, {"xi"});
  EXPECT_EQ(r.to_string(), cst(r.table(), b).to_string());
  EXPECT_EQ(r, cst(r.table(), b));
  auto top = berezin_integral(var(t, "xi") * var(t, "eta"), {"xi", "eta"});
  EXPECT_EQ(top, cst(top.table(), Scalar(-1)));
  try {
    auto te = make_table({"x"}, {});
    berezin_integral(var(te, "x"), {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOdd);
  }
}

TEST(BerezinIntegral, TranslationInvariance) {
  std::mt19937 rng(8);
  auto t = make_table({"x"}, {"t1", "t2", "t3"});
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_function(rng, t, trial % 2, 6);
    for (const auto& v : {"t1", "t2", "t3"}) {
      auto r = berezin_integral(g.derive(v), {v});
      EXPECT_TRUE(r.is_zero()) << g.to_string();
    }
  }
}

TEST(GaussianIntegral, Examples) {
  auto t = make_table({"x"}, {});
  GaussianKernel k;
  k.set_a(0, 0, Scalar(1));
  auto r = gaussian_integral_even(SuperFunction::kernel(t, k), {"x"});
  EXPECT_EQ(r.value, cst(r.value.table(), Scalar::tau()));
  ASSERT_EQ(r.assumptions.entries().size(), 1u);
  EXPECT_EQ(r.assumptions.entries()[0].root, Scalar(1));

  GaussianKernel ka;
  ka.set_a(0, 0, Scalar::param("a"));
  auto x = var(t, "x");
  auto m2 = gaussian_integral_even(SuperFunction::kernel(t, ka) * x * x, {"x"});
  EXPECT_EQ(m2.value, cst(m2.value.table(), Scalar::tau() * Scalar::param_root("a").pow(-3)));
}

TEST(GaussianIntegral, Fresnel) {
  // Pivot i/z: one variable needs sqrt(i), which is outside the scalar field.
  auto t1 = make_table({"u"}, {});
  GaussianKernel k1;
  Scalar z = Scalar::param("z");
  k1.set_a(0, 0, Scalar::i() / z);
  try {
    gaussian_integral_even(SuperFunction::kernel(t1, k1), {"u"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoFormalRoot);
  }
  // Two copies give the square of the single integral: 2 pi z / i.
  auto t2 = make_table({"u1", "u2"}, {});
  GaussianKernel k2;
  k2.set_a(0, 0, Scalar::i() / z);
  k2.set_a(1, 1, Scalar::i() / z);
  auto r = gaussian_integral_even(SuperFunction::kernel(t2, k2), {"u1", "u2"});
  EXPECT_EQ(r.value, cst(r.value.table(), Scalar::two_pi() * z / Scalar::i()));
  // Numerical cross-check of the branch: principal sqrt(i/z)^{-2} at z = 1.
  auto s = std::sqrt(std::complex<double>(0, 1));
  auto expected = 2 * M_PI / (s * s);
  EXPECT_NEAR(std::abs(eval_at(r.value, {{"z", 1.0}}) - expected), 0.0, 1e-12);
}

TEST(GaussianIntegral, MatchesQuadrature) {
  std::mt19937 rng(41);
  auto t = make_table({"x", "y"}, {});
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 12; ++trial) {
    GaussianKernel k = random_kernel_2(rng, true);
    // Polynomial of degree <= 3.
    std::vector<std::array<int, 3>> terms;
    SuperFunction p(t);
    for (int e1 = 0; e1 <= 2; ++e1)
      for (int e2 = 0; e1 + e2 <= 3; ++e2) {
        int v = c(rng);
        if (!v) continue;
        terms.push_back({e1, e2, v});
        SuperFunction mono = cst(t, Scalar(v));
        for (int q = 0; q < e1; ++q) mono = mono * var(t, "x");
        for (int q = 0; q < e2; ++q) mono = mono * var(t, "y");
        p += mono;
      }
    auto r = gaussian_integral_even(SuperFunction::kernel(t, k) * p, {"x", "y"});
    double exact = eval_at(r.value, {}).real();

    auto num = [&](const Scalar& s) { return s.eval_complex({}).real(); };
    double a00 = num(k.a(0, 0)), a11 = num(k.a(1, 1)), a01 = num(k.a(0, 1));
    double b0 = k.b.count(0) ? num(k.b.at(0)) : 0, b1 = k.b.count(1) ? num(k.b.at(1)) : 0;
    double h = 0.02, sum = 0;
    for (double x = -12; x <= 12; x += h)
      for (double y = -12; y <= 12; y += h) {
        double e = -0.5 * (a00 * x * x + 2 * a01 * x * y + a11 * y * y) + b0 * x + b1 * y;
        double poly = 0;
        for (auto [e1, e2, v] : terms) poly += v * std::pow(x, e1) * std::pow(y, e2);
        sum += std::exp(e) * poly;
      }
    sum *= h * h;
    EXPECT_NEAR(exact, sum, 1e-6 * std::max(1.0, std::abs(sum)));
  }
}

TEST(GaussianIntegral, Errors) {
  auto t = make_table({"x", "y"}, {});
  try {
    gaussian_integral_even(var(t, "x"), {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularKernel);
  }
  GaussianKernel k;
  k.set_a(0, 1, Scalar(1));
  try {
    gaussian_integral_even(SuperFunction::kernel(t, k), {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularKernel);
  }
  // exp(-xy) has no diagonal pivot; a shear gives 2pi / sqrt(-1).
  IntegrationResult hyp = gaussian_integral_even(SuperFunction::kernel(t, k), {"x", "y"});
  EXPECT_EQ(hyp.value.constant_term(), Scalar::tau().pow(2) / Scalar::i());
  GaussianKernel ok;
  ok.set_a(0, 0, Scalar(1));
  SuperFunction big = SuperFunction::kernel(t, ok);
  for (int i = 0; i < 66; ++i) big = big * var(t, "x");
  try {
    gaussian_integral_even(big, {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedPolynomialDegree);
  }
}

TEST(IntegrateSuperspace, Examples) {
  auto t = make_table({"x"}, {"xi"});
  GaussianKernel k;
  k.set_a(0, 0, Scalar(1));
  auto a = Scalar::param("a"), b = Scalar::param("b");
  auto f = SuperFunction::kernel(t, k) * (cst(t, a) + var(t, "xi") * b);
  IntegrationSpec spec;
  spec.variables = {"x", "xi"};
  auto r = integrate_superspace(f, spec);
  EXPECT_EQ(r.value, cst(r.value.table(), Scalar::tau() * b));

  auto t2 = make_table({"x1", "x2"}, {});
  GaussianKernel k2;
  k2.set_a(0, 0, Scalar(1));
  k2.set_a(1, 1, Scalar(1));
  ScalarMatrix j = {{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}};
  IntegrationSpec lv;
  lv.variables = {"x1", "x2"};
  lv.normalization = Normalization::Liouville;
  lv.form = BilinearForm(SuperMatrix::standard_basis(2, 0), j);
  auto l = integrate_superspace(SuperFunction::kernel(t2, k2), lv);
  EXPECT_EQ(l.value, cst(l.value.table(), Scalar(1)));
}

TEST(IntegrateSuperspace, Fubini) {
  std::mt19937 rng(99);
  auto t = make_table({"x", "y"}, {"t1", "t2", "t3"});
  std::vector<std::string> all = {"x", "y", "t1", "t2", "t3"};
  for (int trial = 0; trial < 40; ++trial) {
    auto f = SuperFunction::kernel(t, random_kernel_2(rng, true, true)) * random_function(rng, t, trial % 2, 6, 2);
    IntegrationSpec joint;
    joint.variables = all;
    auto whole = integrate_superspace(f, joint).value;
    // Split into a prefix and a suffix; the suffix is integrated first.
    size_t cut = 1 + rng() % (all.size() - 1);
    IntegrationSpec inner, outer;
    inner.variables.assign(all.begin() + static_cast<long>(cut), all.end());
    outer.variables.assign(all.begin(), all.begin() + static_cast<long>(cut));
    auto step = integrate_superspace(f, inner).value;
    auto iterated = integrate_superspace(step, outer).value;
    EXPECT_EQ(whole, iterated.rebased(whole.table())) << f.to_string() << " cut " << cut;
    // Even variables commute with everything: listing y before x changes nothing.
    IntegrationSpec swapped;
    swapped.variables = {"y", "x", "t1", "t2", "t3"};
    EXPECT_EQ(whole, integrate_superspace(f, swapped).value);
  }
}

TEST(IntegrateSuperspace, EvenTranslationInvariance) {
  std::mt19937 rng(12);
  auto t = make_table({"x", "y"}, {"t1"});
  for (int trial = 0; trial < 30; ++trial) {
    auto f = SuperFunction::kernel(t, random_kernel_2(rng, true)) * random_function(rng, t, 0, 4, 2);
    IntegrationSpec s;
    s.variables = {"x", "y", "t1"};
    EXPECT_TRUE(integrate_superspace(f.derive("x"), s).value.is_zero());
    EXPECT_TRUE(integrate_superspace(f.derive("y"), s).value.is_zero());
  }
}

TEST(IntegrateSuperspace, LiouvilleBasisIndependence) {
  std::mt19937 rng(5);
  auto t = make_table({"x1", "x2"}, {"t1", "t2"});
  // Odd parts: positive definite (rotations allowed) and indefinite (only
  // sign changes keep f_i in V1 or iV1).
  for (int odd_second : {4, -4}) {
    ScalarMatrix bm(4, std::vector<Scalar>(4));
    bm[0][1] = Scalar(2);
    bm[1][0] = Scalar(-2);
    bm[2][2] = Scalar(1);
    bm[3][3] = Scalar(odd_second);
    BilinearForm b(SuperMatrix::standard_basis(2, 2), bm);
    auto t1 = symplectic_basis(b, 1).T;
    // Right-multiply by an element of Sp(2) x SO(2).
    ScalarMatrix s = scalar_identity(4);
    s[0][1] = Scalar(3);
    if (odd_second > 0) {
      s[2][2] = Scalar::rational(3, 5);
      s[2][3] = Scalar::rational(-4, 5);
      s[3][2] = Scalar::rational(4, 5);
      s[3][3] = Scalar::rational(3, 5);
    } else {
      s[2][2] = Scalar(-1);
      s[3][3] = Scalar(-1);
    }
    auto t2 = scalar_mul(t1, s);
    ASSERT_NE(t1, t2);
    for (int trial = 0; trial < 20; ++trial) {
      // det = a^2 or 4a^2 keeps the normalization in Q(i).
      GaussianKernel k;
      long s0 = 1 + static_cast<long>(rng() % 3);
      k.set_a(0, 0, Scalar(s0));
      k.set_a(1, 1, Scalar(s0 * (trial % 2 ? 4 : 1)));
      auto f = SuperFunction::kernel(t, k) * random_function(rng, t, 0, 5, 2);
      IntegrationSpec a, c;
      a.variables = c.variables = {"x1", "x2", "t1", "t2"};
      a.normalization = c.normalization = Normalization::Liouville;
      a.form = c.form = b;
      a.basis = t1;
      c.basis = t2;
      EXPECT_EQ(integrate_superspace(f, a).value, integrate_superspace(f, c).value);
    }
  }
}

TEST(ChangeOfVariables, Examples) {
  auto t = make_table({"x"}, {"xi", "eta"});
  GaussianKernel k;
  k.set_a(0, 0, Scalar(1));
  auto f = SuperFunction::kernel(t, k) * var(t, "xi") * var(t, "eta");
  std::vector<std::string> vars = {"x", "xi", "eta"};
  auto basis = std::vector<Parity>{Parity::Even, Parity::Odd, Parity::Odd};
  auto id = SuperMatrix::identity(basis, t);
  EXPECT_TRUE(change_of_variables_verify(f, id, vars).equal);

  ScalarMatrix swap = {{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1), Scalar(0)}};
  auto h = SuperMatrix::from_scalars(basis, t, swap);
  EXPECT_EQ(berezinian(linear_jacobian(h, t, vars), BerVariant::OneZero), cst(t, Scalar(-1)));
  auto r = change_of_variables_verify(f, h, vars);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.original, cst(r.original.table(), -Scalar::tau()));

  auto tx = make_table({"x"}, {});
  GaussianKernel kx;
  kx.set_a(0, 0, Scalar(1));
  auto scale = SuperMatrix::from_scalars({Parity::Even}, tx, {{Scalar(2)}});
  EXPECT_TRUE(change_of_variables_verify(SuperFunction::kernel(tx, kx), scale, {"x"}).equal);
}

TEST(ChangeOfVariables, RandomLinearMaps) {
  std::mt19937 rng(2718);
  auto t = make_table({"x", "y"}, {"t1", "t2", "c1", "c2"});
  std::vector<std::string> vars = {"x", "y", "t1", "t2"};
  auto basis = SuperMatrix::standard_basis(2, 2);
  std::uniform_int_distribution<int> v(-2, 2);
  int verified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SuperMatrix h(basis, t);
    // Even block: unimodular up to sign so Gaussian roots stay rational.
    int s = v(rng);
    ScalarMatrix even = {{Scalar(1), Scalar(s)}, {Scalar(0), Scalar(rng() % 2 ? 1 : -1)}};
    if (rng() % 2) std::swap(even[0], even[1]);
    ScalarMatrix odd = {{Scalar(v(rng)), Scalar(v(rng))}, {Scalar(v(rng)), Scalar(v(rng))}};
    while (scalar_det(odd).is_zero()) odd = {{Scalar(v(rng)), Scalar(v(rng))}, {Scalar(v(rng)), Scalar(v(rng))}};
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        h.at(i, j) = cst(t, even[i][j]);
        h.at(2 + i, 2 + j) = cst(t, odd[i][j]);
        // Odd-parameter couplings between the blocks.
        if (rng() % 2) h.at(i, 2 + j) = var(t, rng() % 2 ? "c1" : "c2") * Scalar(v(rng));
        if (rng() % 2) h.at(2 + i, j) = var(t, rng() % 2 ? "c1" : "c2") * Scalar(v(rng));
      }
    GaussianKernel k;
    k.set_a(0, 0, Scalar(1));
    k.set_a(1, 1, Scalar(1));
    auto f = SuperFunction::kernel(t, k) * random_function(rng, t, trial % 2, 6, 2);
    auto r = change_of_variables_verify(f, h, vars);
    EXPECT_TRUE(r.equal) << h.to_string() << "\n" << r.transformed.to_string() << "\n" << r.original.to_string();
    ++verified;
  }
  EXPECT_GE(verified, 50);
}

TEST(Fourier, PurelyOddExample) {
  auto t = make_table({}, {"xi"});
  auto a = Scalar::param("a"), b = Scalar::param("b");
  auto phi = cst(t, a) + var(t, "xi") * b;
  FourierSpace sp{{}, {"xi"}, {}, {"f"}};
  auto psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
  EXPECT_EQ(psi.measure, "d_(f)");
  auto tf = psi.value.table();
  // i (b - i a f) = i b + a f.
  EXPECT_EQ(psi.value, cst(tf, Scalar::i() * b) + var(tf, "f") * a);
  auto back = fourier_transform(psi.value, sp, FourierDirection::DistributionToFunction);
  EXPECT_EQ(back.value, phi.rebased(back.value.table()));
}

TEST(Fourier, EvenGaussianSelfReciprocal) {
  auto t = make_table({"x"}, {});
  GaussianKernel k;
  k.set_a(0, 0, Scalar(1));
  FourierSpace sp{{"x"}, {}, {"y"}, {}};
  auto psi = fourier_transform(SuperFunction::kernel(t, k), sp, FourierDirection::FunctionToDistribution);
  // Oracle: complete the square by hand, exp(-x^2/2 + ixy) = exp(-(x - iy)^2/2) exp(-y^2/2).
  auto ty = psi.value.table();
  GaussianKernel ky;
  ky.set_a(ty->slot(ty->index_of("y")), ty->slot(ty->index_of("y")), Scalar(1));
  EXPECT_EQ(psi.value, SuperFunction::kernel(ty, ky) * Scalar::tau().inverse());
}

TEST(Fourier, Involution) {
  std::mt19937 rng(31);
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> odd, dual;
    for (int j = 1; j <= n; ++j) {
      odd.push_back("t" + std::to_string(j));
      dual.push_back("f" + std::to_string(j));
    }
    auto t = make_table({}, odd);
    FourierSpace sp{{}, odd, {}, dual};
    for (int trial = 0; trial < 12; ++trial) {
      auto phi = random_function(rng, t, trial % 2, 6);
      auto psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
      auto back = fourier_transform(psi.value, sp, FourierDirection::DistributionToFunction);
      EXPECT_EQ(back.value, phi.rebased(back.value.table())) << phi.to_string();
      // And from the distribution side.
      auto dist = random_function(rng, psi.value.table(), trial % 2, 6);
      auto fn = fourier_transform(dist, sp, FourierDirection::DistributionToFunction);
      auto again = fourier_transform(fn.value, sp, FourierDirection::FunctionToDistribution);
      EXPECT_EQ(again.value, dist.rebased(again.value.table()));
      ++cases;
    }
  }
  auto t = make_table({"x1", "x2"}, {});
  FourierSpace sp{{"x1", "x2"}, {}, {"y1", "y2"}, {}};
  for (int trial = 0; trial < 20; ++trial) {
    auto phi = SuperFunction::kernel(t, random_kernel_2(rng, false)) * random_function(rng, t, 0, 3, 2);
    auto psi = fourier_transform(phi, sp, FourierDirection::FunctionToDistribution);
    auto back = fourier_transform(psi.value, sp, FourierDirection::DistributionToFunction);
    EXPECT_EQ(back.value, phi.rebased(back.value.table())) << phi.to_string();
    ++cases;
  }
  EXPECT_GE(cases, 50);
}

TEST(DirectImage, TrivialFibreAndModuleProperty) {
  std::mt19937 rng(64);
  std::vector<Generator> g = {{"b1", Parity::Even, Role::Coordinate, ""},
                              {"s1", Parity::Odd, Role::Coordinate, ""},
                              {"x", Parity::Even, Role::Coordinate, ""},
                              {"xi", Parity::Odd, Role::Coordinate, ""},
                              {"dx", Parity::Odd, Role::Differential, "x"},
                              {"dxi", Parity::Even, Role::Differential, "xi"}};
  auto t = VariableTable::make(g);
  auto f = random_function(rng, t, 0, 4);
  EXPECT_EQ(direct_image(f, {}, {}).value, f);

  GaussianKernel k;
  k.set_a(t->slot(t->index_of("x")), t->slot(t->index_of("x")), Scalar(1));
  k.set_a(t->slot(t->index_of("dxi")), t->slot(t->index_of("dxi")), Scalar(4));
  auto base = t->without({"x", "xi", "dx", "dxi"});
  for (int trial = 0; trial < 30; ++trial) {
    auto alpha = SuperFunction::kernel(t, k) * random_function(rng, t, trial % 2, 6, 2);
    auto beta = random_function(rng, base, (trial / 2) % 2, 3, 1);
    auto lhs = direct_image(alpha * beta.rebased(t), {"x"}, {"xi"}).value;
    auto rhs = direct_image(alpha, {"x"}, {"xi"}).value * beta.rebased(lhs.table());
    EXPECT_EQ(lhs, rhs);
  }
}
