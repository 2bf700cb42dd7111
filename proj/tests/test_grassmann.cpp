#include <gtest/gtest.h>

#include <random>

#include "superforms/errors.hpp"
#include "superforms/superfunction.hpp"
#include "test_support.hpp"

using namespace superforms;
using superforms::testing::random_function;

namespace {

TablePtr table_6_3() {
  std::vector<Generator> g;
  for (int k = 1; k <= 6; ++k) g.push_back({"t" + std::to_string(k), Parity::Odd, Role::Coordinate, ""});
  for (int k = 1; k <= 3; ++k) g.push_back({"x" + std::to_string(k), Parity::Even, Role::Coordinate, ""});
  return VariableTable::make(g);
}

TablePtr xi_eta_x() {
  return VariableTable::make({{"xi", Parity::Odd, Role::Coordinate, ""},
                              {"eta", Parity::Odd, Role::Coordinate, ""},
                              {"x", Parity::Even, Role::Coordinate, ""}});
}

// Sign of sorting the concatenated index list by adjacent transpositions.
int bubble_sign(std::vector<int> seq) {
  int sign = 1;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        sign = -sign;
      } else if (seq[j] == seq[j + 1]) {
        return 0;
      }
  for (size_t j = 0; j + 1 < seq.size(); ++j)
    if (seq[j] == seq[j + 1]) return 0;
  return sign;
}

}  // namespace

TEST(Grassmann, KoszulSignMatchesTranspositionCount) {
  std::mt19937 rng(1);
  for (int k = 0; k < 2000; ++k) {
    uint64_t a = rng() & 0xff, b = rng() & 0xff;
    std::vector<int> seq;
    for (int j = 0; j < 8; ++j)
      if (a >> j & 1) seq.push_back(j);
    for (int j = 0; j < 8; ++j)
      if (b >> j & 1) seq.push_back(j);
    EXPECT_EQ(koszul_sign(a, b), bubble_sign(seq));
  }
}

TEST(Grassmann, MultiplyExamples) {
  auto t = xi_eta_x();
  auto xi = SuperFunction::var(t, "xi"), eta = SuperFunction::var(t, "eta");
  EXPECT_EQ((xi * eta).to_string(), "xi*eta");
  EXPECT_EQ(eta * xi, -(xi * eta));
  auto one = SuperFunction::constant(t, 1);
  EXPECT_EQ((one + xi * eta) * (one + xi * eta), one + xi * eta * Scalar(2));
  GaussianKernel ka, kb, kab;
  ka.set_a(0, 0, Scalar::param("a"));
  kb.set_a(0, 0, Scalar::param("b"));
  kab.set_a(0, 0, Scalar::param("a") + Scalar::param("b"));
  EXPECT_EQ(SuperFunction::kernel(t, ka) * SuperFunction::kernel(t, kb), SuperFunction::kernel(t, kab));
}

TEST(Grassmann, TableMismatch) {
  auto a = SuperFunction::var(xi_eta_x(), "xi");
  auto b = SuperFunction::var(table_6_3(), "t1");
  try {
    (void)(a * b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TableMismatch);
  }
}

TEST(Grassmann, DeriveExamples) {
  auto t = xi_eta_x();
  auto xi = SuperFunction::var(t, "xi"), eta = SuperFunction::var(t, "eta"), x = SuperFunction::var(t, "x");
  EXPECT_EQ((xi * eta).derive("xi"), eta);
  EXPECT_EQ((xi * eta).derive("eta"), -xi);
  GaussianKernel k;
  k.set_a(0, 0, 1);
  auto g = SuperFunction::kernel(t, k);
  EXPECT_EQ(g.derive("x"), -(x * g));
  try {
    (void)g.derive("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGenerator);
  }
}

TEST(Grassmann, RightDerivative) {
  auto t = xi_eta_x();
  auto xi = SuperFunction::var(t, "xi"), eta = SuperFunction::var(t, "eta");
  EXPECT_EQ((xi * eta).derive_right("eta"), xi);
  EXPECT_EQ((xi * eta).derive_right("xi"), -eta);
}

TEST(Grassmann, ExpEvenExamples) {
  auto t = VariableTable::make({{"xi", Parity::Odd, Role::Coordinate, ""},
                                {"eta", Parity::Odd, Role::Coordinate, ""},
                                {"u", Parity::Even, Role::Auxiliary, ""},
                                {"v", Parity::Even, Role::Auxiliary, ""}});
  auto xi = SuperFunction::var(t, "xi"), eta = SuperFunction::var(t, "eta");
  auto u = SuperFunction::var(t, "u"), v = SuperFunction::var(t, "v");
  auto one = SuperFunction::constant(t, 1);
  EXPECT_EQ(exp_even(xi * eta), one + xi * eta);

  Scalar z = Scalar::param("z");
  auto f = (u * u + v * v) * (Scalar(-1) * Scalar::i() / (Scalar(2) * z));
  auto e = exp_even(f);
  ASSERT_EQ(e.parts().size(), 1u);
  const auto& k = e.parts().begin()->first;
  EXPECT_EQ(k.a(0, 0), Scalar::i() / z);
  EXPECT_EQ(k.a(1, 1), Scalar::i() / z);
  EXPECT_TRUE(k.a(0, 1).is_zero());

  auto lin = exp_even(u + xi * eta);
  GaussianKernel kb;
  kb.b[0] = 1;
  EXPECT_EQ(lin, SuperFunction::kernel(t, kb) * (one + xi * eta));

  try {
    (void)exp_even(u * u * u);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegreeTooHigh);
  }
  try {
    (void)exp_even(xi);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotEven);
  }
}

TEST(Grassmann, EvaluateAtPointExamples) {
  auto t = xi_eta_x();
  auto env = VariableTable::make({{"th1", Parity::Odd, Role::Auxiliary, ""}, {"th2", Parity::Odd, Role::Auxiliary, ""}});
  auto th1 = SuperFunction::var(env, "th1"), th2 = SuperFunction::var(env, "th2");
  auto x = SuperFunction::var(t, "x");
  auto soul = th1 * th2;
  auto two = SuperFunction::constant(env, 2);
  auto r = evaluate_at_point(x * x, {{"x", two + soul}}, env);
  EXPECT_EQ(r, SuperFunction::constant(env, 4) + soul * Scalar(4));
  EXPECT_EQ(evaluate_at_point(SuperFunction::var(t, "xi"), {{"xi", th1}}, env), th1);

  GaussianKernel k;
  k.set_a(0, 0, 1);
  EXPECT_EQ(evaluate_at_point(SuperFunction::kernel(t, k), {{"x", soul}}, env), SuperFunction::constant(env, 1));
  try {
    (void)evaluate_at_point(SuperFunction::kernel(t, k), {{"x", two}}, env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonNilpotentExponentBody);
  }
  try {
    (void)evaluate_at_point(x, {{"x", th1}}, env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParityMismatch);
  }
}

TEST(Grassmann, SqrtEvenExamples) {
  auto t = table_6_3();
  auto th = [&](int k) { return SuperFunction::var(t, "t" + std::to_string(k)); };
  auto one = SuperFunction::constant(t, 1);
  EXPECT_EQ(sqrt_even(one + th(1) * th(2)), one + th(1) * th(2) * Scalar::rational(1, 2));
  EXPECT_EQ(sqrt_even(SuperFunction::constant(t, 4)), SuperFunction::constant(t, 2));
  auto f = SuperFunction::constant(t, 9) + th(1) * th(2) + th(3) * th(4) + th(1) * th(2) * th(3) * th(4) * Scalar(5);
  auto s = sqrt_even(f);
  EXPECT_EQ(s * s, f);
  try {
    (void)sqrt_even(th(1) * th(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonInvertibleBody);
  }
  GaussianKernel k;
  k.set_a(0, 0, 1);
  try {
    (void)sqrt_even(SuperFunction::kernel(t, k));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HasKernel);
  }
}

TEST(Grassmann, ParityExamples) {
  auto t = table_6_3();
  auto th = [&](int k) { return SuperFunction::var(t, "t" + std::to_string(k)); };
  EXPECT_EQ((th(1) * th(2)).parity(), 0);
  EXPECT_EQ((th(1) + th(1) * th(2) * th(3)).parity(), 1);
  EXPECT_EQ((SuperFunction::constant(t, 1) + th(1)).parity(), -1);
  EXPECT_EQ(SuperFunction(t).parity(), 0);
}

TEST(Grassmann, Supercommutativity) {
  auto t = table_6_3();
  std::mt19937 rng(21);
  for (int k = 0; k < 500; ++k) {
    int pf = k % 2, pg = (k / 2) % 2;
    auto f = random_function(rng, t, pf, 3);
    auto g = random_function(rng, t, pg, 3);
    int s = (pf * pg) ? -1 : 1;
    ASSERT_EQ(f * g, (g * f) * Scalar(s));
  }
}

TEST(Grassmann, OddDerivativeSquaresToZeroAndLeibniz) {
  auto t = table_6_3();
  std::mt19937 rng(22);
  for (int k = 0; k < 100; ++k) {
    auto f = random_function(rng, t, k % 2, 3);
    auto g = random_function(rng, t, (k / 2) % 2, 3);
    std::string v = "t" + std::to_string(1 + k % 6);
    EXPECT_TRUE(f.derive(v).derive(v).is_zero());
    int sign = (k % 2) ? -1 : 1;
    EXPECT_EQ((f * g).derive(v), f.derive(v) * g + f * g.derive(v) * Scalar(sign));
    std::string x = "x" + std::to_string(1 + k % 3);
    EXPECT_EQ((f * g).derive(x), f.derive(x) * g + f * g.derive(x));
  }
}

TEST(Grassmann, ExpOfNegativeIsInverse) {
  auto t = table_6_3();
  std::mt19937 rng(23);
  auto one = SuperFunction::constant(t, 1);
  for (int k = 0; k < 60; ++k) {
    auto f = random_function(rng, t, 0, 2, /*even_degree=*/2, /*with_constant=*/false);
    EXPECT_EQ(exp_even(f) * exp_even(-f), one) << f.to_string();
  }
}

TEST(Grassmann, SqrtSquares) {
  auto t = table_6_3();
  std::mt19937 rng(24);
  for (int k = 0; k < 60; ++k) {
    auto n = random_function(rng, t, 0, 2, /*even_degree=*/0, /*with_constant=*/false);
    auto f = SuperFunction::constant(t, Scalar(k % 2 ? 4 : 1) * Scalar::param("p").pow(2)) + n;
    auto s = sqrt_even(f);
    EXPECT_EQ(s * s, f);
  }
}

TEST(Grassmann, EvaluationIsHomomorphism) {
  auto t = table_6_3();
  std::vector<Generator> eg;
  for (int k = 1; k <= 8; ++k) eg.push_back({"e" + std::to_string(k), Parity::Odd, Role::Auxiliary, ""});
  auto env = VariableTable::make(eg);
  std::mt19937 rng(25);
  for (int k = 0; k < 40; ++k) {
    std::map<std::string, SuperFunction> point;
    for (int j = 1; j <= 6; ++j) point["t" + std::to_string(j)] = random_function(rng, env, 1, 1, 0, false);
    for (int j = 1; j <= 3; ++j)
      point["x" + std::to_string(j)] =
          SuperFunction::constant(env, Scalar(j)) + random_function(rng, env, 0, 1, 0, false);
    auto f = random_function(rng, t, k % 2, 2);
    auto g = random_function(rng, t, 0, 2);
    EXPECT_EQ(evaluate_at_point(f * g, point, env), evaluate_at_point(f, point, env) * evaluate_at_point(g, point, env));
  }
}

TEST(Grassmann, SubstituteRenamesTables) {
  auto t = xi_eta_x();
  auto t2 = VariableTable::make({{"eta", Parity::Odd, Role::Coordinate, ""},
                                 {"x", Parity::Even, Role::Coordinate, ""},
                                 {"xi", Parity::Odd, Role::Coordinate, ""}});
  auto f = SuperFunction::var(t, "xi") * SuperFunction::var(t, "eta");
  auto g = f.rebased(t2);
  EXPECT_EQ(g, SuperFunction::var(t2, "xi") * SuperFunction::var(t2, "eta"));
  EXPECT_EQ(g.to_string(), "-eta*xi");
}
