#include <gtest/gtest.h>

#include <random>

#include "superforms/errors.hpp"
#include "superforms/polynomial.hpp"
#include "superforms/scalar.hpp"

using namespace superforms;

namespace {

Scalar P(const char* s) { return Scalar::parse(s); }

// Random scalar in parameters z, w with small Gaussian-integer coefficients,
// built only from field operations so the test does not depend on parse().
Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pick(0, 5);
  auto atom = [&]() -> Scalar {
    switch (pick(rng)) {
      case 0:
        return Scalar::param("z");
      case 1:
        return Scalar::param("w");
      case 2:
        return Scalar::param_root("z");
      case 3:
        return Scalar::tau();
      case 4:
        return Scalar::i();
      default:
        return Scalar(GaussRat(coef(rng), coef(rng)));
    }
  };
  Scalar num = Scalar(GaussRat(coef(rng), coef(rng)));
  for (int k = 0; k < 2; ++k) num += Scalar(coef(rng)) * atom() * atom();
  Scalar den = Scalar(1) + Scalar(coef(rng)) * atom();
  if (den.is_zero()) den = Scalar(1);
  return num / den;
}

std::pair<mpq_class, mpq_class> ev(const Scalar& s) {
  std::map<std::string, mpq_class> at{{"z", mpq_class(9, 4)}, {"w", mpq_class(5, 3)}};
  // 2*pi surrogate 49/16 keeps odd powers of tau rational
  return s.eval_numeric(at, mpq_class(49, 32));
}

}  // namespace

TEST(Scalars, SpecArithmeticExamples) {
  EXPECT_EQ(Scalar::rational(1, 2) + Scalar::rational(1, 3), Scalar::rational(5, 6));
  EXPECT_EQ((Scalar::tau().pow(2) * Scalar::tau().pow(2)).to_string(), "(2pi)^2");
  EXPECT_EQ(Scalar::i() * Scalar::param_root("z") / Scalar::param_root("z"), Scalar::i());
}

TEST(Scalars, DivisionByZeroThrows) {
  try {
    (void)(Scalar(1) / Scalar(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Scalars, SqrtMonomialExamples) {
  EXPECT_EQ(sqrt_monomial(Scalar::two_pi()), Scalar::tau());
  EXPECT_EQ(sqrt_monomial(Scalar::param("z").pow(2)), Scalar::param("z"));
  EXPECT_EQ(sqrt_monomial(Scalar(4) * Scalar::param("z")), Scalar(2) * Scalar::param_root("z"));
  // -z^2 has the principal root i*z.
  EXPECT_EQ(sqrt_monomial(-Scalar::param("z").pow(2)), Scalar::i() * Scalar::param("z"));
  // 2i = (1+i)^2
  EXPECT_EQ(sqrt_monomial(Scalar(GaussRat(0, 2))), Scalar(GaussRat(1, 1)));
}

TEST(Scalars, SqrtMonomialErrors) {
  auto code = [](const Scalar& a) {
    try {
      (void)sqrt_monomial(a);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code(Scalar(1) + Scalar::param("z")), ErrorCode::NotAMonomial);
  EXPECT_EQ(code(Scalar::i()), ErrorCode::NoFormalRoot);
  EXPECT_EQ(code(Scalar(2)), ErrorCode::NoFormalRoot);
  EXPECT_EQ(code(Scalar::param_root("z")), ErrorCode::NoFormalRoot);
}

TEST(Scalars, EvalNumericExamples) {
  std::map<std::string, mpq_class> z2{{"z", 2}};
  EXPECT_EQ(Scalar::param("z").inverse().eval_numeric(z2, 3), std::make_pair(mpq_class(1, 2), mpq_class(0)));
  std::map<std::string, mpq_class> z3{{"z", 3}};
  EXPECT_EQ((Scalar::i() * Scalar::param_root("z").pow(2)).eval_numeric(z3, 3),
            std::make_pair(mpq_class(0), mpq_class(3)));
  EXPECT_EQ(Scalar::tau().pow(2).eval_numeric({}, mpq_class(355, 113)),
            std::make_pair(mpq_class(710, 113), mpq_class(0)));
}

TEST(Scalars, EvalNumericErrors) {
  try {
    (void)Scalar::param("z").eval_numeric({}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnassignedParameter);
  }
  try {
    (void)(Scalar(1) / (Scalar::param("z") - Scalar(2))).eval_numeric({{"z", 2}}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtPoint);
  }
}

TEST(Scalars, DisplayFormat) {
  Scalar s = Scalar::rational(3, 2) * Scalar::i() * Scalar::tau() / Scalar::param("z");
  EXPECT_EQ(s.to_string(), "3/2*i*(2pi)^(1/2)*z^(-1)");
  EXPECT_EQ(Scalar().to_string(), "0");
  EXPECT_EQ((Scalar(1) + Scalar::param("z")).to_string(), "z + 1");
  EXPECT_EQ((-Scalar::i() / Scalar::param("z")).to_string(), "-i*z^(-1)");
}

TEST(Scalars, CanonicalCancellation) {
  Scalar z = Scalar::param("z"), w = Scalar::param("w");
  Scalar a = (z * z - w * w) / (z + w);
  EXPECT_EQ(a, z - w);
  EXPECT_TRUE(a.den().is_constant());
  Scalar b = (z * z + Scalar(2) * z * w + w * w) / ((z + w) * (z - w));
  EXPECT_EQ(b, (z + w) / (z - w));
  // gcd needs a multivariate pseudo-remainder sequence
  Scalar c = ((z + w + Scalar(1)) * (z * w - Scalar(3))) / ((z * w - Scalar(3)) * (z - Scalar::i()));
  EXPECT_EQ(c, (z + w + Scalar(1)) / (z - Scalar::i()));
}

TEST(Scalars, FieldAxiomsOnRandomSamples) {
  std::mt19937 rng(7);
  for (int k = 0; k < 100; ++k) {
    Scalar a = random_scalar(rng);
    Scalar b = random_scalar(rng);
    Scalar c = random_scalar(rng);
    EXPECT_EQ(a + Scalar(), a);
    EXPECT_EQ(a * Scalar(1), a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * (Scalar(1) / a), Scalar(1));
  }
}

TEST(Scalars, EvalNumericIsRingHomomorphism) {
  std::mt19937 rng(11);
  for (int k = 0; k < 120; ++k) {
    Scalar a = random_scalar(rng);
    Scalar b = random_scalar(rng);
    auto [ar, ai] = ev(a);
    auto [br, bi] = ev(b);
    auto [sr, si] = ev(a + b);
    EXPECT_EQ(sr, ar + br);
    EXPECT_EQ(si, ai + bi);
    auto [pr, pi] = ev(a * b);
    EXPECT_EQ(pr, ar * br - ai * bi);
    EXPECT_EQ(pi, ar * bi + ai * br);
  }
}

TEST(Scalars, EqualityAgreesWithCrossMultiplication) {
  std::mt19937 rng(3);
  for (int k = 0; k < 60; ++k) {
    Scalar a = random_scalar(rng);
    Scalar b = random_scalar(rng);
    Scalar lhs(a.num() * b.den(), Polynomial(1));
    Scalar rhs(b.num() * a.den(), Polynomial(1));
    EXPECT_EQ(a == b, lhs == rhs);
    EXPECT_EQ(a, Scalar(a.num() * b.den(), a.den() * b.den()));
  }
}

TEST(Scalars, SqrtSquaresBack) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4);
  for (int k = 0; k < 100; ++k) {
    GaussRat base(c(rng), c(rng));
    if (base.is_zero()) continue;
    Scalar s = Scalar(base * base) * Scalar::param("z").pow(e(rng)) * Scalar::param_root("w").pow(2 * e(rng)) *
               Scalar::two_pi().pow(e(rng));
    Scalar r = sqrt_monomial(s);
    EXPECT_EQ(r * r, s);
  }
}

TEST(Scalars, ParseRoundTrip) {
  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    Scalar a = random_scalar(rng);
    EXPECT_EQ(Scalar::parse(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(P("3/2*i*(2pi)^(1/2)*z^(-1)"), Scalar::rational(3, 2) * Scalar::i() * Scalar::tau() / Scalar::param("z"));
  EXPECT_EQ(P("-z^2"), -Scalar::param("z").pow(2));
  EXPECT_EQ(P("(1+2*i)*z"), Scalar(GaussRat(1, 2)) * Scalar::param("z"));
}

TEST(Scalars, ParseErrors) {
  for (const char* bad : {"", "1 +", "(z", "z^(1/3)", "3 $"}) {
    try {
      (void)Scalar::parse(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Polynomial, GcdOfProductsOfLinearForms) {
  // a and b are products of pairwise non-associate linear forms, so
  // gcd(g a, g b) = g up to a unit.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4);
  const char* vars[] = {"u", "w", "z"};
  auto linear = [&](int shift) {
    Polynomial l = Polynomial(GaussRat(shift, coef(rng)));
    for (const char* v : vars) l += Polynomial::var(v).scaled(GaussRat(coef(rng)));
    l += Polynomial::var(vars[shift % 3]);  // never constant
    return l;
  };
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial g(1), a(1), b(1);
    for (int k = 0; k < trial % 3; ++k) g = g * linear(10 + k);
    for (int k = 0; k < 3; ++k) a = a * linear(20 + k);
    for (int k = 0; k < 2; ++k) b = b * linear(30 + k);
    EXPECT_EQ(Polynomial::gcd(g * a, g * b), g.monic()) << trial;
    EXPECT_EQ(Polynomial::gcd(a, b), Polynomial(1));
  }
}
