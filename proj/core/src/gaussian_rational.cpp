#include "superforms/gaussian_rational.hpp"

#include "superforms/errors.hpp"

namespace superforms {

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
  mpq_class n = norm();
  return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by 0");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

int GaussRat::compare(const GaussRat& o) const {
  int c = cmp(re_, o.re_);
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(im_, o.im_);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<GaussRat> GaussRat::sqrt() const {
  if (is_zero()) return GaussRat();
  if (sgn(im_) == 0) {
    if (sgn(re_) > 0) {
      auto r = rational_sqrt(re_);
      if (!r) return std::nullopt;
      return GaussRat(*r);
    }
    auto r = rational_sqrt(-re_);
    if (!r) return std::nullopt;
    return GaussRat(0, *r);
  }
  // (x + iy)^2 = a + ib  =>  x^2 = (a + |c|)/2, y = b/(2x)
  auto modulus = rational_sqrt(norm());
  if (!modulus) return std::nullopt;
  auto x = rational_sqrt((re_ + *modulus) / 2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  mpq_class y = im_ / (2 * *x);
  return GaussRat(*x, y);
}

namespace {
std::string q_str(const mpq_class& q) { return q.get_str(); }
}  // namespace

std::string GaussRat::to_string() const {
  if (sgn(im_) == 0) return q_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = q_str(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + q_str(re_);
  if (sgn(im_) > 0) out += "+";
  out += imag + ")";
  return out;
}

}  // namespace superforms
