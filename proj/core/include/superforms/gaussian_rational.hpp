#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace superforms {

// An element re + i*im of Q(i).
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat i() { return GaussRat(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussRat inverse() const;

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  // Total order used only for canonical containers: real part first.
  int compare(const GaussRat& o) const;

  // Square root inside Q(i) with Re > 0, or Re = 0 and Im > 0; nullopt when none exists.
  std::optional<GaussRat> sqrt() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // "3/2", "-i", "3/2*i", "(1+2*i)".
  std::string to_string() const;
  bool needs_parens_as_factor() const { return sgn(re_) != 0 && sgn(im_) != 0; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

}  // namespace superforms
