#pragma once

#include <random>

#include "superforms/superfunction.hpp"

namespace superforms::testing {

inline Scalar random_coefficient(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> kind(0, 5);
  int re = c(rng), im = c(rng);
  if (re == 0 && im == 0) re = 1;
  Scalar s(GaussRat(re, kind(rng) == 0 ? im : 0));
  if (kind(rng) == 0) s *= Scalar::param("z");
  return s;
}

// Random kernel-free function of the given parity (0 even, 1 odd) with up to
// `max_terms` terms; even monomials have total degree <= even_degree.
inline SuperFunction random_function(std::mt19937& rng, const TablePtr& t, int parity, int max_terms,
                                     int even_degree = 2, bool with_constant = true) {
  SuperFunction f(t);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  int n = nterms(rng);
  size_t no = t->n_odd(), ne = t->n_even();
  int attempts = 0;
  while (n > 0 && attempts++ < 200) {
    MonoKey m = f.unit_key();
    for (size_t j = 0; j < no; ++j)
      if (rng() % 3 == 0) m.odd |= uint64_t{1} << j;
    if (m.odd_degree() % 2 != parity) {
      if (no == 0) return f;
      m.odd ^= uint64_t{1} << (rng() % no);
    }
    if (ne > 0 && even_degree > 0) {
      int d = static_cast<int>(rng() % (even_degree + 1));
      for (int k = 0; k < d; ++k) m.even[rng() % ne] += 1;
    }
    if (!with_constant && m.odd == 0) continue;
    f.add_term(GaussianKernel{}, m, random_coefficient(rng));
    --n;
  }
  return f;
}

}  // namespace superforms::testing
