#pragma once

#include <random>

#include "joinlab/qudit.hpp"

namespace joinlab::testing {

inline double max_abs_diff(const cmat& a, const cmat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline cmat random_complex(int r, int c, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  cmat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cplx(nd(gen), nd(gen));
  return m;
}

inline cmat random_herm(int d, std::mt19937_64& gen) {
  cmat g = random_complex(d, d, gen);
  return 0.5 * (g + g.adjoint());
}

}  // namespace joinlab::testing
