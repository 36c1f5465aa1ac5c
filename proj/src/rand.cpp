// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "dynres/rand.hpp"

namespace dynres {

Mat Rng::haar_isometry(int rows, int cols) {
  DYNRES_REQUIRE(rows >= cols && cols >= 1, "haar_isometry: need rows >= cols >= 1");
  Mat g = gaussian_complex(rows, cols);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(rows, cols);
  Mat r = qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < cols; ++j) {
    Complex d = r(j, j);
    Complex ph = (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    q.col(j) *= ph;
  }
  return q;
}

Mat Rng::random_density(int d) { return random_density_rank(d, d); }

Mat Rng::random_density_rank(int d, int rank) {
  DYNRES_REQUIRE(rank >= 1 && rank <= d, "random_density_rank: bad rank");
  Mat g = gaussian_complex(d, rank);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return hermitize(rho);
}

Mat Rng::random_hermitian(int d) {
  Mat g = gaussian_complex(d, d);
  return hermitize(g);
}

}  // namespace dynres
