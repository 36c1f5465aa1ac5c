// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_RAND_HPP
#define DYNRES_RAND_HPP

#include <cstdint>
#include <random>

#include "dynres/common.hpp"

namespace dynres {

// Seeded generator for reproducible test data.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gauss() { return normal_(gen_); }
  double uniform() { return unif_(gen_); }
  std::uint64_t next_seed() { return gen_(); }

  Complex cgauss() { return Complex(gauss(), gauss()); }

  Mat gaussian_complex(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
  }

  // Haar-random isometry V: C^cols -> C^rows (rows >= cols), via QR of a
  // Ginibre matrix with the R-diagonal phase fix.
  Mat haar_isometry(int rows, int cols);

  Mat haar_unitary(int d) { return haar_isometry(d, d); }

  // Random density matrix (Wishart, full rank a.s.).
  Mat random_density(int d);

  // Random density matrix with given rank.
  Mat random_density_rank(int d, int rank);

  // Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
  Mat random_hermitian(int d);

private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace dynres

#endif
