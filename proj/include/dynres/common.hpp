// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_COMMON_HPP
#define DYNRES_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dynres {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Dims = std::vector<int>;

// Thrown on contract violations (bad dimensions, invalid inputs, ...).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DYNRES_REQUIRE(cond, msg)                                              \
  do {                                                                         \
    if (!(cond)) throw ::dynres::Error(msg);                                   \
  } while (0)

// Default numerical tolerances. Double-precision eigensolvers at the matrix
// sizes this library targets (<= 64) comfortably meet these.
struct Tolerances {
  double herm = 1e-10;      // max-norm deviation from M = M^dagger
  double psd_floor = 1e-9;  // eigenvalues >= -psd_floor count as PSD
  double eq = 1e-8;         // max-norm for equality constraints (marginals)
  double rank_rel = 1e-9;   // relative singular value threshold for ranks
  double recompose = 1e-7;  // realization round-trip error budget
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

inline int dims_product(const Dims& dims) {
  int p = 1;
  for (int d : dims) {
    DYNRES_REQUIRE(d >= 1, "subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double herm_error(const Mat& m) { return max_abs(m - m.adjoint()); }

inline bool is_hermitian(const Mat& m, double tol) {
  return herm_error(m) <= tol;
}

// Smallest eigenvalue of a (nearly) Hermitian matrix.
inline double min_eig(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace dynres

#endif
