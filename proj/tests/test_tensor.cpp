#include "doctest.h"

#include "dynres/rand.hpp"
#include "dynres/tensor.hpp"

using namespace dynres;

namespace {

// Index-loop brute force oracle for partial traces, independent of the
// stride arithmetic in the implementation.
Mat partial_trace_bruteforce(const Mat& m, const Dims& dims,
                             const std::vector<int>& keep) {
  const int ns = static_cast<int>(dims.size());
  std::vector<bool> kept(ns, false);
  for (int k : keep) kept[k] = true;

  auto digits = [&](int idx) {
    std::vector<int> d(ns);
    for (int k = ns - 1; k >= 0; --k) {
      d[k] = idx % dims[k];
      idx /= dims[k];
    }
    return d;
  };
  int dk = 1;
  for (int k : keep) dk *= dims[k];
  Mat out = Mat::Zero(dk, dk);
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) {
    auto di = digits(i);
    for (int j = 0; j < n; ++j) {
      auto dj = digits(j);
      bool diag = true;
      for (int k = 0; k < ns; ++k)
        if (!kept[k] && di[k] != dj[k]) diag = false;
      if (!diag) continue;
      int oi = 0, oj = 0;
      for (int k : keep) {
        oi = oi * dims[k] + di[k];
        oj = oj * dims[k] + dj[k];
      }
      out(oi, oj) += m(i, j);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("partial trace of a product state factors") {
  Rng rng(7);
  Mat rho = rng.random_density(2), sigma = rng.random_density(2);
  Mat m = kron(rho, sigma);
  CHECK(max_abs(partial_trace(m, {2, 2}, {0}) - rho) < 1e-12);
  CHECK(max_abs(partial_trace(m, {2, 2}, {1}) - sigma) < 1e-12);
}

TEST_CASE("maximally entangled marginal is the identity") {
  Mat m = phi_plus(2);  // unnormalized, trace 2
  CHECK(std::abs(m.trace() - 2.0) < 1e-14);
  CHECK(max_abs(partial_trace(m, {2, 2}, {0}) - Mat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("partial trace matches the element-wise summation oracle") {
  Rng rng(11);
  Mat m = rng.random_hermitian(8);
  for (const auto& keep :
       std::vector<std::vector<int>>{{0, 2}, {1}, {0}, {2}, {0, 1, 2}}) {
    Mat a = partial_trace(m, {2, 2, 2}, keep);
    Mat b = partial_trace_bruteforce(m, {2, 2, 2}, keep);
    CHECK(max_abs(a - b) < 1e-12);
  }
}

TEST_CASE("partial trace composition law") {
  Rng rng(13);
  Mat m = rng.random_hermitian(12);
  Dims dims{2, 3, 2};
  // trace out 2 first, then 0, vs both at once
  Mat step = partial_trace(m, dims, {0, 1});
  Mat two = partial_trace(step, {2, 3}, {1});
  Mat one = partial_trace(m, dims, {1});
  CHECK(max_abs(two - one) < 1e-12);
  // full trace preserved
  CHECK(std::abs(partial_trace(m, dims, {}).trace() - m.trace()) < 1e-12);
}

TEST_CASE("partial trace index errors") {
  Mat m = Mat::Identity(4, 4);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {2}), Error);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {-1}), Error);
}

TEST_CASE("partial transpose of a product state") {
  Rng rng(17);
  Mat rho = rng.random_density(2), sigma = rng.random_density(3);
  Mat m = kron(rho, sigma);
  CHECK(max_abs(partial_transpose(m, {2, 3}, {1}) - kron(rho, sigma.transpose())) <
        1e-14);
}

TEST_CASE("partial transpose of phi+ is the swap") {
  Mat pt = partial_transpose(phi_plus(2), {2, 2}, {1});
  // SWAP has eigenvalues {1,1,1,-1}
  Eigen::SelfAdjointEigenSolver<Mat> es(pt);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  for (int k = 1; k < 4; ++k)
    CHECK(es.eigenvalues()(k) == doctest::Approx(1.0));
  // and is literally the swap matrix
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK(max_abs(pt - swap) < 1e-14);
}

TEST_CASE("partial transpose involution and empty subset") {
  Rng rng(19);
  Mat m = rng.random_hermitian(12);
  Dims dims{2, 3, 2};
  CHECK(max_abs(partial_transpose(m, dims, {}) - m) == 0.0);
  Mat twice = partial_transpose(partial_transpose(m, dims, {0, 2}), dims, {0, 2});
  CHECK(max_abs(twice - m) == 0.0);
  Mat pt = partial_transpose(m, dims, {1});
  CHECK(herm_error(pt) < 1e-12);
}

TEST_CASE("partial transpose preserves the HS inner product") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = rng.random_hermitian(8), b = rng.random_hermitian(8);
    Mat at = partial_transpose(a, {2, 2, 2}, {1, 2});
    Mat bt = partial_transpose(b, {2, 2, 2}, {1, 2});
    Complex lhs = (at.adjoint() * bt).trace();
    Complex rhs = (a.adjoint() * b).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("permute_subsystems") {
  Rng rng(29);
  Mat a = rng.random_hermitian(2), b = rng.random_hermitian(3),
      c = rng.random_hermitian(2);
  Mat m = kron(kron(a, b), c);
  Mat p = permute_subsystems(m, {2, 3, 2}, {2, 0, 1});
  CHECK(max_abs(p - kron(kron(c, a), b)) < 1e-12);
  // inverse permutation restores exactly
  Mat back = permute_subsystems(p, {2, 2, 3}, {1, 2, 0});
  CHECK(max_abs(back - m) == 0.0);
}
