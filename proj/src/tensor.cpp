// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "dynres/tensor.hpp"

#include <numeric>

namespace dynres {

std::vector<int> layout_strides(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[k] = s[k + 1] * dims[k + 1];
  return s;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron(const std::vector<Mat>& factors) {
  DYNRES_REQUIRE(!factors.empty(), "kron: empty factor list");
  Mat out = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Dims select_dims(const Dims& dims, const std::vector<int>& idx) {
  Dims out;
  out.reserve(idx.size());
  for (int k : idx) {
    DYNRES_REQUIRE(k >= 0 && k < static_cast<int>(dims.size()),
                   "subsystem index out of range");
    out.push_back(dims[k]);
  }
  return out;
}

namespace {

void check_layout(const Mat& m, const Dims& dims) {
  DYNRES_REQUIRE(m.rows() == m.cols(), "expected a square matrix");
  DYNRES_REQUIRE(dims_product(dims) == m.rows(),
                 "dims layout does not match matrix dimension");
}

// Decompose a flat index into per-subsystem digits.
void unflatten(int idx, const Dims& dims, std::vector<int>& digits) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
}

}  // namespace

Mat partial_trace(const Mat& m, const Dims& dims, const std::vector<int>& keep) {
  check_layout(m, dims);
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    DYNRES_REQUIRE(k >= 0 && k < static_cast<int>(dims.size()),
                   "partial_trace: index out of range");
    DYNRES_REQUIRE(!kept[k], "partial_trace: duplicate index");
    kept[k] = true;
  }

  const auto strides = layout_strides(dims);
  int dk = 1, dt = 1;
  std::vector<int> keep_idx, tr_idx;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (kept[k]) {
      dk *= dims[k];
      keep_idx.push_back(static_cast<int>(k));
    } else {
      dt *= dims[k];
      tr_idx.push_back(static_cast<int>(k));
    }
  }

  // Offsets of kept/traced composite indices into the flat index.
  auto offsets = [&](const std::vector<int>& subs) {
    Dims sub = select_dims(dims, subs);
    int n = dims_product(sub);
    std::vector<int> off(n, 0);
    std::vector<int> digit(subs.size(), 0);
    for (int i = 0; i < n; ++i) {
      unflatten(i, sub, digit);
      int o = 0;
      for (size_t k = 0; k < subs.size(); ++k) o += digit[k] * strides[subs[k]];
      off[i] = o;
    }
    return off;
  };
  const auto koff = offsets(keep_idx);
  const auto toff = offsets(tr_idx);

  Mat out = Mat::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (int t = 0; t < dt; ++t) s += m(koff[i] + toff[t], koff[j] + toff[t]);
      out(i, j) = s;
    }
  return out;
}

Mat partial_transpose(const Mat& m, const Dims& dims,
                      const std::vector<int>& subset) {
  check_layout(m, dims);
  std::vector<bool> flip(dims.size(), false);
  for (int k : subset) {
    DYNRES_REQUIRE(k >= 0 && k < static_cast<int>(dims.size()),
                   "partial_transpose: index out of range");
    flip[k] = true;
  }
  const auto strides = layout_strides(dims);
  const int n = static_cast<int>(m.rows());
  const int ns = static_cast<int>(dims.size());

  Mat out(n, n);
  std::vector<int> ri(ns), ci(ns);
  for (int i = 0; i < n; ++i) {
    unflatten(i, dims, ri);
    for (int j = 0; j < n; ++j) {
      unflatten(j, dims, ci);
      int ip = 0, jp = 0;
      for (int k = 0; k < ns; ++k) {
        int rk = flip[k] ? ci[k] : ri[k];
        int ck = flip[k] ? ri[k] : ci[k];
        ip += rk * strides[k];
        jp += ck * strides[k];
      }
      out(ip, jp) = m(i, j);
    }
  }
  return out;
}

Mat permute_subsystems(const Mat& m, const Dims& dims,
                       const std::vector<int>& perm) {
  check_layout(m, dims);
  DYNRES_REQUIRE(perm.size() == dims.size(), "permutation size mismatch");
  std::vector<bool> seen(dims.size(), false);
  for (int p : perm) {
    DYNRES_REQUIRE(p >= 0 && p < static_cast<int>(dims.size()) && !seen[p],
                   "invalid subsystem permutation");
    seen[p] = true;
  }
  const int n = static_cast<int>(m.rows());
  const int ns = static_cast<int>(dims.size());
  const auto old_strides = layout_strides(dims);
  const Dims new_dims = select_dims(dims, perm);
  const auto new_strides = layout_strides(new_dims);

  // map[i_old] = i_new
  std::vector<int> map(n, 0);
  std::vector<int> digit(ns, 0);
  for (int i = 0; i < n; ++i) {
    unflatten(i, dims, digit);
    int t = 0;
    for (int k = 0; k < ns; ++k) t += digit[perm[k]] * new_strides[k];
    map[i] = t;
  }
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

Vec phi_plus_vec(int d) {
  Vec v = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

Mat phi_plus(int d) {
  Vec v = phi_plus_vec(d);
  return v * v.adjoint();
}

Mat vec_as_matrix(const Vec& v, int dim_a, int dim_e) {
  DYNRES_REQUIRE(v.size() == static_cast<Eigen::Index>(dim_a) * dim_e,
                 "vec_as_matrix: size mismatch");
  Mat out(dim_a, dim_e);
  for (int i = 0; i < dim_a; ++i)
    for (int e = 0; e < dim_e; ++e) out(i, e) = v(i * dim_e + e);
  return out;
}

}  // namespace dynres
