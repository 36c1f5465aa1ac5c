// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "dynres/channel.hpp"

#include <algorithm>

#include "dynres/rand.hpp"

namespace dynres {

FactorSplit FactorSplit::normalized(int dim) const {
  FactorSplit out = *this;
  if (out.factors.empty()) out.factors = {dim};
  DYNRES_REQUIRE(dims_product(out.factors) == dim,
                 "factor split does not multiply to the subsystem dimension");
  std::vector<bool> seen(out.factors.size(), false);
  for (int b : out.beta) {
    DYNRES_REQUIRE(b >= 0 && b < static_cast<int>(out.factors.size()),
                   "beta factor index out of range");
    DYNRES_REQUIRE(!seen[b], "beta factor assigned twice");
    seen[b] = true;
  }
  return out;
}

Dims ChannelChoi::fine_layout() const {
  FactorSplit fi = in_split.normalized(sys.in);
  FactorSplit fo = out_split.normalized(sys.out);
  Dims d = fi.factors;
  d.insert(d.end(), fo.factors.begin(), fo.factors.end());
  return d;
}

std::vector<int> ChannelChoi::beta_factors() const {
  FactorSplit fi = in_split.normalized(sys.in);
  FactorSplit fo = out_split.normalized(sys.out);
  std::vector<int> idx = fi.beta;
  int off = static_cast<int>(fi.factors.size());
  for (int b : fo.beta) idx.push_back(off + b);
  return idx;
}

ChannelChoi choi_from_kraus(const std::vector<Mat>& kraus, SystemPair sys,
                            double tp_tol) {
  DYNRES_REQUIRE(!kraus.empty(), "choi_from_kraus: empty Kraus set");
  Mat acc = Mat::Zero(sys.in, sys.in);
  for (const Mat& k : kraus) {
    DYNRES_REQUIRE(k.rows() == sys.out && k.cols() == sys.in,
                   "Kraus operator has wrong shape");
    acc += k.adjoint() * k;
  }
  DYNRES_REQUIRE(max_abs(acc - Mat::Identity(sys.in, sys.in)) <= tp_tol,
                 "Kraus set is not trace preserving");

  // J = sum_e (I (x) K_e) phi+ (I (x) K_e)^dagger on [A0, A1].
  Mat j = Mat::Zero(sys.dim(), sys.dim());
  for (const Mat& k : kraus) {
    Mat w(sys.dim(), 1);
    for (int i = 0; i < sys.in; ++i)
      w.block(i * sys.out, 0, sys.out, 1) = k.col(i);
    j += w * w.adjoint();
  }
  return {sys, hermitize(j), {}, {}};
}

std::vector<Mat> kraus_from_choi(const ChannelChoi& n, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(n.J));
  const auto& vals = es.eigenvalues();
  double vmax = std::max(vals.maxCoeff(), 0.0);
  std::vector<Mat> kraus;
  for (int k = static_cast<int>(vals.size()) - 1; k >= 0; --k) {
    if (vals(k) <= tol * vmax || vals(k) <= 0) continue;
    Vec col = std::sqrt(vals(k)) * es.eigenvectors().col(k);
    Mat op(n.sys.out, n.sys.in);
    for (int i = 0; i < n.sys.in; ++i)
      op.col(i) = col.segment(i * n.sys.out, n.sys.out);
    kraus.push_back(op);
  }
  return kraus;
}

ChannelChoi identity_channel(int d) {
  return {{d, d}, phi_plus(d), {}, {}};
}

ChannelChoi replacement_channel(int d_in, const Mat& state) {
  DYNRES_REQUIRE(state.rows() == state.cols(), "state must be square");
  return {{d_in, static_cast<int>(state.rows())},
          kron(Mat::Identity(d_in, d_in), hermitize(state)),
          {},
          {}};
}

ChannelChoi completely_depolarizing(int d_in, int d_out) {
  return replacement_channel(d_in, Mat::Identity(d_out, d_out) / d_out);
}

ChannelChoi depolarizing_qubit(double p) {
  Mat j = (1.0 - p) * phi_plus(2) + p * kron(Mat::Identity(2, 2), Mat::Identity(2, 2) / 2.0);
  return {{2, 2}, j, {}, {}};
}

ChannelChoi preparation_channel(const Mat& state) {
  return replacement_channel(1, state);
}

ChannelChoi isometry_channel(const Mat& v, double tol) {
  DYNRES_REQUIRE(max_abs(v.adjoint() * v - Mat::Identity(v.cols(), v.cols())) <=
                     tol,
                 "isometry_channel: V^dagger V != I");
  return choi_from_kraus({v}, {static_cast<int>(v.cols()),
                               static_cast<int>(v.rows())});
}

ChannelChoi isometry_left_inverse(const Mat& v, const Mat& tau, double tol) {
  const int de = static_cast<int>(v.cols());
  const int dep = static_cast<int>(v.rows());
  DYNRES_REQUIRE(max_abs(v.adjoint() * v - Mat::Identity(de, de)) <= tol,
                 "isometry_left_inverse: V^dagger V != I");
  DYNRES_REQUIRE(tau.rows() == de && tau.cols() == de,
                 "isometry_left_inverse: tau dimension mismatch");

  std::vector<Mat> kraus{v.adjoint()};
  // Kraus factors of sigma -> tr[(I - V V^dagger) sigma] tau.
  Mat proj = Mat::Identity(dep, dep) - v * v.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> ep(hermitize(proj));
  Eigen::SelfAdjointEigenSolver<Mat> et(hermitize(tau));
  for (int r = 0; r < dep; ++r) {
    if (ep.eigenvalues()(r) < 0.5) continue;  // projector spectrum is 0/1
    for (int k = 0; k < de; ++k) {
      double t = et.eigenvalues()(k);
      if (t <= 1e-14) continue;
      kraus.push_back(std::sqrt(t) * et.eigenvectors().col(k) *
                      ep.eigenvectors().col(r).adjoint());
    }
  }
  return choi_from_kraus(kraus, {dep, de});
}

ChannelChoi random_channel(std::uint64_t seed, SystemPair sys, int env_dim) {
  DYNRES_REQUIRE(env_dim >= 1, "random_channel: env_dim must be >= 1");
  DYNRES_REQUIRE(sys.out * env_dim >= sys.in,
                 "random_channel: no isometry into out (x) env exists");
  Rng rng(seed);
  Mat v = rng.haar_isometry(sys.out * env_dim, sys.in);
  std::vector<Mat> kraus(env_dim);
  for (int e = 0; e < env_dim; ++e) {
    Mat k(sys.out, sys.in);
    for (int o = 0; o < sys.out; ++o) k.row(o) = v.row(o * env_dim + e);
    kraus[e] = k;
  }
  return choi_from_kraus(kraus, sys);
}

Mat apply_channel(const ChannelChoi& n, const Mat& rho) {
  DYNRES_REQUIRE(rho.rows() == n.sys.in && rho.cols() == n.sys.in,
                 "apply_channel: state dimension mismatch");
  Mat prod = n.J * kron(rho.transpose(), Mat::Identity(n.sys.out, n.sys.out));
  return partial_trace(prod, n.layout(), {1});
}

ChannelChoi compose(const ChannelChoi& second, const ChannelChoi& first) {
  DYNRES_REQUIRE(first.sys.out == second.sys.in,
                 "compose: intermediate dimension mismatch");
  const int dx = first.sys.in, dy = first.sys.out, dz = second.sys.out;
  // J^{B o A}[(x,z),(x',z')] = sum_{y,y'} J^A[(x,y),(x',y')] J^B[(y,z),(y',z')]
  // evaluated as a (dx^2 x dy^2) * (dy^2 x dz^2) product of reshapes.
  Mat l(dx * dx, dy * dy);
  for (int x = 0; x < dx; ++x)
    for (int xp = 0; xp < dx; ++xp)
      for (int y = 0; y < dy; ++y)
        for (int yp = 0; yp < dy; ++yp)
          l(x * dx + xp, y * dy + yp) = first.J(x * dy + y, xp * dy + yp);
  Mat r(dy * dy, dz * dz);
  for (int y = 0; y < dy; ++y)
    for (int yp = 0; yp < dy; ++yp)
      for (int z = 0; z < dz; ++z)
        for (int zp = 0; zp < dz; ++zp)
          r(y * dy + yp, z * dz + zp) = second.J(y * dz + z, yp * dz + zp);
  Mat flat = l * r;
  Mat j(dx * dz, dx * dz);
  for (int x = 0; x < dx; ++x)
    for (int xp = 0; xp < dx; ++xp)
      for (int z = 0; z < dz; ++z)
        for (int zp = 0; zp < dz; ++zp)
          j(x * dz + z, xp * dz + zp) = flat(x * dx + xp, z * dz + zp);
  return {{dx, dz}, hermitize(j), first.in_split, second.out_split};
}

ChannelChoi tensor_channels(const ChannelChoi& a, const ChannelChoi& b) {
  Mat j = kron(a.J, b.J);
  // [a0, a1, b0, b1] -> [a0, b0, a1, b1]
  j = permute_subsystems(j, {a.sys.in, a.sys.out, b.sys.in, b.sys.out},
                         {0, 2, 1, 3});
  auto merge = [](const FactorSplit& x, int dx, const FactorSplit& y, int dy) {
    FactorSplit fx = x.normalized(dx), fy = y.normalized(dy);
    FactorSplit out;
    out.factors = fx.factors;
    out.factors.insert(out.factors.end(), fy.factors.begin(), fy.factors.end());
    out.beta = fx.beta;
    int off = static_cast<int>(fx.factors.size());
    for (int v : fy.beta) out.beta.push_back(off + v);
    return out;
  };
  return {{a.sys.in * b.sys.in, a.sys.out * b.sys.out},
          j,
          merge(a.in_split, a.sys.in, b.in_split, b.sys.in),
          merge(a.out_split, a.sys.out, b.out_split, b.sys.out)};
}

ChannelChoi permute_channel_wires(const ChannelChoi& n, const Dims& in_dims,
                                  const std::vector<int>& in_perm,
                                  const Dims& out_dims,
                                  const std::vector<int>& out_perm) {
  DYNRES_REQUIRE(dims_product(in_dims) == n.sys.in &&
                     dims_product(out_dims) == n.sys.out,
                 "permute_channel_wires: refinement mismatch");
  Dims layout = in_dims;
  layout.insert(layout.end(), out_dims.begin(), out_dims.end());
  std::vector<int> perm = in_perm;
  for (int p : out_perm) perm.push_back(p + static_cast<int>(in_dims.size()));
  return {n.sys, permute_subsystems(n.J, layout, perm), {}, {}};
}

ChannelReport validate_channel(const Mat& j, SystemPair sys,
                               const Tolerances& tols) {
  ChannelReport rep;
  DYNRES_REQUIRE(j.rows() == sys.dim() && j.cols() == sys.dim(),
                 "validate_channel: dimension mismatch");
  if (herm_error(j) > tols.herm) {
    rep.pass = false;
    rep.message = "not Hermitian";
    return rep;
  }
  rep.min_eig = min_eig(j);
  Mat marg = partial_trace(j, {sys.in, sys.out}, {0});
  rep.tp_err = max_abs(marg - Mat::Identity(sys.in, sys.in));
  rep.pass = rep.min_eig >= -tols.psd_floor && rep.tp_err <= tols.eq;
  rep.message = rep.pass ? "ok" : "Choi conditions violated";
  return rep;
}

Purification purify(const Mat& rho, double rank_tol) {
  DYNRES_REQUIRE(rho.rows() == rho.cols(), "purify: square matrix expected");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(rho));
  const auto& vals = es.eigenvalues();
  const int d = static_cast<int>(rho.rows());
  double vmax = std::max(vals.maxCoeff(), 0.0);
  DYNRES_REQUIRE(vmax > 0, "purify: zero matrix has no purification");

  std::vector<int> keep;  // descending eigenvalue order
  for (int k = d - 1; k >= 0; --k)
    if (vals(k) > rank_tol * vmax) keep.push_back(k);
  const int env = static_cast<int>(keep.size());

  Vec psi = Vec::Zero(static_cast<Eigen::Index>(d) * env);
  for (int e = 0; e < env; ++e) {
    Vec col = std::sqrt(vals(keep[e])) * es.eigenvectors().col(keep[e]);
    for (int i = 0; i < d; ++i) psi(i * env + e) = col(i);
  }
  return {psi, env};
}

bool is_density(const Mat& rho, const Tolerances& tols) {
  if (rho.rows() != rho.cols()) return false;
  if (herm_error(rho) > tols.herm) return false;
  if (std::abs(rho.trace() - 1.0) > 1e-8) return false;
  return min_eig(rho) >= -tols.psd_floor;
}

}  // namespace dynres
