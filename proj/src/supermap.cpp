// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "dynres/supermap.hpp"

#include <algorithm>

#include "dynres/rand.hpp"

namespace dynres {

Dims SuperChoi::fine_layout() const {
  Dims d;
  FactorSplit fa0 = a0.normalized(sysA.in), fa1 = a1.normalized(sysA.out);
  FactorSplit fb0 = b0.normalized(sysB.in), fb1 = b1.normalized(sysB.out);
  for (const FactorSplit* f : {&fa0, &fa1, &fb0, &fb1})
    d.insert(d.end(), f->factors.begin(), f->factors.end());
  return d;
}

std::vector<int> SuperChoi::beta_factors() const {
  FactorSplit fs[4] = {a0.normalized(sysA.in), a1.normalized(sysA.out),
                       b0.normalized(sysB.in), b1.normalized(sysB.out)};
  std::vector<int> idx;
  int off = 0;
  for (const auto& f : fs) {
    for (int b : f.beta) idx.push_back(off + b);
    off += static_cast<int>(f.factors.size());
  }
  return idx;
}

SuperReport validate_superchannel(const Mat& j, SystemPair sysA,
                                  SystemPair sysB, const Tolerances& tols) {
  const Dims layout{sysA.in, sysA.out, sysB.in, sysB.out};
  DYNRES_REQUIRE(j.rows() == dims_product(layout),
                 "validate_superchannel: dimension mismatch");
  SuperReport rep;
  if (herm_error(j) > tols.herm) {
    rep.message = "not Hermitian";
    return rep;
  }
  rep.min_eig = min_eig(j);

  Mat m1 = partial_trace(j, layout, {1, 2});  // on [A1, B0]
  rep.marg1_err =
      max_abs(m1 - Mat::Identity(m1.rows(), m1.cols()));

  Mat mab0 = partial_trace(j, layout, {0, 1, 2});   // on [A0, A1, B0]
  Mat ma0b0 = partial_trace(j, layout, {0, 2});     // on [A0, B0]
  Mat expect = kron(ma0b0, Mat::Identity(sysA.out, sysA.out) / sysA.out);
  expect = permute_subsystems(expect, {sysA.in, sysB.in, sysA.out}, {0, 2, 1});
  rep.marg2_err = max_abs(mab0 - expect);

  rep.pass = rep.min_eig >= -tols.psd_floor && rep.marg1_err <= tols.eq &&
             rep.marg2_err <= tols.eq;
  rep.message = rep.pass ? "ok" : "superchannel conditions violated";
  return rep;
}

ChannelChoi apply_superchannel(const SuperChoi& theta, const ChannelChoi& n) {
  DYNRES_REQUIRE(n.sys == theta.sysA, "apply_superchannel: slot mismatch");
  Mat lhs = theta.J * kron(n.J.transpose(),
                           Mat::Identity(theta.sysB.dim(), theta.sysB.dim()));
  Mat out = partial_trace(lhs, theta.layout(), {2, 3});
  return {theta.sysB, hermitize(out), theta.b0, theta.b1};
}

RepMatrix rep_convert(const SuperChoi& theta, SupermapRep rep) {
  const Dims layout = theta.layout();
  switch (rep) {
    case SupermapRep::P: {
      Mat m = permute_subsystems(theta.J, layout, {0, 2, 1, 3});
      return {rep, m, select_dims(layout, {0, 2, 1, 3}),
              {theta.sysA.in * theta.sysB.in, theta.sysA.out * theta.sysB.out},
              {}};
    }
    case SupermapRep::Q: {
      Mat m = permute_subsystems(theta.J, layout, {1, 2, 0, 3});
      return {rep, m, select_dims(layout, {1, 2, 0, 3}),
              {theta.sysA.out * theta.sysB.in, theta.sysA.in * theta.sysB.out},
              {}};
    }
    case SupermapRep::R:
      return {rep, theta.J, layout, theta.sysA, theta.sysB};
  }
  throw Error("rep_convert: unknown representation");
}

SuperChoi rep_to_superchoi(const RepMatrix& r, SystemPair sysA,
                           SystemPair sysB) {
  switch (r.rep) {
    case SupermapRep::P:
      // inverse of {0,2,1,3} is itself
      return {sysA, sysB,
              permute_subsystems(r.m, r.dims, {0, 2, 1, 3}), {}, {}, {}, {}};
    case SupermapRep::Q:
      // inverse of {1,2,0,3} is {2,0,1,3}
      return {sysA, sysB,
              permute_subsystems(r.m, r.dims, {2, 0, 1, 3}), {}, {}, {}, {}};
    case SupermapRep::R:
      return {sysA, sysB, r.m, {}, {}, {}, {}};
  }
  throw Error("rep_to_superchoi: unknown representation");
}

SuperChoi superchoi_from_realization(const ChannelChoi& pre,
                                     const ChannelChoi& post, int env_dim) {
  DYNRES_REQUIRE(env_dim >= 1, "superchoi_from_realization: env_dim >= 1");
  DYNRES_REQUIRE(pre.sys.out % env_dim == 0 && post.sys.in % env_dim == 0,
                 "superchoi_from_realization: dims do not chain");
  const int b0 = pre.sys.in;
  const int a0 = pre.sys.out / env_dim;
  const int a1 = post.sys.in / env_dim;
  const int b1 = post.sys.out;
  const int e = env_dim;

  // Q = (id_{A0} (x) post) o reorder o (id_{A1} (x) pre) : [A1, B0] -> [A0, B1].
  ChannelChoi step1 = tensor_channels(identity_channel(a1), pre);
  // output wires [A1, E, A0] -> [E, A1, A0]
  step1 = permute_channel_wires(step1, {a1 * b0}, {0}, {a1, e, a0}, {1, 0, 2});
  ChannelChoi step2 = tensor_channels(post, identity_channel(a0));
  // input wires of step2 are [E, A1, A0]; output [B1, A0] -> [A0, B1]
  ChannelChoi q = compose(step2, step1);
  q = permute_channel_wires(q, {a1 * b0}, {0}, {b1, a0}, {1, 0});

  // J^Q has layout [A1, B0, A0, B1]; move to [A0, A1, B0, B1].
  Mat j = permute_subsystems(q.J, {a1, b0, a0, b1}, {2, 0, 1, 3});
  return {{a0, a1}, {b0, b1}, hermitize(j), {}, {}, {}, {}};
}

Realization realize(const SuperChoi& theta, const Tolerances& tols) {
  SuperReport rep = validate_superchannel(theta, tols);
  DYNRES_REQUIRE(rep.pass, "realize: input is not a superchannel (" +
                               rep.message + ")");
  const int a0 = theta.sysA.in, a1 = theta.sysA.out;
  const int b0 = theta.sysB.in, b1 = theta.sysB.out;

  Mat m = partial_trace(theta.J, theta.layout(), {0, 2});  // J_{A0 B0}
  Purification p = purify(m, tols.rank_rel);
  const int r = p.env_dim;

  // V[(e,a), b] = psi[a, b, e] / sqrt(|A1|); isometric because
  // tr_{A0} J_{A0 B0} = |A1| I_{B0}.
  Mat v(r * a0, b0);
  const double inv = 1.0 / std::sqrt(static_cast<double>(a1));
  for (int e = 0; e < r; ++e)
    for (int a = 0; a < a0; ++a)
      for (int b = 0; b < b0; ++b)
        v(e * a0 + a, b) = p.psi((a * b0 + b) * r + e) * inv;
  // polish against roundoff
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  v = svd.matrixU() * svd.matrixV().adjoint();
  ChannelChoi pre = isometry_channel(v);

  // Recover the post-processing Choi by least squares over a Hermitian
  // operator basis: the map X -> superchoi(pre, X) is real linear and
  // injective on Herm(E A1 B1).
  const int dpost = r * a1 * b1;
  const int dtot = theta.dim();
  std::vector<Mat> basis;
  basis.reserve(dpost * dpost);
  const double s2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dpost; ++i)
    for (int j = i; j < dpost; ++j) {
      Mat h = Mat::Zero(dpost, dpost);
      if (i == j) {
        h(i, i) = 1.0;
        basis.push_back(h);
      } else {
        h(i, j) = s2;
        h(j, i) = s2;
        basis.push_back(h);
        Mat g = Mat::Zero(dpost, dpost);
        g(i, j) = Complex(0, -s2);
        g(j, i) = Complex(0, s2);
        basis.push_back(g);
      }
    }
  RMat t(2 * dtot * dtot, static_cast<int>(basis.size()));
  ChannelChoi probe{{r * a1, b1}, Mat(), {}, {}};
  for (size_t col = 0; col < basis.size(); ++col) {
    probe.J = basis[col];
    SuperChoi img = superchoi_from_realization(pre, probe, r);
    t.col(col) << img.J.reshaped().real(), img.J.reshaped().imag();
  }
  RVec rhs(2 * dtot * dtot);
  rhs << theta.J.reshaped().real(), theta.J.reshaped().imag();
  RVec x = t.completeOrthogonalDecomposition().solve(rhs);
  Mat jpost = Mat::Zero(dpost, dpost);
  for (size_t col = 0; col < basis.size(); ++col) jpost += x(col) * basis[col];
  // project onto the trace-preserving affine subspace
  Mat marg = partial_trace(jpost, {r * a1, b1}, {0});
  jpost -= kron(marg - Mat::Identity(r * a1, r * a1),
                Mat::Identity(b1, b1) / b1);
  ChannelChoi post{{r * a1, b1}, jpost, {}, {}};

  Realization out{r, v, pre, post};
  SuperChoi back = superchoi_from_realization(out);
  double err = max_abs(back.J - theta.J);
  DYNRES_REQUIRE(err <= tols.recompose,
                 "realize: recomposition residual " + std::to_string(err) +
                     " exceeds tolerance");
  return out;
}

Mat align_realizations(const Realization& r1, const Realization& r2,
                       const Tolerances& tols) {
  DYNRES_REQUIRE(r1.env_dim == r2.env_dim,
                 "align_realizations: environment dimensions differ");
  SuperChoi t1 = superchoi_from_realization(r1);
  SuperChoi t2 = superchoi_from_realization(r2);
  DYNRES_REQUIRE(t1.sysA == t2.sysA && t1.sysB == t2.sysB,
                 "align_realizations: system mismatch");
  DYNRES_REQUIRE(max_abs(t1.J - t2.J) <= tols.recompose,
                 "align_realizations: realizations describe different "
                 "superchannels");

  const int r = r1.env_dim;
  const int a0 = t1.sysA.in, b0 = t1.sysB.in;
  // Psi_i[e, (a,b)] ~ purification amplitudes carried by the isometries.
  auto purif_matrix = [&](const Mat& v) {
    Mat psi(r, a0 * b0);
    for (int e = 0; e < r; ++e)
      for (int a = 0; a < a0; ++a)
        for (int b = 0; b < b0; ++b) psi(e, a * b0 + b) = v(e * a0 + a, b);
    return psi;
  };
  Mat p1 = purif_matrix(r1.isometry), p2 = purif_matrix(r2.isometry);
  Mat g = p2 * p1.adjoint();
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU() * svd.matrixV().adjoint();

  // deterministic phase: largest entry real positive
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (std::abs(u(i, j)) > best) {
        best = std::abs(u(i, j));
        bi = i;
        bj = j;
      }
  Complex ph = u(bi, bj) / std::abs(u(bi, bj));
  u *= std::conj(ph);

  // contract check at the channel level
  Mat uv1 = kron(u, Mat::Identity(a0, a0)) * r1.isometry;
  ChannelChoi lhs = isometry_channel(uv1, 1e-6);
  DYNRES_REQUIRE(max_abs(lhs.J - r2.pre.J) <= 1e-6 * std::max(1.0, max_abs(r2.pre.J)),
                 "align_realizations: pre-processing alignment failed");
  return u;
}

SuperReport validate_superinstrument(const SuperInstrument& s,
                                     const Tolerances& tols) {
  DYNRES_REQUIRE(!s.elements.empty(), "superinstrument has no elements");
  const int d = s.sysA.dim() * s.sysB.dim();
  SuperReport rep;
  Mat sum = Mat::Zero(d, d);
  for (const Mat& jx : s.elements) {
    DYNRES_REQUIRE(jx.rows() == d && jx.cols() == d,
                   "superinstrument element dimension mismatch");
    if (herm_error(jx) > tols.herm) {
      rep.message = "element not Hermitian";
      return rep;
    }
    double me = min_eig(jx);
    rep.min_eig = std::min(rep.min_eig, me);
    if (me < -tols.psd_floor) {
      rep.message = "element not positive semidefinite";
      // keep going so the report carries the marginal data too
    }
    sum += jx;
  }
  SuperReport sum_rep = validate_superchannel(sum, s.sysA, s.sysB, tols);
  rep.marg1_err = sum_rep.marg1_err;
  rep.marg2_err = sum_rep.marg2_err;
  rep.pass = rep.min_eig >= -tols.psd_floor && sum_rep.pass;
  if (rep.message.empty())
    rep.message = rep.pass ? "ok" : "superinstrument conditions violated";
  return rep;
}

SuperChoi superinstrument_to_superchannel(const SuperInstrument& s,
                                          const Tolerances& tols) {
  SuperReport rep = validate_superinstrument(s, tols);
  DYNRES_REQUIRE(rep.pass, "superinstrument_to_superchannel: invalid "
                           "instrument (" + rep.message + ")");
  const int nx = static_cast<int>(s.elements.size());
  const int d = s.sysA.dim() * s.sysB.dim();
  Mat j = Mat::Zero(d * nx, d * nx);
  for (int x = 0; x < nx; ++x) {
    Mat exx = Mat::Zero(nx, nx);
    exx(x, x) = 1.0;
    j += kron(s.elements[x], exx);
  }
  // classical flag extends B1: layout [A0, A1, B0, B1 * X]
  return {s.sysA, {s.sysB.in, s.sysB.out * nx}, j, {}, {}, {}, {}};
}

SuperChoi identity_superchoi(SystemPair a) {
  ChannelChoi pre = identity_channel(a.in);
  ChannelChoi post = identity_channel(a.out);
  return superchoi_from_realization(pre, post, 1);
}

SuperChoi replacement_superchoi(SystemPair a, const ChannelChoi& m) {
  Mat j = kron(Mat::Identity(a.dim(), a.dim()), m.J) / a.in;
  return {a, m.sys, j, {}, {}, m.in_split, m.out_split};
}

Realization random_realization(std::uint64_t seed, SystemPair sysA,
                               SystemPair sysB, int env_dim) {
  if (env_dim < 1) env_dim = sysB.in;  // generic choice
  while (env_dim * sysA.in < sysB.in) ++env_dim;  // isometry must exist
  Rng rng(seed);
  Mat v = rng.haar_isometry(env_dim * sysA.in, sysB.in);
  ChannelChoi pre = isometry_channel(v);
  ChannelChoi post =
      random_channel(rng.next_seed(), {env_dim * sysA.out, sysB.out}, 2);
  return {env_dim, v, pre, post};
}

SuperChoi random_superchoi(std::uint64_t seed, SystemPair sysA,
                           SystemPair sysB, int env_dim) {
  return superchoi_from_realization(random_realization(seed, sysA, sysB, env_dim));
}

}  // namespace dynres
