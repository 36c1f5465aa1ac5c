// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "dynres/comb.hpp"

namespace dynres {

Dims CombChoi::layout() const {
  Dims d{io.in};
  for (const SystemPair& t : teeth) {
    d.push_back(t.in);
    d.push_back(t.out);
  }
  d.push_back(io.out);
  return d;
}

CombChoi comb_from_channels(const std::vector<ChannelChoi>& links,
                            const Dims& memory_dims) {
  const int n = static_cast<int>(memory_dims.size());
  DYNRES_REQUIRE(static_cast<int>(links.size()) == n + 1,
                 "comb_from_channels: need n+1 links for n memories");
  DYNRES_REQUIRE(n >= 1, "comb_from_channels: need at least one slot");

  // Derive slot dimensions from the wiring.
  std::vector<SystemPair> teeth(n);
  const int c0 = links[0].sys.in;
  DYNRES_REQUIRE(links[0].sys.out % memory_dims[0] == 0,
                 "comb_from_channels: link 0 output does not factor");
  teeth[0].in = links[0].sys.out / memory_dims[0];
  for (int k = 1; k < n; ++k) {
    DYNRES_REQUIRE(links[k].sys.in % memory_dims[k - 1] == 0,
                   "comb_from_channels: link input does not factor");
    teeth[k - 1].out = links[k].sys.in / memory_dims[k - 1];
    DYNRES_REQUIRE(links[k].sys.out % memory_dims[k] == 0,
                   "comb_from_channels: link output does not factor");
    teeth[k].in = links[k].sys.out / memory_dims[k];
  }
  DYNRES_REQUIRE(links[n].sys.in % memory_dims[n - 1] == 0,
                 "comb_from_channels: last link input does not factor");
  teeth[n - 1].out = links[n].sys.in / memory_dims[n - 1];
  const int c1 = links[n].sys.out;
  for (const SystemPair& t : teeth)
    DYNRES_REQUIRE(t.in >= 1 && t.out >= 1, "comb_from_channels: bad wiring");

  // Build Q = link_n o ... o link_0 with identity padding. The invariant
  // after applying link k-1 is output wires [A0^1..A0^k, M_{k-1}, A1^k..A1^n],
  // so each link applies without any wire permutation.
  auto id_of = [](int d) { return identity_channel(d); };
  int a1_rest = 1;
  for (int k = 0; k < n; ++k) a1_rest *= teeth[k].out;
  ChannelChoi cur = tensor_channels(links[0], id_of(a1_rest));
  for (int k = 1; k <= n; ++k) {
    int a0_done = 1;
    for (int j = 0; j < k; ++j) a0_done *= teeth[j].in;
    int tail = 1;
    for (int j = k; j < n; ++j) tail *= teeth[j].out;
    ChannelChoi big = tensor_channels(id_of(a0_done), links[k]);
    if (tail > 1) big = tensor_channels(big, id_of(tail));
    cur = compose(big, cur);
  }

  // cur: [C0, A1^1..A1^n] -> [A0^1..A0^n, C1]; reorder the Choi matrix into
  // the comb layout [C0, A0^1, A1^1, ..., C1].
  Dims q_layout{c0};
  for (int k = 0; k < n; ++k) q_layout.push_back(teeth[k].out);
  for (int k = 0; k < n; ++k) q_layout.push_back(teeth[k].in);
  q_layout.push_back(c1);
  std::vector<int> perm{0};
  for (int k = 1; k <= n; ++k) {
    perm.push_back(n + k);  // A0^k
    perm.push_back(k);      // A1^k
  }
  perm.push_back(2 * n + 1);
  Mat j = permute_subsystems(cur.J, q_layout, perm);
  return {teeth, {c0, c1}, hermitize(j)};
}

CombReport validate_comb(const CombChoi& c, const Tolerances& tols) {
  const int n = c.slots();
  DYNRES_REQUIRE(n >= 1, "validate_comb: empty comb");
  DYNRES_REQUIRE(n <= 2, "validate_comb: unsupported n (only n <= 2)");
  const Dims layout = c.layout();
  DYNRES_REQUIRE(dims_product(layout) == c.J.rows(),
                 "validate_comb: dimension mismatch");

  CombReport rep;
  if (herm_error(c.J) > tols.herm) {
    rep.message = "not Hermitian";
    return rep;
  }
  rep.min_eig = min_eig(c.J);

  // Causal teeth of the realizing chain: (C0 -> A0^1), (A1^k -> A0^{k+1}),
  // (A1^n -> C1). Peel from the last tooth: tracing its output must leave
  // a tensor factor u on its input.
  Mat cur = c.J;
  Dims dims = layout;
  bool ok = rep.min_eig >= -tols.psd_floor;
  for (int level = n; level >= 0; --level) {
    const int out_idx = 2 * level + 1;
    const int in_idx = 2 * level;
    std::vector<int> keep_wo_out;
    for (int k = 0; k < out_idx; ++k) keep_wo_out.push_back(k);
    Mat x = partial_trace(cur, dims, keep_wo_out);
    Dims xdims(dims.begin(), dims.begin() + out_idx);
    if (level > 0) {
      std::vector<int> keep_wo_in;
      for (int k = 0; k < in_idx; ++k) keep_wo_in.push_back(k);
      Mat y = partial_trace(x, xdims, keep_wo_in);
      Mat expect = kron(y / dims[in_idx],
                        Mat::Identity(dims[in_idx], dims[in_idx]));
      double err = max_abs(x - expect);
      rep.marginal_errs.push_back(err);
      ok = ok && err <= tols.eq;
      cur = y / dims[in_idx];  // the peeled comb J^{(level-1)}
      dims = Dims(xdims.begin(), xdims.begin() + in_idx);
    } else {
      // innermost level: tr_{A0^1} J^{(1)} = I_{C0}
      double err = max_abs(x - Mat::Identity(dims[0], dims[0]));
      rep.marginal_errs.push_back(err);
      ok = ok && err <= tols.eq;
    }
  }
  rep.pass = ok;
  rep.message = ok ? "ok" : "comb conditions violated";
  return rep;
}

ChannelChoi comb_apply(const CombChoi& c,
                       const std::vector<ChannelChoi>& channels) {
  const int n = c.slots();
  DYNRES_REQUIRE(static_cast<int>(channels.size()) == n,
                 "comb_apply: wrong number of channels");
  for (int k = 0; k < n; ++k)
    DYNRES_REQUIRE(channels[k].sys == c.teeth[k],
                   "comb_apply: channel does not fit slot " + std::to_string(k));

  Mat j = c.J;
  Dims dims = c.layout();
  // Contract the last slot first so earlier subsystem indices stay put.
  for (int k = n - 1; k >= 0; --k) {
    const int in_idx = 2 * k + 1;
    int before = 1, after = 1;
    for (int s = 0; s < in_idx; ++s) before *= dims[s];
    for (size_t s = in_idx + 2; s < dims.size(); ++s) after *= dims[s];
    Mat big = kron(kron(Mat::Identity(before, before),
                        channels[k].J.transpose()),
                   Mat::Identity(after, after));
    std::vector<int> keep;
    for (size_t s = 0; s < dims.size(); ++s)
      if (s != static_cast<size_t>(in_idx) &&
          s != static_cast<size_t>(in_idx + 1))
        keep.push_back(static_cast<int>(s));
    j = partial_trace(j * big, dims, keep);
    Dims nd;
    for (int s : keep) nd.push_back(dims[s]);
    dims = nd;
  }
  return {c.io, hermitize(j), {}, {}};
}

SuperChoi comb_to_superchoi(const CombChoi& c) {
  DYNRES_REQUIRE(c.slots() == 1, "comb_to_superchoi: need a 1-slot comb");
  Mat j = permute_subsystems(c.J, c.layout(), {1, 2, 0, 3});
  return {c.teeth[0], c.io, j, {}, {}, {}, {}};
}

CombChoi superchoi_to_comb(const SuperChoi& t) {
  Mat j = permute_subsystems(t.J, t.layout(), {2, 0, 1, 3});
  return {{t.sysA}, t.sysB, j};
}

}  // namespace dynres
