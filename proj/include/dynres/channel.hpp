// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_CHANNEL_HPP
#define DYNRES_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynres/common.hpp"
#include "dynres/tensor.hpp"

namespace dynres {

//=========================================================================
// Systems and channels in the Choi picture
//
// Every dynamical system is a pair A = (A0, A1) of input and output
// subsystems; a static resource simply has |A0| = 1. Choi matrices use the
// unnormalized maximally entangled state, so a channel Choi matrix J
// satisfies J >= 0 and tr_{A1} J = I_{A0}. Layout is always [A0, A1],
// row-major Kronecker.
//=========================================================================

struct SystemPair {
  int in = 1;   // |A0|
  int out = 1;  // |A1|

  int dim() const { return in * out; }
  bool operator==(const SystemPair& o) const {
    return in == o.in && out == o.out;
  }
};

// Tensor-factor split of one subsystem, with the factors held by the
// transposed party (beta) singled out. Used by the PPT theory instance;
// channels without entanglement structure leave it at the default.
struct FactorSplit {
  Dims factors;            // empty: one factor of the full dimension
  std::vector<int> beta;   // indices into `factors` on the beta side

  FactorSplit() = default;
  FactorSplit(Dims f, std::vector<int> b)
      : factors(std::move(f)), beta(std::move(b)) {}

  FactorSplit normalized(int dim) const;
  bool trivial() const { return beta.empty(); }
};

struct ChannelChoi {
  SystemPair sys;
  Mat J;                 // on [A0, A1]
  FactorSplit in_split;  // bipartition metadata of A0 (optional)
  FactorSplit out_split; // bipartition metadata of A1 (optional)

  Dims layout() const { return {sys.in, sys.out}; }
  // Refined layout [A0 factors..., A1 factors...] and the beta indices in it.
  Dims fine_layout() const;
  std::vector<int> beta_factors() const;
};

struct ChannelReport {
  double min_eig = 0.0;   // smallest eigenvalue of J
  double tp_err = 0.0;    // || tr_{A1} J - I ||_max
  bool pass = false;
  std::string message;
};

struct Purification {
  Vec psi;      // on [dim, env], row-major
  int env_dim;  // number of retained eigenvalues
};

//-------------------------------------------------------------------------
// Construction
//-------------------------------------------------------------------------

// J = sum_i |i><j| (x) N(|i><j|) from a Kraus set; throws if not
// trace preserving within `tp_tol`.
ChannelChoi choi_from_kraus(const std::vector<Mat>& kraus, SystemPair sys,
                            double tp_tol = default_tols().eq);

// Kraus operators of a channel Choi matrix (eigendecomposition).
std::vector<Mat> kraus_from_choi(const ChannelChoi& n,
                                 double tol = default_tols().rank_rel);

ChannelChoi identity_channel(int d);

// Discard the input and prepare `state` (trace-1 density matrix).
ChannelChoi replacement_channel(int d_in, const Mat& state);

// Replacement by the maximally mixed state.
ChannelChoi completely_depolarizing(int d_in, int d_out);

// Qubit depolarizing channel: rho -> (1-p) rho + p u.
ChannelChoi depolarizing_qubit(double p);

// |A0| = 1 channel preparing `state`.
ChannelChoi preparation_channel(const Mat& state);

// Channel rho -> V rho V^dagger for an isometry V (V^dagger V = I).
ChannelChoi isometry_channel(const Mat& v, double tol = default_tols().eq);

// Left inverse of an isometry channel: sigma -> V^dagger sigma V +
// tr[(I - V V^dagger) sigma] tau. Composing with the isometry channel gives
// the identity for every density matrix tau.
ChannelChoi isometry_left_inverse(const Mat& v, const Mat& tau,
                                  double tol = default_tols().eq);

// Haar-random channel via a Stinespring isometry with environment dimension
// `env_dim`; deterministic in `seed`.
ChannelChoi random_channel(std::uint64_t seed, SystemPair sys, int env_dim);

//-------------------------------------------------------------------------
// Calculus
//-------------------------------------------------------------------------

// rho' = tr_{A0}[ J (rho^T (x) I) ].
Mat apply_channel(const ChannelChoi& n, const Mat& rho);

// Choi matrix of `second` after `first` (link contraction over the shared
// system).
ChannelChoi compose(const ChannelChoi& second, const ChannelChoi& first);

// a (x) b with inputs [a.in, b.in] and outputs [a.out, b.out]; bipartition
// metadata is concatenated.
ChannelChoi tensor_channels(const ChannelChoi& a, const ChannelChoi& b);

// Reorder the tensor factors of the input/output wires. `in_dims`/`out_dims`
// refine sys.in/sys.out; perms follow permute_subsystems conventions.
ChannelChoi permute_channel_wires(const ChannelChoi& n, const Dims& in_dims,
                                  const std::vector<int>& in_perm,
                                  const Dims& out_dims,
                                  const std::vector<int>& out_perm);

ChannelReport validate_channel(const Mat& j, SystemPair sys,
                               const Tolerances& tols = default_tols());
inline ChannelReport validate_channel(const ChannelChoi& n,
                                      const Tolerances& tols = default_tols()) {
  return validate_channel(n.J, n.sys, tols);
}

// Purify a PSD matrix; keeps eigenvalues above rank_tol * lambda_max.
Purification purify(const Mat& rho, double rank_tol = default_tols().rank_rel);

bool is_density(const Mat& rho, const Tolerances& tols = default_tols());

}  // namespace dynres

#endif
