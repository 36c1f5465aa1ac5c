// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_SUPERMAP_HPP
#define DYNRES_SUPERMAP_HPP

#include <string>
#include <vector>

#include "dynres/channel.hpp"

namespace dynres {

//=========================================================================
// Superchannels as Choi matrices
//
// A supermap Theta: (A0 -> A1) channels to (B0 -> B1) channels is stored
// through its Choi matrix J on [A0, A1, B0, B1]. Theta is a superchannel
// iff J >= 0 with marginals J_{A1 B0} = I and J_{A B0} = J_{A0 B0} (x) u_{A1};
// equivalently it is realizable as post o (N (x) id_E) o pre with an isometry
// pre-processing.
//=========================================================================

struct SuperChoi {
  SystemPair sysA;  // slot system
  SystemPair sysB;  // outer system
  Mat J;            // on [A0, A1, B0, B1]

  // Bipartition metadata for the PPT theory (optional).
  FactorSplit a0, a1, b0, b1;

  Dims layout() const {
    return {sysA.in, sysA.out, sysB.in, sysB.out};
  }
  int dim() const { return sysA.dim() * sysB.dim(); }
  // Refined layout and the beta factor indices inside it.
  Dims fine_layout() const;
  std::vector<int> beta_factors() const;
};

struct SuperReport {
  double min_eig = 0.0;
  double marg1_err = 0.0;  // || J_{A1 B0} - I ||_max
  double marg2_err = 0.0;  // || J_{A B0} - J_{A0 B0} (x) u_{A1} ||_max
  bool pass = false;
  std::string message;
};

// Pre-processing isometry B0 -> E (x) A0 plus post-processing E A1 -> B1.
struct Realization {
  int env_dim = 1;
  Mat isometry;      // (env * a0) x b0, output layout [E, A0]
  ChannelChoi pre;   // the isometry as a channel
  ChannelChoi post;  // (E A1) -> B1, input layout [E, A1]
};

struct SuperInstrument {
  SystemPair sysA, sysB;
  std::vector<Mat> elements;  // Choi matrices on [A0, A1, B0, B1]
};

enum class SupermapRep { P, Q, R };

struct RepMatrix {
  SupermapRep rep;
  Mat m;
  Dims dims;          // subsystem layout of m
  SystemPair in_sys;  // the channel reading: in/out of the representation
  SystemPair out_sys;
};

//-------------------------------------------------------------------------

SuperReport validate_superchannel(const Mat& j, SystemPair sysA,
                                  SystemPair sysB,
                                  const Tolerances& tols = default_tols());
inline SuperReport validate_superchannel(const SuperChoi& t,
                                         const Tolerances& tols = default_tols()) {
  return validate_superchannel(t.J, t.sysA, t.sysB, tols);
}

// Theta[N]: Choi matrix tr_A[ J ((J^N)^T (x) I_B) ].
ChannelChoi apply_superchannel(const SuperChoi& theta, const ChannelChoi& n);

// The three representations; P and Q are exact subsystem permutations of J.
RepMatrix rep_convert(const SuperChoi& theta, SupermapRep rep);
SuperChoi rep_to_superchoi(const RepMatrix& r, SystemPair sysA, SystemPair sysB);

// Assemble the Choi matrix realized by (pre, post) with memory dimension
// env_dim. pre must be an isometry channel B0 -> [E, A0] when used for
// minimal realizations, but any channel is accepted here.
SuperChoi superchoi_from_realization(const ChannelChoi& pre,
                                     const ChannelChoi& post, int env_dim);
inline SuperChoi superchoi_from_realization(const Realization& r) {
  return superchoi_from_realization(r.pre, r.post, r.env_dim);
}

// Minimal realization: env_dim = rank(J_{A0 B0}), pre an isometry whose
// image purifies J_{A0 B0}, post recovered by least squares on the Choi
// matching system. Throws if the input fails validate_superchannel or the
// recomposition residual exceeds tols.recompose.
Realization realize(const SuperChoi& theta,
                    const Tolerances& tols = default_tols());

// Unitary on E aligning two minimal realizations of the same superchannel:
// pre2 = (U (x) I) o pre1 and post2 = post1 o (U^dagger (x) I) as channels.
// The phase of U is fixed by making its largest entry real positive.
Mat align_realizations(const Realization& r1, const Realization& r2,
                       const Tolerances& tols = default_tols());

SuperReport validate_superinstrument(const SuperInstrument& s,
                                     const Tolerances& tols = default_tols());

// Flag the outcome on a classical register: Theta_{A -> B X} =
// sum_x Theta_x (x) |x><x|_X with |X0| = 1.
SuperChoi superinstrument_to_superchannel(const SuperInstrument& s,
                                          const Tolerances& tols = default_tols());

//-------------------------------------------------------------------------
// Stock superchannels and samplers
//-------------------------------------------------------------------------

SuperChoi identity_superchoi(SystemPair a);

// Replace the input channel by the fixed channel m: J = I_A (x) J^m / |A0|.
SuperChoi replacement_superchoi(SystemPair a, const ChannelChoi& m);

// Random realization: Haar isometry pre-processing with memory `env_dim`
// (clamped up so the isometry exists) and a random post-processing channel.
Realization random_realization(std::uint64_t seed, SystemPair sysA,
                               SystemPair sysB, int env_dim = 0);
SuperChoi random_superchoi(std::uint64_t seed, SystemPair sysA,
                           SystemPair sysB, int env_dim = 0);

}  // namespace dynres

#endif
