// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_COMB_HPP
#define DYNRES_COMB_HPP

#include <string>
#include <vector>

#include "dynres/supermap.hpp"

namespace dynres {

//=========================================================================
// Quantum combs
//
// An n-slot comb maps n causally ordered channels to one channel. It is
// stored through the Choi matrix of its realizing chain
// Q = E_{n+1} o ... o E_1, a channel [C0, A1^1..A1^n] -> [A0^1..A0^n, C1].
// Choi layout is fixed as [C0, A0^1, A1^1, ..., A0^n, A1^n, C1].
//
// Chain wiring conventions for comb_from_channels (n + 1 links, n memories):
//   link 0          : C0              -> [A0^1, M_0]
//   link k (middle) : [M_{k-1}, A1^k] -> [A0^{k+1}, M_k]
//   link n          : [M_{n-1}, A1^n] -> C1
//=========================================================================

struct CombChoi {
  std::vector<SystemPair> teeth;  // the n slots, causal order
  SystemPair io;                  // (C0, C1)
  Mat J;

  int slots() const { return static_cast<int>(teeth.size()); }
  Dims layout() const;
  int dim() const { return dims_product(layout()); }
};

struct CombReport {
  double min_eig = 0.0;
  std::vector<double> marginal_errs;  // one per causal level, top down
  bool pass = false;
  std::string message;
};

// Contract a chain of channels into a comb Choi matrix.
CombChoi comb_from_channels(const std::vector<ChannelChoi>& links,
                            const Dims& memory_dims);

// PSD plus the nested causal marginal equalities. Supported for n <= 2;
// larger n throws an "unsupported n" error.
CombReport validate_comb(const CombChoi& c,
                         const Tolerances& tols = default_tols());

// C[N_1, ..., N_n]: contract each channel into its slot, left to right.
ChannelChoi comb_apply(const CombChoi& c,
                       const std::vector<ChannelChoi>& channels);

// One-slot combs are superchannels up to a subsystem permutation.
SuperChoi comb_to_superchoi(const CombChoi& c);
CombChoi superchoi_to_comb(const SuperChoi& t);

}  // namespace dynres

#endif
