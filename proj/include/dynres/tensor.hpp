// Copyright 2026 the dynres authors
//
// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#ifndef DYNRES_TENSOR_HPP
#define DYNRES_TENSOR_HPP

#include "dynres/common.hpp"

namespace dynres {

//=========================================================================
// Multipartite index bookkeeping
//
// A matrix on a tensor product carries a dims layout [d1,...,dk]; the row
// index decomposes row-major as i = ((i1*d2 + i2)*d3 + ...) + ik.
//=========================================================================

// Row strides for a row-major layout.
std::vector<int> layout_strides(const Dims& dims);

// Kronecker product with row-major convention: (A kron B)[(i,j),(k,l)].
Mat kron(const Mat& a, const Mat& b);

Mat kron(const std::vector<Mat>& factors);

// Trace out every subsystem not listed in `keep`; kept subsystems stay in
// their original relative order.
Mat partial_trace(const Mat& m, const Dims& dims, const std::vector<int>& keep);

// Transpose the subsystems listed in `subset`, leave the rest untouched.
Mat partial_transpose(const Mat& m, const Dims& dims,
                      const std::vector<int>& subset);

// Reorder subsystems: perm[k] is the index (in the old layout) of the
// subsystem that lands in slot k of the new layout.
Mat permute_subsystems(const Mat& m, const Dims& dims,
                       const std::vector<int>& perm);

Dims select_dims(const Dims& dims, const std::vector<int>& idx);

// Unnormalized maximally entangled |phi+> = sum_i |ii> on d (x) d.
Vec phi_plus_vec(int d);
Mat phi_plus(int d);  // |phi+><phi+|, trace d

// Vector on H_A (x) H_E as a |A| x |E| matrix of amplitudes (row-major).
Mat vec_as_matrix(const Vec& v, int dim_a, int dim_e);

}  // namespace dynres

#endif
