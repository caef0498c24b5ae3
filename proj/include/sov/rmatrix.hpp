#pragma once

#include "sov/exactnum.hpp"
#include "sov/linalg.hpp"
#include "sov/tensor.hpp"

namespace sov {

// M^2 x M^2 matrices with row index (i,j) -> i*M + j, first factor slow
Mat r12_constant(int M, const QParam& q);
Mat r21_inverse(int M, const QParam& q);
Mat flip(int M);
Mat r_trig_matrix(const Scalar& x, const Scalar& y, int M, const QParam& q);

// x R12(q) - y R21(q)^{-1} on (a, b), evaluated at the spaces' own points
OpTensor r_trig(const Space& a, const Space& b, const QParam& q);
// explicit spectral parameters, for slots whose point is not the one to use
OpTensor r_trig(const Space& a, const Space& b, const Scalar& x, const Scalar& y, const QParam& q);
OpTensor r_constant(const Space& a, const Space& b, const QParam& q);

// canonical pairing sum_j e_j^* (x) e_j: input slot on `dual`, output on `target`
OpTensor s_matrix(const Space& dual, const Space& target);

}  // namespace sov
