#pragma once

#include <optional>
#include <vector>

#include "sov/fusion.hpp"
#include "sov/monodromy.hpp"

namespace sov {

struct SingularY : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// b_{w^k(x), H (x) dressing} as a covector over the constituent slots w
// (w[j] at point x q^{-2(k-1-j)}); k = w.size(); k = 0 gives the identity on
// H and the dressing slots
OpTensor b_fused(const Model& m, const Scalar& x, const std::vector<Space>& w, const std::vector<Space>& dressing);

// dressing list equivalent to H (x) w^k(z) with w given by its constituent slots
std::vector<Space> dress_by_fused(const std::vector<Space>& w);

// true iff the covector part of b lies in the image of the projector on w
bool lies_in_projector_image(const OpTensor& b, const FusedModule& w);

Mat to_end_H(const Model& m, const OpTensor& t);

Mat build_B(const Model& m, const Scalar& x);

struct Separator {
    std::vector<Scalar> xi;  // covector on v, N-1 entries
    Mat Y, X;
    std::optional<Mat> D;  // Y^{-1} X when Y is invertible
};
Separator build_separator(const Model& m, const std::vector<Scalar>& xi, const Scalar& x);

// b(x) d(x)^k b_{w^l(xq^{-2}), H (x) v(x)}; vanishes for k < l.  With `at` set,
// the inner fused operator is taken at that point instead of x q^{-2}.
OpTensor vanishing_product(const Model& m, int k, int l, const Scalar& x, std::optional<Scalar> at = std::nullopt);

struct ExchangeSides {
    OpTensor lhs, rhs;
};
// chi_{k,l}(x,y) b_{w^k(x)} b_{w^l(y),H(x)w^k(x)}  vs
// chi_{l,k}(y,x) psi_{l,k}(y,x) b_{w^l(y)} b_{w^k(x),H(x)w^l(y)} r_{w^l(y),w^k(x)}
ExchangeSides fused_b_exchange(const Model& m, int k, int l, const Scalar& x, const Scalar& y);

// b_{w^k(x),H(x)w^{N-1}(y)} restricted to the top line, divided by b_{w^k(x)}:
// returns the residual against c * b_{w^k(x)} with c = q^{k(k+1)} phi_k(x,y)
OpTensor top_dressing_residual(const Model& m, int k, const Scalar& x, const Scalar& y);

// residual of b_{w^k(x),H(x)v(y)} r_{v(y),w^k(x)} d(y) - c d(y) b_{w^k(x),H(x)v(y)};
// returns whether it factors as U b(y) exactly
struct FactorResult {
    bool consistent;
    bool residual_zero;
};
FactorResult db_residual_factorization(const Model& m, int k, const Scalar& x, const Scalar& y, const Scalar& c);

// B(x) D(y) - (xq - yq^{-1})/(x - y) D(y) B(x), exact
Mat bd_exchange_residual(const Model& m, const std::vector<Scalar>& xi, const Scalar& x, const Scalar& y);

}  // namespace sov
