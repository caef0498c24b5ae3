#pragma once

#include <string>
#include <vector>

#include "sov/rmatrix.hpp"

namespace sov {

struct NonProjector : std::logic_error {
    using std::logic_error::logic_error;
};
struct ProjectorLeak : std::logic_error {
    using std::logic_error::logic_error;
};

// constituent slots prefix1..prefixk of v(xq^{-2(k-1)}) (x) ... (x) v(x), each of dim M
std::vector<Space> fused_slots(const std::string& prefix, int k, const Scalar& x, int M, const QParam& q);
std::vector<std::string> names_of(const std::vector<Space>& s);

// the recurrence for p^k evaluated on the given slots, without rescaling
OpTensor antisymmetrizer_raw(const std::vector<Space>& slots, const QParam& q);

struct FusedModule {
    int k = 0, M = 0;
    std::vector<Space> slots;
    Scalar scale;        // raw p^k squares to scale * raw p^k
    Mat projector;       // idempotent, on (x) slots, rows and columns lexicographic
    Mat basis;           // columns span the image; reduced column echelon form
    Mat dual;            // dual * basis = 1, basis * dual = projector
    size_t dim() const { return basis.cols; }
};

// p^k at the slots' points; throws NonProjector if p^2 is not proportional to p
// or if the recurrence depends on x
FusedModule fused_module(const std::string& prefix, int k, const Scalar& x, int M, const QParam& q);

OpTensor projector_tensor(const FusedModule& w);

// r_{v(y), w^k(x)} on constituent slots: r(v, w_k) ... r(v, w_1)
OpTensor fused_r_vw(const Space& v, const std::vector<Space>& w, const QParam& q);
// r_{w^l(y), w^k(x)}: product over a = 1..l of r(y_a, x_k) ... r(y_a, x_1)
OpTensor fused_r_ww(const std::vector<Space>& wy, const std::vector<Space>& wx, const QParam& q);
// restriction dual * r * basis of a fused R; throws ProjectorLeak unless P r P = P r
Mat restrict_fused_r(const OpTensor& r, const std::vector<const FusedModule*>& mods, const QParam& q);

// w^{M}(x) for M = N-1 is one-dimensional: its normalized vector and the dual functional
struct TopModule {
    FusedModule mod;
    OpTensor u;       // output slots on mod.slots
    OpTensor lambda;  // input slots on mod.slots
};
TopModule top_module(const std::string& prefix, int N, const Scalar& x, const QParam& q);

}  // namespace sov
