#include "doctest.h"
#include "sov/exactnum.hpp"
#include "sov/fusion.hpp"

#include <random>

using namespace sov;

namespace {
const QParam Q(frac(7, 5));
}

TEST_CASE("p^1 is the identity") {
    FusedModule w = fused_module("p", 1, 3, 2, Q);
    CHECK(w.projector == Mat::identity(2));
}

TEST_CASE("ranks of the q-antisymmetrizers") {
    CHECK(rank(fused_module("p", 2, 3, 2, Q).projector) == 1);
    CHECK(rank(fused_module("p", 3, 3, 2, Q).projector) == 0);
    CHECK(rank(fused_module("p", 2, 3, 3, Q).projector) == 3);
    CHECK(rank(fused_module("p", 3, 3, 3, Q).projector) == 1);
    CHECK(rank(fused_module("p", 4, 3, 3, Q).projector) == 0);
}

TEST_CASE("p^k is idempotent and independent of the point") {
    for (int k = 2; k <= 3; ++k) {
        FusedModule w = fused_module("p", k, frac(5, 3), 3, Q);
        CHECK(w.projector * w.projector == w.projector);
        auto a = antisymmetrizer_raw(fused_slots("u", k, 2, 3, Q), Q).to_matrix(names_of(fused_slots("u", k, 2, 3, Q)),
                                                                               names_of(fused_slots("u", k, 2, 3, Q)));
        auto b = antisymmetrizer_raw(fused_slots("u", k, 9, 3, Q), Q).to_matrix(names_of(fused_slots("u", k, 9, 3, Q)),
                                                                               names_of(fused_slots("u", k, 9, 3, Q)));
        CHECK(a == b);
        CHECK(w.dual * w.basis == Mat::identity(w.dim()));
        CHECK(w.basis * w.dual == w.projector);
    }
}

TEST_CASE("k=1 fused R is the vector R") {
    Space v = Space::vector("v", 2, 5);
    auto w = fused_slots("w", 1, 3, 2, Q);
    CHECK(fused_r_vw(v, w, Q) == r_trig(v, w[0], Q));
}

TEST_CASE("top module scalarity") {
    Scalar x = frac(11, 6), y = frac(5, 3);
    for (int N : {2, 3, 4}) {
        int M = N - 1;
        FusedModule wx = fused_module("x", M, x, M, Q);
        for (int l = 1; l <= M; ++l) {
            FusedModule wy = fused_module("y", l, y, M, Q);
            Mat r = restrict_fused_r(fused_r_ww(wy.slots, wx.slots, Q), {&wy, &wx}, Q);
            CHECK(r == rho(l, y, x, N, Q) * Mat::identity(r.rows));
        }
    }
}

TEST_CASE("top module vectors") {
    TopModule t2 = top_module("t", 2, 3, Q);
    CHECK(t2.mod.dim() == 1);
    CHECK((t2.lambda * t2.u) == OpTensor::scalar(1));
    TopModule t3 = top_module("t", 3, 3, Q);
    Mat u = t3.u.to_matrix(names_of(t3.mod.slots), {});
    // only e1(x)e2 and e2(x)e1 appear, with a q-dependent ratio
    for (size_t i = 0; i < 4; ++i)
        if (i != 1 && i != 2) CHECK(u(i, 0) == 0);
    CHECK(u(1, 0) != 0);
    CHECK(u(2, 0) != 0);
    CHECK(u(1, 0) != u(2, 0));
    CHECK(u(1, 0) != -u(2, 0));
    CHECK((t3.lambda * t3.u) == OpTensor::scalar(1));
}

TEST_CASE("fused Yang-Baxter on the projector image") {
    int M = 2;
    FusedModule w = fused_module("w", 2, frac(7, 2), M, Q);
    Space a = Space::vector("a", M, 3), b = Space::vector("b", M, frac(17, 3));
    OpTensor P = projector_tensor(w);
    OpTensor lhs = P * r_trig(a, b, Q) * fused_r_vw(a, w.slots, Q) * fused_r_vw(b, w.slots, Q);
    OpTensor rhs = P * fused_r_vw(b, w.slots, Q) * fused_r_vw(a, w.slots, Q) * r_trig(a, b, Q);
    CHECK(lhs == rhs);
}
