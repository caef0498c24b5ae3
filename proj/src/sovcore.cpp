#include "sov/sovcore.hpp"

namespace sov {

OpTensor b_fused(const Model& m, const Scalar& x, const std::vector<Space>& w, const std::vector<Space>& dressing) {
    size_t k = w.size();
    if (k == 0) {
        std::vector<Space> all = m.H();
        all.insert(all.end(), dressing.begin(), dressing.end());
        return OpTensor::identity(all);
    }
    if (w.back().point != x) throw EvaluationPointMismatch("last fused slot must sit at x");
    auto bd = m.bd(x, w.back().name, dressing);
    OpTensor c = bd.b;
    for (size_t i = 1; i < k; ++i) c = c * bd.d;
    if (k == 1) return c;
    std::vector<Space> inner_dress = dressing;
    inner_dress.push_back(w.back());
    std::vector<Space> inner_w(w.begin(), w.end() - 1);
    OpTensor inner = b_fused(m, x * m.q().pow(-2), inner_w, inner_dress);
    OpTensor r = c * inner;
    long e = static_cast<long>(k * (k - 1) / 2);
    r *= pow(x, -e);
    return r;
}

std::vector<Space> dress_by_fused(const std::vector<Space>& w) { return {w.rbegin(), w.rend()}; }

bool lies_in_projector_image(const OpTensor& b, const FusedModule& w) {
    // b P = b on the covector slots
    OpTensor P = projector_tensor(w);
    return b * P == b;
}

Mat to_end_H(const Model& m, const OpTensor& t) {
    auto n = m.H_names();
    return t.to_matrix(n, n);
}

Mat build_B(const Model& m, const Scalar& x) {
    TopModule top = top_module("t", m.N(), x, m.q());
    return to_end_H(m, b_fused(m, x, top.mod.slots, {}) * top.u);
}

Separator build_separator(const Model& m, const std::vector<Scalar>& xi, const Scalar& x) {
    int N = m.N();
    if (static_cast<int>(xi.size()) != N - 1) throw std::invalid_argument("xi needs N-1 entries");
    TopModule top = top_module("t", N, x, m.q());
    const Space& vx = top.mod.slots.back();
    std::vector<Space> inner_w(top.mod.slots.begin(), top.mod.slots.end() - 1);
    OpTensor inner = b_fused(m, x * m.q().pow(-2), inner_w, {vx});
    Mat row(1, N - 1);
    for (int i = 0; i < N - 1; ++i) row(0, i) = xi[i];
    OpTensor Xi = OpTensor::from_matrix({}, {vx}, row);
    auto bd = m.bd(x, vx.name, {});
    Separator s;
    s.xi = xi;
    s.Y = to_end_H(m, Xi * inner * top.u);
    s.X = to_end_H(m, Xi * bd.d * inner * top.u);
    s.D = inverse(s.Y);
    if (s.D) s.D = *s.D * s.X;
    return s;
}

OpTensor vanishing_product(const Model& m, int k, int l, const Scalar& x, std::optional<Scalar> at) {
    int M = m.N() - 1;
    Space vx = Space::vector("vx", M, x);
    auto bd = m.bd(x, "vx", {});
    OpTensor c = bd.b;
    for (int i = 0; i < k; ++i) c = c * bd.d;
    Scalar y = at ? *at : x * m.q().pow(-2);
    auto w = fused_slots("z", l, y, M, m.q());
    return c * b_fused(m, y, w, {vx});
}

ExchangeSides fused_b_exchange(const Model& m, int k, int l, const Scalar& x, const Scalar& y) {
    const QParam& q = m.q();
    int M = m.N() - 1;
    auto wx = fused_slots("x", k, x, M, q);
    auto wy = fused_slots("y", l, y, M, q);
    ExchangeSides s;
    s.lhs = chi(k, l, x, y, q) * (b_fused(m, x, wx, {}) * b_fused(m, y, wy, dress_by_fused(wx)));
    s.rhs = (chi(l, k, y, x, q) * psi(l, k, y, x, q)) *
            (b_fused(m, y, wy, {}) * b_fused(m, x, wx, dress_by_fused(wy)) * fused_r_ww(wy, wx, q));
    return s;
}

OpTensor top_dressing_residual(const Model& m, int k, const Scalar& x, const Scalar& y) {
    const QParam& q = m.q();
    int M = m.N() - 1;
    TopModule top = top_module("y", m.N(), y, q);
    auto wx = fused_slots("x", k, x, M, q);
    OpTensor dressed = top.lambda * b_fused(m, x, wx, dress_by_fused(top.mod.slots)) * top.u;
    Scalar c = q.pow(k * (k + 1)) * phi(k, x, y, m.N(), q);
    return dressed - c * b_fused(m, x, wx, {});
}

FactorResult db_residual_factorization(const Model& m, int k, const Scalar& x, const Scalar& y, const Scalar& c) {
    const QParam& q = m.q();
    int M = m.N() - 1;
    Space vy = Space::vector("vy", M, y);
    auto wx = fused_slots("x", k, x, M, q);
    OpTensor bdr = b_fused(m, x, wx, {vy});
    auto bd = m.bd(y, "vy", {});
    OpTensor res = bdr * fused_r_vw(vy, wx, q) * bd.d - c * (bd.d * bdr);
    std::vector<std::pair<std::string, Var>> rows, cols, hrows;
    for (auto& s : wx) rows.push_back({s.name, Var::In});
    rows.push_back({"vy", Var::Out});
    for (auto& h : m.H_names()) {
        rows.push_back({h, Var::Out});
        hrows.push_back({h, Var::Out});
    }
    cols.push_back({"vy", Var::In});
    for (auto& h : m.H_names()) cols.push_back({h, Var::In});
    Mat R = res.to_matrix_slots(rows, cols);
    Mat A = bd.b.to_matrix_slots(hrows, cols);
    return {solve_left(A, R).has_value(), R.is_zero()};
}

Mat bd_exchange_residual(const Model& m, const std::vector<Scalar>& xi, const Scalar& x, const Scalar& y) {
    const QParam& q = m.q();
    Separator s = build_separator(m, xi, y);
    if (!s.D) throw SingularY("Y is singular at " + to_string(y));
    Mat Bx = build_B(m, x);
    Scalar lam = (x * q.value() - y * q.inv()) / (x - y);
    return Bx * *s.D - lam * (*s.D * Bx);
}

}  // namespace sov
