#include "sov/fusion.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace sov {

std::vector<Space> fused_slots(const std::string& prefix, int k, const Scalar& x, int M, const QParam& q) {
    std::vector<Space> s;
    for (int j = 1; j <= k; ++j) s.push_back(Space::vector(prefix + std::to_string(j), M, x * q.pow(-2 * (k - j))));
    return s;
}

std::vector<std::string> names_of(const std::vector<Space>& s) {
    std::vector<std::string> n;
    for (auto& x : s) n.push_back(x.name);
    return n;
}

OpTensor antisymmetrizer_raw(const std::vector<Space>& slots, const QParam& q) {
    int k = static_cast<int>(slots.size());
    if (k == 1) return OpTensor::identity({slots[0]});
    std::vector<Space> rest(slots.begin() + 1, slots.end());
    OpTensor f = r_trig(slots[0], slots[1], q);
    for (int j = 2; j < k; ++j) f = f * r_trig(slots[0], slots[j], q);
    OpTensor p = f * antisymmetrizer_raw(rest, q);
    p *= pow(slots.back().point, -(k - 1));
    return p;
}

FusedModule fused_module(const std::string& prefix, int k, const Scalar& x, int M, const QParam& q) {
    if (k < 1) throw std::invalid_argument("fused module needs k >= 1");
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::string>, FusedModule> cache;
    auto key = std::make_tuple(k, M, to_string(q.value()));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            FusedModule w = it->second;
            w.slots = fused_slots(prefix, k, x, M, q);
            return w;
        }
    }
    FusedModule w;
    w.k = k;
    w.M = M;
    w.slots = fused_slots(prefix, k, x, M, q);
    auto names = names_of(w.slots);
    Mat raw = antisymmetrizer_raw(w.slots, q).to_matrix(names, names);
    Mat other = antisymmetrizer_raw(fused_slots(prefix, k, x * 2 + 1, M, q), q).to_matrix(names, names);
    if (!(raw == other)) throw NonProjector("antisymmetrizer depends on the evaluation point");
    Mat sq = raw * raw;
    w.scale = 0;
    for (size_t i = 0; i < raw.a.size(); ++i)
        if (sgn(raw.a[i]) != 0) {
            w.scale = sq.a[i] / raw.a[i];
            break;
        }
    if (!(sq == w.scale * raw)) throw NonProjector("p^2 is not proportional to p");
    w.projector = sgn(w.scale) != 0 ? (1 / w.scale) * raw : raw;
    Echelon e = echelon(w.projector.transpose());
    w.basis = e.rref.transpose();
    w.dual = Mat(e.rank(), raw.cols);
    for (size_t i = 0; i < e.rank(); ++i)
        for (size_t j = 0; j < raw.cols; ++j) w.dual(i, j) = w.projector(e.pivots[i], j);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, w);
    return w;
}

OpTensor projector_tensor(const FusedModule& w) { return OpTensor::from_matrix(w.slots, w.slots, w.projector); }

OpTensor fused_r_vw(const Space& v, const std::vector<Space>& w, const QParam& q) {
    OpTensor f = r_trig(v, w.back(), q);
    for (size_t b = w.size() - 1; b-- > 0;) f = f * r_trig(v, w[b], q);
    return f;
}

OpTensor fused_r_ww(const std::vector<Space>& wy, const std::vector<Space>& wx, const QParam& q) {
    OpTensor f = OpTensor::scalar(1);
    for (auto& a : wy)
        for (size_t b = wx.size(); b-- > 0;) f = f * r_trig(a, wx[b], q);
    return f;
}

Mat restrict_fused_r(const OpTensor& r, const std::vector<const FusedModule*>& mods, const QParam&) {
    std::vector<std::string> names;
    std::vector<Space> all;
    Mat P = Mat::identity(1), V = Mat::identity(1), L = Mat::identity(1);
    for (auto* m : mods) {
        for (auto& s : m->slots) {
            names.push_back(s.name);
            all.push_back(s);
        }
        P = kron(P, m->projector);
        V = kron(V, m->basis);
        L = kron(L, m->dual);
    }
    // slots of r not covered by the modules are not allowed here
    Mat R = r.to_matrix(names, names);
    // covectors act from the left, so only P R P = P R is needed
    if (!(P * R * P == P * R)) throw ProjectorLeak("fused R leaks out of the projector image");
    return L * R * V;
}

TopModule top_module(const std::string& prefix, int N, const Scalar& x, const QParam& q) {
    TopModule t;
    int M = N - 1;
    t.mod = fused_module(prefix, M, x, M, q);
    if (t.mod.dim() != 1) throw NonProjector("top fused module is not one-dimensional");
    Mat u(t.mod.basis.rows, 1), l(1, t.mod.basis.rows);
    for (size_t i = 0; i < u.rows; ++i) {
        u(i, 0) = t.mod.basis(i, 0);
        l(0, i) = t.mod.dual(0, i);
    }
    t.u = OpTensor::from_matrix(t.mod.slots, {}, u);
    t.lambda = OpTensor::from_matrix({}, t.mod.slots, l);
    return t;
}

}  // namespace sov
