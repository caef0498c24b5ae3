#include "sov/monodromy.hpp"

namespace sov {

namespace {

const Scalar kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

Mat twist_frame(const ModelConfig& c, const Scalar& x) {
    int N = c.N;
    Mat K(N, N);
    for (int i = 0; i < N; ++i) K(i, i) = c.twist[i];
    if (c.frame == Frame::Diagonal) return K;
    Mat G(N, N);
    G(0, N - 1) = 1;
    for (int i = 0; i + 1 < N; ++i) G(i + 1, i) = x;
    return K * G;
}

}  // namespace

ModelConfig ModelConfig::make(int N, int n, Frame frame) {
    ModelConfig c;
    c.N = N;
    c.n = n;
    c.frame = frame;
    c.complete_and_validate();
    return c;
}

void ModelConfig::complete_and_validate() {
    if (N < 2) throw ConfigError("N must be at least 2");
    if (n < 1) throw ConfigError("sites must be at least 1");
    if ((N - 1) * (N * n - 2) % 2 != 0 || N * n < 2) throw ConfigError("genus is not a nonnegative integer");
    QParam qp(q, N, n);
    if (twist.empty()) {
        Scalar t = frac(3, 2);
        for (int i = 0; i < N; ++i) twist.push_back(pow(t, i));
    }
    if (static_cast<int>(twist.size()) != N) throw ConfigError("twist needs N entries");
    for (size_t i = 0; i < twist.size(); ++i) {
        if (twist[i] == 0) throw ConfigError("twist entries must be nonzero");
        for (size_t j = 0; j < i; ++j)
            if (twist[i] == twist[j]) throw ConfigError("twist entries must be distinct");
    }
    size_t need = trig_sites();
    if (inhomogeneities.empty())
        for (size_t i = 0; i < need; ++i) inhomogeneities.push_back(kPrimes[i % 10] * (1 + static_cast<int>(i / 10)));
    if (inhomogeneities.size() != need)
        throw ConfigError("expected " + std::to_string(need) + " inhomogeneities, got " +
                          std::to_string(inhomogeneities.size()));
    for (size_t i = 0; i < need; ++i) {
        if (inhomogeneities[i] == 0) throw ConfigError("inhomogeneities must be nonzero");
        for (size_t j = 0; j < i; ++j) {
            if (inhomogeneities[i] == inhomogeneities[j]) throw ConfigError("duplicate inhomogeneities");
            Scalar ratio = inhomogeneities[i] / inhomogeneities[j];
            for (int m = -2 * N; m <= 2 * N; ++m)
                if (ratio == qp.pow(2 * m))
                    throw ConfigError("inhomogeneities " + to_string(inhomogeneities[j]) + " and " +
                                      to_string(inhomogeneities[i]) + " lie on one q^2 orbit");
        }
    }
}

Space aux_space(const std::string& name, int N, const Scalar& x) { return Space::vector(name, N, x); }

Model::Model(ModelConfig cfg) : cfg_(std::move(cfg)), q_((cfg_.complete_and_validate(), cfg_.q), cfg_.N, cfg_.n) {
    for (int i = 1; i <= cfg_.n; ++i) H_.push_back(Space::quantum("h" + std::to_string(i), cfg_.N));
    verify_degree_pattern();
}

std::vector<std::string> Model::H_names() const {
    std::vector<std::string> r;
    for (auto& h : H_) r.push_back(h.name);
    return r;
}

size_t Model::Hdim() const {
    size_t d = 1;
    for (auto& h : H_) d *= h.dim;
    return d;
}

OpTensor Model::T(const Space& aux, const Scalar& x) const {
    OpTensor t = OpTensor::from_matrix({aux}, {aux}, twist_frame(cfg_, x));
    int n = cfg_.n;
    for (int k = n - 1; k >= 0; --k) {
        if (cfg_.frame == Frame::Cyclic && k == n - 1)
            t = t * r_constant(aux, H_[k], q_);
        else
            t = t * r_trig(aux, H_[k], x, cfg_.inhomogeneities[k], q_);
    }
    return t;
}

Model::Blocks Model::blocks(const Scalar& x, const std::string& v) const {
    int N = cfg_.N;
    Space A = aux_space("__aux", N, x);
    auto hn = H_names();
    Mat full = T(A, x).to_matrix([&] {
        std::vector<std::string> o{"__aux"};
        o.insert(o.end(), hn.begin(), hn.end());
        return o;
    }(), [&] {
        std::vector<std::string> i{"__aux"};
        i.insert(i.end(), hn.begin(), hn.end());
        return i;
    }());
    size_t h = Hdim();
    auto block = [&](int i, int j) {
        Mat m(h, h);
        for (size_t r = 0; r < h; ++r)
            for (size_t c = 0; c < h; ++c) m(r, c) = full(i * h + r, j * h + c);
        return m;
    };
    Space vs = Space::vector(v, N - 1, x);
    Blocks B;
    B.a = OpTensor::from_matrix(H_, H_, block(0, 0));
    // b: covector on v, row-vector convention: slots (H out, v in, H in)
    std::vector<Space> vin{vs};
    vin.insert(vin.end(), H_.begin(), H_.end());
    Mat bm(h, (N - 1) * h), cm((N - 1) * h, h), dm((N - 1) * h, (N - 1) * h);
    for (int j = 1; j < N; ++j) {
        Mat bj = block(0, j), cj = block(j, 0);
        for (size_t r = 0; r < h; ++r)
            for (size_t c = 0; c < h; ++c) {
                bm(r, (j - 1) * h + c) = bj(r, c);
                cm((j - 1) * h + r, c) = cj(r, c);
            }
        for (int i = 1; i < N; ++i) {
            Mat dij = block(i, j);
            for (size_t r = 0; r < h; ++r)
                for (size_t c = 0; c < h; ++c) dm((i - 1) * h + r, (j - 1) * h + c) = dij(r, c);
        }
    }
    B.b = OpTensor::from_matrix(H_, vin, bm);
    B.c = OpTensor::from_matrix(vin, H_, cm);
    B.d = OpTensor::from_matrix(vin, vin, dm);
    return B;
}

Model::BD Model::bd(const Scalar& x, const std::string& v, const std::vector<Space>& dressing) const {
    auto B = blocks(x, v);
    Space vs = Space::vector(v, N() - 1, x);
    BD r{B.b, B.d};
    for (auto& s : dressing) {
        OpTensor rr = r_trig(vs, s, q_);
        r.b = r.b * rr;
        r.d = r.d * rr;
    }
    return r;
}

std::vector<std::vector<std::vector<Mat>>> Model::coefficients() const {
    int N = cfg_.N, n = cfg_.n;
    std::vector<Scalar> xs;
    std::vector<std::vector<std::vector<Mat>>> samples(N, std::vector<std::vector<Mat>>(N));
    size_t h = Hdim();
    auto hn = H_names();
    std::vector<std::string> names{"__aux"};
    names.insert(names.end(), hn.begin(), hn.end());
    for (int p = 0; p < n + 2; ++p) {
        Scalar x = frac(p + 1, 3);
        xs.push_back(x);
        Mat full = T(aux_space("__aux", N, x), x).to_matrix(names, names);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                Mat m(h, h);
                for (size_t r = 0; r < h; ++r)
                    for (size_t c = 0; c < h; ++c) m(r, c) = full(i * h + r, j * h + c);
                samples[i][j].push_back(m);
            }
    }
    std::vector<std::vector<std::vector<Mat>>> coef(N, std::vector<std::vector<Mat>>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) coef[i][j] = interpolate(xs, samples[i][j]);
    return coef;
}

void Model::verify_degree_pattern() const {
    int N = cfg_.N, n = cfg_.n;
    auto coef = coefficients();
    bool top_seen = false;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            auto& c = coef[i][j];
            if (!c[n + 1].is_zero()) throw DegeneracyDetected("T(x) has degree above the number of sites");
            if (!c[n].is_zero()) top_seen = true;
            if (i < j && !c[n].is_zero()) throw DegeneracyDetected("upper-triangular part reaches degree n");
            if (i > j && !c[0].is_zero()) throw DegeneracyDetected("lower-triangular part does not vanish at x = 0");
        }
    if (!top_seen) throw DegeneracyDetected("T(x) has degree below the number of sites");
}

OpTensor rtt_residual(const Model& m, const Scalar& x, const Scalar& y) {
    Space A = aux_space("A", m.N(), x), B = aux_space("B", m.N(), y);
    OpTensor R = r_trig(A, B, m.q());
    OpTensor TA = m.T(A, x), TB = m.T(B, y);
    return R * TA * TB - TB * TA * R;
}

Scalar rtt_residual_max(const Model& m, const Scalar& x, const Scalar& y) {
    int N = m.N();
    size_t h = m.Hdim();
    auto grid = [&](const Scalar& t) {
        auto hn = m.H_names();
        std::vector<std::string> names{"__aux"};
        names.insert(names.end(), hn.begin(), hn.end());
        Mat full = m.T(aux_space("__aux", N, t), t).to_matrix(names, names);
        std::vector<Mat> g(N * N, Mat(h, h));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (size_t r = 0; r < h; ++r)
                    for (size_t c = 0; c < h; ++c) g[i * N + j](r, c) = full(i * h + r, j * h + c);
        return g;
    };
    auto Tx = grid(x), Ty = grid(y);
    Mat R = r_trig_matrix(x, y, N, m.q());
    // (T1(x) T2(y))_{ab,cd} = T_ac(x) T_bd(y);  (T2(y) T1(x))_{ab,cd} = T_bd(y) T_ac(x)
    std::vector<Mat> L(N * N * N * N, Mat(h, h)), Rt(N * N * N * N, Mat(h, h));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    size_t idx = (a * N + b) * N * N + c * N + d;
                    L[idx] = Tx[a * N + c] * Ty[b * N + d];
                    Rt[idx] = Ty[b * N + d] * Tx[a * N + c];
                }
    Scalar worst = 0;
    int NN = N * N;
    for (int r = 0; r < NN; ++r)
        for (int c = 0; c < NN; ++c) {
            Mat acc(h, h);
            for (int k = 0; k < NN; ++k) {
                if (sgn(R(r, k)) != 0) acc = acc + R(r, k) * L[k * NN + c];
                if (sgn(R(k, c)) != 0) acc = acc - R(k, c) * Rt[r * NN + k];
            }
            for (auto& v : acc.a)
                if (abs(v) > worst) worst = abs(v);
        }
    return worst;
}

CommResiduals comm_residuals(const Model& m, const Scalar& x, const Scalar& y, const std::vector<Space>& dressing) {
    const QParam& q = m.q();
    int M = m.N() - 1;
    auto X = m.bd(x, "vx", dressing);
    auto Y = m.bd(y, "vy", dressing);
    Space vx = Space::vector("vx", M, x), vy = Space::vector("vy", M, y);
    OpTensor r = r_trig(vx, vy, q);
    CommResiduals c;
    Scalar qq = q.value(), qi = q.inv();
    c.bb = (x * qq - y * qi) * (X.b * Y.b) - Y.b * X.b * r;
    c.dd = r * X.d * Y.d - Y.d * X.d * r;
    // free output index k of d moved to a neutral slot
    Space K = Space::vector("__k", M, 0);
    OpTensor dyK = Y.d.relabeled("vy", Var::Out, K);
    OpTensor dxK = X.d.relabeled("vx", Var::Out, K);
    c.bd = (x - y) * (X.b * dyK) + (y * (qq - qi)) * (dxK * Y.b) - dyK * X.b * r;
    return c;
}

}  // namespace sov
