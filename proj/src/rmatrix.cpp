#include "sov/rmatrix.hpp"

#include <map>
#include <mutex>

namespace sov {

Mat r12_constant(int M, const QParam& q) {
    Mat R(M * M, M * M);
    const Scalar& qv = q.value();
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) R(i * M + j, i * M + j) = i == j ? qv : Scalar(1);
    Scalar off = qv - q.inv();
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j) R(j * M + i, i * M + j) += off;
    return R;
}

Mat flip(int M) {
    Mat P(M * M, M * M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) P(i * M + j, j * M + i) = 1;
    return P;
}

Mat r21_inverse(int M, const QParam& q) {
    static std::mutex mu;
    static std::map<std::pair<int, std::string>, Mat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(M, to_string(q.value()));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Mat P = flip(M);
    auto inv = inverse(P * r12_constant(M, q) * P);
    if (!inv) throw std::logic_error("R21 is singular");
    return cache.emplace(key, *inv).first->second;
}

Mat r_trig_matrix(const Scalar& x, const Scalar& y, int M, const QParam& q) {
    return x * r12_constant(M, q) - y * r21_inverse(M, q);
}

OpTensor r_trig(const Space& a, const Space& b, const QParam& q) {
    if (a.dim != b.dim) throw ShapeMismatch("r_trig between spaces of different dimension");
    int M = static_cast<int>(a.dim);
    return OpTensor::from_matrix({a, b}, {a, b}, r_trig_matrix(a.point, b.point, M, q));
}

OpTensor r_trig(const Space& a, const Space& b, const Scalar& x, const Scalar& y, const QParam& q) {
    if (a.dim != b.dim) throw ShapeMismatch("r_trig between spaces of different dimension");
    return OpTensor::from_matrix({a, b}, {a, b}, r_trig_matrix(x, y, static_cast<int>(a.dim), q));
}

OpTensor r_constant(const Space& a, const Space& b, const QParam& q) {
    if (a.dim != b.dim) throw ShapeMismatch("r_constant between spaces of different dimension");
    return OpTensor::from_matrix({a, b}, {a, b}, r12_constant(static_cast<int>(a.dim), q));
}

OpTensor s_matrix(const Space& dual, const Space& target) {
    if (dual.dim != target.dim) throw ShapeMismatch("pairing between spaces of different dimension");
    return OpTensor::from_matrix({target}, {dual}, Mat::identity(dual.dim));
}

}  // namespace sov
