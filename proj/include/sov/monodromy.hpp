#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sov/rmatrix.hpp"

namespace sov {

struct DegeneracyDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cyclic: T(x) = K G(x) R12(q)_{0,n} R(x,y_{n-1})_{0,n-1} ... R(x,y_1)_{0,1},
//   G(x) = E^{1N} + x sum_i E^{i+1,i}; n-1 inhomogeneities.
// Diagonal: T(x) = K R(x,y_n)_{0,n} ... R(x,y_1)_{0,1}; n inhomogeneities.
// B(x) is nilpotent in the diagonal frame, so the spectral part needs the cyclic one.
enum class Frame { Cyclic, Diagonal };

struct ModelConfig {
    int N = 3;
    int n = 1;
    Scalar q = Scalar(7, 5);
    std::vector<Scalar> inhomogeneities;
    std::vector<Scalar> twist;
    std::uint64_t seed = 1;
    Frame frame = Frame::Cyclic;

    int genus() const { return (N - 1) * (N * n - 2) / 2; }
    size_t trig_sites() const { return frame == Frame::Cyclic ? n - 1 : n; }
    // fills defaults for empty lists, then checks every invariant (ConfigError)
    void complete_and_validate();
    static ModelConfig make(int N, int n, Frame frame = Frame::Cyclic);
};

class Model {
public:
    explicit Model(ModelConfig cfg);

    const ModelConfig& config() const { return cfg_; }
    const QParam& q() const { return q_; }
    int N() const { return cfg_.N; }
    int n() const { return cfg_.n; }
    const std::vector<Space>& H() const { return H_; }
    std::vector<std::string> H_names() const;
    size_t Hdim() const;

    // monodromy on aux (dim N) (x) H at spectral parameter x
    OpTensor T(const Space& aux, const Scalar& x) const;

    struct Blocks {
        OpTensor a, b, c, d;
    };
    // blocks with the (N-1)-dimensional part on a vector slot `v` at point x
    Blocks blocks(const Scalar& x, const std::string& v) const;

    struct BD {
        OpTensor b, d;
    };
    // b and d dressed by r(v, s) for each s in `dressing`, in order
    BD bd(const Scalar& x, const std::string& v, const std::vector<Space>& dressing) const;

    // exact coefficients of T(x) as an N x N grid of End(H) polynomials, index [i][j][power]
    std::vector<std::vector<std::vector<Mat>>> coefficients() const;

private:
    void verify_degree_pattern() const;

    ModelConfig cfg_;
    QParam q_;
    std::vector<Space> H_;
};

Space aux_space(const std::string& name, int N, const Scalar& x);

OpTensor rtt_residual(const Model& m, const Scalar& x, const Scalar& y);
// same relation evaluated block by block over End(H); returns the largest |entry|
Scalar rtt_residual_max(const Model& m, const Scalar& x, const Scalar& y);

struct CommResiduals {
    OpTensor bb, dd, bd;
};
// the three exchange relations of b and d, the last in component form;
// all vanish exactly for a valid model and any dressing
CommResiduals comm_residuals(const Model& m, const Scalar& x, const Scalar& y, const std::vector<Space>& dressing);

}  // namespace sov
