#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sov/sovcore.hpp"

namespace sov {

using cplx = std::complex<double>;

struct DegreeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommutingFamily {
    int g = 0;
    std::vector<Mat> coeffs;  // B_0 .. B_g
    bool extra_coefficient_zero = false;
    bool leading_nonzero = false;
    bool commutes = false;
    const Mat& beta() const { return coeffs.back(); }
};

// exact interpolation of B(x) at g+2 nodes; throws DegreeMismatch if the
// certificate fails
CommutingFamily interpolate_family(const Model& m);
// same, without throwing: caller inspects the flags
CommutingFamily interpolate_family_unchecked(const Model& m);

// Y(x) = x^{-shift} sum_i Y_i x^i, likewise X; coefficients exact
struct SeparatorPoly {
    std::vector<Scalar> xi;
    long shift = 0;
    std::vector<Mat> Y, X;
    bool certified = false;
};
SeparatorPoly separator_poly(const Model& m, const std::vector<Scalar>& xi);

Eigen::MatrixXcd to_complex(const Mat& m);
Eigen::MatrixXcd eval_poly(const std::vector<Mat>& coef, long shift, cplx z);

struct JointEigenvector {
    Eigen::VectorXcd v;
    std::vector<cplx> lambda;  // eigenvalue of each B_k
    std::vector<cplx> roots;   // sorted
    cplx beta;
    double residual = 0;
    bool valid = false;  // passed the per-coefficient residual test
};

std::vector<cplx> poly_roots(const std::vector<cplx>& coef_low_to_high);
std::vector<JointEigenvector> joint_diagonalize(const CommutingFamily& fam, std::uint64_t seed, double tol = 1e-8);
// eigenvalues of every B_k on v and the residual max_k |B_k v - l_k v| / (|B_k| |v|)
void measure(const CommutingFamily& fam, const Eigen::MatrixXcd* Bc, JointEigenvector& e);

enum class WStatus { Shifted, Annihilated, ConventionFlip, Violation, NotSimple, IllConditioned, ZeroBeta };
const char* to_string(WStatus s);

struct WResult {
    WStatus status;
    Eigen::VectorXcd w;
    std::vector<cplx> new_roots;
    cplx beta_ratio{0, 0};
    double eig_residual = 0, root_mismatch = 0, condition = 0;
};

class SpectralContext {
public:
    SpectralContext(const Model& m, const CommutingFamily& fam, const SeparatorPoly& sep, double tol);

    bool simple(const JointEigenvector& e, size_t j) const;
    // D(z) v with conditioning information; returns false if ill-conditioned
    bool apply_D(cplx z, const Eigen::VectorXcd& v, Eigen::VectorXcd& out, double& cond, double& bound) const;
    WResult apply_w(const JointEigenvector& e, size_t j) const;

    const CommutingFamily& family() const { return fam_; }
    double tol() const { return tol_; }
    double q() const { return q_; }

private:
    const Model& m_;
    const CommutingFamily& fam_;
    const SeparatorPoly& sep_;
    std::vector<Eigen::MatrixXcd> Bc_;
    double tol_;
    double q_;
};

struct PairResult {
    bool vacuous = true;   // both sides numerically zero or not applicable
    bool ok = true;
    bool applicable = false;
    double rel_diff = 0;
};
PairResult check_w_commute(const SpectralContext& ctx, const JointEigenvector& e, size_t i, size_t j);
PairResult check_xi_independence(const SpectralContext& a, const SpectralContext& b, const JointEigenvector& e,
                                 size_t j);

// root multiset comparison with relative tolerance
double multiset_mismatch(std::vector<cplx> expected, std::vector<cplx> got);

}  // namespace sov
