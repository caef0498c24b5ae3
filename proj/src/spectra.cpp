#include "sov/spectra.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace sov {

CommutingFamily interpolate_family_unchecked(const Model& m) {
    CommutingFamily f;
    f.g = m.config().genus();
    std::vector<Scalar> xs;
    std::vector<Mat> vals;
    for (int i = 0; i < f.g + 2; ++i) {
        xs.push_back(frac(i + 2, 3));
        vals.push_back(build_B(m, xs.back()));
    }
    auto c = interpolate(xs, vals);
    f.extra_coefficient_zero = c[f.g + 1].is_zero();
    f.leading_nonzero = !c[f.g].is_zero();
    c.pop_back();
    f.coeffs = std::move(c);
    f.commutes = true;
    for (size_t i = 0; i < f.coeffs.size() && f.commutes; ++i)
        for (size_t j = i + 1; j < f.coeffs.size(); ++j)
            if (!(f.coeffs[i] * f.coeffs[j] == f.coeffs[j] * f.coeffs[i])) {
                f.commutes = false;
                break;
            }
    return f;
}

CommutingFamily interpolate_family(const Model& m) {
    CommutingFamily f = interpolate_family_unchecked(m);
    if (!f.extra_coefficient_zero) throw DegreeMismatch("B(x) has degree above g");
    if (!f.leading_nonzero) throw DegreeMismatch("B(x) has degree below g");
    return f;
}

SeparatorPoly separator_poly(const Model& m, const std::vector<Scalar>& xi) {
    int N = m.N(), n = m.n();
    int k = N - 2;
    // degree of b_{w^k} with s dressings is at most k(n+s) + (same for k-1, s+1)
    long deg = 0, shift = 0;
    for (int j = k, s = 1; j >= 1; --j, ++s) {
        deg += j * (n + s);
        shift += j * (j - 1) / 2;
    }
    deg += n + shift;
    SeparatorPoly p;
    p.xi = xi;
    p.shift = shift;
    std::vector<Scalar> xs;
    std::vector<Mat> ys, xsv;
    for (long i = 0; i < deg + 2; ++i) {
        Scalar x = frac(i + 1, 2);
        Scalar sc = pow(x, shift);
        Separator s = build_separator(m, xi, x);
        xs.push_back(x);
        ys.push_back(sc * s.Y);
        xsv.push_back(sc * s.X);
    }
    p.Y = interpolate(xs, ys);
    p.X = interpolate(xs, xsv);
    p.certified = p.Y.back().is_zero() && p.X.back().is_zero();
    auto trim = [](std::vector<Mat>& c) {
        while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    };
    trim(p.Y);
    trim(p.X);
    return p;
}

Eigen::MatrixXcd to_complex(const Mat& m) {
    Eigen::MatrixXcd r(m.rows, m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) r(i, j) = cplx(m(i, j).get_d(), 0);
    return r;
}

Eigen::MatrixXcd eval_poly(const std::vector<Mat>& coef, long shift, cplx z) {
    Eigen::MatrixXcd r = to_complex(coef.back());
    for (size_t i = coef.size() - 1; i-- > 0;) r = r * z + to_complex(coef[i]);
    if (shift == 0) return r;
    return r / std::pow(z, static_cast<int>(shift));
}

std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
    size_t g = c.size() - 1;
    if (g == 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(g, g);
    for (size_t i = 1; i < g; ++i) C(i, i - 1) = 1;
    for (size_t i = 0; i < g; ++i) C(i, g - 1) = -c[i] / c[g];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + g);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return r;
}

void measure(const CommutingFamily& fam, const Eigen::MatrixXcd* Bc, JointEigenvector& e) {
    std::vector<Eigen::MatrixXcd> local;
    if (!Bc) {
        for (auto& b : fam.coeffs) local.push_back(to_complex(b));
        Bc = local.data();
    }
    double vn = e.v.norm();
    e.lambda.clear();
    e.residual = 0;
    double scale = 0;
    for (size_t k = 0; k < fam.coeffs.size(); ++k) {
        Eigen::VectorXcd Bv = Bc[k] * e.v;
        cplx l = e.v.dot(Bv) / (vn * vn);
        e.lambda.push_back(l);
        double bn = Bc[k].norm();
        scale = std::max(scale, std::abs(l));
        if (bn > 0) e.residual = std::max(e.residual, (Bv - l * e.v).norm() / (bn * vn));
    }
    e.beta = e.lambda.back();
    e.roots.clear();
    if (std::abs(e.beta) > 1e-12 * std::max(scale, 1e-300)) e.roots = poly_roots(e.lambda);
}

std::vector<JointEigenvector> joint_diagonalize(const CommutingFamily& fam, std::uint64_t seed, double tol) {
    std::vector<Eigen::MatrixXcd> Bc;
    for (auto& b : fam.coeffs) Bc.push_back(to_complex(b));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<JointEigenvector> out;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(Bc[0].rows(), Bc[0].cols());
        for (auto& b : Bc) A += nd(rng) * b;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
        out.clear();
        bool all = true;
        for (Eigen::Index i = 0; i < A.cols(); ++i) {
            JointEigenvector e;
            e.v = es.eigenvectors().col(i);
            e.v /= e.v.norm();
            Eigen::Index big = 0;
            for (Eigen::Index t = 1; t < e.v.size(); ++t)
                if (std::abs(e.v(t)) > std::abs(e.v(big)) + 1e-12) big = t;
            e.v *= std::conj(e.v(big)) / std::abs(e.v(big));
            measure(fam, Bc.data(), e);
            e.valid = e.residual <= tol;
            all = all && e.valid;
            out.push_back(std::move(e));
        }
        if (all) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const JointEigenvector& a, const JointEigenvector& b) {
        for (size_t k = a.lambda.size(); k-- > 0;) {
            double d = a.lambda[k].real() - b.lambda[k].real();
            if (std::abs(d) > 1e-9 * (1 + std::abs(a.lambda[k]))) return d < 0;
        }
        return false;
    });
    return out;
}

const char* to_string(WStatus s) {
    switch (s) {
        case WStatus::Shifted: return "shifted";
        case WStatus::Annihilated: return "annihilated";
        case WStatus::ConventionFlip: return "convention-flip";
        case WStatus::Violation: return "violation";
        case WStatus::NotSimple: return "root-not-simple";
        case WStatus::IllConditioned: return "ill-conditioned";
        case WStatus::ZeroBeta: return "zero-beta";
    }
    return "?";
}

double multiset_mismatch(std::vector<cplx> expected, std::vector<cplx> got) {
    if (expected.size() != got.size()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    std::vector<bool> used(got.size(), false);
    for (auto& a : expected) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0;
        for (size_t i = 0; i < got.size(); ++i)
            if (!used[i] && std::abs(a - got[i]) < best) {
                best = std::abs(a - got[i]);
                bi = i;
            }
        used[bi] = true;
        worst = std::max(worst, best / std::max(1.0, std::abs(a)));
    }
    return worst;
}

SpectralContext::SpectralContext(const Model& m, const CommutingFamily& fam, const SeparatorPoly& sep, double tol)
    : m_(m), fam_(fam), sep_(sep), tol_(tol), q_(m.q().value().get_d()) {
    for (auto& b : fam.coeffs) Bc_.push_back(to_complex(b));
}

bool SpectralContext::simple(const JointEigenvector& e, size_t j) const {
    for (size_t i = 0; i < e.roots.size(); ++i)
        if (i != j && std::abs(e.roots[i] - e.roots[j]) <= 1e-4 * std::max(1.0, std::abs(e.roots[j]))) return false;
    return true;
}

bool SpectralContext::apply_D(cplx z, const Eigen::VectorXcd& v, Eigen::VectorXcd& out, double& cond,
                              double& bound) const {
    // z^{-shift} is common to Y and X and cancels in D, cond and bound
    Eigen::MatrixXcd Y = eval_poly(sep_.Y, 0, z);
    Eigen::MatrixXcd X = eval_poly(sep_.X, 0, z);
    if (!Y.allFinite() || !X.allFinite()) {
        cond = std::numeric_limits<double>::infinity();
        return false;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> sy(Y), sx(X);
    double smax = sy.singularValues()(0), smin = sy.singularValues()(sy.singularValues().size() - 1);
    cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e10)) return false;
    out = Y.fullPivLu().solve(X * v);
    bound = sx.singularValues()(0) / smin * v.norm();
    return true;
}

WResult SpectralContext::apply_w(const JointEigenvector& e, size_t j) const {
    WResult r;
    if (e.roots.empty()) {
        r.status = WStatus::ZeroBeta;
        return r;
    }
    if (!simple(e, j)) {
        r.status = WStatus::NotSimple;
        return r;
    }
    double bound = 0;
    if (!apply_D(e.roots[j], e.v, r.w, r.condition, bound)) {
        r.status = WStatus::IllConditioned;
        return r;
    }
    if (r.w.norm() <= 1e-8 * bound) {
        r.status = WStatus::Annihilated;
        return r;
    }
    JointEigenvector f;
    f.v = r.w;
    measure(fam_, Bc_.data(), f);
    r.eig_residual = f.residual;
    r.new_roots = f.roots;
    r.beta_ratio = f.beta / e.beta;
    auto expected = e.roots;
    expected[j] /= q_ * q_;
    r.root_mismatch = multiset_mismatch(expected, f.roots);
    bool beta_ok = std::abs(r.beta_ratio - cplx(q_, 0)) <= tol_ * q_;
    if (r.eig_residual <= tol_ && r.root_mismatch <= tol_ && beta_ok) {
        r.status = WStatus::Shifted;
        return r;
    }
    auto flipped = e.roots;
    flipped[j] *= q_ * q_;
    r.status = multiset_mismatch(flipped, f.roots) <= tol_ ? WStatus::ConventionFlip : WStatus::Violation;
    return r;
}

namespace {

PairResult compare(const Eigen::VectorXcd& a, double ba, const Eigen::VectorXcd& b, double bb, double tol) {
    PairResult p;
    p.applicable = true;
    bool za = a.norm() <= 1e-8 * ba, zb = b.norm() <= 1e-8 * bb;
    if (za && zb) return p;
    p.vacuous = false;
    p.rel_diff = (a - b).norm() / std::max(a.norm(), b.norm());
    p.ok = p.rel_diff <= tol;
    return p;
}

}  // namespace

PairResult check_w_commute(const SpectralContext& ctx, const JointEigenvector& e, size_t i, size_t j) {
    PairResult p;
    if (e.roots.empty() || !ctx.simple(e, i) || !ctx.simple(e, j)) return p;
    Eigen::VectorXcd wi, wj, a, b;
    double c, bi, bj, b2;
    if (!ctx.apply_D(e.roots[i], e.v, wi, c, bi) || !ctx.apply_D(e.roots[j], e.v, wj, c, bj)) return p;
    double ba = 0, bb = 0;
    ctx.apply_D(e.roots[i], wj, a, c, b2);
    ba = b2 * bj / std::max(wj.norm(), 1e-300);
    ctx.apply_D(e.roots[j], wi, b, c, b2);
    bb = b2 * bi / std::max(wi.norm(), 1e-300);
    return compare(a, ba, b, bb, ctx.tol());
}

PairResult check_xi_independence(const SpectralContext& a, const SpectralContext& b, const JointEigenvector& e,
                                 size_t j) {
    PairResult p;
    if (e.roots.empty() || !a.simple(e, j)) return p;
    Eigen::VectorXcd wa, wb;
    double c, ba, bb;
    if (!a.apply_D(e.roots[j], e.v, wa, c, ba) || !b.apply_D(e.roots[j], e.v, wb, c, bb)) return p;
    return compare(wa, ba, wb, bb, a.tol());
}

}  // namespace sov
