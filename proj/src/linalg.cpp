#include "sov/linalg.hpp"

#include <stdexcept>

namespace sov {

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    for (auto& v : a)
        if (sgn(v) != 0) return false;
    return true;
}

Mat operator*(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            const Scalar& aik = A(i, k);
            if (sgn(aik) == 0) continue;
            for (size_t j = 0; j < B.cols; ++j)
                if (sgn(B(k, j)) != 0) C(i, j) += aik * B(k, j);
        }
    return C;
}

Mat operator+(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

Mat operator-(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

Mat operator*(const Scalar& c, const Mat& A) {
    Mat C = A;
    for (auto& v : C.a) v *= c;
    return C;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat C(A.rows * B.rows, A.cols * B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) {
            if (sgn(A(i, j)) == 0) continue;
            for (size_t k = 0; k < B.rows; ++k)
                for (size_t l = 0; l < B.cols; ++l) C(i * B.rows + k, j * B.cols + l) = A(i, j) * B(k, l);
        }
    return C;
}

namespace {

// Bareiss on an integer matrix; returns pivot columns, leaves M in echelon form
std::vector<size_t> bareiss(std::vector<std::vector<mpz_class>>& M, size_t cols) {
    std::vector<size_t> piv;
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < M.size(); ++c) {
        size_t p = r;
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[r]);
        for (size_t i = r + 1; i < M.size(); ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                M[i][j] = M[r][c] * M[i][j] - M[i][c] * M[r][j];
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            M[i][c] = 0;
        }
        prev = M[r][c];
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

Echelon echelon(const Mat& A) {
    std::vector<std::vector<mpz_class>> M(A.rows, std::vector<mpz_class>(A.cols));
    for (size_t i = 0; i < A.rows; ++i) {
        mpz_class l = 1;
        for (size_t j = 0; j < A.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(i, j).get_den_mpz_t());
        for (size_t j = 0; j < A.cols; ++j) M[i][j] = A(i, j).get_num() * (l / A(i, j).get_den());
    }
    Echelon e;
    e.pivots = bareiss(M, A.cols);
    e.rref = Mat(e.pivots.size(), A.cols);
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        Scalar lead(M[i][e.pivots[i]]);
        for (size_t j = 0; j < A.cols; ++j) {
            e.rref(i, j) = Scalar(M[i][j]) / lead;
        }
    }
    // back substitution to reduced form
    for (size_t i = e.pivots.size(); i-- > 0;) {
        size_t pc = e.pivots[i];
        for (size_t k = 0; k < i; ++k) {
            Scalar f = e.rref(k, pc);
            if (sgn(f) == 0) continue;
            for (size_t j = pc; j < A.cols; ++j) e.rref(k, j) -= f * e.rref(i, j);
        }
    }
    return e;
}

size_t rank(const Mat& A) { return echelon(A).rank(); }

Scalar determinant(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = A.rows;
    Mat M = A;
    Scalar det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(M(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
            det = -det;
        }
        det *= M(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            Scalar f = M(i, c) / M(c, c);
            if (sgn(f) == 0) continue;
            for (size_t j = c; j < n; ++j) M(i, j) -= f * M(c, j);
        }
    }
    return det;
}

std::optional<Mat> inverse(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse of non-square matrix");
    size_t n = A.rows;
    Mat aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = echelon(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

Mat image_basis(const Mat& A) {
    Echelon e = echelon(A.transpose());
    return e.rref.transpose();
}

Mat kernel_basis(const Mat& A) {
    Echelon e = echelon(A);
    std::vector<bool> is_piv(A.cols, false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<size_t> free;
    for (size_t j = 0; j < A.cols; ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat K(A.cols, free.size());
    for (size_t f = 0; f < free.size(); ++f) {
        K(free[f], f) = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) K(e.pivots[i], f) = -e.rref(i, free[f]);
    }
    return K;
}

std::optional<Mat> solve_left(const Mat& A, const Mat& B) {
    // X A = B  <=>  A^T X^T = B^T
    if (A.cols != B.cols) throw std::invalid_argument("solve_left: column mismatch");
    size_t n = A.rows, m = B.rows;
    Mat aug(A.cols, n + m);
    for (size_t i = 0; i < A.cols; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = A(j, i);
        for (size_t j = 0; j < m; ++j) aug(i, n + j) = B(j, i);
    }
    Echelon e = echelon(aug);
    Mat Xt(n, m);
    for (size_t i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] >= n) return std::nullopt;
        for (size_t j = 0; j < m; ++j) Xt(e.pivots[i], j) = e.rref(i, n + j);
    }
    return Xt.transpose();
}

std::vector<Mat> interpolate(const std::vector<Scalar>& xs, const std::vector<Mat>& values) {
    size_t m = xs.size();
    if (values.size() != m || m == 0) throw std::invalid_argument("interpolate: sizes");
    Mat V(m, m);
    for (size_t i = 0; i < m; ++i) {
        Scalar p = 1;
        for (size_t j = 0; j < m; ++j, p *= xs[i]) V(i, j) = p;
    }
    auto Vi = inverse(V);
    if (!Vi) throw std::invalid_argument("interpolate: repeated nodes");
    std::vector<Mat> c(m, Mat(values[0].rows, values[0].cols));
    for (size_t k = 0; k < m; ++k)
        for (size_t i = 0; i < m; ++i) {
            const Scalar& w = (*Vi)(k, i);
            if (sgn(w) == 0) continue;
            for (size_t e = 0; e < c[k].a.size(); ++e) c[k].a[e] += w * values[i].a[e];
        }
    return c;
}

}  // namespace sov
