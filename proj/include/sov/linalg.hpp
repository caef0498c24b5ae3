#pragma once

#include <optional>
#include <vector>

#include "sov/exactnum.hpp"

namespace sov {

struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    static Mat identity(size_t n);

    Scalar& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    Mat transpose() const;
    bool is_zero() const;
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat operator*(const Mat& A, const Mat& B);
Mat operator+(const Mat& A, const Mat& B);
Mat operator-(const Mat& A, const Mat& B);
Mat operator*(const Scalar& c, const Mat& A);
Mat kron(const Mat& A, const Mat& B);

// Row echelon form computed by fraction-free (Bareiss) elimination on the
// integer-scaled rows, then brought to reduced form over Q.
struct Echelon {
    Mat rref;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
    size_t rank() const { return pivots.size(); }
};
Echelon echelon(const Mat& A);

size_t rank(const Mat& A);
Scalar determinant(const Mat& A);
std::optional<Mat> inverse(const Mat& A);
// basis of the column space as columns, in reduced column echelon form
Mat image_basis(const Mat& A);
// basis of the right null space as columns
Mat kernel_basis(const Mat& A);
// X with X A = B, or nullopt when B's rows are not in the row space of A
std::optional<Mat> solve_left(const Mat& A, const Mat& B);

// coefficients c_0..c_{m-1} of the unique matrix polynomial of degree < m
// through (xs[i], values[i]), m = xs.size(); xs must be distinct
std::vector<Mat> interpolate(const std::vector<Scalar>& xs, const std::vector<Mat>& values);

}  // namespace sov
