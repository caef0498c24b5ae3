#include "doctest.h"
#include "sov/linalg.hpp"

#include <random>

using namespace sov;

namespace {

Mat random_mat(std::mt19937& rng, size_t r, size_t c) {
    std::uniform_int_distribution<int> d(-9, 9), e(1, 5);
    Mat m(r, c);
    for (auto& v : m.a) v = frac(d(rng), e(rng));
    return m;
}

Mat hilbert(size_t n) {
    Mat h(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) h(i, j) = frac(1, static_cast<long>(i + j + 1));
    return h;
}

}  // namespace

TEST_CASE("Hilbert inverse has the known integer entries") {
    // (H_3)^{-1}
    const long known[3][3] = {{9, -36, 30}, {-36, 192, -180}, {30, -180, 180}};
    auto inv = inverse(hilbert(3));
    REQUIRE(inv);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK((*inv)(i, j) == known[i][j]);
    CHECK(determinant(hilbert(3)) == frac(1, 2160));
}

TEST_CASE("rank, kernel and image") {
    std::mt19937 rng(1);
    Mat u = random_mat(rng, 4, 1), v = random_mat(rng, 1, 4);
    Mat outer = u * v;
    CHECK(rank(outer) == 1);
    Mat img = image_basis(outer);
    REQUIRE(img.cols == 1);
    // proportional to the generator
    Mat both(4, 2);
    for (size_t i = 0; i < 4; ++i) both(i, 0) = img(i, 0), both(i, 1) = u(i, 0);
    CHECK(rank(both) == 1);
    Mat K = kernel_basis(outer);
    CHECK(K.cols == 3);
    CHECK((outer * K).is_zero());
    CHECK(image_basis(Mat::identity(3)).cols == 3);
    CHECK(image_basis(Mat(3, 3)).cols == 0);
    CHECK_FALSE(inverse(outer));
}

TEST_CASE("solve_left") {
    std::mt19937 rng(2);
    Mat A = random_mat(rng, 3, 3);
    REQUIRE(determinant(A) != 0);
    auto X = solve_left(A, Scalar(2) * A);
    REQUIRE(X);
    CHECK(*X == Scalar(2) * Mat::identity(3));
    Mat B = random_mat(rng, 2, 3);
    auto Y = solve_left(A, B);
    REQUIRE(Y);
    CHECK(*Y == B * *inverse(A));
    // rank-deficient A: a row orthogonal to its row space is not reachable
    Mat D(2, 3);
    D(0, 0) = 1, D(0, 1) = 2, D(1, 0) = 2, D(1, 1) = 4;
    Mat bad(1, 3);
    bad(0, 2) = 1;
    CHECK_FALSE(solve_left(D, bad));
}

TEST_CASE("kron mixed product") {
    std::mt19937 rng(3);
    Mat A = random_mat(rng, 2, 2), B = random_mat(rng, 2, 2), C = random_mat(rng, 2, 2), D = random_mat(rng, 2, 2);
    CHECK(kron(A, B) * kron(C, D) == kron(A * C, B * D));
    CHECK(kron(Mat::identity(2), Mat::identity(3)) == Mat::identity(6));
}

TEST_CASE("interpolation recovers matrix polynomials") {
    std::mt19937 rng(4);
    std::vector<Mat> c = {random_mat(rng, 2, 2), random_mat(rng, 2, 2), random_mat(rng, 2, 2)};
    std::vector<Scalar> xs;
    std::vector<Mat> vals;
    for (int i = 0; i < 4; ++i) {
        Scalar x = frac(i + 2, 3);
        xs.push_back(x);
        vals.push_back(c[0] + x * c[1] + x * x * c[2]);
    }
    auto got = interpolate(xs, vals);
    REQUIRE(got.size() == 4);
    CHECK(got[0] == c[0]);
    CHECK(got[1] == c[1]);
    CHECK(got[2] == c[2]);
    CHECK(got[3].is_zero());
    // constant family
    auto k = interpolate({1, 2}, {c[0], c[0]});
    CHECK(k[1].is_zero());
}
