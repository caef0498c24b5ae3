#include "doctest.h"
#include "sov/exactnum.hpp"

#include <random>

using namespace sov;

TEST_CASE("parse and print rationals") {
    CHECK(parse_scalar("7/5") == Scalar(7, 5));
    CHECK(parse_scalar("-3") == -3);
    CHECK(parse_scalar("6/4") == frac(3, 2));
    CHECK(to_string(parse_scalar("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_scalar("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_scalar("x"), ConfigError);
    CHECK_THROWS_AS(parse_scalar("1.5"), ConfigError);
    CHECK(to_string(frac(20, 4)) == "5");
}

TEST_CASE("integer powers") {
    CHECK(pow(frac(2, 3), 3) == frac(8, 27));
    CHECK(pow(frac(2, 3), -2) == frac(9, 4));
    CHECK(pow(Scalar(5), 0) == 1);
    CHECK_THROWS_AS(pow(Scalar(0), -1), PoleError);
}

TEST_CASE("q genericity window") {
    CHECK_THROWS_AS(QParam(Scalar(1)), ConfigError);
    CHECK_THROWS_AS(QParam(Scalar(-1)), ConfigError);
    CHECK_THROWS_AS(QParam(Scalar(0)), ConfigError);
    CHECK_NOTHROW(QParam(frac(7, 5), 4, 2));
    QParam q(frac(7, 5));
    CHECK(q.pow(-1) == q.inv());
}

TEST_CASE("kappa") {
    CHECK(kappa(1, 2, QParam(Scalar(2))) == frac(7, 2));
    QParam q(frac(7, 5));
    for (int x = 1; x < 6; ++x) CHECK(kappa(frac(x, 3), 0, q) == frac(x, 3));
    CHECK_THROWS_AS(kappa(3, 3, q), PoleError);
}

TEST_CASE("phi, chi, psi, rho, sigma special cases") {
    QParam q(frac(7, 5));
    Scalar x = frac(11, 3), y = frac(5, 7);
    CHECK(phi(1, x, y, 2, q) == x / q.value() - y * q.pow(-3));
    CHECK(phi(1, 0, 0, 3, q) == 0);
    CHECK(chi(1, 1, x, y, q) == kappa(x, y, q));
    CHECK(sigma(1, x, y, q) == kappa(x, y, q));
    CHECK(rho(1, y, x, 2, q) == y * q.value() - x * q.inv());
}

TEST_CASE("phi at N=3, k=2 against a written-out product") {
    QParam q(frac(7, 5));
    Scalar Q = q.value();
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(1, 20);
    for (int t = 0; t < 5; ++t) {
        Scalar x = frac(d(rng), 3), y = frac(d(rng), 7);
        // j = 0 squared, j = 1 once; each j carries the extra i = 0 factor
        Scalar j0 = (x / Q - y / pow(Q, 5)) * (x - y);
        Scalar j1 = (x / pow(Q, 3) - y / pow(Q, 5)) * (x / pow(Q, 2) - y);
        CHECK(phi(2, x, y, 3, q) == j0 * j0 * j1);
    }
}

TEST_CASE("psi pole") {
    QParam q(frac(7, 5));
    // y q^{-1} = x q  at i = j = 0
    Scalar x = 2;
    CHECK_THROWS_AS(psi(1, 1, x * q.pow(2), x, q), PoleError);
}

TEST_CASE("quantum determinant scalar identity") {
    QParam q(frac(7, 5));
    CHECK(qdet_scalar_identity(2, 1, 2, q));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(1, 40);
    for (int N = 3; N <= 4; ++N)
        for (int t = 0; t < 5; ++t) {
            Scalar x = frac(d(rng), 7), y = frac(d(rng), 3) + 100;
            CHECK(qdet_scalar_identity(N, x, y, q));
        }
    CHECK_THROWS_AS(qdet_scalar_identity(2, 3, 3, q), PoleError);
}

TEST_CASE("field axioms on random rationals") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-50, 50), e(1, 30);
    for (int t = 0; t < 50; ++t) {
        Scalar a = frac(d(rng), e(rng)), b = frac(d(rng), e(rng)), c = frac(d(rng), e(rng));
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        if (a != 0) CHECK(a * (1 / a) == 1);
    }
}
