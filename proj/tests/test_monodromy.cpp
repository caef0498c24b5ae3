#include "doctest.h"
#include "sov/monodromy.hpp"

#include <random>

using namespace sov;

namespace {

Scalar rnd(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(1, 40), e(1, 6);
    return frac(d(rng), e(rng));
}

}  // namespace

TEST_CASE("config validation") {
    ModelConfig c = ModelConfig::make(3, 2);
    c.inhomogeneities = {2};
    CHECK_NOTHROW(Model{c});
    c.q = 1;
    CHECK_THROWS_AS(Model{c}, ConfigError);
    c = ModelConfig::make(2, 3);
    c.inhomogeneities = {2, 2};
    CHECK_THROWS_AS(Model{c}, ConfigError);
    c.inhomogeneities = {2};
    CHECK_THROWS_AS(Model{c}, ConfigError);
    // y2 = y1 q^2 sits on a shift orbit
    c.inhomogeneities = {2, 2 * c.q * c.q};
    CHECK_THROWS_AS(Model{c}, ConfigError);
    c = ModelConfig::make(3, 1);
    c.twist = {1, 2, 2};
    CHECK_THROWS_AS(Model{c}, ConfigError);
}

TEST_CASE("N=2, one site: T is 2x2 over End(C^2) and linear in x") {
    Model m(ModelConfig::make(2, 1));
    CHECK(m.Hdim() == 2);
    auto c = m.coefficients();
    REQUIRE(c.size() == 2);
    bool linear = false;
    for (auto& row : c)
        for (auto& e : row) {
            for (size_t p = 2; p < e.size(); ++p) CHECK(e[p].is_zero());
            if (e.size() > 1 && !e[1].is_zero()) linear = true;
        }
    CHECK(linear);
}

TEST_CASE("lower triangle of T(0) vanishes") {
    for (auto [N, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {3, 2}}) {
        Model m(ModelConfig::make(N, n));
        auto c = m.coefficients();
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < i; ++j) CHECK(c[i][j][0].is_zero());
    }
}

TEST_CASE("RTT holds exactly") {
    std::mt19937 rng(3);
    Model m(ModelConfig::make(3, 2));
    for (int t = 0; t < 2; ++t) {
        Scalar x = rnd(rng), y = rnd(rng) + 60;
        CHECK(rtt_residual_max(m, x, y) == 0);
    }
    Model m2(ModelConfig::make(2, 2));
    CHECK(rtt_residual(m2, 3, frac(71, 2)).is_zero());
}

TEST_CASE("b and d exchange relations, bare and dressed") {
    std::mt19937 rng(4);
    for (auto [N, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
        Model m(ModelConfig::make(N, n));
        Scalar x = rnd(rng), y = rnd(rng) + 60;
        auto r = comm_residuals(m, x, y, {});
        CHECK(r.bb.is_zero());
        CHECK(r.dd.is_zero());
        CHECK(r.bd.is_zero());
        auto rd = comm_residuals(m, x, y, {Space::vector("z", N - 1, rnd(rng) + 200)});
        CHECK(rd.bb.is_zero());
        CHECK(rd.dd.is_zero());
        CHECK(rd.bd.is_zero());
    }
}

TEST_CASE("dressing by a one-dimensional module is a scalar") {
    Model m(ModelConfig::make(2, 2));
    Scalar x = 3, z = frac(41, 5);
    auto bare = m.bd(x, "v", {});
    auto dressed = m.bd(x, "v", {Space::vector("z", 1, z)});
    Scalar q = m.q().value();
    Scalar s = x * q - z / q;
    CHECK(dressed.b.to_matrix_slots({{"h1", Var::Out}, {"h2", Var::Out}, {"z", Var::Out}}, {{"v", Var::In}, {"z", Var::In}, {"h1", Var::In}, {"h2", Var::In}}) ==
          s * bare.b.to_matrix_slots({{"h1", Var::Out}, {"h2", Var::Out}}, {{"v", Var::In}, {"h1", Var::In}, {"h2", Var::In}}));
}
