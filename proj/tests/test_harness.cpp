#include "doctest.h"
#include "sov/harness.hpp"

#include <set>

using namespace sov;

TEST_CASE("config parsing") {
    ModelConfig c = parse_config("# comment\nN = 2\nsites=3\nq = 7/5\ninhomogeneities = 2, 3\ntwist = 1 3/2\nseed = 9\n");
    CHECK(c.N == 2);
    CHECK(c.n == 3);
    CHECK(c.q == frac(7, 5));
    CHECK(c.inhomogeneities == std::vector<Scalar>{2, 3});
    CHECK(c.twist == std::vector<Scalar>{1, frac(3, 2)});
    CHECK(c.seed == 9);
    CHECK(parse_config("frame = diagonal").frame == Frame::Diagonal);
    CHECK_THROWS_AS(parse_config("colour = red"), ConfigError);
    CHECK_THROWS_AS(parse_config("N = 5/2"), ConfigError);
    CHECK_THROWS_AS(parse_config("N"), ConfigError);
    CHECK_THROWS_AS(parse_config("q = 0.5"), ConfigError);
}

TEST_CASE("float formatting keeps 17 digits") {
    CHECK(fmt_double(0.1) == "0.10000000000000001");
    CHECK(fmt_complex(cplx(1, -2)) == nlohmann::json::array({"1", "-2"}));
}

TEST_CASE("bad configs fail in run_suite") {
    ModelConfig c = ModelConfig{};
    c.q = 1;
    CHECK_THROWS_AS(run_suite(c, {}), ConfigError);
    c = parse_config("N = 2\nsites = 3\ninhomogeneities = 2, 2");
    CHECK_THROWS_AS(run_suite(c, {}), ConfigError);
}

TEST_CASE("default report") {
    auto r = run_suite(ModelConfig{}, {});
    std::set<std::string> names;
    bool all = true;
    for (auto& c : r["checks"]) {
        CHECK(names.insert(c["name"].get<std::string>()).second);
        CHECK(c.contains("anchor"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("wall_time_ms"));
        all = all && c["pass"].get<bool>();
    }
    CHECK(names.size() == 22);
    CHECK(r["pass"].get<bool>() == all);
    CHECK(all);
    CHECK(r["checks"][0]["name"] == "kappa_polynomial");
    CHECK(r["checks"].back()["name"] == "xi_independence");
}

TEST_CASE("reports are deterministic modulo timing") {
    auto c = parse_config("N = 2\nsites = 2\nseed = 4");
    CHECK(strip_timing(run_suite(c, {})) == strip_timing(run_suite(c, {})));
    auto stripped = strip_timing(run_suite(c, {}));
    for (auto& ch : stripped["checks"]) CHECK_FALSE(ch.contains("wall_time_ms"));
}

TEST_CASE("dump operator") {
    auto j = dump_operator(ModelConfig{}, "B", frac(3, 2));
    CHECK(j["which"] == "B");
    CHECK(j["at"] == "3/2");
    auto& slots = j["operator"]["slots"];
    CHECK(slots.size() == 2);
    CHECK(j["operator"]["entries"].size() == 9);
    CHECK_NOTHROW(dump_operator(ModelConfig{}, "D", frac(3, 2)));
    CHECK_THROWS_AS(dump_operator(ModelConfig{}, "Q", frac(3, 2)), ConfigError);
}

TEST_CASE("spectra on genus zero") {
    auto j = spectra_report(parse_config("N = 2\nsites = 1"), {});
    CHECK(j["pass"].get<bool>());
    for (auto& v : j["eigenvectors"]) CHECK(v["roots"].empty());
}
