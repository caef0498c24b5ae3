#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "json.hpp"
#include "sov/spectra.hpp"

namespace sov {

// flat "key = value" text; keys N, sites, q, inhomogeneities, twist, seed, frame
ModelConfig parse_config(const std::string& text);
ModelConfig load_config(const std::string& path);
nlohmann::json config_json(const ModelConfig& c);

std::string fmt_double(double v);
nlohmann::json fmt_complex(cplx z);

struct SuiteOptions {
    double tol = 1e-6;
};

// seeded source of admissible rational points
class PointSource {
public:
    PointSource(std::uint64_t seed, const QParam& q, int N) : rng_(seed), q_(q), N_(N) {}
    Scalar scalar();
    // x != y and x/y off q^{2m}, |m| <= N + 1
    std::pair<Scalar, Scalar> pair();
    std::vector<Scalar> covector(int n);  // entries in 1..9

private:
    std::mt19937_64 rng_;
    QParam q_;
    int N_;
};

std::vector<Scalar> default_xi(const ModelConfig& c, int draw);

struct SpectralSummary {
    int eigenvectors = 0, invalid = 0;
    int shifted = 0, annihilated = 0, flips = 0, violations = 0;
    int not_simple = 0, ill_conditioned = 0, zero_beta = 0;
    int commute_checked = 0, commute_nonvacuous = 0, commute_failed = 0;
    int xi_checked = 0, xi_nonvacuous = 0, xi_failed = 0;
    nlohmann::json per_vector = nlohmann::json::array();
};
SpectralSummary spectral_analysis(const Model& m, const SuiteOptions& opt);

nlohmann::json run_suite(const ModelConfig& cfg, const SuiteOptions& opt);
nlohmann::json spectra_report(const ModelConfig& cfg, const SuiteOptions& opt);
nlohmann::json dump_operator(const ModelConfig& cfg, const std::string& which, const Scalar& at);

// removes wall_time_ms fields recursively
nlohmann::json strip_timing(nlohmann::json j);

}  // namespace sov
