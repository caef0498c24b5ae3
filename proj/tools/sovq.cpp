#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sov/harness.hpp"

using nlohmann::json;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string q;
    double tol = 1e-6;
};

sov::ModelConfig configure(const std::string& path, const Globals& g) {
    sov::ModelConfig c = path.empty() ? sov::ModelConfig{} : sov::load_config(path);
    if (g.seed) c.seed = *g.seed;
    if (!g.q.empty()) c.q = sov::parse_scalar(g.q);
    return c;
}

void write_json(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw sov::ConfigError("cannot write '" + path + "'");
    f << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for separation of variables in U_q(sl_N) spin chains"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides config)");
    app.add_option("--q", g.q, "deformation parameter p/q (overrides config)");
    app.add_option("--tolerance", g.tol, "floating point tolerance for spectral checks")->check(CLI::PositiveNumber);

    std::string config, out, which, at;
    auto* verify = app.add_subcommand("verify", "run every check and write a JSON report")->fallthrough();
    verify->add_option("--config", config, "model config")->required()->check(CLI::ExistingFile);
    verify->add_option("--report", out, "report path ('-' for stdout)")->required();

    auto* spectra = app.add_subcommand("spectra", "dump roots and w-action per joint eigenvector")->fallthrough();
    spectra->add_option("--config", config, "model config")->required()->check(CLI::ExistingFile);
    spectra->add_option("--json", out, "output path ('-' for stdout)")->required();

    auto* dump = app.add_subcommand("dump-operator", "print B, D, Y or X at a rational point")->fallthrough();
    dump->add_option("--which", which, "operator")->required()->check(CLI::IsMember({"B", "D", "Y", "X"}));
    dump->add_option("--at", at, "point p/q")->required();
    dump->add_option("--config", config, "model config (default N=3, one site)")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*seed_opt) g.seed = seed;

    try {
        sov::ModelConfig cfg = configure(config, g);
        sov::SuiteOptions opt;
        opt.tol = g.tol;
        if (*verify) {
            json r = sov::run_suite(cfg, opt);
            write_json(r, out);
            for (auto& c : r["checks"])
                std::cerr << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["name"].get<std::string>() << "\n";
            return r["pass"].get<bool>() ? 0 : 1;
        }
        if (*spectra) {
            json r = sov::spectra_report(cfg, opt);
            write_json(r, out);
            return r["pass"].get<bool>() ? 0 : 1;
        }
        write_json(sov::dump_operator(cfg, which, sov::parse_scalar(at)), "-");
        return 0;
    } catch (const sov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sov::DegeneracyDetected& e) {
        std::cerr << "degenerate model: " << e.what() << "\n";
        return 2;
    } catch (const sov::PoleError& e) {
        std::cerr << "pole: " << e.what() << "\n";
        return 2;
    } catch (const sov::SingularY& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
