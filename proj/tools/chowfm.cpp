// chowfm: presentations and graded ranks of Chow rings of weighted
// Fulton-MacPherson compactifications of P^d.
//
//   chowfm present --d 1 --weights 1,1,1 --fm --export-cas --out out/
//   chowfm ranks   --d 2 --weights 1,1 --out out/
//   chowfm verify  counterexample equivalence --d 1 --n 3 --out out/

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "chowfm/errors.hpp"
#include "chowfm/jobs.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<int> d;
    std::optional<int> n;
    std::string weights;
    std::string large_sets;
    bool fm = false;
    bool export_cas = false;
    std::string out;
    std::string walk;
    std::optional<std::size_t> cap;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON job configuration file");
    cmd->add_option("--d", f.d, "dimension of the projective space P^d");
    cmd->add_option("--n", f.n, "number of points");
    cmd->add_option("--weights", f.weights, "comma-separated rational weights, e.g. 1,1/2,1/2");
    cmd->add_option("--large-sets", f.large_sets, "large sets, e.g. '1,2;1,2,3' (needs --n)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--walk", f.walk, "canonical | all");
    cmd->add_option("--cap", f.cap, "maximum number of monomials per degree");
}

chowfm::JobConfig load(const Flags& f) {
    chowfm::JobConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream is(f.config_path);
        if (!is) throw chowfm::ArgumentError("cannot read config file " + f.config_path);
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw chowfm::ArgumentError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = chowfm::JobConfig::from_json(j);
    }
    if (f.d) cfg.d = *f.d;
    if (f.n) cfg.n = *f.n;
    if (!f.weights.empty()) {
        cfg.weights = chowfm::parse_weight_list(f.weights);
        cfg.large_sets.reset();
    }
    if (!f.large_sets.empty()) {
        cfg.large_sets = chowfm::parse_large_sets(f.large_sets);
        if (f.weights.empty()) cfg.weights.reset();
    }
    cfg.fm = cfg.fm || f.fm;
    cfg.export_cas = cfg.export_cas || f.export_cas;
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.walk.empty()) cfg.walk = f.walk;
    if (f.cap) cfg.cap = *f.cap;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chow rings of weighted Fulton-MacPherson compactifications of P^d"};
    app.require_subcommand(1);

    Flags f;
    auto* present = app.add_subcommand("present", "write the ring presentation");
    add_common(present, f);
    present->add_flag("--fm", f.fm, "Fulton-MacPherson presentation (all weights one)");
    present->add_flag("--export-cas", f.export_cas, "also write a Macaulay2 script");

    auto* ranks = app.add_subcommand("ranks", "graded ranks from the presentation and the blow-up oracle");
    add_common(ranks, f);
    ranks->add_flag("--fm", f.fm, "use the Fulton-MacPherson presentation");

    std::vector<std::string> scenarios;
    auto* verify = app.add_subcommand("verify", "run verification scenarios");
    add_common(verify, f);
    verify->add_option("scenarios", scenarios, "counterexample | equivalence | construction (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? chowfm::kExitOk : chowfm::kExitUsage;
    }

    try {
        chowfm::JobConfig cfg = load(f);
        if (present->parsed()) {
            cfg.resolve();
            chowfm::cmd_present(cfg);
            std::cout << "wrote presentation to " << cfg.out << '\n';
            return chowfm::kExitOk;
        }
        if (ranks->parsed()) {
            cfg.resolve();
            return chowfm::cmd_ranks(cfg, std::cout) ? chowfm::kExitOk : chowfm::kExitFailure;
        }
        if (cfg.weights || cfg.large_sets) {
            cfg.resolve();
        } else if (cfg.d < 1 || cfg.n < 0 || (f.d && !f.n)) {
            throw chowfm::ArgumentError("verify needs --d together with --n");
        }
        return chowfm::cmd_verify(scenarios, cfg, std::cout);
    } catch (const chowfm::SizeCapError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return chowfm::kExitCap;
    } catch (const chowfm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return chowfm::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return chowfm::kExitFailure;
    }
}
