#pragma once

// Job configuration and the present / ranks / verify commands behind the
// command-line tool. Output files are written atomically and embed the
// resolved configuration.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chowfm/present.hpp"
#include "chowfm/ranks.hpp"
#include "chowfm/verify.hpp"

namespace chowfm {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitCap = 3 };

struct JobConfig {
    int d = 1;
    int n = 0;
    std::optional<std::vector<std::string>> weights;              ///< "p/q" strings
    std::optional<std::vector<std::vector<int>>> large_sets;
    bool fm = false;
    bool export_cas = false;
    std::string walk = "canonical";  ///< canonical | all
    std::size_t cap = kDefaultMonomialCap;
    std::string out = ".";

    /// Reads the JSON config file schema; missing keys keep their defaults.
    static JobConfig from_json(const nlohmann::json& j);
    /// Resolved configuration (weights canonicalized, n filled in).
    nlohmann::json to_json() const;

    /// Fills n from the weights if needed and checks every constraint;
    /// throws ArgumentError.
    void resolve();
    LargeFamily family() const;
    bool all_ones() const;
};

/// "1,1/2,1/2" -> {"1","1/2","1/2"}
std::vector<std::string> parse_weight_list(const std::string& text);
/// "1,2;1,2,3" -> {{1,2},{1,2,3}}
std::vector<std::vector<int>> parse_large_sets(const std::string& text);

/// Writes via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct PresentOutputs {
    std::string text;
    std::string json;
    std::optional<std::string> cas;
};

/// The presentation selected by cfg (Fulton-MacPherson with cfg.fm).
Presentation job_presentation(const JobConfig& cfg);
PresentOutputs render_present(const JobConfig& cfg);
/// Writes presentation.txt, presentation.json and optionally presentation.m2.
void cmd_present(const JobConfig& cfg);

struct RanksResult {
    RankTable presentation;
    RankTable oracle;
    bool agree = false;
    nlohmann::json to_json(const JobConfig& cfg) const;
};

RanksResult compute_ranks(const JobConfig& cfg);
/// Prints both tables and writes ranks.json; returns the agreement.
bool cmd_ranks(const JobConfig& cfg, std::ostream& log);

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"counterexample", "equivalence", "construction"};
    return names;
}

/// Runs the named scenarios (all when empty). Instance parameters come from
/// cfg when it names a geometry (n > 0), otherwise from the default suite.
/// Writes one report per run under cfg.out/verify and returns the exit code.
int cmd_verify(const std::vector<std::string>& names, const JobConfig& cfg, std::ostream& log);

} // namespace chowfm
