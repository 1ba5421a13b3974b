#pragma once

// End-to-end verification scenarios. Each returns a report whose evidence
// is enough to recompute the verdict.

#include <optional>
#include <string>

#include <json.hpp>

#include "chowfm/present.hpp"
#include "chowfm/ranks.hpp"

namespace chowfm {

struct VerdictReport {
    std::string scenario;
    bool pass = false;
    std::string message;
    /// Smallest degree at which compared evidence diverges, if any.
    std::optional<int> divergent_degree;
    nlohmann::json evidence = nlohmann::json::object();
    double duration_ms = 0.0;

    nlohmann::json to_json(bool with_duration = true) const;
};

struct VerifyOptions {
    RankOptions ranks;
    std::size_t walk_cap = kDefaultWalkCap;
    /// Check every walk of the family (when it fits under walk_cap).
    bool all_walks = true;
};

/// First degree where two tables differ (length mismatch counts at the
/// shorter length).
std::optional<int> first_divergence(const RankTable& a, const RankTable& b);

/// Z[h,E]/<h^4, h^2 E, E^2 - 2hE + h^2>: the blow-up of P^3 along a line.
Presentation blowup_line_in_p3();
/// Z[h,e]/<h^3, h e, e^2 + h^2>: the blow-up of P^2 at a point.
Presentation blowup_point_in_p2();

/// The failing instance of the uncorrected restriction lemma: hE is not in
/// <h^3>, and the kernel of A(Bl P^3) -> A(Bl P^2) is <h^3, hE>.
VerdictReport check_counterexample(const VerifyOptions& opts = {});

/// Routis presentation at all-ones weights vs. the Fulton-MacPherson one:
/// equal rank tables and two-way rational membership of all generators.
VerdictReport check_thm_equivalence(int d, int n, const VerifyOptions& opts = {});

/// Routis presentation vs. the iterated blow-up construction vs. the rank
/// oracle, plus walk independence.
VerdictReport check_construction(int d, int n, const LargeFamily& family, const VerifyOptions& opts = {});

} // namespace chowfm
