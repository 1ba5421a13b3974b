#include "chowfm/verify.hpp"

#include <chrono>

namespace chowfm {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json ranks_json(const RankTable& t) { return t.ranks; }

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json walk_json(const Walk& w) {
    nlohmann::json steps = nlohmann::json::array();
    for (Subset s : w.steps) steps.push_back(s.to_string());
    return steps;
}

// Smallest degree among failed memberships, if any.
std::optional<int> lowest_failure(const std::vector<Poly>& fs, const std::vector<bool>& ok) {
    std::optional<int> out;
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (!ok[i] && (!out || fs[i].degree() < *out)) out = fs[i].degree();
    return out;
}

std::optional<int> min_degree(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

nlohmann::json VerdictReport::to_json(bool with_duration) const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["pass"] = pass;
    j["message"] = message;
    j["divergent_degree"] = divergent_degree ? nlohmann::json(*divergent_degree) : nlohmann::json(nullptr);
    j["evidence"] = evidence;
    if (with_duration) j["duration_ms"] = duration_ms;
    return j;
}

std::optional<int> first_divergence(const RankTable& a, const RankTable& b) {
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < common; ++k)
        if (a[k] != b[k]) return static_cast<int>(k);
    if (a.size() != b.size()) return static_cast<int>(common);
    return std::nullopt;
}

Presentation blowup_line_in_p3() {
    const auto vars = std::make_shared<const VarTable>(std::vector<Variable>{{"h", 1, 4}, {"E", 1, 0}});
    const Poly h = Poly::variable(vars, "h");
    const Poly e = Poly::variable(vars, "E");
    return Presentation(vars, {h * h * e, e * e - h * e * Integer(2) + h * h}, 3);
}

Presentation blowup_point_in_p2() {
    const auto vars = std::make_shared<const VarTable>(std::vector<Variable>{{"h", 1, 3}, {"e", 1, 0}});
    const Poly h = Poly::variable(vars, "h");
    const Poly e = Poly::variable(vars, "e");
    return Presentation(vars, {h * e, e * e + h * h}, 2);
}

VerdictReport check_counterexample(const VerifyOptions& opts) {
    const auto start = Clock::now();
    VerdictReport report;
    report.scenario = "counterexample";

    const Presentation ytilde = blowup_line_in_p3();
    const Presentation vtilde = blowup_point_in_p2();
    const VarTablePtr& vars = ytilde.vars();
    const Poly h = Poly::variable(vars, "h");
    const Poly e = Poly::variable(vars, "E");

    // Rebuild the source ring with the blow-up combinator: center P^1 in P^3,
    // kernel <h^2>, normal bundle O(1)^2 so P(t) = t^2 + 2h t + h^2.
    const auto p3_vars = std::make_shared<const VarTable>(std::vector<Variable>{{"h", 1, 4}});
    const Poly hp = Poly::variable(p3_vars, "h");
    const Presentation p3(p3_vars, {}, 3);
    const ChernPoly line_normal({hp * hp, hp * Integer(2), Poly::constant(p3_vars, 1)}, 2);
    const Presentation via_keel = keel_step(p3, {hp * hp}, line_normal, "E");
    const bool keel_matches = via_keel.relations() == ytilde.relations();

    const Poly h3 = h * h * h;
    const Poly he = h * e;
    const bool he_in_h3 = membership(ytilde, {h3}, he, opts.ranks);

    const RankTable source = graded_ranks(ytilde, opts.ranks);
    const RankTable target = graded_ranks(vtilde, opts.ranks);
    const std::map<std::string, Poly> images{{"h", Poly::variable(vtilde.vars(), "h")},
                                             {"E", Poly::variable(vtilde.vars(), "e")}};
    const RankTable kernel = kernel_ranks(ytilde, vtilde, images, opts.ranks);
    const RankTable corrected = ideal_ranks(ytilde, {h3, he}, opts.ranks);
    const RankTable uncorrected = ideal_ranks(ytilde, {h3}, opts.ranks);

    report.evidence["relations"] = nlohmann::json::array();
    for (const Poly& r : ytilde.relations()) report.evidence["relations"].push_back(r.to_string());
    report.evidence["keel_step_matches_printed_ring"] = keel_matches;
    report.evidence["hE_in_ideal_h3"] = he_in_h3;
    report.evidence["source_ranks"] = ranks_json(source);
    report.evidence["target_ranks"] = ranks_json(target);
    report.evidence["kernel_ranks"] = ranks_json(kernel);
    report.evidence["ideal_ranks_h3_hE"] = ranks_json(corrected);
    report.evidence["ideal_ranks_h3"] = ranks_json(uncorrected);
    report.evidence["membership_field"] = "rationals";

    report.divergent_degree = first_divergence(kernel, corrected);
    report.pass = keel_matches && !he_in_h3 && !report.divergent_degree;
    if (!keel_matches) {
        report.message = "blow-up combinator does not reproduce the printed ring";
    } else if (he_in_h3) {
        report.message = "hE unexpectedly lies in <h^3>";
    } else if (report.divergent_degree) {
        report.message = "kernel differs from <h^3, hE>";
    } else {
        report.message = "hE is not in <h^3>; kernel equals <h^3, hE> with ranks " + kernel.to_string();
    }
    report.duration_ms = elapsed_ms(start);
    return report;
}

VerdictReport check_thm_equivalence(int d, int n, const VerifyOptions& opts) {
    const auto start = Clock::now();
    VerdictReport report;
    report.scenario = "equivalence";
    report.evidence["d"] = d;
    report.evidence["n"] = n;

    const BaseGeometry g(d, n);
    const Presentation routis = build_thm31(g, LargeFamily::all_subsets(n));
    const Presentation fm = build_thm34(g);
    const RankTable routis_ranks = graded_ranks(routis, opts.ranks);
    const RankTable fm_ranks = graded_ranks(fm, opts.ranks);

    // Both presentations share one variable table (by value).
    const auto forward = membership_batch(fm, {}, routis.relations(), opts.ranks);
    const auto backward = membership_batch(routis, {}, fm.relations(), opts.ranks);
    const auto count = [](const std::vector<bool>& v) { return std::count(v.begin(), v.end(), true); };

    report.evidence["routis_ranks"] = ranks_json(routis_ranks);
    report.evidence["fm_ranks"] = ranks_json(fm_ranks);
    report.evidence["routis_relations"] = routis.relations().size();
    report.evidence["fm_relations"] = fm.relations().size();
    report.evidence["routis_in_fm"] = count(forward);
    report.evidence["fm_in_routis"] = count(backward);
    report.evidence["membership_field"] = "rationals";
    nlohmann::json missing = nlohmann::json::array();
    for (std::size_t i = 0; i < forward.size(); ++i)
        if (!forward[i]) missing.push_back(routis.relations()[i].to_string());
    for (std::size_t i = 0; i < backward.size(); ++i)
        if (!backward[i]) missing.push_back(fm.relations()[i].to_string());
    report.evidence["non_members"] = missing;

    report.divergent_degree = min_degree(first_divergence(routis_ranks, fm_ranks),
                                         min_degree(lowest_failure(routis.relations(), forward),
                                                    lowest_failure(fm.relations(), backward)));
    report.pass = !report.divergent_degree;
    report.message = report.pass ? "presentations agree over the rationals with ranks " + routis_ranks.to_string()
                                 : "presentations differ";
    report.duration_ms = elapsed_ms(start);
    return report;
}

VerdictReport check_construction(int d, int n, const LargeFamily& family, const VerifyOptions& opts) {
    const auto start = Clock::now();
    VerdictReport report;
    report.scenario = "construction";
    report.evidence["d"] = d;
    report.evidence["n"] = n;
    report.evidence["large_sets"] = family.to_string();

    const BaseGeometry g(d, n);
    const RankTable routis = graded_ranks(build_thm31(g, family), opts.ranks);
    const Walk canonical = canonical_walk(family);
    const RankTable iterated = graded_ranks(iterated_presentation(g, family, canonical), opts.ranks);
    const RankTable oracle = rank_oracle(d, n, family);
    report.evidence["routis_ranks"] = ranks_json(routis);
    report.evidence["iterated_ranks"] = ranks_json(iterated);
    report.evidence["oracle_ranks"] = ranks_json(oracle);
    report.evidence["canonical_walk"] = walk_json(canonical);

    std::optional<int> diverge = min_degree(first_divergence(routis, oracle), first_divergence(iterated, oracle));
    bool walks_ok = true;
    if (opts.all_walks && family.size() <= opts.walk_cap) {
        nlohmann::json walks = nlohmann::json::array();
        for (const Walk& w : all_walks(family, opts.walk_cap)) {
            const RankTable t = graded_ranks(iterated_presentation(g, family, w), opts.ranks);
            walks.push_back({{"walk", walk_json(w)}, {"ranks", ranks_json(t)}});
            if (auto k = first_divergence(t, routis)) {
                walks_ok = false;
                diverge = min_degree(diverge, k);
            }
        }
        report.evidence["walks_checked"] = walks.size();
        report.evidence["walks"] = walks;
    } else {
        report.evidence["walks_checked"] = 0;
        report.evidence["walk_independence"] = opts.all_walks ? "skipped: family exceeds walk cap" : "skipped: canonical walk only";
    }

    report.divergent_degree = diverge;
    report.pass = !diverge && walks_ok;
    report.message = report.pass ? "presentation, iterated construction and oracle agree on " + oracle.to_string()
                                 : "rank tables diverge";
    report.duration_ms = elapsed_ms(start);
    return report;
}

} // namespace chowfm
