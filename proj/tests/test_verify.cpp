#include <doctest.h>

#include "chowfm/verify.hpp"

using namespace chowfm;

TEST_CASE("counterexample scenario") {
    const VerdictReport r = check_counterexample();
    CHECK(r.pass);
    CHECK_FALSE(r.divergent_degree);
    CHECK(r.evidence["keel_step_matches_printed_ring"] == true);
    CHECK(r.evidence["hE_in_ideal_h3"] == false);
    CHECK(r.evidence["kernel_ranks"] == nlohmann::json({0, 0, 1, 1}));
    CHECK(r.evidence["ideal_ranks_h3"] == nlohmann::json({0, 0, 0, 1}));
    CHECK(r.evidence["source_ranks"] == nlohmann::json({1, 2, 2, 1}));
    CHECK(r.evidence["target_ranks"] == nlohmann::json({1, 2, 1}));
}

TEST_CASE("equivalence scenario") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}}) {
        const VerdictReport r = check_thm_equivalence(d, n);
        CHECK(r.pass);
        CHECK(r.evidence["non_members"].empty());
        CHECK(r.evidence["routis_in_fm"] == r.evidence["routis_relations"]);
    }
}

TEST_CASE("construction scenario") {
    const VerdictReport all = check_construction(1, 3, LargeFamily::all_subsets(3));
    CHECK(all.pass);
    CHECK(all.evidence["walks_checked"] == 6);
    CHECK(all.evidence["oracle_ranks"] == nlohmann::json({1, 4, 4, 1}));

    const VerdictReport wall = check_construction(1, 3, large_from_weights(Weights::parse({"1", "1/2", "1/2"})));
    CHECK(wall.pass);

    VerifyOptions canonical_only;
    canonical_only.all_walks = false;
    const VerdictReport quick = check_construction(2, 3, LargeFamily(3, {Subset{1, 2, 3}}), canonical_only);
    CHECK(quick.pass);
    CHECK(quick.evidence["walks_checked"] == 0);
}

TEST_CASE("report json omits timing on request") {
    const VerdictReport r = check_counterexample();
    CHECK(r.to_json().contains("duration_ms"));
    CHECK_FALSE(r.to_json(false).contains("duration_ms"));
    CHECK(r.to_json(false)["divergent_degree"].is_null());
}
