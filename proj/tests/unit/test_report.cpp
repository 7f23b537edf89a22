#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tetraham/io.hpp"
#include "tetraham/report.hpp"

using namespace tetraham;

TEST_CASE("analysis fields match recomputation", "[report]")
{
    const auto c = pikhurko_construction(16);
    const auto r = analyze(c.graph);
    CHECK(r.n == 16);
    CHECK(r.edge_count == c.graph.edge_count());
    CHECK(r.delta2 == oracle::min_codegree(c.graph));
    CHECK(r.delta2 == 10);
    CHECK(r.tetra_edge_count == oracle::k4s(c.graph).size());
    const oracle::Phi phi(c.graph);
    CHECK(r.tetra_component_count == phi.count);
    CHECK(r.phi_defined);
    std::vector<int> spanning;
    for (int t = 0; t < phi.count; ++t)
        if (phi.component_vertices(t).size() == 16)
            spanning.push_back(t);
    CHECK(r.spanning_component_ids == spanning);
    CHECK(r.per_lemma.size() == kAllLemmas.size());

    const auto j = to_json(r, false);
    CHECK(j["schema"] == 1);
    CHECK(j["delta2"] == 10);
    CHECK_FALSE(j.contains("timings"));
    CHECK(to_json(r, true).contains("timings"));
    CHECK(j["per_lemma"].size() == kAllLemmas.size());
    CHECK(j["per_lemma"][0]["id"] == "FACT_3_1");
}

TEST_CASE("analysis without phi", "[report]")
{
    ThreeGraph h(7);
    h.add_edge({0, 1, 2});
    const auto r = analyze(h);
    CHECK_FALSE(r.phi_defined);
    CHECK_FALSE(r.phi_error.empty());
    CHECK(r.tetra_component_count == 0);
    CHECK(*r.delta2_positive == 1);
    const auto j = to_json(r, false);
    CHECK(j.contains("phi_error"));
    CHECK(j["delta2_positive"] == 1);
}

TEST_CASE("graphs survive the text format", "[report]")
{
    Rng rng(12);
    for (int round = 0; round < 50; ++round) {
        const ThreeGraph h = oracle::random_graph(12, 0.5, rng);
        const ThreeGraph back = from_text<3>(to_text(h));
        CHECK(back.edges() == h.edges());
        CHECK(to_json(analyze(back), false).dump() == to_json(analyze(h), false).dump());
    }
}

TEST_CASE("absorbers and donation paths survive json", "[report]")
{
    const ThreeGraph k = complete(60);
    const auto a = find_absorber(k, {0, 1, 2, 3}, 100000, 5);
    REQUIRE(a.found());
    const Json ja = Json::parse(to_json(*a.value).dump());
    CHECK(absorber_from_json(ja) == *a.value);
    Json bad = ja;
    bad["x"][0] = bad["y"][0];
    CHECK_THROWS_AS(absorber_from_json(bad), std::invalid_argument);
    bad = ja;
    bad["u"].erase(0);
    CHECK_THROWS_AS(absorber_from_json(bad), std::invalid_argument);

    const auto d = find_donation_path(k, {}, 100000);
    REQUIRE(d.found());
    CHECK(donation_from_json(Json::parse(to_json(*d.value).dump())) == *d.value);
}

TEST_CASE("Hamilton result json", "[report]")
{
    const auto r = find_squared_tight_hamilton_cycle(pikhurko_construction(8).graph, 1u << 30);
    const auto j = to_json(r);
    CHECK(j["result"] == "none");
    CHECK(j["exhaustive"] == true);
    CHECK(j["cycle"].empty());
}

TEST_CASE("threshold mining", "[report]")
{
    const auto rows = mine_threshold(18, {13, 14, 15, 16}, 5, 11);
    REQUIRE(rows.size() == 20);
    for (const auto& r : rows) {
        const auto h = conditioned_sampler(18, r.d, Rng(11).split(static_cast<std::uint64_t>(r.d))
                                                            .split(static_cast<std::uint64_t>(r.sample))
                                                            .seed());
        const oracle::Phi phi(*h);
        CHECK(r.tetra_components == phi.count);
        CHECK(r.lem14_ok.has_value() == (9 * oracle::min_codegree(*h) > 7 * 18));
        CHECK(r.absorber_hits == 0);
        if (r.d == 16)
            CHECK(r.tetra_components == 1);
    }
    const auto csv = to_csv(rows);
    CHECK(csv.rfind(std::string(kMineHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
    CHECK(to_csv(mine_threshold(18, {13, 14, 15, 16}, 5, 11, 4)) == csv);
    CHECK_THROWS_AS(mine_threshold(18, {17}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mine_threshold(18, {3}, -1, 1), std::invalid_argument);
}

TEST_CASE("demo absorb round trip", "[report]")
{
    const auto h = *conditioned_sampler(45, 37, 3);
    const auto d = demo_absorb(h, 3, 1000000);
    REQUIRE(d.ok());
    CHECK(d.soundness.ok());
    CHECK(d.final_valid);
    CHECK(oracle::squared_path(h, d.final_path.vertices()));
    std::vector<std::vector<int>> before, after;
    for (const auto& p : d.absorbed.before)
        before.push_back(p.vertices());
    for (const auto& p : d.absorbed.after)
        after.push_back(p.vertices());
    CHECK(check_absorption(h, before, after, d.leftover).ok());
    const auto j = to_json(d);
    CHECK(j["ok"] == true);
    CHECK(j["schema"] == 1);
    CHECK(to_json(demo_absorb(h, 3, 1000000)).dump() == j.dump());
}

TEST_CASE("soundness oracle catches broken rewrites", "[report]")
{
    const ThreeGraph k = complete(12);
    const std::vector<std::vector<int>> before = {{0, 1, 2, 3, 4, 5}};
    CHECK(check_absorption(k, before, {{0, 1, 2, 9, 3, 4, 5}}, {9}).ok());
    CHECK_FALSE(check_absorption(k, before, {{0, 1, 9, 2, 3, 4, 5}}, {9}).ends_preserved);
    CHECK_FALSE(check_absorption(k, before, {{0, 1, 2, 3, 4, 5}}, {9}).coverage);
    CHECK_FALSE(check_absorption(k, {{0, 1, 2, 3}, {5, 6, 7, 8}}, {{0, 1, 2, 3}, {5, 6, 0, 8}}, {}).disjoint);
    ThreeGraph h = k;
    h.remove_edge({2, 3, 9});
    CHECK_FALSE(check_absorption(h, before, {{0, 1, 2, 9, 3, 4, 5}}, {9}).paths_valid);
}
