#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tetraham/generators.hpp"
#include "tetraham/verifiers.hpp"

using namespace tetraham;

namespace {

using oracle::edge;
using oracle::Naive;

ScanOptions scan_all()
{
    ScanOptions o;
    o.mode = VerifyMode::scan;
    o.max_witnesses = 1 << 20;
    return o;
}

const LemmaReport& pick(const std::vector<LemmaReport>& rs, LemmaId id)
{
    for (const auto& r : rs)
        if (r.id == id)
            return r;
    throw std::logic_error("report missing");
}

}  // namespace

TEST_CASE("scan counts agree with naive enumerators", "[verifiers]")
{
    Rng rng(2024);
    for (int round = 0; round < 10000; ++round) {
        const int n = 5 + static_cast<int>(rng.below(3));
        const int copies = 1 + static_cast<int>(rng.below(6));
        const ThreeGraph h = oracle::random_tetra_union(n, copies, rng);
        const PhiColouring pc(h);
        const oracle::Phi phi(h);
        REQUIRE(pc.component_count() == phi.count);
        const Naive nv(h, phi);
        const auto rs = verify_all(pc, scan_all());
        INFO("round " << round);
        CHECK(pick(rs, LemmaId::FACT_3_1).violations == nv.fact_3_1());
        CHECK(pick(rs, LemmaId::FACT_3_2).violations == nv.fact_3_2());
        CHECK(pick(rs, LemmaId::FACT_3_4).violations == nv.fact_3_4());
        CHECK(pick(rs, LemmaId::PROP_3_5).violations == nv.prop_3_5());
        const auto [proper, three] = nv.lemma_3_8_cycles();
        CHECK(pick(rs, LemmaId::LEM_3_8i).violations == proper);
        CHECK(pick(rs, LemmaId::LEM_3_8ii).violations == three);
        CHECK(pick(rs, LemmaId::LEM_3_8iii).violations == nv.lemma_3_8_paths());
        CHECK(pick(rs, LemmaId::LEM_3_8iv).violations == nv.lemma_3_8_pairs());
        CHECK(pick(rs, LemmaId::LEM_3_9).violations == nv.lemma_3_9());
        CHECK(pick(rs, LemmaId::PROP_3_10).violations == nv.prop_3_10());
        CHECK(pick(rs, LemmaId::PROP_3_13).violations == nv.prop_3_13());
        CHECK(pick(rs, LemmaId::PROP_3_16).violations == nv.prop_3_16());
        const auto& k = pick(rs, LemmaId::LEM_1_4);
        CHECK(*k.measure == phi.count);
        CHECK(k.conclusion_holds == (phi.count == 1));
        CHECK(pick(rs, LemmaId::LEM_3_12).conclusion_holds == (phi.count <= 2));
        for (const auto& r : rs) {
            CHECK(r.witnesses.size() <= std::max<std::uint64_t>(r.violations, 1));
            if (r.id != LemmaId::LEM_3_17iii)
                CHECK(r.witnesses.size() == r.violations);
        }
    }
}

TEST_CASE("walk pattern counts agree with naive enumeration", "[verifiers]")
{
    Rng rng(77);
    for (int round = 0; round < 400; ++round) {
        const int n = 5 + static_cast<int>(rng.below(2));
        const ThreeGraph h = oracle::random_tetra_union(n, 2 + static_cast<int>(rng.below(4)), rng);
        const PhiColouring pc(h);
        const oracle::Phi phi(h);
        const Naive nv(h, phi);
        for (const auto& p : default_walk_patterns())
            CHECK(scan_walk_pattern(pc, p, scan_all()).violations == nv.walks(p.symbols));
        const WalkPattern mono{LemmaId::LEM_3_14, {0, 0}};
        CHECK(scan_walk_pattern(pc, mono, scan_all()).violations == nv.walks(mono.symbols));
    }
}

TEST_CASE("assert mode stops at the first violation", "[verifiers]")
{
    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        const ThreeGraph h = oracle::random_tetra_union(7, 5, rng);
        const PhiColouring pc(h);
        const auto scan = verify_all(pc, scan_all());
        const auto first = verify_all(pc);
        REQUIRE(scan.size() == first.size());
        for (std::size_t i = 0; i < scan.size(); ++i) {
            CHECK(scan[i].conclusion_holds == first[i].conclusion_holds);
            if (!first[i].conclusion_holds && first[i].id != LemmaId::LEM_3_17iii)
                CHECK(first[i].witnesses.size() == 1);
        }
    }
}

TEST_CASE("node budget marks reports exhausted", "[verifiers]")
{
    const ThreeGraph h = complete(9);
    const PhiColouring pc(h);
    ScanOptions o = scan_all();
    o.node_budget = 5;
    const auto r = verify(pc, {LemmaId::FACT_3_1}, o).front();
    CHECK(r.budget_exhausted);
    CHECK(r.checked_universe_size <= 6);
}

TEST_CASE("parallel scans equal serial scans", "[verifiers]")
{
    Rng rng(99);
    for (int round = 0; round < 50; ++round) {
        const ThreeGraph h = oracle::random_tetra_union(8, 6, rng);
        const PhiColouring pc(h);
        ScanOptions serial = scan_all();
        ScanOptions par = scan_all();
        par.threads = 4;
        const auto a = verify_all(pc, serial);
        const auto b = verify_all(pc, par);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].violations == b[i].violations);
            CHECK(a[i].witnesses == b[i].witnesses);
            CHECK(a[i].checked_universe_size == b[i].checked_universe_size);
        }
    }
}

namespace {

std::optional<CommonNeighbour> brute_common(const ThreeGraph& h, const std::vector<Pair>& fam,
                                            std::optional<std::size_t> fixed)
{
    for (std::size_t drop = 0; drop < fam.size(); ++drop) {
        if (fixed && *fixed == drop)
            continue;
        for (int u = 0; u < h.n(); ++u) {
            bool all = true;
            for (std::size_t j = 0; j < fam.size() && all; ++j)
                if (j != drop)
                    all = edge(h, fam[j][0], fam[j][1], u);
            if (all)
                return CommonNeighbour{drop, u};
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("common neighbour checks agree with brute force", "[verifiers]")
{
    Rng rng(31);
    for (int round = 0; round < 2000; ++round) {
        const int n = 6 + static_cast<int>(rng.below(8));
        const ThreeGraph h = oracle::random_graph(n, 0.5 + 0.5 * rng.uniform(), rng);
        const auto fam9 = detail::random_pair_family(rng, n, 1 + rng.below(9));
        CHECK(check_common_neighbour_9(h, fam9) == brute_common(h, fam9, std::nullopt));
        const auto fam8 = detail::random_pair_family(rng, n, 1 + rng.below(8));
        const std::size_t fixed = rng.below(fam8.size());
        CHECK(check_common_neighbour_fixed(h, fam8, fixed) == brute_common(h, fam8, fixed));
    }
    const ThreeGraph k = complete(10);
    REQUIRE_THROWS_AS(check_common_neighbour_9(k, std::vector<Pair>(10, Pair{0, 1})), std::invalid_argument);
    REQUIRE_THROWS_AS(check_common_neighbour_9(k, {{0, 1}, {1, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(check_common_neighbour_9(k, {{0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(check_common_neighbour_fixed(k, {{0, 1}}, 1), std::out_of_range);
}

TEST_CASE("common neighbour assertion on dense graphs", "[verifiers]")
{
    const ThreeGraph k = complete(12);
    std::vector<Pair> fam = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}, {0, 2}, {1, 3}, {4, 6}};
    const auto c = assert_common_neighbour_9(k, fam);
    CHECK(c == *brute_common(k, fam, std::nullopt));
    CHECK(c.dropped == 2);
    CHECK(c.vertex == 5);
    CHECK_THROWS_AS(assert_common_neighbour_9(ThreeGraph(12), fam), std::invalid_argument);
}

TEST_CASE("lemma tags parse singly and in groups", "[verifiers]")
{
    CHECK(parse_lemma_tag("LEM_3_9") == std::vector<LemmaId>{LemmaId::LEM_3_9});
    CHECK(parse_lemma_tag("PROP_3_6").size() == 2);
    CHECK(parse_lemma_tag("LEM_3_8").size() == 4);
    CHECK(parse_lemma_tag("LEM_3_17").size() == 3);
    CHECK_THROWS_AS(parse_lemma_tag("LEM_9_9"), std::invalid_argument);
    for (LemmaId id : kAllLemmas)
        CHECK(parse_lemma_tag(to_string(id)) == std::vector<LemmaId>{id});
}

TEST_CASE("seven-ninths test is strict", "[verifiers]")
{
    CHECK_FALSE(above_seven_ninths(7, 9));
    CHECK(above_seven_ninths(8, 9));
    CHECK_FALSE(above_seven_ninths(28, 36));
    CHECK(above_seven_ninths(29, 36));
}

TEST_CASE("complete graph satisfies every conclusion", "[verifiers]")
{
    const ThreeGraph k = complete(10);
    const PhiColouring pc(k);
    ScanOptions o = scan_all();
    o.families = 32;
    for (const auto& r : verify_all(pc, o)) {
        INFO(to_string(r.id));
        if (r.id == LemmaId::LEM_3_17iii || r.id == LemmaId::PROP_3_6i || r.id == LemmaId::PROP_3_6ii)
            continue;
        CHECK(r.conclusion_holds);
        CHECK_FALSE(r.failed_assertion());
    }
    const auto rs = verify_all(pc, o);
    CHECK(pick(rs, LemmaId::LEM_1_4).hypothesis_met);
    CHECK(*pick(rs, LemmaId::LEM_1_4).measure == 1);
    for (const auto& r : scan_two_colour_patterns(pc, o))
        CHECK_FALSE(r.hypothesis_met);
}

TEST_CASE("three tetrahedra through one vertex give it three colours", "[verifiers]")
{
    ThreeGraph h(10);
    for (int base : {1, 4, 7})
        for (const auto& t : std::vector<Triple>{{0, base, base + 1}, {0, base, base + 2}, {0, base + 1, base + 2},
                                                 {base, base + 1, base + 2}})
            h.add_edge(t);
    const PhiColouring pc(h);
    REQUIRE(pc.component_count() == 3);
    const auto r = check_vertex_colour_bound(pc, scan_all());
    CHECK(r.violations == 1);
    CHECK(*r.measure == 3);
    CHECK(r.witness()->vertices == std::vector<int>{0});
    CHECK_FALSE(r.hypothesis_met);
    CHECK_FALSE(r.failed_assertion());
}

TEST_CASE("extremal construction has two colours and is outside the hypothesis", "[verifiers]")
{
    for (int n : {12, 16, 20}) {
        const auto c = pikhurko_construction(n);
        const PhiColouring pc(c.graph);
        const auto rs = check_component_count(pc);
        CHECK(*rs[0].measure == 2);
        CHECK(rs[0].conclusion_holds);
        CHECK_FALSE(rs[1].conclusion_holds);
        CHECK_FALSE(rs[1].failed_assertion());
    }
}

TEST_CASE("graphs without phi fall back to component counts", "[verifiers]")
{
    ThreeGraph h(6);
    h.add_edge({0, 1, 2});
    CHECK_THROWS_AS(PhiColouring(h), EdgeNotInTetrahedron);
    const auto rs = verify_without_phi(h, std::vector<LemmaId>(kAllLemmas.begin(), kAllLemmas.end()), "x");
    CHECK(rs.size() == kAllLemmas.size());
    CHECK(*pick(rs, LemmaId::LEM_1_4).measure == 0);
    CHECK_FALSE(pick(rs, LemmaId::LEM_1_4).conclusion_holds);
    CHECK_FALSE(pick(rs, LemmaId::FACT_3_1).hypothesis_met);
}
