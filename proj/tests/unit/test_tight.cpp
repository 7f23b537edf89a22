#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tetraham/generators.hpp"
#include "tetraham/tight.hpp"

using namespace tetraham;

namespace {

std::vector<oracle::Quad> quads_of(const FourGraph& t)
{
    std::vector<oracle::Quad> out;
    t.for_each_edge([&](const Subset<4>& q) { out.push_back({q[0], q[1], q[2], q[3]}); });
    return out;
}

}  // namespace

TEST_CASE("tetrahedral graph of small complete graphs", "[tight]")
{
    const auto t4 = tetrahedral_graph(complete(4));
    REQUIRE(t4.edge_count() == 1);
    REQUIRE(t4.has_edge({0, 1, 2, 3}));
    REQUIRE(tetrahedral_graph(complete(5)).edge_count() == 5);
    REQUIRE_THROWS(tetrahedral_graph(complete(3)));
}

TEST_CASE("tetrahedral graph matches brute-force K4 enumeration", "[tight]")
{
    Rng rng(21);
    for (int round = 0; round < 300; ++round) {
        const int n = 4 + static_cast<int>(rng.below(10));
        const auto h = oracle::random_graph(n, 0.3 + 0.6 * rng.uniform(), rng);
        const auto t = tetrahedral_graph(h, 1 + static_cast<int>(rng.below(3)));
        REQUIRE(quads_of(t) == oracle::k4s(h));
        h.for_each_edge([&](const Triple& e) { REQUIRE(tetra_degree(h, e) == oracle::tetra_degree(h, e[0], e[1], e[2])); });
    }
}

TEST_CASE("tight components of tiny graphs", "[tight]")
{
    FourGraph one(4);
    one.add_edge({0, 1, 2, 3});
    REQUIRE(tight_components(one).component_count == 1);

    ThreeGraph two(6);
    two.add_edge({0, 1, 2});
    two.add_edge({3, 4, 5});
    REQUIRE(tight_components(two).component_count == 2);

    ThreeGraph shared(4);
    shared.add_edge({0, 1, 2});
    shared.add_edge({0, 1, 3});
    REQUIRE(tight_components(shared).component_count == 1);

    REQUIRE(tight_components(FourGraph(6)).component_count == 0);
    REQUIRE_FALSE(is_tightly_connected(FourGraph(6)));
    REQUIRE(is_tightly_connected(tetrahedral_graph(complete(7))));
    REQUIRE_FALSE(is_tightly_connected(tetrahedral_graph(pikhurko_construction(16).graph)));
}

TEST_CASE("tight components agree with tight-walk BFS on random 3- and 4-graphs", "[tight][oracle]")
{
    Rng rng(8);
    for (int round = 0; round < 1000; ++round) {
        const int n = 4 + static_cast<int>(rng.below(5));
        const auto h = oracle::random_graph(n, 0.15 + 0.5 * rng.uniform(), rng);
        const auto lab3 = tight_components(h);
        std::vector<oracle::Tri> es;
        h.for_each_edge([&](const Triple& e) { es.push_back({e[0], e[1], e[2]}); });
        REQUIRE(lab3.component_of_edge == oracle::walk_components<3>(n, es));

        const auto t = tetrahedral_graph(h);
        const auto qs = quads_of(t);
        REQUIRE(tight_components(t).component_of_edge == oracle::walk_components<4>(n, qs));
    }
}

TEST_CASE("tight labels satisfy the labeling invariants", "[tight]")
{
    Rng rng(9);
    for (int round = 0; round < 50; ++round) {
        const auto h = oracle::random_tetra_union(9, 1 + static_cast<int>(rng.below(6)), rng);
        const auto t = tetrahedral_graph(h);
        const auto lab = tight_components(t);
        std::set<int> ids(lab.component_of_edge.begin(), lab.component_of_edge.end());
        REQUIRE(static_cast<int>(ids.size()) == lab.component_count);
        if (!ids.empty())
            REQUIRE(*ids.rbegin() == lab.component_count - 1);
        const auto qs = quads_of(t);
        for (const auto& p : qs)
            for (const auto& q : qs) {
                int shared = 0;
                for (int v : p)
                    shared += std::count(q.begin(), q.end(), v) > 0;
                if (shared == 3)
                    REQUIRE(lab.component_of<4>({p[0], p[1], p[2], p[3]}) == lab.component_of<4>({q[0], q[1], q[2], q[3]}));
            }
    }
}

TEST_CASE("phi colouring of complete graphs", "[tight][phi]")
{
    const PhiColouring pc(complete(5));
    complete(5).for_each_edge([&](const Triple& e) { REQUIRE(pc.phi(e) == 0); });
    for (int v = 0; v < 5; ++v)
        REQUIRE(pc.phi_vertex(v) == std::vector<int>{0});
    REQUIRE(spanning_components(PhiColouring(complete(6))) == std::vector<int>{0});

    ThreeGraph single(5);
    single.add_edge({0, 1, 2});
    try {
        PhiColouring bad(single);
        FAIL("phi accepted an edge outside every tetrahedron");
    } catch (const EdgeNotInTetrahedron& e) {
        REQUIRE(e.edge() == Triple{0, 1, 2});
    }
}

TEST_CASE("phi colouring agrees with brute force", "[tight][phi][oracle]")
{
    Rng rng(12);
    for (int round = 0; round < 300; ++round) {
        const int n = 5 + static_cast<int>(rng.below(5));
        const auto h = oracle::random_tetra_union(n, 1 + static_cast<int>(rng.below(8)), rng);
        const PhiColouring pc(h);
        const oracle::Phi ref(h);
        REQUIRE(pc.component_count() == ref.count);
        h.for_each_edge([&](const Triple& e) { REQUIRE(pc.phi(e) == ref.phi(e[0], e[1], e[2])); });
        for (int u = 0; u < n; ++u) {
            const auto fu = ref.vertex(u);
            REQUIRE(pc.phi_vertex(u) == std::vector<int>(fu.begin(), fu.end()));
            for (int v = 0; v < n; ++v) {
                if (u == v)
                    continue;
                const auto fp = ref.pair(u, v);
                REQUIRE(pc.phi_pair(u, v) == std::vector<int>(fp.begin(), fp.end()));
                for (int c : fp) {
                    VertexSet want;
                    for (int w = 0; w < n; ++w)
                        if (oracle::edge(h, u, v, w) && ref.phi(u, v, w) == c)
                            want.insert(w);
                    REQUIRE(pc.colour_neighbourhood(u, v, c) == want);
                }
            }
        }
        for (int c = 0; c < ref.count; ++c) {
            const auto cv = ref.component_vertices(c);
            REQUIRE(pc.component_vertices(c) == VertexSet::of(cv));
        }
    }
}

TEST_CASE("phi on the extremal construction", "[tight][phi]")
{
    const auto c = pikhurko_construction(24);
    const PhiColouring pc(c.graph);
    const oracle::Phi ref(c.graph);
    const VertexSet v1 = c.spec.part(1);
    for (int v = 0; v < 24; ++v) {
        REQUIRE(pc.phi_vertex(v).size() == ref.vertex(v).size());
        REQUIRE(pc.phi_vertex(v).size() == (v1.contains(v) ? 1u : 2u));
    }
    const auto span = spanning_components(pc);
    std::vector<int> want;
    for (int t = 0; t < ref.count; ++t)
        if (ref.component_vertices(t).size() == 24)
            want.push_back(t);
    REQUIRE(span == want);
}

TEST_CASE("spanning components follow the definition", "[tight][phi]")
{
    ThreeGraph h(8);
    for (int base : {0, 4})
        for (int a = base; a < base + 4; ++a)
            for (int b = a + 1; b < base + 4; ++b)
                for (int c = b + 1; c < base + 4; ++c)
                    h.add_edge({a, b, c});
    const PhiColouring pc(h);
    REQUIRE(pc.component_count() == 2);
    REQUIRE(spanning_components(pc).empty());
}
