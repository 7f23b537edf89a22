#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypergraph.hpp"
#include "rng.hpp"

namespace tetraham {

/// Part structure of the extremal construction. Parts are labelled 1..4;
/// index 0 of part_sizes is V1.
struct ConstructionSpec {
    int n = 0;
    std::array<int, 4> part_sizes{};
    std::vector<int> part_of;  ///< vertex -> part label in 1..4

    VertexSet part(int label) const
    {
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (part_of[static_cast<std::size_t>(v)] == label)
                s.insert(v);
        return s;
    }
};

/// Which of the four edge patterns of the construction a triple satisfies
/// (1..4), or 0 for none. The patterns are mutually exclusive.
inline int construction_edge_case(const ConstructionSpec& spec, const Triple& e)
{
    std::array<int, 5> cnt{};
    for (int v : e)
        ++cnt[static_cast<std::size_t>(spec.part_of[static_cast<std::size_t>(v)])];
    if (cnt[1] == 2)
        return 1;
    if (cnt[1] == 1 && cnt[2] <= 1 && cnt[3] <= 1 && cnt[4] <= 1)
        return 2;
    if (cnt[2] == 3 || cnt[3] == 3 || cnt[4] == 3)
        return 3;
    if (cnt[1] == 0) {
        bool has_two = false, has_one = false;
        for (int i = 2; i <= 4; ++i) {
            has_two |= cnt[static_cast<std::size_t>(i)] == 2;
            has_one |= cnt[static_cast<std::size_t>(i)] == 1;
        }
        if (has_two && has_one)
            return 4;
    }
    return 0;
}

/// Balanced 4-part split: vertices 0.. go to V1, then V2, V3, V4 in
/// contiguous blocks; when 4 does not divide n the extra vertices go to
/// V2, V3, V4 (in that order) so that the largest part lies outside V1.
inline ConstructionSpec balanced_parts(int n)
{
    ConstructionSpec spec;
    spec.n = n;
    const int q = n / 4, r = n % 4;
    spec.part_sizes = {q, q, q, q};
    for (int i = 0; i < r; ++i)
        ++spec.part_sizes[static_cast<std::size_t>(1 + i)];
    for (int label = 1; label <= 4; ++label)
        for (int i = 0; i < spec.part_sizes[static_cast<std::size_t>(label - 1)]; ++i)
            spec.part_of.push_back(label);
    return spec;
}

struct Construction {
    ThreeGraph graph;
    ConstructionSpec spec;
};

/// The extremal 3-graph with minimum codegree floor(3n/4) - 2 and no square
/// of a tight Hamilton cycle. Requires n > 4.
inline Construction pikhurko_construction(int n)
{
    if (n <= 4)
        throw std::invalid_argument("the extremal construction needs n > 4");
    check_vertex_count(n);
    Construction out{ThreeGraph(n), balanced_parts(n)};
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a)
                if (construction_edge_case(out.spec, {a, b, c}) != 0)
                    out.graph.add_edge({a, b, c});
    return out;
}

inline ThreeGraph complete(int n)
{
    if (n < 3)
        throw std::invalid_argument("complete 3-graph needs n >= 3");
    ThreeGraph h(n);
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a)
                h.add_edge({a, b, c});
    return h;
}

/// All triples meeting three distinct parts; parts are consecutive blocks.
inline ThreeGraph complete_partite(const std::vector<int>& sizes)
{
    if (sizes.size() < 3)
        throw std::invalid_argument("complete partite 3-graph needs at least 3 parts");
    std::vector<int> part_of;
    for (std::size_t p = 0; p < sizes.size(); ++p) {
        if (sizes[p] < 0)
            throw std::invalid_argument("negative part size");
        part_of.insert(part_of.end(), static_cast<std::size_t>(sizes[p]), static_cast<int>(p));
    }
    const int n = static_cast<int>(part_of.size());
    ThreeGraph h(n);
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a)
                if (part_of[a] != part_of[b] && part_of[a] != part_of[c] && part_of[b] != part_of[c])
                    h.add_edge({a, b, c});
    return h;
}

/// Binomial random 3-graph: each triple independently with probability p.
inline ThreeGraph random_threegraph(int n, double p, std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    ThreeGraph h(n);
    Rng rng(seed);
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a)
                if (rng.uniform() < p)
                    h.add_edge({a, b, c});
    return h;
}

/// Edge-deletion chain from the complete 3-graph: repeatedly removes a
/// uniformly random edge whose removal keeps every codegree >= d, until no
/// such edge is left, the edge density drops to target_density, or
/// max_steps deletions were made. Returns nullopt when d > n - 2.
///
/// Deletable edges only ever become undeletable, so scanning a uniformly
/// shuffled edge list once and deleting whenever allowed realises the chain.
inline std::optional<ThreeGraph> conditioned_sampler(int n, int d, std::uint64_t seed,
                                                     std::uint64_t max_steps = ~std::uint64_t{0},
                                                     double target_density = 0.0)
{
    if (n < 3 || d > n - 2)
        return std::nullopt;
    ThreeGraph h = complete(n);
    std::vector<Triple> order = h.edges();
    Rng rng(seed);
    rng.shuffle(order);
    const double total = static_cast<double>(order.size());
    std::uint64_t steps = 0;
    for (const auto& [a, b, c] : order) {
        if (steps >= max_steps)
            break;
        if (target_density > 0.0 && static_cast<double>(h.edge_count()) <= target_density * total)
            break;
        if (h.pair_neighbourhood(a, b).size() > d && h.pair_neighbourhood(a, c).size() > d &&
            h.pair_neighbourhood(b, c).size() > d) {
            h.remove_edge({a, b, c});
            ++steps;
        }
    }
    if (min_codegree(h) < d)
        throw std::logic_error("conditioned sampler broke its codegree floor");
    return h;
}

}  // namespace tetraham
