#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "parallel.hpp"

namespace tetraham {

// ---------------------------------------------------------------------------
// Tetrahedral graph T(H)

/// |N(ab) & N(ac) & N(bc)|: the number of tetrahedra of H through edge abc.
inline int tetra_degree(const ThreeGraph& h, const Triple& e)
{
    const auto& [a, b, c] = e;
    return (h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) & h.pair_neighbourhood(b, c))
        .size();
}

/// The 4-graph whose edges are the 4-sets spanning a K4^3 in H.
///
/// Each tetrahedron is found exactly once, from its three smallest vertices.
inline FourGraph tetrahedral_graph(const ThreeGraph& h, int threads = 1)
{
    if (h.n() < 4)
        throw std::invalid_argument("tetrahedral graph needs at least 4 vertices");
    const auto edges = h.edges();
    constexpr std::size_t kChunk = 512;
    const std::size_t chunks = (edges.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<Subset<4>>> found(chunks);
    parallel_for(chunks, threads, [&](std::size_t ci) {
        const std::size_t hi = std::min(edges.size(), (ci + 1) * kChunk);
        for (std::size_t i = ci * kChunk; i < hi; ++i) {
            const auto [a, b, c] = edges[i];
            VertexSet cand = h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) &
                             h.pair_neighbourhood(b, c);
            for (int d = cand.next(c); d >= 0; d = cand.next(d))
                found[ci].push_back({a, b, c, d});
        }
    });
    FourGraph t(h.n());
    for (const auto& chunk : found)
        for (const auto& q : chunk)
            t.add_edge(q);
    return t;
}

// ---------------------------------------------------------------------------
// Tight components

/// Edge -> tight component id, for a 2-, 3- or 4-graph.
///
/// Ids are 0..component_count-1, numbered in order of the lowest-rank edge
/// of each component.
struct TightLabeling {
    int arity = 0;
    int component_count = 0;
    std::vector<Rank> edge_ranks;     ///< increasing
    std::vector<int> component_of_edge;  ///< aligned with edge_ranks

    /// Component of the edge with this rank, or -1 when it is not an edge.
    int component_of_rank(Rank r) const
    {
        auto it = std::lower_bound(edge_ranks.begin(), edge_ranks.end(), r);
        if (it == edge_ranks.end() || *it != r)
            return -1;
        return component_of_edge[static_cast<std::size_t>(it - edge_ranks.begin())];
    }

    template <int K>
    int component_of(Subset<K> e) const
    {
        if (K != arity)
            throw std::invalid_argument("edge arity does not match the labeling");
        if (!all_distinct<K>(e))
            return -1;
        return component_of_rank(colex_rank<K>(sorted<K>(e)));
    }

    friend bool operator==(const TightLabeling&, const TightLabeling&) = default;
};

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace detail

/// Tight components via the closure of "shares arity-1 vertices".
///
/// Consecutive windows of a tight walk share arity-1 vertices, and two edges
/// sharing arity-1 vertices are the two windows of a tight walk on arity+1
/// vertices, so this closure is exactly tight-walk reachability.
template <int K>
TightLabeling tight_components(const UniformGraph<K>& g)
{
    TightLabeling out;
    out.arity = K;
    out.edge_ranks.reserve(g.edge_count());
    g.for_each_rank([&](Rank r) { out.edge_ranks.push_back(r); });

    detail::DisjointSets dsu(out.edge_ranks.size());
    std::vector<int> owner(static_cast<std::size_t>(binomial(g.n(), K - 1)), -1);
    for (std::size_t i = 0; i < out.edge_ranks.size(); ++i) {
        const auto e = colex_unrank<K>(out.edge_ranks[i]);
        for (const auto& f : faces<K>(e)) {
            auto& o = owner[static_cast<std::size_t>(colex_rank<K - 1>(f))];
            if (o < 0)
                o = static_cast<int>(i);
            else
                dsu.unite(i, static_cast<std::size_t>(o));
        }
    }
    std::vector<int> id_of_root(out.edge_ranks.size(), -1);
    out.component_of_edge.resize(out.edge_ranks.size());
    for (std::size_t i = 0; i < out.edge_ranks.size(); ++i) {
        auto r = dsu.find(i);
        if (id_of_root[r] < 0)
            id_of_root[r] = out.component_count++;
        out.component_of_edge[i] = id_of_root[r];
    }
    return out;
}

/// True iff the graph has at least one edge and a single tight component.
template <int K>
bool is_tightly_connected(const UniformGraph<K>& g)
{
    return g.edge_count() > 0 && tight_components(g).component_count == 1;
}

// ---------------------------------------------------------------------------
// The colouring phi

class EdgeNotInTetrahedron : public std::runtime_error {
public:
    explicit EdgeNotInTetrahedron(const Triple& e)
        : std::runtime_error("edge {" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
                             std::to_string(e[2]) + "} lies in no copy of K4^3"),
          edge_(e)
    {}
    const Triple& edge() const { return edge_; }

private:
    Triple edge_;
};

/// Colours every edge of H by the tight component of T(H) holding its
/// tetrahedra, with the derived sets phi(v), phi(uv) and the per-colour
/// pair neighbourhoods N_T(uv).
class PhiColouring {
public:
    /// Throws EdgeNotInTetrahedron when some edge of H lies in no K4^3.
    explicit PhiColouring(const ThreeGraph& h, int threads = 1)
        : h_(h), t_(h.n() >= 4 ? tetrahedral_graph(h, threads) : FourGraph(h.n()))
    {
        lab_ = tight_components(t_);
        const int n = h.n();
        phi_edge_.assign(static_cast<std::size_t>(binomial(n, 3)), -1);
        for (std::size_t i = 0; i < lab_.edge_ranks.size(); ++i) {
            const auto q = colex_unrank<4>(lab_.edge_ranks[i]);
            const int c = lab_.component_of_edge[i];
            for (const auto& f : faces<4>(q)) {
                int& slot = phi_edge_[static_cast<std::size_t>(colex_rank<3>(f))];
                if (slot < 0)
                    slot = c;
                else if (slot != c)
                    throw std::logic_error("tetrahedra sharing a triple landed in different components");
            }
        }
        h.for_each_edge([&](const Triple& e) {
            if (phi_edge_[static_cast<std::size_t>(colex_rank<3>(e))] < 0)
                throw EdgeNotInTetrahedron(e);
        });

        phi_pair_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
        pair_nbr_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
        phi_vertex_.assign(static_cast<std::size_t>(n), {});
        component_vertices_.assign(static_cast<std::size_t>(lab_.component_count), VertexSet{});
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b)
                    continue;
                auto& groups = pair_nbr_[idx(a, b)];
                h.pair_neighbourhood(a, b).for_each([&](int c) {
                    int col = phi(a, b, c);
                    auto it = std::find_if(groups.begin(), groups.end(),
                                           [&](const auto& g) { return g.first == col; });
                    if (it == groups.end())
                        groups.push_back({col, VertexSet{c}});
                    else
                        it->second.insert(c);
                });
                std::sort(groups.begin(), groups.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                auto& ids = phi_pair_[idx(a, b)];
                for (const auto& g : groups) {
                    ids.push_back(g.first);
                    component_vertices_[static_cast<std::size_t>(g.first)].insert(a);
                    component_vertices_[static_cast<std::size_t>(g.first)].insert(b);
                }
            }
        for (int v = 0; v < n; ++v) {
            std::vector<int> ids;
            for (int u = 0; u < n; ++u)
                if (u != v)
                    ids.insert(ids.end(), phi_pair_[idx(v, u)].begin(), phi_pair_[idx(v, u)].end());
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            phi_vertex_[static_cast<std::size_t>(v)] = std::move(ids);
        }
    }

    const ThreeGraph& base() const { return h_; }
    const FourGraph& tetrahedra() const { return t_; }
    const TightLabeling& labeling() const { return lab_; }
    int n() const { return h_.n(); }
    int component_count() const { return lab_.component_count; }

    /// phi(abc), or -1 when abc is not an edge.
    int phi(int a, int b, int c) const
    {
        if (a == b || a == c || b == c)
            return -1;
        return phi_edge_[static_cast<std::size_t>(colex_rank<3>(sorted<3>({a, b, c})))];
    }
    int phi(const Triple& e) const { return phi(e[0], e[1], e[2]); }

    /// phi(v): sorted component ids of edges through v.
    const std::vector<int>& phi_vertex(int v) const
    {
        h_.check_vertex(v);
        return phi_vertex_[static_cast<std::size_t>(v)];
    }

    /// phi(uv): sorted component ids of edges through u and v.
    const std::vector<int>& phi_pair(int u, int v) const
    {
        h_.check_vertex(u);
        h_.check_vertex(v);
        if (u == v)
            throw std::invalid_argument("phi of a pair needs distinct vertices");
        return phi_pair_[idx(u, v)];
    }

    /// N_T(uv) = { w : uvw in E(H), phi(uvw) = T }.
    VertexSet colour_neighbourhood(int u, int v, int component) const
    {
        for (const auto& g : pair_nbr_[idx(u, v)])
            if (g.first == component)
                return g.second;
        return {};
    }

    /// (component, N_T(uv)) groups for the pair, ordered by component id.
    const std::vector<std::pair<int, VertexSet>>& colour_groups(int u, int v) const
    {
        return pair_nbr_[idx(u, v)];
    }

    /// V(T): vertices lying in some edge of the component.
    const VertexSet& component_vertices(int component) const
    {
        return component_vertices_.at(static_cast<std::size_t>(component));
    }

    /// Components containing every vertex.
    std::vector<int> spanning_components() const
    {
        std::vector<int> out;
        const VertexSet all = VertexSet::range(n());
        for (int c = 0; c < component_count(); ++c)
            if (n() > 0 && all.is_subset_of(component_vertices_[static_cast<std::size_t>(c)]))
                out.push_back(c);
        return out;
    }

    /// The "red" component: lowest spanning id, else the lowest id (-1 if none).
    int primary_component() const
    {
        auto s = spanning_components();
        if (!s.empty())
            return s.front();
        return component_count() > 0 ? 0 : -1;
    }

    bool in_phi_vertex(int v, int component) const
    {
        const auto& ids = phi_vertex(v);
        return std::binary_search(ids.begin(), ids.end(), component);
    }

private:
    std::size_t idx(int a, int b) const
    {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(h_.n()) +
               static_cast<std::size_t>(b);
    }

    ThreeGraph h_;
    FourGraph t_;
    TightLabeling lab_;
    std::vector<int> phi_edge_;
    std::vector<std::vector<int>> phi_pair_;
    std::vector<std::vector<int>> phi_vertex_;
    std::vector<std::vector<std::pair<int, VertexSet>>> pair_nbr_;
    std::vector<VertexSet> component_vertices_;
};

inline PhiColouring phi_colouring(const ThreeGraph& h, int threads = 1)
{
    return PhiColouring(h, threads);
}

/// Ids T with T in phi(v) for every vertex v.
inline std::vector<int> spanning_components(const PhiColouring& pc)
{
    return pc.spanning_components();
}

}  // namespace tetraham
