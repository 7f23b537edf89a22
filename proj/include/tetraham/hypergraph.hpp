#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "vertex_set.hpp"

namespace tetraham {

/// K-uniform hypergraph on vertices 0..n-1 (K in {2, 3, 4}).
///
/// Edge membership is a bit vector indexed by the colex rank of the sorted
/// edge. Arity 2 and 3 additionally keep neighbourhood bitsets (N(v) and
/// N(ab) respectively) in sync, which every downstream scan relies on.
template <int K>
class UniformGraph {
    static_assert(K >= 2 && K <= 4, "only 2-, 3- and 4-graphs are supported");

public:
    static constexpr int arity = K;
    using Edge = Subset<K>;

    UniformGraph() : UniformGraph(0) {}

    explicit UniformGraph(int n) : n_(n)
    {
        check_vertex_count(n);
        bits_.assign((binomial(n, K) + 63) / 64, 0);
        if constexpr (K == 2)
            nbr_.assign(static_cast<std::size_t>(n), VertexSet{});
        if constexpr (K == 3)
            nbr_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), VertexSet{});
    }

    template <typename Range>
    UniformGraph(int n, const Range& edges) : UniformGraph(n)
    {
        for (const auto& e : edges)
            add_edge(e);
    }

    int n() const { return n_; }
    std::size_t edge_count() const { return m_; }
    Rank rank_space() const { return binomial(n_, K); }

    /// Validates range and distinctness, returns the sorted edge.
    Edge normalize(Edge e) const
    {
        for (int v : e)
            if (v < 0 || v >= n_)
                throw std::out_of_range("vertex " + std::to_string(v) + " outside 0.." +
                                        std::to_string(n_ - 1));
        e = sorted<K>(e);
        for (int i = 0; i + 1 < K; ++i)
            if (e[i] == e[i + 1])
                throw std::invalid_argument("edge has a repeated vertex " + std::to_string(e[i]));
        return e;
    }

    bool has_edge(Edge e) const
    {
        for (int v : e)
            if (v < 0 || v >= n_)
                return false;
        if constexpr (K == 3) {
            if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2])
                return false;
            return nbr_[pair_index(e[0], e[1])].contains(e[2]);
        } else if constexpr (K == 2) {
            return e[0] != e[1] && nbr_[static_cast<std::size_t>(e[0])].contains(e[1]);
        } else {
            if (!all_distinct<K>(e))
                return false;
            return has_rank(colex_rank<K>(sorted<K>(e)));
        }
    }

    bool has_rank(Rank r) const
    {
        return r < rank_space() && ((bits_[r >> 6] >> (r & 63)) & 1) != 0;
    }

    /// Returns true when the edge was not present before.
    bool add_edge(Edge e)
    {
        e = normalize(e);
        Rank r = colex_rank<K>(e);
        if (has_rank(r))
            return false;
        bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
        ++m_;
        update_nbr(e, true);
        return true;
    }

    bool remove_edge(Edge e)
    {
        e = normalize(e);
        Rank r = colex_rank<K>(e);
        if (!has_rank(r))
            return false;
        bits_[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
        --m_;
        update_nbr(e, false);
        return true;
    }

    /// Visits every edge (sorted) in increasing colex rank.
    template <typename F>
    void for_each_edge(F&& f) const
    {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t x = bits_[w];
            while (x) {
                Rank r = static_cast<Rank>(w) * 64 + static_cast<Rank>(std::countr_zero(x));
                f(colex_unrank<K>(r));
                x &= x - 1;
            }
        }
    }

    template <typename F>
    void for_each_rank(F&& f) const
    {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t x = bits_[w];
            while (x) {
                f(static_cast<Rank>(w) * 64 + static_cast<Rank>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(m_);
        for_each_edge([&](const Edge& e) { out.push_back(e); });
        return out;
    }

    /// N(v) for a 2-graph.
    const VertexSet& neighbours(int v) const
        requires(K == 2)
    {
        check_vertex(v);
        return nbr_[static_cast<std::size_t>(v)];
    }

    /// N(ab) for a 3-graph: every c with abc an edge.
    const VertexSet& pair_neighbourhood(int a, int b) const
        requires(K == 3)
    {
        check_vertex(a);
        check_vertex(b);
        return nbr_[pair_index(a, b)];
    }

    void check_vertex(int v) const
    {
        if (v < 0 || v >= n_)
            throw std::out_of_range("vertex " + std::to_string(v) + " outside 0.." +
                                    std::to_string(n_ - 1));
    }

    friend bool operator==(const UniformGraph& a, const UniformGraph& b)
    {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::size_t pair_index(int a, int b) const
    {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(b);
    }

    void update_nbr(const Edge& e, bool present)
    {
        auto set = [&](VertexSet& s, int v) {
            if (present)
                s.insert(v);
            else
                s.erase(v);
        };
        if constexpr (K == 2) {
            set(nbr_[static_cast<std::size_t>(e[0])], e[1]);
            set(nbr_[static_cast<std::size_t>(e[1])], e[0]);
        } else if constexpr (K == 3) {
            const int a = e[0], b = e[1], c = e[2];
            set(nbr_[pair_index(a, b)], c);
            set(nbr_[pair_index(b, a)], c);
            set(nbr_[pair_index(a, c)], b);
            set(nbr_[pair_index(c, a)], b);
            set(nbr_[pair_index(b, c)], a);
            set(nbr_[pair_index(c, b)], a);
        }
    }

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<VertexSet> nbr_;
};

using TwoGraph = UniformGraph<2>;
using ThreeGraph = UniformGraph<3>;
using FourGraph = UniformGraph<4>;

using Triple = Subset<3>;
using Pair = Subset<2>;

// ---------------------------------------------------------------------------
// Degree and neighbourhood primitives on 3-graphs.

namespace detail {

inline void check_small_set(const ThreeGraph& h, const VertexSet& s)
{
    if (!s.is_subset_of(VertexSet::range(h.n())))
        throw std::out_of_range("vertex set is not contained in the vertex range");
    int k = s.size();
    if (k != 1 && k != 2)
        throw std::invalid_argument("degree is defined for sets of size 1 or 2, got " +
                                    std::to_string(k));
}

}  // namespace detail

inline int codegree(const ThreeGraph& h, int a, int b)
{
    if (a == b)
        throw std::invalid_argument("codegree needs two distinct vertices");
    return h.pair_neighbourhood(a, b).size();
}

/// deg_H(S) for |S| in {1, 2}.
inline long long degree(const ThreeGraph& h, const VertexSet& s)
{
    detail::check_small_set(h, s);
    if (s.size() == 2) {
        int a = s.first();
        return codegree(h, a, s.next(a));
    }
    int v = s.first();
    long long twice = 0;
    for (int u = 0; u < h.n(); ++u)
        if (u != v)
            twice += h.pair_neighbourhood(v, u).size();
    return twice / 2;
}

/// delta_2(H); requires n >= 2.
inline int min_codegree(const ThreeGraph& h)
{
    if (h.n() < 2)
        throw std::invalid_argument("minimum codegree needs at least two vertices");
    int best = h.n();
    for (int a = 0; a < h.n(); ++a)
        for (int b = a + 1; b < h.n(); ++b)
            best = std::min(best, h.pair_neighbourhood(a, b).size());
    return best;
}

/// delta_2^+(H), or nullopt when H has no edges.
inline std::optional<int> min_positive_codegree(const ThreeGraph& h)
{
    std::optional<int> best;
    for (int a = 0; a < h.n(); ++a)
        for (int b = a + 1; b < h.n(); ++b) {
            int d = h.pair_neighbourhood(a, b).size();
            if (d > 0 && (!best || d < *best))
                best = d;
        }
    return best;
}

/// N_H(ab, W) = N_H(ab) restricted to W.
inline VertexSet neighbourhood(const ThreeGraph& h, int a, int b, const VertexSet& within)
{
    if (a == b)
        throw std::invalid_argument("pair neighbourhood needs two distinct vertices");
    return h.pair_neighbourhood(a, b) & within;
}

inline VertexSet neighbourhood(const ThreeGraph& h, int a, int b)
{
    return neighbourhood(h, a, b, VertexSet::range(h.n()));
}

/// N_H(v, W): the pairs inside W completing v to an edge, as a 2-graph.
inline TwoGraph neighbourhood(const ThreeGraph& h, int v, const VertexSet& within)
{
    h.check_vertex(v);
    TwoGraph out(h.n());
    for (int a = 0; a < h.n(); ++a) {
        if (a == v || !within.contains(a))
            continue;
        VertexSet bs = h.pair_neighbourhood(v, a) & within;
        bs.for_each([&](int b) {
            if (b > a)
                out.add_edge({a, b});
        });
    }
    return out;
}

/// Link graph L(v): edges {a, b} with {v, a, b} in E(H); v is isolated.
inline TwoGraph link_graph(const ThreeGraph& h, int v)
{
    return neighbourhood(h, v, VertexSet::range(h.n()));
}

/// The shadow (2-graph of all pairs covered by some edge).
inline TwoGraph shadow(const ThreeGraph& h)
{
    TwoGraph out(h.n());
    for (int a = 0; a < h.n(); ++a)
        for (int b = a + 1; b < h.n(); ++b)
            if (!h.pair_neighbourhood(a, b).empty())
                out.add_edge({a, b});
    return out;
}

/// H[U] on the same vertex range: keeps exactly the edges inside U.
template <int K>
UniformGraph<K> induced(const UniformGraph<K>& g, const VertexSet& u)
{
    if (!u.is_subset_of(VertexSet::range(g.n())))
        throw std::out_of_range("induced: vertex set outside the vertex range");
    UniformGraph<K> out(g.n());
    g.for_each_edge([&](const Subset<K>& e) {
        for (int v : e)
            if (!u.contains(v))
                return;
        out.add_edge(e);
    });
    return out;
}

/// Result of deleting vertices: surviving vertices are relabelled 0..m-1.
template <int K>
struct Relabelled {
    UniformGraph<K> graph;
    std::vector<int> original_of;  ///< new label -> old label
    std::vector<int> new_of;       ///< old label -> new label, -1 when deleted
};

/// H \ U with the surviving vertices relabelled in increasing order.
template <int K>
Relabelled<K> delete_vertices(const UniformGraph<K>& g, const VertexSet& u)
{
    if (!u.is_subset_of(VertexSet::range(g.n())))
        throw std::out_of_range("delete_vertices: vertex set outside the vertex range");
    Relabelled<K> out{UniformGraph<K>(g.n() - u.size()), {}, std::vector<int>(g.n(), -1)};
    for (int v = 0; v < g.n(); ++v)
        if (!u.contains(v)) {
            out.new_of[v] = static_cast<int>(out.original_of.size());
            out.original_of.push_back(v);
        }
    g.for_each_edge([&](const Subset<K>& e) {
        Subset<K> f{};
        for (int i = 0; i < K; ++i) {
            f[i] = out.new_of[e[i]];
            if (f[i] < 0)
                return;
        }
        out.graph.add_edge(f);
    });
    return out;
}

}  // namespace tetraham
