#pragma once

// Brute-force reference implementations. Deliberately slow and written
// against plain containers; only has_edge and n() of the graph are used.

#include <algorithm>
#include <functional>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "tetraham/hypergraph.hpp"
#include "tetraham/rng.hpp"

namespace oracle {

using tetraham::ThreeGraph;
using Quad = std::array<int, 4>;
using Tri = std::array<int, 3>;

inline bool edge(const ThreeGraph& h, int a, int b, int c)
{
    if (a == b || a == c || b == c)
        return false;
    return h.has_edge({a, b, c});
}

inline Tri tri(int a, int b, int c)
{
    Tri t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

inline bool k4(const ThreeGraph& h, int a, int b, int c, int d)
{
    return edge(h, a, b, c) && edge(h, a, b, d) && edge(h, a, c, d) && edge(h, b, c, d);
}

inline std::vector<Quad> k4s(const ThreeGraph& h)
{
    std::vector<Quad> out;
    const int n = h.n();
    for (int d = 3; d < n; ++d)
        for (int c = 2; c < d; ++c)
            for (int b = 1; b < c; ++b)
                for (int a = 0; a < b; ++a)
                    if (k4(h, a, b, c, d))
                        out.push_back({a, b, c, d});
    return out;   // colex order
}

inline int codegree(const ThreeGraph& h, int a, int b)
{
    int k = 0;
    for (int c = 0; c < h.n(); ++c)
        k += edge(h, a, b, c);
    return k;
}

inline int min_codegree(const ThreeGraph& h)
{
    int best = h.n();
    for (int a = 0; a < h.n(); ++a)
        for (int b = a + 1; b < h.n(); ++b)
            best = std::min(best, oracle::codegree(h, a, b));
    return best;
}

inline int tetra_degree(const ThreeGraph& h, int a, int b, int c)
{
    int k = 0;
    for (int d = 0; d < h.n(); ++d)
        if (d != a && d != b && d != c)
            k += k4(h, a, b, c, d);
    return k;
}

/// Tight components of a list of k-sets by literal tight-walk BFS: states
/// are ordered k-tuples spanning an edge, a step drops the first vertex and
/// appends a new one. Ids follow the order of the first edge of each class.
template <std::size_t K>
std::vector<int> walk_components(int n, const std::vector<std::array<int, K>>& edges)
{
    std::set<std::array<int, K>> present(edges.begin(), edges.end());
    auto sorted = [](std::array<int, K> t) {
        std::sort(t.begin(), t.end());
        return t;
    };
    std::map<std::array<int, K>, int> comp;
    int next = 0;
    for (const auto& e : edges) {
        if (comp.count(e))
            continue;
        const int id = next++;
        std::set<std::array<int, K>> seen;
        std::queue<std::array<int, K>> q;
        auto start = e;
        do {
            seen.insert(start);
            q.push(start);
        } while (std::next_permutation(start.begin(), start.end()));
        while (!q.empty()) {
            auto s = q.front();
            q.pop();
            comp[sorted(s)] = id;
            for (int w = 0; w < n; ++w) {
                std::array<int, K> t;
                for (std::size_t i = 0; i + 1 < K; ++i)
                    t[i] = s[i + 1];
                t[K - 1] = w;
                if (std::find(s.begin() + 1, s.end(), w) != s.end())
                    continue;
                if (!present.count(sorted(t)) || seen.count(t))
                    continue;
                seen.insert(t);
                q.push(t);
            }
        }
    }
    std::vector<int> out;
    for (const auto& e : edges)
        out.push_back(comp.at(e));
    return out;
}

/// The colouring phi by brute force.
struct Phi {
    int n = 0;
    int count = 0;
    std::map<Tri, int> of_edge;
    std::vector<Quad> quads;
    std::vector<int> quad_comp;

    explicit Phi(const ThreeGraph& h) : n(h.n())
    {
        quads = k4s(h);
        quad_comp = walk_components<4>(n, quads);
        count = quads.empty() ? 0 : *std::max_element(quad_comp.begin(), quad_comp.end()) + 1;
        for (std::size_t i = 0; i < quads.size(); ++i) {
            const auto& q = quads[i];
            for (int skip = 0; skip < 4; ++skip) {
                Tri t{};
                int k = 0;
                for (int j = 0; j < 4; ++j)
                    if (j != skip)
                        t[static_cast<std::size_t>(k++)] = q[static_cast<std::size_t>(j)];
                of_edge[t] = quad_comp[i];
            }
        }
    }

    int phi(int a, int b, int c) const { return of_edge.at(tri(a, b, c)); }

    std::set<int> vertex(int v) const
    {
        std::set<int> s;
        for (const auto& [t, c] : of_edge)
            if (std::find(t.begin(), t.end(), v) != t.end())
                s.insert(c);
        return s;
    }

    std::set<int> pair(int u, int v) const
    {
        std::set<int> s;
        for (const auto& [t, c] : of_edge)
            if (std::find(t.begin(), t.end(), u) != t.end() && std::find(t.begin(), t.end(), v) != t.end())
                s.insert(c);
        return s;
    }

    std::set<int> component_vertices(int c) const
    {
        std::set<int> s;
        for (std::size_t i = 0; i < quads.size(); ++i)
            if (quad_comp[i] == c)
                s.insert(quads[i].begin(), quads[i].end());
        return s;
    }
};

/// Union of random copies of K4^3: every edge lies in a tetrahedron.
inline ThreeGraph random_tetra_union(int n, int copies, tetraham::Rng& rng)
{
    ThreeGraph h(n);
    for (int i = 0; i < copies; ++i) {
        std::vector<int> vs(static_cast<std::size_t>(n));
        std::iota(vs.begin(), vs.end(), 0);
        rng.shuffle(vs);
        const int a = vs[0], b = vs[1], c = vs[2], d = vs[3];
        h.add_edge({a, b, c});
        h.add_edge({a, b, d});
        h.add_edge({a, c, d});
        h.add_edge({b, c, d});
    }
    return h;
}

inline ThreeGraph random_graph(int n, double p, tetraham::Rng& rng)
{
    ThreeGraph h(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (rng.uniform() < p)
                    h.add_edge({a, b, c});
    return h;
}

/// Square of a tight Hamilton cycle by trying every order with v1 = 0.
inline bool has_hamilton_square(const ThreeGraph& h)
{
    const int n = h.n();
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = k4(h, p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>((i + 1) % n)],
                    p[static_cast<std::size_t>((i + 2) % n)], p[static_cast<std::size_t>((i + 3) % n)]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return false;
}

inline bool squared_path(const ThreeGraph& h, const std::vector<int>& p)
{
    if (std::set<int>(p.begin(), p.end()).size() != p.size())
        return false;
    for (std::size_t i = 0; i + 3 < p.size(); ++i)
        if (!k4(h, p[i], p[i + 1], p[i + 2], p[i + 3]))
            return false;
    return true;
}

/// Is there a squared-tight-path starting with `from` and ending with `to`
/// (ends may overlap), avoiding `forbidden`, with at most `cap` vertices?
inline bool connectable(const ThreeGraph& h, const Tri& from, const Tri& to, const std::set<int>& forbidden,
                        std::size_t cap)
{
    std::vector<int> seq(from.begin(), from.end());
    auto ends_ok = [&] {
        return seq.size() >= 3 && std::equal(to.begin(), to.end(), seq.end() - 3);
    };
    std::function<bool()> go = [&]() -> bool {
        if (ends_ok() && squared_path(h, seq))
            return true;
        if (seq.size() >= cap)
            return false;
        for (int w = 0; w < h.n(); ++w) {
            if (forbidden.count(w) && std::find(to.begin(), to.end(), w) == to.end())
                continue;
            if (std::find(seq.begin(), seq.end(), w) != seq.end())
                continue;
            seq.push_back(w);
            const std::size_t m = seq.size();
            const bool ok = m < 4 || k4(h, seq[m - 4], seq[m - 3], seq[m - 2], seq[m - 1]);
            if (ok && go())
                return true;
            seq.pop_back();
        }
        return false;
    };
    return go();
}

inline bool meets(const std::set<int>& a, const std::set<int>& b)
{
    for (int x : a)
        if (b.count(x))
            return true;
    return false;
}

/// Violation counts of the pattern scanners by plain enumeration over
/// vertex tuples, following the same counting conventions.
struct Naive {
    const ThreeGraph& h;
    const oracle::Phi& phi;
    int n;

    Naive(const ThreeGraph& g, const oracle::Phi& p) : h(g), phi(p), n(g.n()) {}

    int col(int a, int b, int c) const { return phi.phi(a, b, c); }

    // colour classes of the pair
    std::set<int> pair_cols(int x, int y) const { return phi.pair(x, y); }

    std::uint64_t fact_3_1() const
    {
        std::uint64_t k = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        if (!edge(h, a, b, c) || !edge(h, a, b, d))
                            continue;
                        if (col(a, b, c) == col(a, b, d))
                            continue;
                        bool found = false;
                        for (int w = 0; w < n && !found; ++w)
                            found = w != c && w != d && edge(h, a, b, w) && edge(h, a, c, w) &&
                                    edge(h, b, c, w) && edge(h, a, d, w) && edge(h, b, d, w);
                        k += found;
                    }
        return k;
    }

    std::uint64_t fact_3_2() const
    {
        std::uint64_t k = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                k += !meets(phi.vertex(u), phi.vertex(v));
        return k;
    }

    std::uint64_t fact_3_4() const
    {
        const long long floor = 3LL * oracle::min_codegree(h) - 2LL * n - 3;
        std::uint64_t k = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (edge(h, a, b, c))
                        k += oracle::tetra_degree(h, a, b, c) < floor;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int t : pair_cols(x, y)) {
                    long long deg = 0;
                    for (int z = 0; z < n; ++z)
                        deg += edge(h, x, y, z) && col(x, y, z) == t;
                    k += deg < floor || static_cast<long long>(phi.component_vertices(t).size()) < deg;
                }
        return k;
    }

    std::uint64_t prop_3_5() const
    {
        std::uint64_t k = 0;
        if (phi.count < 2)
            return 0;
        bool exists = false;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                exists |= pair_cols(x, y).size() >= 2;
        k += !exists;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y)
                    continue;
                const auto cols = pair_cols(x, y);
                for (int t1 : cols)
                    for (int t2 : cols)
                        for (int z = 0; z < n; ++z) {
                            if (!edge(h, x, y, z) || col(x, y, z) != t1)
                                continue;
                            bool found = false;
                            for (int w = 0; w < n && !found; ++w)
                                found = edge(h, x, y, w) && col(x, y, w) == t2 && edge(h, y, z, w);
                            k += !found;
                        }
            }
        return k;
    }

    bool link(int v, int a, int b) const { return edge(h, v, a, b); }

    std::pair<std::uint64_t, std::uint64_t> lemma_3_8_cycles() const
    {
        std::uint64_t proper = 0, three = 0;
        for (int v = 0; v < n; ++v)
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    for (int w = x + 1; w < n; ++w)
                        for (int z = w + 1; z < n; ++z) {
                            std::set<int> vs{v, x, y, w, z};
                            if (vs.size() != 5)
                                continue;
                            if (!link(v, x, w) || !link(v, w, y) || !link(v, y, z) || !link(v, z, x))
                                continue;
                            const int c1 = col(v, x, w), c2 = col(v, w, y), c3 = col(v, y, z), c4 = col(v, z, x);
                            proper += c1 != c2 && c2 != c3 && c3 != c4 && c4 != c1;
                            three += std::set<int>{c1, c2, c3, c4}.size() >= 3;
                        }
        return {proper, three};
    }

    std::uint64_t lemma_3_8_paths() const
    {
        std::uint64_t k = 0;
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = w + 1; z < n; ++z) {
                            if (std::set<int>{v, w, x, y, z}.size() != 5)
                                continue;
                            if (!link(v, w, x) || !link(v, x, y) || !link(v, y, z))
                                continue;
                            k += std::set<int>{col(v, w, x), col(v, x, y), col(v, y, z)}.size() == 3;
                        }
        return k;
    }

    std::uint64_t lemma_3_8_pairs() const
    {
        std::uint64_t k = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                k += pair_cols(u, v).size() > 2;
        return k;
    }

    std::uint64_t lemma_3_9() const
    {
        std::uint64_t k = 0;
        for (int v = 0; v < n; ++v)
            k += phi.vertex(v).size() > 2;
        return k;
    }

    std::uint64_t prop_3_10() const
    {
        std::set<std::set<int>> twos;
        for (int v = 0; v < n; ++v)
            if (phi.vertex(v).size() == 2)
                twos.insert(phi.vertex(v));
        std::uint64_t k = 0;
        for (int a = 0; a < phi.count; ++a)
            for (int b = a + 1; b < phi.count; ++b)
                for (int c = b + 1; c < phi.count; ++c)
                    k += twos.count({a, b}) && twos.count({a, c}) && twos.count({b, c});
        return k;
    }

    std::uint64_t prop_3_13() const
    {
        if (phi.count < 2)
            return 0;
        std::uint64_t k = 0;
        for (int y1 = 0; y1 < n; ++y1)
            for (int y2 = y1 + 1; y2 < n; ++y2)
                for (int y3 = y2 + 1; y3 < n; ++y3)
                    for (int x = 0; x < n; ++x)
                        for (int z = x + 1; z < n; ++z) {
                            bool ok = true;
                            std::multiset<int> cs;
                            for (int a : {x, z})
                                for (auto [p, q] : {std::pair{y1, y2}, {y2, y3}, {y1, y3}}) {
                                    if (!edge(h, a, p, q))
                                        ok = false;
                                    else
                                        cs.insert(col(a, p, q));
                                }
                            if (!ok)
                                continue;
                            std::set<int> distinct(cs.begin(), cs.end());
                            k += distinct.size() == 2 && cs.count(*distinct.begin()) == 3;
                        }
        return k;
    }

    std::uint64_t walks(const std::vector<int>& symbols) const
    {
        const int needed = *std::max_element(symbols.begin(), symbols.end()) + 1;
        if (phi.count < needed)
            return 0;
        const std::size_t len = symbols.size() + 2;
        std::uint64_t k = 0;
        std::vector<int> seq;
        std::function<void()> go = [&] {
            if (seq.size() == len) {
                std::map<int, int> bind;
                std::set<int> used;
                for (std::size_t i = 0; i < symbols.size(); ++i) {
                    const int c = col(seq[i], seq[i + 1], seq[i + 2]);
                    auto it = bind.find(symbols[i]);
                    if (it == bind.end()) {
                        if (used.count(c))
                            return;
                        bind[symbols[i]] = c;
                        used.insert(c);
                    } else if (it->second != c) {
                        return;
                    }
                }
                ++k;
                return;
            }
            for (int w = 0; w < n; ++w) {
                const std::size_t m = seq.size();
                if (m >= 2 && !edge(h, seq[m - 2], seq[m - 1], w))
                    continue;
                if (m == 1 && w == seq[0])
                    continue;
                seq.push_back(w);
                go();
                seq.pop_back();
            }
        };
        go();
        return k;
    }

    std::uint64_t prop_3_16() const
    {
        if (phi.count < 2)
            return 0;
        std::uint64_t k = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    for (int w = 0; w < n; ++w) {
                        if (std::set<int>{x, y, z, w}.size() != 4)
                            continue;
                        if (!edge(h, x, y, z) || !edge(h, w, y, z) || !edge(h, w, x, y))
                            continue;
                        const int red = col(x, y, z);
                        k += col(w, y, z) == red && col(w, x, y) != red && phi.vertex(z).size() != 1;
                    }
        return k;
    }
};

}  // namespace oracle
