#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergraph.hpp"

namespace tetraham {

enum class SequenceKind { walk, path };

/// Ordered vertex list. A path has pairwise distinct vertices.
class VertexSequence {
public:
    VertexSequence() = default;

    static VertexSequence walk(std::vector<int> vs) { return VertexSequence(std::move(vs), SequenceKind::walk); }

    /// Throws std::invalid_argument when a vertex repeats.
    static VertexSequence path(std::vector<int> vs)
    {
        if (!distinct(vs))
            throw std::invalid_argument("a path may not repeat vertices");
        return VertexSequence(std::move(vs), SequenceKind::path);
    }

    /// Path when all vertices are distinct, walk otherwise.
    static VertexSequence classify(std::vector<int> vs)
    {
        auto kind = distinct(vs) ? SequenceKind::path : SequenceKind::walk;
        return VertexSequence(std::move(vs), kind);
    }

    const std::vector<int>& vertices() const { return vs_; }
    SequenceKind kind() const { return kind_; }
    bool is_path() const { return kind_ == SequenceKind::path; }
    std::size_t size() const { return vs_.size(); }
    int operator[](std::size_t i) const { return vs_[i]; }

    /// Initial ordered triple; needs at least 3 vertices.
    std::array<int, 3> initial_triple() const
    {
        require_ends();
        return {vs_[0], vs_[1], vs_[2]};
    }

    /// Final ordered triple; needs at least 3 vertices.
    std::array<int, 3> final_triple() const
    {
        require_ends();
        const auto m = vs_.size();
        return {vs_[m - 3], vs_[m - 2], vs_[m - 1]};
    }

    VertexSet vertex_set() const { return VertexSet::of(vs_); }

    friend bool operator==(const VertexSequence&, const VertexSequence&) = default;

    static bool distinct(const std::vector<int>& vs)
    {
        VertexSet seen;
        for (int v : vs) {
            if (seen.contains(v))
                return false;
            seen.insert(v);
        }
        return true;
    }

private:
    VertexSequence(std::vector<int> vs, SequenceKind k) : vs_(std::move(vs)), kind_(k) {}

    void require_ends() const
    {
        if (vs_.size() < 3)
            throw std::logic_error("a sequence needs at least 3 vertices to have ends");
    }

    std::vector<int> vs_;
    SequenceKind kind_ = SequenceKind::walk;
};

/// Ordered triple of distinct vertices (an end of a squared-tight-walk).
struct TripleOrdered {
    int a = 0, b = 0, c = 0;

    TripleOrdered() = default;
    TripleOrdered(int a_, int b_, int c_) : a(a_), b(b_), c(c_)
    {
        if (a == b || a == c || b == c)
            throw std::invalid_argument("ordered triple needs distinct vertices");
    }
    explicit TripleOrdered(const std::array<int, 3>& t) : TripleOrdered(t[0], t[1], t[2]) {}

    std::array<int, 3> as_array() const { return {a, b, c}; }
    VertexSet as_set() const { return VertexSet{a, b, c}; }
    friend bool operator==(const TripleOrdered&, const TripleOrdered&) = default;
};

// ---------------------------------------------------------------------------
// Validation

/// True iff the four vertices are distinct and all four triples are edges.
inline bool induces_tetrahedron(const ThreeGraph& h, int a, int b, int c, int d)
{
    if (a == b || a == c || a == d || b == c || b == d || c == d)
        return false;
    return h.has_edge({a, b, c}) && h.has_edge({a, b, d}) && h.has_edge({a, c, d}) &&
           h.has_edge({b, c, d});
}

namespace detail {

inline void check_in_range(const ThreeGraph& h, const std::vector<int>& vs)
{
    for (int v : vs)
        h.check_vertex(v);
}

}  // namespace detail

/// Every window of four consecutive vertices spans a K4^3. A 3-vertex
/// sequence counts as a (degenerate) walk iff it is an edge; shorter
/// sequences are never walks.
inline bool is_squared_tight_walk(const ThreeGraph& h, const std::vector<int>& vs)
{
    detail::check_in_range(h, vs);
    if (vs.size() < 3)
        return false;
    if (vs.size() == 3)
        return vs[0] != vs[1] && vs[0] != vs[2] && vs[1] != vs[2] && h.has_edge({vs[0], vs[1], vs[2]});
    for (std::size_t i = 0; i + 3 < vs.size(); ++i)
        if (!induces_tetrahedron(h, vs[i], vs[i + 1], vs[i + 2], vs[i + 3]))
            return false;
    return true;
}

inline bool is_squared_tight_walk(const ThreeGraph& h, const VertexSequence& s)
{
    return is_squared_tight_walk(h, s.vertices());
}

inline bool is_squared_tight_path(const ThreeGraph& h, const std::vector<int>& vs)
{
    return VertexSequence::distinct(vs) && is_squared_tight_walk(h, vs);
}

inline bool is_squared_tight_path(const ThreeGraph& h, const VertexSequence& s)
{
    return is_squared_tight_path(h, s.vertices());
}

/// Cyclic order of at least 5 distinct vertices whose every cyclic window
/// of four consecutive vertices spans a K4^3.
inline bool is_squared_tight_cycle(const ThreeGraph& h, const std::vector<int>& vs)
{
    detail::check_in_range(h, vs);
    const std::size_t m = vs.size();
    if (m < 5 || !VertexSequence::distinct(vs))
        return false;
    for (std::size_t i = 0; i < m; ++i)
        if (!induces_tetrahedron(h, vs[i], vs[(i + 1) % m], vs[(i + 2) % m], vs[(i + 3) % m]))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Sequence algebra

class OverlapMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ConcatResult {
    VertexSequence sequence;
    bool valid = false;          ///< squared-tight-walk in the host
    bool closes_cycle = false;   ///< c1..cl c1 c2 with c1..cl a squared tight cycle
};

namespace detail {

inline ConcatResult concat_with_overlap(const ThreeGraph& h, const VertexSequence& w1,
                                        const VertexSequence& w2, std::size_t overlap)
{
    const auto& x = w1.vertices();
    const auto& y = w2.vertices();
    if (x.size() < overlap || y.size() < overlap ||
        !std::equal(x.end() - static_cast<std::ptrdiff_t>(overlap), x.end(), y.begin()))
        throw OverlapMismatch("the last " + std::to_string(overlap) +
                              " vertices of the first walk must equal the first " +
                              std::to_string(overlap) + " of the second");
    std::vector<int> out(x);
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(overlap), y.end());

    bool path = w1.is_path() && w2.is_path();
    if (path) {
        VertexSet shared = w1.vertex_set() & w2.vertex_set();
        for (std::size_t i = 0; i < overlap; ++i)
            shared.erase(y[i]);
        path = shared.empty();
    }
    ConcatResult r;
    r.sequence = path ? VertexSequence::path(out) : VertexSequence::walk(out);
    r.valid = is_squared_tight_walk(h, out);
    if (out.size() >= 7 && out[out.size() - 2] == out[0] && out[out.size() - 1] == out[1]) {
        std::vector<int> cyc(out.begin(), out.end() - 2);
        r.closes_cycle = is_squared_tight_cycle(h, cyc);
    }
    return r;
}

}  // namespace detail

/// W1 W2 for tight walks overlapping in two vertices: x1..xl y3..ym.
inline ConcatResult concat(const ThreeGraph& h, const VertexSequence& w1, const VertexSequence& w2)
{
    return detail::concat_with_overlap(h, w1, w2, 2);
}

/// Squared-tight-walk concatenation: the final triple of W1 is the initial
/// triple of W2, giving x1..xl y4..ym.
inline ConcatResult concat3(const ThreeGraph& h, const VertexSequence& w1, const VertexSequence& w2)
{
    return detail::concat_with_overlap(h, w1, w2, 3);
}

inline VertexSequence reverse(const VertexSequence& s)
{
    std::vector<int> vs(s.vertices().rbegin(), s.vertices().rend());
    return s.is_path() ? VertexSequence::path(std::move(vs)) : VertexSequence::walk(std::move(vs));
}

// ---------------------------------------------------------------------------
// Search

enum class SearchStatus { found, none, budget_exhausted };

inline const char* to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<T> value;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::found; }
};

namespace detail {

struct ConnectorSearch {
    const ThreeGraph& h;
    std::array<int, 3> to;
    VertexSet blocked;  // forbidden plus target vertices; never used as extensions
    std::size_t max_vertices;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<int> seq;
    VertexSet used;

    // Appends the overlap-free or overlapping completion with `to` if valid.
    bool try_complete()
    {
        for (int k = 3; k >= 0; --k) {
            if (static_cast<std::size_t>(k) > seq.size())
                continue;
            bool match = true;
            for (int i = 0; i < k; ++i)
                if (seq[seq.size() - static_cast<std::size_t>(k) + static_cast<std::size_t>(i)] != to[static_cast<std::size_t>(i)])
                    match = false;
            if (!match)
                continue;
            if (seq.size() + static_cast<std::size_t>(3 - k) > max_vertices)
                continue;
            bool fresh = true;
            for (int i = k; i < 3; ++i)
                if (used.contains(to[static_cast<std::size_t>(i)]))
                    fresh = false;
            if (!fresh)
                continue;
            const std::size_t base = seq.size();
            for (int i = k; i < 3; ++i)
                seq.push_back(to[static_cast<std::size_t>(i)]);
            bool ok = true;
            for (std::size_t j = base; j < seq.size() && ok; ++j)
                if (j >= 3)
                    ok = induces_tetrahedron(h, seq[j - 3], seq[j - 2], seq[j - 1], seq[j]);
            if (ok)
                return true;
            seq.resize(base);
        }
        return false;
    }

    bool dfs()
    {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        if (try_complete())
            return true;
        if (seq.size() + 4 > max_vertices)
            return false;
        const std::size_t m = seq.size();
        const int a = seq[m - 3], b = seq[m - 2], c = seq[m - 1];
        VertexSet cand = h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) &
                         h.pair_neighbourhood(b, c);
        cand -= used;
        cand -= blocked;
        for (int u = cand.first(); u >= 0; u = cand.next(u)) {
            seq.push_back(u);
            used.insert(u);
            if (dfs())
                return true;
            seq.pop_back();
            used.erase(u);
            if (exhausted)
                return false;
        }
        return false;
    }
};

inline void check_ordered_edge(const ThreeGraph& h, const TripleOrdered& t, const char* what)
{
    for (int v : t.as_array())
        h.check_vertex(v);
    if (!h.has_edge(t.as_array()))
        throw std::invalid_argument(std::string(what) + " triple is not an edge of H");
}

}  // namespace detail

/// Depth-first search for a squared-tight-path from `from` to `to` with at
/// most max_vertices vertices, none of them in `forbidden`. Candidates for
/// the next vertex are the common neighbours of the current window's three
/// pairs, tried in ascending order.
inline SearchResult<VertexSequence> find_squared_tight_path(const ThreeGraph& h,
                                                            const TripleOrdered& from,
                                                            const TripleOrdered& to,
                                                            const VertexSet& forbidden,
                                                            std::size_t max_vertices,
                                                            std::uint64_t budget)
{
    detail::check_ordered_edge(h, from, "initial");
    detail::check_ordered_edge(h, to, "final");
    if (from.as_set().intersects(forbidden) || to.as_set().intersects(forbidden))
        throw std::invalid_argument("end triples must avoid the forbidden set");

    detail::ConnectorSearch s{h, to.as_array(), forbidden | to.as_set(), max_vertices, budget, 0, false, {}, {}};
    s.seq = {from.a, from.b, from.c};
    s.used = from.as_set();
    SearchResult<VertexSequence> r;
    if (max_vertices >= 3 && s.dfs()) {
        r.status = SearchStatus::found;
        r.value = VertexSequence::path(s.seq);
    } else {
        r.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    r.nodes = s.nodes;
    return r;
}

struct ConnectRequest {
    TripleOrdered from;
    TripleOrdered to;
};

struct ConnectManyResult {
    SearchStatus status = SearchStatus::found;
    std::vector<VertexSequence> paths;
    std::optional<std::size_t> failed_index;
    std::uint64_t nodes = 0;
};

/// Vertex-disjoint connectors for each request in turn. Each search avoids
/// `forbidden`, every vertex of the paths found so far and the end vertices
/// of all other requests.
inline ConnectManyResult connect_many(const ThreeGraph& h, const std::vector<ConnectRequest>& pairs,
                                      const VertexSet& forbidden, std::size_t per_path_cap,
                                      std::uint64_t budget)
{
    VertexSet ends;
    std::size_t count = 0;
    for (const auto& p : pairs) {
        ends |= p.from.as_set();
        ends |= p.to.as_set();
        count += 6;
    }
    if (static_cast<std::size_t>(ends.size()) != count)
        throw std::invalid_argument("connect_many needs pairwise distinct end vertices");
    if (ends.intersects(forbidden))
        throw std::invalid_argument("connect_many end vertices must avoid the forbidden set");

    ConnectManyResult out;
    VertexSet used;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        VertexSet others = ends - pairs[i].from.as_set() - pairs[i].to.as_set();
        auto r = find_squared_tight_path(h, pairs[i].from, pairs[i].to, forbidden | used | others,
                                         per_path_cap, budget);
        out.nodes += r.nodes;
        if (!r.found()) {
            out.status = r.status;
            out.failed_index = i;
            return out;
        }
        used |= r.value->vertex_set();
        out.paths.push_back(*r.value);
    }
    return out;
}

}  // namespace tetraham
