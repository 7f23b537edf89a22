#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "walks.hpp"

namespace tetraham {

// ---------------------------------------------------------------------------
// Blowups and clique copies

struct Blowup {
    ThreeGraph graph;
    std::vector<int> class_of;   ///< vertex -> vertex of F; U_v = {v*t, ..., v*t + t - 1}
};

/// F(t): every vertex of F replaced by t clones; edges are the partite
/// triples over edges of F.
inline Blowup blowup(const ThreeGraph& f, int t)
{
    if (t < 1)
        throw std::invalid_argument("blowup needs t >= 1");
    const long long n = static_cast<long long>(f.n()) * t;
    if (n > kMaxVertices)
        throw std::length_error("blowup exceeds the vertex cap");
    Blowup out{ThreeGraph(static_cast<int>(n)), {}};
    for (int v = 0; v < n; ++v)
        out.class_of.push_back(v / t);
    f.for_each_edge([&](const Triple& e) {
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j)
                for (int k = 0; k < t; ++k)
                    out.graph.add_edge({e[0] * t + i, e[1] * t + j, e[2] * t + k});
    });
    return out;
}

/// Number of (unlabelled) copies of K_4^3 or K_5^3.
inline std::uint64_t count_copies(const ThreeGraph& h, int clique_size)
{
    if (clique_size != 4 && clique_size != 5)
        throw std::invalid_argument("only K4^3 and K5^3 copies are counted");
    std::uint64_t total = 0;
    h.for_each_edge([&](const Triple& e) {
        const auto [a, b, c] = e;
        const VertexSet common = h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) &
                                 h.pair_neighbourhood(b, c);
        for (int d = common.next(c); d >= 0; d = common.next(d)) {
            if (clique_size == 4) {
                ++total;
                continue;
            }
            const VertexSet fifth = common & h.pair_neighbourhood(a, d) & h.pair_neighbourhood(b, d) &
                                    h.pair_neighbourhood(c, d);
            for (int x = fifth.next(d); x >= 0; x = fifth.next(x))
                ++total;
        }
    });
    return total;
}

/// Vertex classes of a copy of K_m^3(t): classes[i] holds t vertices and
/// every triple meeting three distinct classes is an edge.
struct BlowupCopy {
    std::vector<std::vector<int>> classes;

    VertexSet vertex_set() const
    {
        VertexSet s;
        for (const auto& c : classes)
            for (int v : c)
                s.insert(v);
        return s;
    }
};

inline bool is_blowup_copy(const ThreeGraph& h, const BlowupCopy& copy)
{
    std::vector<int> all;
    for (const auto& c : copy.classes)
        all.insert(all.end(), c.begin(), c.end());
    if (!VertexSequence::distinct(all))
        return false;
    const std::size_t m = copy.classes.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k)
                for (int a : copy.classes[i])
                    for (int b : copy.classes[j])
                        for (int c : copy.classes[k])
                            if (!h.has_edge({a, b, c}))
                                return false;
    return true;
}

namespace detail {

struct BlowupSearch {
    const ThreeGraph& h;
    int m, t;
    std::vector<int> order;   // candidate order (a seeded permutation)
    std::vector<int> pos;     // vertex -> position in order
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<std::vector<int>> classes;

    // slot s fills class s % m; within a class positions increase
    bool place(int slot, std::vector<VertexSet> cand)
    {
        if (slot == m * t)
            return true;
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        const int cls = slot % m;
        const auto& mine = classes[static_cast<std::size_t>(cls)];
        const int floor = mine.empty() ? -1 : pos[static_cast<std::size_t>(mine.back())];
        const VertexSet& options = cand[static_cast<std::size_t>(cls)];
        for (std::size_t p = static_cast<std::size_t>(floor + 1); p < order.size(); ++p) {
            const int u = order[p];
            if (!options.contains(u))
                continue;
            // classes still to be filled must stay large enough
            std::vector<VertexSet> next = cand;
            for (auto& c : next)
                c.erase(u);
            for (int j = 0; j < m; ++j) {
                if (j == cls)
                    continue;
                for (int q : classes[static_cast<std::size_t>(j)])
                    for (int i = 0; i < m; ++i)
                        if (i != cls && i != j)
                            next[static_cast<std::size_t>(i)] &= h.pair_neighbourhood(u, q);
            }
            bool viable = true;
            for (int i = 0; i < m && viable; ++i) {
                const int have = static_cast<int>(classes[static_cast<std::size_t>(i)].size()) + (i == cls);
                viable = next[static_cast<std::size_t>(i)].size() >= t - have;
            }
            if (!viable)
                continue;
            classes[static_cast<std::size_t>(cls)].push_back(u);
            if (place(slot + 1, std::move(next)))
                return true;
            classes[static_cast<std::size_t>(cls)].pop_back();
            if (exhausted)
                return false;
        }
        return false;
    }
};

}  // namespace detail

/// Searches for a copy of K_m^3(t) avoiding `avoid` by filling the classes
/// round-robin with backtracking; candidates are tried in a seeded order.
inline SearchResult<BlowupCopy> find_blowup_copy(const ThreeGraph& h, int m, int t, const VertexSet& avoid,
                                                 std::uint64_t budget, std::uint64_t seed)
{
    if (m < 3 || t < 1)
        throw std::invalid_argument("blowup copies need m >= 3 and t >= 1");
    detail::BlowupSearch s{h, m, t, {}, std::vector<int>(static_cast<std::size_t>(h.n()), 0), budget, 0, false,
                           std::vector<std::vector<int>>(static_cast<std::size_t>(m))};
    s.order.resize(static_cast<std::size_t>(h.n()));
    std::iota(s.order.begin(), s.order.end(), 0);
    Rng rng(seed);
    rng.shuffle(s.order);
    for (std::size_t p = 0; p < s.order.size(); ++p)
        s.pos[static_cast<std::size_t>(s.order[p])] = static_cast<int>(p);
    const VertexSet free = VertexSet::range(h.n()) - avoid;
    SearchResult<BlowupCopy> r;
    if (free.size() >= m * t && s.place(0, std::vector<VertexSet>(static_cast<std::size_t>(m), free))) {
        r.status = SearchStatus::found;
        r.value = BlowupCopy{s.classes};
    } else {
        r.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    r.nodes = s.nodes;
    return r;
}

// ---------------------------------------------------------------------------
// Absorbers

using Tuple4 = std::array<int, 4>;

/// Labelled 36-vertex gadget {x_i, y_i, z_i, u_{i,j}}; index i = 0..3 and
/// j = 0..5 stand for x_{i+1}, u_{i+1, j+1}.
struct Absorber {
    Tuple4 x{}, y{}, z{};
    std::array<std::array<int, 6>, 4> u{};

    std::vector<int> vertices() const
    {
        std::vector<int> out(x.begin(), x.end());
        out.insert(out.end(), y.begin(), y.end());
        out.insert(out.end(), z.begin(), z.end());
        for (const auto& row : u)
            out.insert(out.end(), row.begin(), row.end());
        return out;
    }

    VertexSet vertex_set() const { return VertexSet::of(vertices()); }
    bool labels_distinct() const { return VertexSequence::distinct(vertices()); }

    friend bool operator==(const Absorber&, const Absorber&) = default;
};

/// T1(A) = x1..x4 y1..y4 z1..z4.
inline std::vector<int> absorber_t1(const Absorber& a)
{
    std::vector<int> s(a.x.begin(), a.x.end());
    s.insert(s.end(), a.y.begin(), a.y.end());
    s.insert(s.end(), a.z.begin(), a.z.end());
    return s;
}

/// T2(A) = x1..x4 z1..z4.
inline std::vector<int> absorber_t2(const Absorber& a)
{
    std::vector<int> s(a.x.begin(), a.x.end());
    s.insert(s.end(), a.z.begin(), a.z.end());
    return s;
}

/// u_{i,1} u_{i,2} u_{i,3} centre u_{i,4} u_{i,5} u_{i,6}.
inline std::vector<int> absorber_u(const Absorber& a, int i, int centre)
{
    const auto& r = a.u[static_cast<std::size_t>(i)];
    return {r[0], r[1], r[2], centre, r[3], r[4], r[5]};
}

namespace detail {

inline void check_target(const Absorber& a, const Tuple4& v)
{
    if (!a.labels_distinct())
        throw std::invalid_argument("absorber labels collide");
    if (!VertexSequence::distinct({v[0], v[1], v[2], v[3]}))
        throw std::invalid_argument("target tuple repeats a vertex");
    const VertexSet s = a.vertex_set();
    for (int w : v)
        if (s.contains(w))
            throw std::invalid_argument("target tuple meets the absorber");
}

}  // namespace detail

/// T1(A), T2(A) and U_i(A) are squared-tight-paths (the part of the
/// definition that does not involve the target).
inline bool is_absorber_frame(const ThreeGraph& h, const Absorber& a)
{
    if (!a.labels_distinct())
        throw std::invalid_argument("absorber labels collide");
    if (!is_squared_tight_path(h, absorber_t1(a)) || !is_squared_tight_path(h, absorber_t2(a)))
        return false;
    for (int i = 0; i < 4; ++i)
        if (!is_squared_tight_path(h, absorber_u(a, i, a.y[static_cast<std::size_t>(i)])))
            return false;
    return true;
}

/// A is an absorber for v: T1, T2, U_i(A, v) and U_i(A) are squared-tight-paths.
inline bool is_absorber(const ThreeGraph& h, const Absorber& a, const Tuple4& v)
{
    detail::check_target(a, v);
    for (int w : v)
        h.check_vertex(w);
    if (!is_absorber_frame(h, a))
        return false;
    for (int i = 0; i < 4; ++i)
        if (!is_squared_tight_path(h, absorber_u(a, i, v[static_cast<std::size_t>(i)])))
            return false;
    return true;
}

/// P_A = {T2(A), U_1(A), ..., U_4(A)}.
inline std::vector<VertexSequence> absorber_paths(const Absorber& a)
{
    if (!a.labels_distinct())
        throw std::invalid_argument("absorber labels collide");
    std::vector<VertexSequence> out{VertexSequence::path(absorber_t2(a))};
    for (int i = 0; i < 4; ++i)
        out.push_back(VertexSequence::path(absorber_u(a, i, a.y[static_cast<std::size_t>(i)])));
    return out;
}

/// Q_{A,v} = {T1(A), U_1(A, v), ..., U_4(A, v)}, index-aligned with P_A.
inline std::vector<VertexSequence> absorbed_paths(const Absorber& a, const Tuple4& v)
{
    detail::check_target(a, v);
    std::vector<VertexSequence> out{VertexSequence::path(absorber_t1(a))};
    for (int i = 0; i < 4; ++i)
        out.push_back(VertexSequence::path(absorber_u(a, i, v[static_cast<std::size_t>(i)])));
    return out;
}

namespace detail {

struct USearch {
    const ThreeGraph& h;
    std::array<int, 2> centres;   // v_i and y_i
    VertexSet free;
    const std::vector<int>& order;
    std::uint64_t budget;
    std::uint64_t& nodes;
    bool exhausted = false;
    std::array<int, 6> u{};

    VertexSet nb(int a, int b) const { return h.pair_neighbourhood(a, b); }
    VertexSet both(int a) const { return nb(a, centres[0]) & nb(a, centres[1]); }

    VertexSet candidates(int j) const
    {
        VertexSet c = free;
        switch (j) {
        case 0:
            break;
        case 1:
            c &= both(u[0]);
            break;
        case 2:
            c &= nb(u[0], u[1]) & both(u[0]) & both(u[1]);
            break;
        case 3:
            c &= nb(u[1], u[2]) & both(u[1]) & both(u[2]);
            break;
        case 4:
            c &= nb(u[2], u[3]) & both(u[2]) & both(u[3]);
            break;
        case 5:
            c &= nb(u[3], u[4]) & both(u[3]) & both(u[4]);
            break;
        }
        return c;
    }

    bool fill(int j)
    {
        if (j == 6)
            return true;
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        const VertexSet cand = candidates(j);
        for (int w : order) {
            if (!cand.contains(w))
                continue;
            u[static_cast<std::size_t>(j)] = w;
            free.erase(w);
            if (fill(j + 1))
                return true;
            free.insert(w);
            if (exhausted)
                return false;
        }
        return false;
    }
};

}  // namespace detail

namespace detail {

inline SearchResult<Absorber> absorber_attempt(const ThreeGraph& h, const Tuple4& v, std::uint64_t budget,
                                               std::uint64_t seed, const VertexSet& avoid)
{
    SearchResult<Absorber> r;
    const VertexSet blocked = avoid | VertexSet{v[0], v[1], v[2], v[3]};
    auto frame = find_blowup_copy(h, 4, 3, blocked, budget, seed);
    r.nodes = frame.nodes;
    if (!frame.found()) {
        r.status = frame.status;
        return r;
    }
    const auto& cls = frame.value->classes;
    std::vector<int> order(static_cast<std::size_t>(h.n()));
    std::iota(order.begin(), order.end(), 0);
    Rng rng = Rng(seed).split(7);
    rng.shuffle(order);

    Absorber a;
    VertexSet free = VertexSet::range(h.n()) - blocked - frame.value->vertex_set();
    bool exhausted = false;
    for (int i = 0; i < 4; ++i) {
        const auto& c = cls[static_cast<std::size_t>(i)];
        bool placed = false;
        for (int pick = 0; pick < 3 && !placed && !exhausted; ++pick) {
            const int y = c[static_cast<std::size_t>(pick)];
            USearch s{h, {v[static_cast<std::size_t>(i)], y}, free, order, budget, r.nodes};
            if (s.fill(0)) {
                a.x[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>((pick + 1) % 3)];
                a.y[static_cast<std::size_t>(i)] = y;
                a.z[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>((pick + 2) % 3)];
                a.u[static_cast<std::size_t>(i)] = s.u;
                for (int w : s.u)
                    free.erase(w);
                placed = true;
            }
            exhausted = s.exhausted;
        }
        if (!placed) {
            r.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
            return r;
        }
    }
    if (!is_absorber(h, a, v))
        throw std::logic_error("absorber search produced an invalid gadget");
    r.status = SearchStatus::found;
    r.value = a;
    return r;
}

}  // namespace detail

/// Builds an absorber for v: a K_4^3(3) copy with classes {x_i, y_i, z_i}
/// avoiding v, then for each i six vertices u_{i,1..6} forming a squared
/// path in L(v_i) & L(y_i) whose consecutive triples are edges. Every
/// member of a class is tried as y_i. Each restart has its own seed and an
/// equal share of the budget; the lowest successful restart wins, so the
/// result does not depend on threads. Results are validated.
inline SearchResult<Absorber> find_absorber(const ThreeGraph& h, const Tuple4& v, std::uint64_t budget,
                                            std::uint64_t seed, const VertexSet& avoid = {}, int restarts = 4,
                                            int threads = 1)
{
    for (int w : v)
        h.check_vertex(w);
    if (!VertexSequence::distinct({v[0], v[1], v[2], v[3]}))
        throw std::invalid_argument("target tuple repeats a vertex");
    if (restarts < 1)
        throw std::invalid_argument("find_absorber needs at least one restart");
    const std::uint64_t share = std::max<std::uint64_t>(1, budget / static_cast<std::uint64_t>(restarts));
    std::vector<SearchResult<Absorber>> tries(static_cast<std::size_t>(restarts));
    const Rng root(seed);
    parallel_for(tries.size(), threads, [&](std::size_t i) {
        tries[i] = detail::absorber_attempt(h, v, share, root.split(i).seed(), avoid);
    });
    SearchResult<Absorber> r;
    bool exhausted = false;
    for (const auto& t : tries) {
        r.nodes += t.nodes;
        exhausted = exhausted || t.status == SearchStatus::budget_exhausted;
        if (t.found() && !r.value) {
            r.status = SearchStatus::found;
            r.value = t.value;
        }
    }
    if (!r.value)
        r.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    return r;
}

// ---------------------------------------------------------------------------
// Donation path

/// a_1..a_5 b_1..b_5 c_1..c_5 d_1..d_5 built from a K_5^3(4) copy whose
/// k-th class is {a_k, b_k, c_k, d_k}. Any subset of {a_5, b_5, c_5} can be
/// removed keeping a squared-tight-path with the same ends.
struct DonationPath {
    std::array<int, 5> a{}, b{}, c{}, d{};

    std::vector<int> sequence() const
    {
        std::vector<int> s(a.begin(), a.end());
        s.insert(s.end(), b.begin(), b.end());
        s.insert(s.end(), c.begin(), c.end());
        s.insert(s.end(), d.begin(), d.end());
        return s;
    }

    std::array<int, 3> donatable() const { return {a[4], b[4], c[4]}; }
    VertexSet vertex_set() const { return VertexSet::of(sequence()); }

    friend bool operator==(const DonationPath&, const DonationPath&) = default;
};

inline DonationPath donation_from_copy(const BlowupCopy& copy)
{
    if (copy.classes.size() != 5)
        throw std::invalid_argument("a donation path needs five classes");
    DonationPath p;
    for (std::size_t k = 0; k < 5; ++k) {
        const auto& cl = copy.classes[k];
        if (cl.size() != 4)
            throw std::invalid_argument("a donation path needs classes of size four");
        p.a[k] = cl[0];
        p.b[k] = cl[1];
        p.c[k] = cl[2];
        p.d[k] = cl[3];
    }
    return p;
}

inline SearchResult<DonationPath> find_donation_path(const ThreeGraph& h, const VertexSet& avoid,
                                                     std::uint64_t budget, std::uint64_t seed = 1)
{
    auto copy = find_blowup_copy(h, 5, 4, avoid, budget, seed);
    SearchResult<DonationPath> r;
    r.status = copy.status;
    r.nodes = copy.nodes;
    if (copy.found())
        r.value = donation_from_copy(*copy.value);
    return r;
}

/// P \ S for S within {a_5, b_5, c_5}; the result is re-validated.
inline VertexSequence donate(const ThreeGraph& h, const DonationPath& p, const std::vector<int>& s)
{
    const auto don = p.donatable();
    for (int w : s)
        if (std::find(don.begin(), don.end(), w) == don.end())
            throw std::invalid_argument("vertex " + std::to_string(w) + " is not donatable");
    if (!VertexSequence::distinct(s))
        throw std::invalid_argument("donated vertices repeat");
    std::vector<int> out;
    for (int w : p.sequence())
        if (std::find(s.begin(), s.end(), w) == s.end())
            out.push_back(w);
    const auto full = p.sequence();
    if (!is_squared_tight_path(h, out) || !std::equal(full.begin(), full.begin() + 3, out.begin()) ||
        !std::equal(full.end() - 3, full.end(), out.end() - 3))
        throw std::logic_error("donation broke the path");
    return VertexSequence::path(std::move(out));
}

// ---------------------------------------------------------------------------
// Absorption

class InsufficientAbsorbers : public std::runtime_error {
public:
    explicit InsufficientAbsorbers(const Tuple4& t)
        : std::runtime_error("no free absorber for tuple (" + std::to_string(t[0]) + "," +
                             std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
                             std::to_string(t[3]) + ")"),
          tuple_(t)
    {
    }
    const Tuple4& tuple() const { return tuple_; }

private:
    Tuple4 tuple_;
};

struct AbsorbingSystem {
    std::vector<Absorber> absorbers;
    std::optional<DonationPath> donation;

    /// P: the donation path first (if any), then P_A for each absorber in order.
    std::vector<VertexSequence> paths() const
    {
        std::vector<VertexSequence> out;
        if (donation)
            out.push_back(VertexSequence::path(donation->sequence()));
        for (const auto& a : absorbers)
            for (auto& p : absorber_paths(a))
                out.push_back(std::move(p));
        return out;
    }

    VertexSet vertex_set() const
    {
        VertexSet s;
        for (const auto& p : paths())
            s |= p.vertex_set();
        return s;
    }
};

struct Assignment {
    std::size_t absorber;
    Tuple4 tuple;   ///< ordered as the absorber accepts it
};

struct AbsorbResult {
    std::vector<VertexSequence> before;   ///< P
    std::vector<VertexSequence> after;    ///< Q, index-aligned: after[i] = f(before[i])
    std::vector<int> donated;
    std::vector<Assignment> assignments;
};

namespace detail {

inline std::optional<Tuple4> accepting_order(const ThreeGraph& h, const Absorber& a, Tuple4 t)
{
    std::sort(t.begin(), t.end());
    do {
        if (is_absorber(h, a, t))
            return t;
    } while (std::next_permutation(t.begin(), t.end()));
    return std::nullopt;
}

}  // namespace detail

/// Rewrites the path system so that it also covers L: pads L with donated
/// vertices to a multiple of four, splits it into 4-tuples (ascending), and
/// matches tuples to distinct absorbers that accept some ordering of them.
inline AbsorbResult absorb(const ThreeGraph& h, const AbsorbingSystem& sys, const VertexSet& leftover)
{
    AbsorbResult out;
    out.before = sys.paths();
    const VertexSet used = sys.vertex_set();
    if (leftover.intersects(used))
        throw std::invalid_argument("leftover vertices must avoid the path system");
    for (int v : leftover)
        h.check_vertex(v);

    std::vector<int> lp = leftover.to_vector();
    const std::size_t pad = (4 - lp.size() % 4) % 4;
    if (pad > 0) {
        if (!sys.donation)
            throw std::invalid_argument("padding the leftover set needs a donation path");
        const auto don = sys.donation->donatable();
        out.donated.assign(don.begin(), don.begin() + static_cast<std::ptrdiff_t>(pad));
        lp.insert(lp.end(), out.donated.begin(), out.donated.end());
        std::sort(lp.begin(), lp.end());
    }
    std::vector<Tuple4> tuples;
    for (std::size_t i = 0; i < lp.size(); i += 4)
        tuples.push_back({lp[i], lp[i + 1], lp[i + 2], lp[i + 3]});

    // accepts[t][a] = ordering of tuple t that absorber a takes
    std::vector<std::vector<std::optional<Tuple4>>> accepts(tuples.size());
    for (std::size_t t = 0; t < tuples.size(); ++t)
        for (const auto& a : sys.absorbers)
            accepts[t].push_back(detail::accepting_order(h, a, tuples[t]));

    std::vector<int> owner(sys.absorbers.size(), -1);
    std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t t, std::vector<char>& seen) {
        for (std::size_t a = 0; a < sys.absorbers.size(); ++a) {
            if (!accepts[t][a] || seen[a])
                continue;
            seen[a] = 1;
            if (owner[a] < 0 || augment(static_cast<std::size_t>(owner[a]), seen)) {
                owner[a] = static_cast<int>(t);
                return true;
            }
        }
        return false;
    };
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        std::vector<char> seen(sys.absorbers.size(), 0);
        if (!augment(t, seen))
            throw InsufficientAbsorbers(tuples[t]);
    }

    if (sys.donation)
        out.after.push_back(donate(h, *sys.donation, out.donated));
    for (std::size_t a = 0; a < sys.absorbers.size(); ++a) {
        std::vector<VertexSequence> q;
        if (owner[a] >= 0) {
            const Tuple4 ord = *accepts[static_cast<std::size_t>(owner[a])][a];
            out.assignments.push_back({a, ord});
            q = absorbed_paths(sys.absorbers[a], ord);
        } else {
            q = absorber_paths(sys.absorbers[a]);
        }
        for (auto& p : q)
            out.after.push_back(std::move(p));
    }
    return out;
}

}  // namespace tetraham
