#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypergraph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "tight.hpp"

namespace tetraham {

enum class LemmaId {
    FACT_3_1,
    FACT_3_2,
    FACT_3_4,
    PROP_3_5,
    PROP_3_6i,
    PROP_3_6ii,
    LEM_3_8i,
    LEM_3_8ii,
    LEM_3_8iii,
    LEM_3_8iv,
    LEM_3_9,
    PROP_3_10,
    LEM_3_12,
    PROP_3_13,
    LEM_3_14,
    LEM_3_15,
    PROP_3_16,
    LEM_3_17i,
    LEM_3_17ii,
    LEM_3_17iii,
    LEM_1_4,
};

inline constexpr std::array<LemmaId, 21> kAllLemmas = {
    LemmaId::FACT_3_1,   LemmaId::FACT_3_2,   LemmaId::FACT_3_4,    LemmaId::PROP_3_5,
    LemmaId::PROP_3_6i,  LemmaId::PROP_3_6ii, LemmaId::LEM_3_8i,    LemmaId::LEM_3_8ii,
    LemmaId::LEM_3_8iii, LemmaId::LEM_3_8iv,  LemmaId::LEM_3_9,     LemmaId::PROP_3_10,
    LemmaId::LEM_3_12,   LemmaId::PROP_3_13,  LemmaId::LEM_3_14,    LemmaId::LEM_3_15,
    LemmaId::PROP_3_16,  LemmaId::LEM_3_17i,  LemmaId::LEM_3_17ii,  LemmaId::LEM_3_17iii,
    LemmaId::LEM_1_4,
};

inline std::string_view to_string(LemmaId id)
{
    switch (id) {
    case LemmaId::FACT_3_1: return "FACT_3_1";
    case LemmaId::FACT_3_2: return "FACT_3_2";
    case LemmaId::FACT_3_4: return "FACT_3_4";
    case LemmaId::PROP_3_5: return "PROP_3_5";
    case LemmaId::PROP_3_6i: return "PROP_3_6i";
    case LemmaId::PROP_3_6ii: return "PROP_3_6ii";
    case LemmaId::LEM_3_8i: return "LEM_3_8i";
    case LemmaId::LEM_3_8ii: return "LEM_3_8ii";
    case LemmaId::LEM_3_8iii: return "LEM_3_8iii";
    case LemmaId::LEM_3_8iv: return "LEM_3_8iv";
    case LemmaId::LEM_3_9: return "LEM_3_9";
    case LemmaId::PROP_3_10: return "PROP_3_10";
    case LemmaId::LEM_3_12: return "LEM_3_12";
    case LemmaId::PROP_3_13: return "PROP_3_13";
    case LemmaId::LEM_3_14: return "LEM_3_14";
    case LemmaId::LEM_3_15: return "LEM_3_15";
    case LemmaId::PROP_3_16: return "PROP_3_16";
    case LemmaId::LEM_3_17i: return "LEM_3_17i";
    case LemmaId::LEM_3_17ii: return "LEM_3_17ii";
    case LemmaId::LEM_3_17iii: return "LEM_3_17iii";
    case LemmaId::LEM_1_4: return "LEM_1_4";
    }
    return "?";
}

/// Parses a tag; also accepts the group tags PROP_3_6, LEM_3_8 and LEM_3_17.
inline std::vector<LemmaId> parse_lemma_tag(std::string_view tag)
{
    for (LemmaId id : kAllLemmas)
        if (to_string(id) == tag)
            return {id};
    std::vector<LemmaId> group;
    for (LemmaId id : kAllLemmas) {
        auto s = to_string(id);
        if (s.size() > tag.size() && s.substr(0, tag.size()) == tag &&
            (s[tag.size()] == 'i' || s[tag.size()] == 'v'))
            group.push_back(id);
    }
    if (group.empty())
        throw std::invalid_argument("unknown lemma tag: " + std::string(tag));
    return group;
}

struct Witness {
    std::string kind;
    std::vector<int> vertices;
    std::vector<int> components;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct LemmaReport {
    LemmaId id = LemmaId::FACT_3_1;
    bool hypothesis_met = false;
    bool conclusion_holds = true;
    std::vector<Witness> witnesses;     ///< capped at ScanOptions::max_witnesses
    std::uint64_t violations = 0;       ///< total violating configurations seen
    std::uint64_t checked_universe_size = 0;
    bool budget_exhausted = false;
    std::optional<long long> measure;   ///< lemma-specific quantity (see README)
    std::string note;

    const Witness* witness() const { return witnesses.empty() ? nullptr : &witnesses.front(); }
    bool failed_assertion() const { return hypothesis_met && !conclusion_holds; }
};

enum class VerifyMode { assert_mode, scan };

struct ScanOptions {
    VerifyMode mode = VerifyMode::assert_mode;   ///< assert stops at the first violation
    std::size_t max_witnesses = 64;
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t seed = 1;      ///< pair families for PROP_3_6
    int families = 256;
    int threads = 1;
};

/// The strict codegree hypothesis 9 delta_2 > 7n, in integers.
inline bool above_seven_ninths(int delta2, int n) { return 9LL * delta2 > 7LL * n; }

/// 3 delta_2 - 2n - 3: lower bound on the tetrahedral degree of every edge.
inline long long tetra_degree_floor(int delta2, int n) { return 3LL * delta2 - 2LL * n - 3; }

// ---------------------------------------------------------------------------
// Common neighbours of pair families

struct CommonNeighbour {
    std::size_t dropped;   ///< index of P' in the family
    int vertex;
    friend bool operator==(const CommonNeighbour&, const CommonNeighbour&) = default;
};

namespace detail {

inline void check_pair_family(const ThreeGraph& h, const std::vector<Pair>& pairs, std::size_t cap)
{
    if (pairs.size() > cap)
        throw std::invalid_argument("pair family has more than " + std::to_string(cap) + " pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        h.check_vertex(pairs[i][0]);
        h.check_vertex(pairs[i][1]);
        if (pairs[i][0] == pairs[i][1])
            throw std::invalid_argument("pair family contains a degenerate pair");
        for (std::size_t j = 0; j < i; ++j)
            if (sorted<2>(pairs[i]) == sorted<2>(pairs[j]))
                throw std::invalid_argument("pair family contains a repeated pair");
    }
}

inline std::optional<CommonNeighbour> common_neighbour_dropping(const ThreeGraph& h,
                                                                const std::vector<Pair>& pairs,
                                                                std::optional<std::size_t> fixed)
{
    for (std::size_t drop = 0; drop < pairs.size(); ++drop) {
        if (fixed && drop == *fixed)
            continue;
        VertexSet common = VertexSet::range(h.n());
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (j != drop)
                common &= h.pair_neighbourhood(pairs[j][0], pairs[j][1]);
        if (!common.empty())
            return CommonNeighbour{drop, common.first()};
    }
    return std::nullopt;
}

}  // namespace detail

/// Some P' in the family and a vertex in N(P) for every other P; lowest
/// index first, then lowest vertex. At most 9 pairs.
inline std::optional<CommonNeighbour> check_common_neighbour_9(const ThreeGraph& h,
                                                               const std::vector<Pair>& pairs)
{
    detail::check_pair_family(h, pairs, 9);
    return detail::common_neighbour_dropping(h, pairs, std::nullopt);
}

/// As check_common_neighbour_9 for at most 8 pairs, never dropping pairs[fixed].
inline std::optional<CommonNeighbour> check_common_neighbour_fixed(const ThreeGraph& h,
                                                                   const std::vector<Pair>& pairs,
                                                                   std::size_t fixed)
{
    detail::check_pair_family(h, pairs, 8);
    if (fixed >= pairs.size())
        throw std::out_of_range("fixed pair index outside the family");
    return detail::common_neighbour_dropping(h, pairs, fixed);
}

/// Throws std::logic_error when H satisfies 9 delta_2 > 7n and no pair can be dropped.
inline CommonNeighbour assert_common_neighbour_9(const ThreeGraph& h, const std::vector<Pair>& pairs)
{
    auto r = check_common_neighbour_9(h, pairs);
    if (!r) {
        if (above_seven_ninths(min_codegree(h), h.n()))
            throw std::logic_error("no common neighbour after dropping any single pair");
        throw std::invalid_argument("no common neighbour (codegree hypothesis not met)");
    }
    return *r;
}

// ---------------------------------------------------------------------------
// Scan plumbing

namespace detail {

struct Sink {
    bool first_only = true;
    std::size_t max_witnesses = 64;
    std::atomic<std::uint64_t>* nodes = nullptr;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();

    std::vector<Witness> witnesses;
    std::uint64_t violations = 0;
    std::uint64_t checked = 0;
    bool exhausted = false;

    /// Counts one examined configuration; false once the budget is spent.
    bool tick()
    {
        ++checked;
        if (nodes->fetch_add(1, std::memory_order_relaxed) + 1 > budget)
            exhausted = true;
        return !exhausted;
    }

    void add(Witness w)
    {
        ++violations;
        if (witnesses.size() < max_witnesses)
            witnesses.push_back(std::move(w));
    }

    bool done() const { return exhausted || (first_only && violations > 0); }
};

struct ScanContext {
    const PhiColouring& pc;
    const ThreeGraph& h;
    int n;
    int delta2;
    bool strict;
    ScanOptions opt;
    std::atomic<std::uint64_t> nodes{0};

    ScanContext(const PhiColouring& p, ScanOptions o)
        : pc(p), h(p.base()), n(p.n()), delta2(p.n() >= 2 ? min_codegree(p.base()) : 0),
          strict(above_seven_ninths(delta2, n)), opt(o)
    {
    }

    Sink sink()
    {
        Sink s;
        s.first_only = opt.mode == VerifyMode::assert_mode;
        s.max_witnesses = opt.max_witnesses;
        s.nodes = &nodes;
        s.budget = opt.node_budget;
        return s;
    }
};

inline void merge_into(Sink& into, Sink&& from)
{
    into.violations += from.violations;
    into.checked += from.checked;
    into.exhausted = into.exhausted || from.exhausted;
    for (auto& w : from.witnesses)
        if (into.witnesses.size() < into.max_witnesses)
            into.witnesses.push_back(std::move(w));
}

/// Runs body(v, sink) for each vertex, in parallel when asked, and merges
/// the per-vertex results in vertex order.
template <typename F>
Sink per_vertex(ScanContext& ctx, F&& body)
{
    Sink total = ctx.sink();
    const auto n = static_cast<std::size_t>(ctx.n);
    if (ctx.opt.threads <= 1) {
        for (std::size_t v = 0; v < n && !total.done(); ++v) {
            Sink s = ctx.sink();
            body(static_cast<int>(v), s);
            merge_into(total, std::move(s));
        }
        return total;
    }
    std::vector<Sink> parts(n);
    for (auto& s : parts)
        s = ctx.sink();
    parallel_for(n, ctx.opt.threads, [&](std::size_t v) { body(static_cast<int>(v), parts[v]); });
    for (std::size_t v = 0; v < n && !total.done(); ++v)
        merge_into(total, std::move(parts[v]));
    return total;
}

inline LemmaReport make_report(LemmaId id, bool hypothesis, Sink&& s)
{
    LemmaReport r;
    r.id = id;
    r.hypothesis_met = hypothesis;
    r.violations = s.violations;
    r.conclusion_holds = s.violations == 0;
    r.witnesses = std::move(s.witnesses);
    if (!r.witnesses.empty() && s.first_only)
        r.witnesses.resize(1);
    r.checked_universe_size = s.checked;
    r.budget_exhausted = s.exhausted;
    return r;
}

inline bool contains(const std::vector<int>& sorted_ids, int c)
{
    return std::binary_search(sorted_ids.begin(), sorted_ids.end(), c);
}

inline int distinct_count(std::array<int, 4> c)
{
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Facts

namespace detail {

inline LemmaReport fact_3_1(ScanContext& ctx)
{
    const auto& h = ctx.h;
    const auto& pc = ctx.pc;
    Sink s = per_vertex(ctx, [&](int a, Sink& sink) {
        for (int b = a + 1; b < ctx.n && !sink.done(); ++b) {
            const VertexSet& nab = h.pair_neighbourhood(a, b);
            for (int c = nab.first(); c >= 0 && !sink.done(); c = nab.next(c)) {
                VertexSet base = nab & h.pair_neighbourhood(a, c) & h.pair_neighbourhood(b, c);
                for (int d = nab.next(c); d >= 0; d = nab.next(d)) {
                    if (!sink.tick())
                        return;
                    if (pc.phi(a, b, c) == pc.phi(a, b, d))
                        continue;
                    if ((base & h.pair_neighbourhood(a, d) & h.pair_neighbourhood(b, d)).empty())
                        continue;
                    sink.add({"edge_pair", {a, b, c, d}, {pc.phi(a, b, c), pc.phi(a, b, d)}});
                    if (sink.done())
                        return;
                }
            }
        }
    });
    return make_report(LemmaId::FACT_3_1, true, std::move(s));
}

inline LemmaReport fact_3_2(ScanContext& ctx)
{
    Sink s = ctx.sink();
    for (int u = 0; u < ctx.n && !s.done(); ++u)
        for (int v = u + 1; v < ctx.n && !s.done(); ++v) {
            if (!s.tick())
                break;
            const auto& a = ctx.pc.phi_vertex(u);
            const auto& b = ctx.pc.phi_vertex(v);
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common.empty())
                s.add({"vertex_pair", {u, v}, {}});
        }
    return make_report(LemmaId::FACT_3_2, ctx.delta2 > 0, std::move(s));
}

inline LemmaReport fact_3_4(ScanContext& ctx)
{
    const long long floor = tetra_degree_floor(ctx.delta2, ctx.n);
    const auto& pc = ctx.pc;
    Sink s = ctx.sink();
    long long least = std::numeric_limits<long long>::max();
    ctx.h.for_each_edge([&](const Triple& e) {
        if (s.done() || !s.tick())
            return;
        int d = tetra_degree(ctx.h, e);
        least = std::min<long long>(least, d);
        if (d < floor)
            s.add({"edge", {e[0], e[1], e[2]}, {pc.phi(e)}});
    });
    // second part: |V(T)| >= deg_T(xy) >= floor for T in phi(xy)
    for (int x = 0; x < ctx.n && !s.done(); ++x)
        for (int y = x + 1; y < ctx.n && !s.done(); ++y)
            for (const auto& [c, nbrs] : pc.colour_groups(x, y)) {
                if (!s.tick())
                    break;
                const int deg = nbrs.size();
                if (deg < floor || pc.component_vertices(c).size() < deg)
                    s.add({"pair_component", {x, y}, {c}});
            }
    auto r = make_report(LemmaId::FACT_3_4, true, std::move(s));
    if (least != std::numeric_limits<long long>::max())
        r.measure = least;
    return r;
}

inline LemmaReport prop_3_5(ScanContext& ctx)
{
    const auto& pc = ctx.pc;
    const auto& h = ctx.h;
    const bool hyp = ctx.strict && pc.component_count() >= 2;
    Sink s = ctx.sink();
    if (pc.component_count() >= 2) {
        bool exists = false;
        for (int x = 0; x < ctx.n && !exists; ++x)
            for (int y = x + 1; y < ctx.n && !exists; ++y)
                exists = pc.phi_pair(x, y).size() >= 2;
        s.tick();
        if (!exists)
            s.add({"no_two_coloured_pair", {}, {}});
    }
    for (int x = 0; x < ctx.n && !s.done(); ++x)
        for (int y = 0; y < ctx.n && !s.done(); ++y) {
            if (x == y)
                continue;
            const auto& groups = pc.colour_groups(x, y);
            for (const auto& [t1, n1] : groups)
                for (const auto& [t2, n2] : groups)
                    for (int z = n1.first(); z >= 0 && !s.done(); z = n1.next(z)) {
                        if (!s.tick())
                            break;
                        if ((n2 & h.pair_neighbourhood(y, z)).empty())
                            s.add({"missing_w", {x, y, z}, {t1, t2}});
                    }
        }
    auto r = make_report(LemmaId::PROP_3_5, hyp, std::move(s));
    if (!hyp)
        r.note = pc.component_count() < 2 ? "fewer than two tight components: vacuous"
                                          : "codegree hypothesis not met";
    return r;
}

inline std::vector<Pair> random_pair_family(Rng& rng, int n, std::size_t size)
{
    std::vector<Pair> out;
    const auto total = static_cast<std::size_t>(binomial(n, 2));
    size = std::min(size, total);
    while (out.size() < size) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (a == b)
            continue;
        Pair p = sorted<2>({a, b});
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
    }
    return out;
}

inline LemmaReport prop_3_6(ScanContext& ctx, bool fixed_variant)
{
    Sink s = ctx.sink();
    Rng rng = Rng(ctx.opt.seed).split(fixed_variant ? 2 : 1);
    if (ctx.n >= 2)
        for (int f = 0; f < ctx.opt.families && !s.done(); ++f) {
            if (!s.tick())
                break;
            auto fam = random_pair_family(rng, ctx.n, fixed_variant ? 8 : 9);
            auto got = fixed_variant ? check_common_neighbour_fixed(ctx.h, fam, 0)
                                     : check_common_neighbour_9(ctx.h, fam);
            if (!got) {
                Witness w{"pair_family", {}, {}};
                for (const auto& p : fam) {
                    w.vertices.push_back(p[0]);
                    w.vertices.push_back(p[1]);
                }
                s.add(std::move(w));
            }
        }
    return make_report(fixed_variant ? LemmaId::PROP_3_6ii : LemmaId::PROP_3_6i, ctx.strict,
                       std::move(s));
}

// ---------------------------------------------------------------------------
// Link-graph patterns at a vertex

struct LinkSinks {
    Sink proper_c4, three_colour_c4, rainbow_p4, pair_colours;
};

/// C4 x-w-y-z-x in L(v) with x the least vertex and w < z.
inline void scan_link_cycles(const PhiColouring& pc, int v, Sink* proper, Sink* three)
{
    const auto& h = pc.base();
    const int n = pc.n();
    const std::size_t colours = pc.phi_vertex(v).size();
    if (colours < 2 || (!proper && !three))
        return;
    if (colours < 3)
        three = nullptr;
    auto stop = [&] { return (!proper || proper->done()) && (!three || three->done()); };
    Sink* counter = proper ? proper : three;
    for (int x = 0; x < n && !stop(); ++x) {
        if (x == v)
            continue;
        const VertexSet lx = h.pair_neighbourhood(v, x) - VertexSet::range(x + 1);
        for (int y = x + 1; y < n && !stop(); ++y) {
            if (y == v)
                continue;
            const VertexSet common = lx & h.pair_neighbourhood(v, y);
            for (int w = common.first(); w >= 0 && !stop(); w = common.next(w)) {
                const int a1 = pc.phi(v, x, w), a2 = pc.phi(v, w, y);
                for (int z = common.next(w); z >= 0; z = common.next(z)) {
                    if (!counter->tick()) {
                        if (proper)
                            proper->exhausted = true;
                        if (three)
                            three->exhausted = true;
                        break;
                    }
                    const int b2 = pc.phi(v, y, z), b1 = pc.phi(v, z, x);
                    const std::array<int, 4> cols = {a1, a2, b2, b1};
                    Witness w4{"C4", {v, x, w, y, z}, {a1, a2, b2, b1}};
                    if (proper && !proper->done() && a1 != a2 && a2 != b2 && b2 != b1 && b1 != a1)
                        proper->add(w4);
                    if (three && !three->done() && distinct_count(cols) >= 3)
                        three->add(w4);
                    if (stop())
                        break;
                }
            }
        }
    }
    if (proper && three)
        three->checked = proper->checked;
}

/// Paths w-x-y-z in L(v) whose three edges carry three colours, w < z.
inline void scan_link_paths(const PhiColouring& pc, int v, Sink& sink)
{
    const auto& h = pc.base();
    if (pc.phi_vertex(v).size() < 3)
        return;
    for (int x = 0; x < pc.n() && !sink.done(); ++x) {
        if (x == v)
            continue;
        const VertexSet& lx = h.pair_neighbourhood(v, x);
        for (int y = lx.first(); y >= 0 && !sink.done(); y = lx.next(y)) {
            const int mid = pc.phi(v, x, y);
            for (const auto& [c1, ws] : pc.colour_groups(v, x)) {
                if (c1 == mid)
                    continue;
                for (const auto& [c2, zs] : pc.colour_groups(v, y)) {
                    if (c2 == mid || c2 == c1)
                        continue;
                    for (int w = ws.first(); w >= 0; w = ws.next(w)) {
                        if (w == y)
                            continue;
                        for (int z = zs.next(w); z >= 0; z = zs.next(z)) {
                            if (z == x)
                                continue;
                            if (!sink.tick())
                                return;
                            sink.add({"P4", {v, w, x, y, z}, {c1, mid, c2}});
                            if (sink.done())
                                return;
                        }
                    }
                }
            }
        }
    }
}

inline void scan_pair_colours(const PhiColouring& pc, int v, Sink& sink)
{
    for (int u = v + 1; u < pc.n() && !sink.done(); ++u) {
        if (!sink.tick())
            return;
        const auto& ids = pc.phi_pair(v, u);
        if (ids.size() > 2)
            sink.add({"pair", {v, u}, ids});
    }
}

inline std::vector<LemmaReport> lemma_3_8(ScanContext& ctx, const std::vector<LemmaId>& wanted)
{
    auto want = [&](LemmaId id) { return std::find(wanted.begin(), wanted.end(), id) != wanted.end(); };
    std::array<Sink, 4> totals = {ctx.sink(), ctx.sink(), ctx.sink(), ctx.sink()};
    const auto n = static_cast<std::size_t>(ctx.n);
    std::vector<std::array<Sink, 4>> parts(n);
    auto body = [&](std::size_t vi) {
        const int v = static_cast<int>(vi);
        auto& p = parts[vi];
        for (auto& s : p)
            s = ctx.sink();
        scan_link_cycles(ctx.pc, v, want(LemmaId::LEM_3_8i) ? &p[0] : nullptr,
                         want(LemmaId::LEM_3_8ii) ? &p[1] : nullptr);
        if (want(LemmaId::LEM_3_8iii))
            scan_link_paths(ctx.pc, v, p[2]);
        if (want(LemmaId::LEM_3_8iv))
            scan_pair_colours(ctx.pc, v, p[3]);
    };
    const std::array<LemmaId, 4> ids = {LemmaId::LEM_3_8i, LemmaId::LEM_3_8ii, LemmaId::LEM_3_8iii,
                                        LemmaId::LEM_3_8iv};
    const bool serial = ctx.opt.threads <= 1;
    if (!serial)
        parallel_for(n, ctx.opt.threads, body);
    for (std::size_t v = 0; v < n; ++v) {
        if (serial) {
            bool all_done = true;
            for (std::size_t k = 0; k < 4; ++k)
                all_done = all_done && (!want(ids[k]) || totals[k].done());
            if (all_done)
                break;
            body(v);
        }
        for (std::size_t k = 0; k < 4; ++k)
            if (!totals[k].done())
                merge_into(totals[k], std::move(parts[v][k]));
    }
    std::vector<LemmaReport> out;
    for (std::size_t k = 0; k < 4; ++k)
        if (want(ids[k]))
            out.push_back(make_report(ids[k], ctx.strict, std::move(totals[k])));
    return out;
}

inline LemmaReport lemma_3_9(ScanContext& ctx)
{
    Sink s = ctx.sink();
    long long most = 0;
    for (int v = 0; v < ctx.n && !s.done(); ++v) {
        if (!s.tick())
            break;
        const auto& ids = ctx.pc.phi_vertex(v);
        most = std::max<long long>(most, static_cast<long long>(ids.size()));
        if (ids.size() > 2)
            s.add({"vertex", {v}, ids});
    }
    auto r = make_report(LemmaId::LEM_3_9, ctx.strict, std::move(s));
    r.measure = most;
    return r;
}

// ---------------------------------------------------------------------------
// Component-level patterns

inline LemmaReport prop_3_10(ScanContext& ctx)
{
    const auto& pc = ctx.pc;
    Sink s = ctx.sink();
    // lowest vertex with each two-element colour set
    std::vector<std::pair<std::array<int, 2>, int>> reps;
    for (int v = 0; v < ctx.n; ++v) {
        const auto& ids = pc.phi_vertex(v);
        if (ids.size() != 2)
            continue;
        std::array<int, 2> key = {ids[0], ids[1]};
        if (std::none_of(reps.begin(), reps.end(), [&](const auto& r) { return r.first == key; }))
            reps.push_back({key, v});
    }
    std::sort(reps.begin(), reps.end());
    const int k = pc.component_count();
    for (int t1 = 0; t1 < k && !s.done(); ++t1)
        for (int t2 = t1 + 1; t2 < k && !s.done(); ++t2)
            for (int t3 = t2 + 1; t3 < k && !s.done(); ++t3) {
                if (!s.tick())
                    break;
                auto find = [&](int a, int b) {
                    for (const auto& r : reps)
                        if (r.first[0] == a && r.first[1] == b)
                            return r.second;
                    return -1;
                };
                const int v1 = find(t2, t3), v2 = find(t1, t3), v3 = find(t1, t2);
                if (v1 >= 0 && v2 >= 0 && v3 >= 0)
                    s.add({"alternating_triple", {v1, v2, v3}, {t1, t2, t3}});
            }
    auto r = make_report(LemmaId::PROP_3_10, ctx.strict && k >= 2, std::move(s));
    if (k < 3)
        r.note = "fewer than three tight components: vacuous";
    return r;
}

inline std::vector<LemmaReport> component_count(ScanContext& ctx)
{
    const int k = ctx.pc.component_count();
    LemmaReport two;
    two.id = LemmaId::LEM_3_12;
    two.hypothesis_met = ctx.strict;
    two.conclusion_holds = k <= 2;
    two.checked_universe_size = 1;
    two.measure = k;
    LemmaReport one = two;
    one.id = LemmaId::LEM_1_4;
    one.conclusion_holds = k == 1;
    if (!two.conclusion_holds) {
        two.violations = 1;
        two.witnesses.push_back({"component_count", {}, {k}});
    }
    if (!one.conclusion_holds) {
        one.violations = 1;
        one.witnesses.push_back({"component_count", {}, {k}});
    }
    return {two, one};
}

inline bool two_components(const ScanContext& ctx) { return ctx.pc.component_count() == 2; }

inline LemmaReport with_two_colour_note(LemmaReport r, const ScanContext& ctx)
{
    if (!two_components(ctx))
        r.note = "needs exactly two tight components";
    else if (!ctx.strict)
        r.note = "codegree hypothesis not met";
    return r;
}

/// x, z over y1 < y2 < y3 with all six edges x y_i y_j, z y_i y_j present
/// (y1 y2 y3 need not be an edge), three of one colour and three of
/// another; x < z.
inline LemmaReport prop_3_13(ScanContext& ctx)
{
    const auto& pc = ctx.pc;
    const auto& h = ctx.h;
    const bool hyp = ctx.strict && two_components(ctx);
    Sink s = ctx.sink();
    if (pc.component_count() >= 2)
        s = per_vertex(ctx, [&](int y1, Sink& sink) {
            for (int y2 = y1 + 1; y2 < ctx.n && !sink.done(); ++y2) {
                const VertexSet& n12 = h.pair_neighbourhood(y1, y2);
                for (int y3 = y2 + 1; y3 < ctx.n && !sink.done(); ++y3) {
                    const VertexSet apex = n12 & h.pair_neighbourhood(y1, y3) & h.pair_neighbourhood(y2, y3);
                    for (int x = apex.first(); x >= 0 && !sink.done(); x = apex.next(x)) {
                        const std::array<int, 3> cx = {pc.phi(x, y1, y2), pc.phi(x, y2, y3), pc.phi(x, y1, y3)};
                        for (int z = apex.next(x); z >= 0; z = apex.next(z)) {
                            if (!sink.tick())
                                return;
                            const std::array<int, 3> cz = {pc.phi(z, y1, y2), pc.phi(z, y2, y3),
                                                           pc.phi(z, y1, y3)};
                            std::array<int, 6> all = {cx[0], cx[1], cx[2], cz[0], cz[1], cz[2]};
                            std::sort(all.begin(), all.end());
                            if (all[0] == all[2] && all[3] == all[5] && all[2] != all[3]) {
                                sink.add({"double_tetrahedron", {x, z, y1, y2, y3},
                                          {cx[0], cx[1], cx[2], cz[0], cz[1], cz[2]}});
                                if (sink.done())
                                    return;
                            }
                        }
                    }
                }
            }
        });
    return with_two_colour_note(make_report(LemmaId::PROP_3_13, hyp, std::move(s)), ctx);
}

}  // namespace detail

/// A forbidden colour pattern on tight walks: window k (the triple
/// v_k v_{k+1} v_{k+2}) must carry the colour of symbol pattern[k]; equal
/// symbols mean equal colours and distinct symbols distinct colours.
struct WalkPattern {
    LemmaId id;
    std::vector<int> symbols;

    std::size_t walk_length() const { return symbols.size() + 2; }
};

inline std::vector<WalkPattern> default_walk_patterns()
{
    return {
        {LemmaId::LEM_3_14, {0, 1, 0, 1}},
        {LemmaId::LEM_3_15, {0, 1, 0, 0, 1}},
    };
}

namespace detail {

struct WalkScan {
    const PhiColouring& pc;
    const std::vector<int>& symbols;
    Sink& sink;
    std::vector<int> walk;
    std::vector<int> colour_of;   // symbol -> component or -1

    void extend()
    {
        const std::size_t k = walk.size() - 2;   // index of the next window
        if (k == symbols.size()) {
            Witness w{"walk", walk, {}};
            for (std::size_t i = 0; i < symbols.size(); ++i)
                w.components.push_back(colour_of[static_cast<std::size_t>(symbols[i])]);
            sink.add(std::move(w));
            return;
        }
        const int a = walk[walk.size() - 2], b = walk.back();
        const auto sym = static_cast<std::size_t>(symbols[k]);
        for (const auto& [col, nbrs] : pc.colour_groups(a, b)) {
            const bool bound = colour_of[sym] >= 0;
            if (bound && col != colour_of[sym])
                continue;
            if (!bound && std::find(colour_of.begin(), colour_of.end(), col) != colour_of.end())
                continue;
            if (!bound)
                colour_of[sym] = col;
            for (int c = nbrs.first(); c >= 0; c = nbrs.next(c)) {
                if (!sink.tick() || sink.done())
                    break;
                walk.push_back(c);
                extend();
                walk.pop_back();
                if (sink.done())
                    break;
            }
            if (!bound)
                colour_of[sym] = -1;
            if (sink.done())
                return;
        }
    }
};

inline LemmaReport walk_pattern(ScanContext& ctx, const WalkPattern& pat)
{
    const auto& pc = ctx.pc;
    const bool hyp = ctx.strict && two_components(ctx);
    const int needed = pat.symbols.empty() ? 0 : *std::max_element(pat.symbols.begin(), pat.symbols.end()) + 1;
    Sink s = ctx.sink();
    if (pc.component_count() >= needed && !pat.symbols.empty())
        s = per_vertex(ctx, [&](int a, Sink& sink) {
            std::vector<int> colour_of(static_cast<std::size_t>(needed), -1);
            for (int b = 0; b < ctx.n && !sink.done(); ++b) {
                if (b == a)
                    continue;
                const VertexSet& nab = ctx.h.pair_neighbourhood(a, b);
                for (int c = nab.first(); c >= 0 && !sink.done(); c = nab.next(c)) {
                    if (!sink.tick())
                        return;
                    colour_of[static_cast<std::size_t>(pat.symbols[0])] = pc.phi(a, b, c);
                    WalkScan w{pc, pat.symbols, sink, {a, b, c}, colour_of};
                    w.extend();
                }
            }
        });
    return with_two_colour_note(make_report(pat.id, hyp, std::move(s)), ctx);
}

/// xyz, wxy, wyz edges with phi(xyz) = phi(wyz) = R != phi(wxy) and phi(z) != {R}.
inline LemmaReport prop_3_16(ScanContext& ctx)
{
    const auto& pc = ctx.pc;
    const bool hyp = ctx.strict && two_components(ctx);
    Sink s = ctx.sink();
    if (pc.component_count() >= 2)
        s = per_vertex(ctx, [&](int y, Sink& sink) {
            for (int z = 0; z < ctx.n && !sink.done(); ++z) {
                if (z == y)
                    continue;
                const auto& fz = pc.phi_vertex(z);
                for (const auto& [red, xs] : pc.colour_groups(y, z)) {
                    if (fz.size() == 1)
                        break;
                    for (int x = xs.first(); x >= 0 && !sink.done(); x = xs.next(x)) {
                        const VertexSet ws = xs & ctx.h.pair_neighbourhood(x, y);
                        for (int w = ws.first(); w >= 0; w = ws.next(w)) {
                            if (!sink.tick())
                                return;
                            const int blue = pc.phi(w, x, y);
                            if (blue == red)
                                continue;
                            sink.add({"fan", {x, y, z, w}, {red, blue}});
                            if (sink.done())
                                return;
                        }
                    }
                }
            }
        });
    return with_two_colour_note(make_report(LemmaId::PROP_3_16, hyp, std::move(s)), ctx);
}

/// Vertex sets of K5^3 copies in the 3-graph of edges coloured `colour`.
template <typename F>
void for_each_coloured_k5(const PhiColouring& pc, int colour, Sink& sink, F&& found)
{
    const int n = pc.n();
    auto nb = [&](int a, int b) { return pc.colour_neighbourhood(a, b, colour); };
    for (int a = 0; a < n && !sink.done(); ++a)
        for (int b = a + 1; b < n && !sink.done(); ++b) {
            const VertexSet nab = nb(a, b) - VertexSet::range(b + 1);
            for (int c = nab.first(); c >= 0 && !sink.done(); c = nab.next(c)) {
                const VertexSet d_cand = (nab & nb(a, c) & nb(b, c)) - VertexSet::range(c + 1);
                for (int d = d_cand.first(); d >= 0 && !sink.done(); d = d_cand.next(d)) {
                    if (!sink.tick())
                        return;
                    const VertexSet e_cand = d_cand & nb(a, d) & nb(b, d) & nb(c, d);
                    for (int e = e_cand.next(d); e >= 0; e = e_cand.next(e))
                        if (found(std::array<int, 5>{a, b, c, d, e}))
                            return;
                }
            }
        }
}

inline std::vector<LemmaReport> lemma_3_17(ScanContext& ctx, const std::vector<LemmaId>& wanted)
{
    auto want = [&](LemmaId id) { return std::find(wanted.begin(), wanted.end(), id) != wanted.end(); };
    const auto& pc = ctx.pc;
    const auto spanning = pc.spanning_components();
    const bool two = two_components(ctx);
    const bool base = ctx.strict && two;
    const int red = pc.primary_component();
    const int blue = two ? 1 - red : -1;
    std::vector<LemmaReport> out;

    if (want(LemmaId::LEM_3_17i)) {
        Sink s = ctx.sink();
        if (two) {
            s.tick();
            if (spanning.size() >= 2)
                s.add({"both_spanning", {}, spanning});
        }
        auto r = make_report(LemmaId::LEM_3_17i, base && !spanning.empty(), std::move(s));
        r.measure = static_cast<long long>(spanning.size());
        out.push_back(with_two_colour_note(std::move(r), ctx));
    }
    if (want(LemmaId::LEM_3_17ii)) {
        Sink s = ctx.sink();
        if (two && !spanning.empty()) {
            VertexSet only_red;
            for (int z = 0; z < ctx.n; ++z)
                if (pc.phi_vertex(z) == std::vector<int>{red})
                    only_red.insert(z);
            const std::vector<int> both = red < blue ? std::vector<int>{red, blue} : std::vector<int>{blue, red};
            for (int x = 0; x < ctx.n && !s.done(); ++x)
                for (int y = x + 1; y < ctx.n && !s.done(); ++y) {
                    if (!s.tick())
                        break;
                    if (pc.phi_pair(x, y) != both)
                        continue;
                    const VertexSet bad = pc.colour_neighbourhood(x, y, red) - only_red;
                    for (int z = bad.first(); z >= 0 && !s.done(); z = bad.next(z))
                        s.add({"red_neighbour_outside_U", {x, y, z}, {red, blue}});
                }
        }
        out.push_back(with_two_colour_note(
            make_report(LemmaId::LEM_3_17ii, base && !spanning.empty(), std::move(s)), ctx));
    }
    if (want(LemmaId::LEM_3_17iii)) {
        Sink s = ctx.sink();
        std::optional<std::array<int, 5>> k5;
        if (two) {
            Sink search = ctx.sink();
            for_each_coloured_k5(pc, blue, search, [&](const std::array<int, 5>& q) {
                k5 = q;
                return true;
            });
            s.checked = search.checked;
            s.exhausted = search.exhausted;
            if (!k5 && !search.exhausted)
                s.add({"no_blue_k5", {}, {blue}});
        }
        auto r = make_report(LemmaId::LEM_3_17iii, base && !spanning.empty(), std::move(s));
        if (k5)
            r.witnesses.push_back({"K5", std::vector<int>(k5->begin(), k5->end()), {blue}});
        out.push_back(with_two_colour_note(std::move(r), ctx));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public entry points

/// All link-graph witnesses at v for the four parts of the link lemma, in
/// the order C4 (proper), C4 (three colours), P4, pairs.
inline std::vector<Witness> scan_link_patterns(const PhiColouring& pc, int v,
                                               std::size_t max_witnesses = 1 << 20)
{
    pc.base().check_vertex(v);
    ScanOptions o;
    o.mode = VerifyMode::scan;
    o.max_witnesses = max_witnesses;
    detail::ScanContext ctx(pc, o);
    std::array<detail::Sink, 4> s = {ctx.sink(), ctx.sink(), ctx.sink(), ctx.sink()};
    detail::scan_link_cycles(pc, v, &s[0], &s[1]);
    detail::scan_link_paths(pc, v, s[2]);
    detail::scan_pair_colours(pc, v, s[3]);
    std::vector<Witness> out;
    for (std::size_t k = 0; k < 4; ++k) {
        const char* tag[] = {"LEM_3_8i", "LEM_3_8ii", "LEM_3_8iii", "LEM_3_8iv"};
        for (auto& w : s[k].witnesses) {
            w.kind = std::string(tag[k]) + ":" + w.kind;
            out.push_back(std::move(w));
        }
    }
    return out;
}

/// Runs the requested checkers on an instance with phi defined. Reports come
/// back in the order of kAllLemmas.
inline std::vector<LemmaReport> verify(const PhiColouring& pc, const std::vector<LemmaId>& ids,
                                       const ScanOptions& opt = {})
{
    detail::ScanContext ctx(pc, opt);
    auto want = [&](LemmaId id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
    std::vector<LemmaReport> out;
    auto fresh = [&] { ctx.nodes = 0; };
    std::vector<LemmaReport> link, comp, l17;
    for (LemmaId id : kAllLemmas) {
        if (!want(id))
            continue;
        fresh();
        switch (id) {
        case LemmaId::FACT_3_1: out.push_back(detail::fact_3_1(ctx)); break;
        case LemmaId::FACT_3_2: out.push_back(detail::fact_3_2(ctx)); break;
        case LemmaId::FACT_3_4: out.push_back(detail::fact_3_4(ctx)); break;
        case LemmaId::PROP_3_5: out.push_back(detail::prop_3_5(ctx)); break;
        case LemmaId::PROP_3_6i: out.push_back(detail::prop_3_6(ctx, false)); break;
        case LemmaId::PROP_3_6ii: out.push_back(detail::prop_3_6(ctx, true)); break;
        case LemmaId::LEM_3_8i:
        case LemmaId::LEM_3_8ii:
        case LemmaId::LEM_3_8iii:
        case LemmaId::LEM_3_8iv:
            if (link.empty())
                link = detail::lemma_3_8(ctx, ids);
            for (auto& r : link)
                if (r.id == id)
                    out.push_back(r);
            break;
        case LemmaId::LEM_3_9: out.push_back(detail::lemma_3_9(ctx)); break;
        case LemmaId::PROP_3_10: out.push_back(detail::prop_3_10(ctx)); break;
        case LemmaId::LEM_3_12:
        case LemmaId::LEM_1_4:
            if (comp.empty())
                comp = detail::component_count(ctx);
            out.push_back(comp[id == LemmaId::LEM_3_12 ? 0 : 1]);
            break;
        case LemmaId::PROP_3_13: out.push_back(detail::prop_3_13(ctx)); break;
        case LemmaId::LEM_3_14:
        case LemmaId::LEM_3_15:
            for (const auto& p : default_walk_patterns())
                if (p.id == id)
                    out.push_back(detail::walk_pattern(ctx, p));
            break;
        case LemmaId::PROP_3_16: out.push_back(detail::prop_3_16(ctx)); break;
        case LemmaId::LEM_3_17i:
        case LemmaId::LEM_3_17ii:
        case LemmaId::LEM_3_17iii:
            if (l17.empty())
                l17 = detail::lemma_3_17(ctx, ids);
            for (auto& r : l17)
                if (r.id == id)
                    out.push_back(r);
            break;
        }
    }
    return out;
}

inline std::vector<LemmaReport> verify_all(const PhiColouring& pc, const ScanOptions& opt = {})
{
    return verify(pc, std::vector<LemmaId>(kAllLemmas.begin(), kAllLemmas.end()), opt);
}

/// Scans one walk pattern, which need not be in the default catalog.
inline LemmaReport scan_walk_pattern(const PhiColouring& pc, const WalkPattern& pattern,
                                     const ScanOptions& opt = {})
{
    detail::ScanContext ctx(pc, opt);
    return detail::walk_pattern(ctx, pattern);
}

/// Every vertex sees at most two colours: |phi(v)| <= 2.
inline LemmaReport check_vertex_colour_bound(const PhiColouring& pc, const ScanOptions& opt = {})
{
    return verify(pc, {LemmaId::LEM_3_9}, opt).front();
}

/// Component count reports: at most two, and exactly one.
inline std::vector<LemmaReport> check_component_count(const PhiColouring& pc)
{
    return verify(pc, {LemmaId::LEM_3_12, LemmaId::LEM_1_4});
}

/// The two-colour pattern family.
inline std::vector<LemmaReport> scan_two_colour_patterns(const PhiColouring& pc, const ScanOptions& opt = {})
{
    return verify(pc,
                  {LemmaId::PROP_3_10, LemmaId::PROP_3_13, LemmaId::LEM_3_14, LemmaId::LEM_3_15,
                   LemmaId::PROP_3_16, LemmaId::LEM_3_17i, LemmaId::LEM_3_17ii, LemmaId::LEM_3_17iii},
                  opt);
}

/// Reports for a graph on which phi is undefined: only the component count
/// lemmas are evaluated (from T(H) directly); the rest are marked
/// hypothesis_met = false.
inline std::vector<LemmaReport> verify_without_phi(const ThreeGraph& h, const std::vector<LemmaId>& ids,
                                                   const std::string& why)
{
    std::vector<LemmaReport> out;
    const int delta2 = h.n() >= 2 ? min_codegree(h) : 0;
    const bool strict = above_seven_ninths(delta2, h.n());
    const int k = h.n() >= 4 ? tight_components(tetrahedral_graph(h)).component_count : 0;
    for (LemmaId id : kAllLemmas) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
            continue;
        LemmaReport r;
        r.id = id;
        if (id == LemmaId::LEM_3_12 || id == LemmaId::LEM_1_4) {
            r.hypothesis_met = strict;
            r.conclusion_holds = id == LemmaId::LEM_3_12 ? k <= 2 : k == 1;
            r.checked_universe_size = 1;
            r.measure = k;
            if (!r.conclusion_holds) {
                r.violations = 1;
                r.witnesses.push_back({"component_count", {}, {k}});
            }
        }
        r.note = why;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace tetraham
