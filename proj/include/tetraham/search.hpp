#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "rng.hpp"
#include "walks.hpp"

namespace tetraham {

struct HamiltonResult {
    SearchStatus status = SearchStatus::none;
    std::vector<int> cycle;      ///< cyclic order starting at vertex 0 when found
    std::uint64_t nodes = 0;
    bool exhaustive = false;     ///< true when "none" was proved by exhausting the tree
};

namespace detail {

struct HamiltonSearch {
    const ThreeGraph& h;
    std::uint64_t budget;
    std::atomic<std::uint64_t>& nodes;
    std::atomic<bool>& stop;
    std::vector<int> seq;
    VertexSet used;
    VertexSet closers;   // candidates for v_n: common neighbours of the first window, above v2
    bool exhausted = false;

    bool closes() const
    {
        const std::size_t m = seq.size();
        for (std::size_t i = m - 3; i < m; ++i)
            if (!induces_tetrahedron(h, seq[i % m], seq[(i + 1) % m], seq[(i + 2) % m], seq[(i + 3) % m]))
                return false;
        return seq[1] < seq.back();
    }

    bool dfs()
    {
        if (stop.load(std::memory_order_relaxed))
            return false;
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
            exhausted = true;
            return false;
        }
        const int n = h.n();
        if (static_cast<int>(seq.size()) == n)
            return closes();
        if ((closers - used).empty())
            return false;
        const std::size_t m = seq.size();
        const int a = seq[m - 3], b = seq[m - 2], c = seq[m - 1];
        VertexSet cand = h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) &
                         h.pair_neighbourhood(b, c);
        cand -= used;
        if (static_cast<int>(m) == n - 1)
            cand &= closers;
        for (int u = cand.first(); u >= 0; u = cand.next(u)) {
            seq.push_back(u);
            used.insert(u);
            if (dfs())
                return true;
            seq.pop_back();
            used.erase(u);
            if (exhausted || stop.load(std::memory_order_relaxed))
                return false;
        }
        return false;
    }
};

}  // namespace detail

/// Decides whether H contains the square of a tight Hamilton cycle.
///
/// The cycle is anchored at v1 = 0 with v2 < vn. A partial order extends
/// only through the common neighbours of its last window, and is cut as soon
/// as no unused vertex can close the first window. With threads > 1 the
/// first windows (0, v2, v3) are searched in parallel and any witness may be
/// returned.
inline HamiltonResult find_squared_tight_hamilton_cycle(const ThreeGraph& h, std::uint64_t budget,
                                                        int threads = 1)
{
    const int n = h.n();
    if (n < 5)
        throw std::invalid_argument("squared tight Hamilton cycles need n >= 5");
    std::vector<std::pair<int, int>> starts;
    for (int v2 = 1; v2 < n; ++v2) {
        const VertexSet& nb = h.pair_neighbourhood(0, v2);
        for (int v3 = nb.first(); v3 >= 0; v3 = nb.next(v3))
            starts.push_back({v2, v3});
    }

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> exhausted{false};
    std::mutex found_mutex;
    std::optional<std::pair<std::size_t, std::vector<int>>> found;

    parallel_for(starts.size(), threads, [&](std::size_t i) {
        if (stop.load())
            return;
        const auto [v2, v3] = starts[i];
        detail::HamiltonSearch s{h, budget, nodes, stop, {0, v2, v3}, VertexSet{0, v2, v3}, {}};
        s.closers = (h.pair_neighbourhood(0, v2) & h.pair_neighbourhood(0, v3) &
                     h.pair_neighbourhood(v2, v3)) -
                    VertexSet::range(v2 + 1);
        if (s.dfs()) {
            std::lock_guard lock(found_mutex);
            if (!found || i < found->first)
                found = {i, s.seq};
            stop = true;
        }
        if (s.exhausted)
            exhausted = true;
    });

    HamiltonResult r;
    r.nodes = nodes.load();
    if (found) {
        r.status = SearchStatus::found;
        r.cycle = found->second;
    } else if (exhausted.load()) {
        r.status = SearchStatus::budget_exhausted;
    } else {
        r.status = SearchStatus::none;
        r.exhaustive = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Greedy path cover

struct PathCover {
    std::vector<VertexSequence> paths;
    int covered = 0;
    int n = 0;

    double coverage() const { return n == 0 ? 0.0 : static_cast<double>(covered) / n; }
};

namespace detail {

inline void extend_greedily(const ThreeGraph& h, std::vector<int>& seq, VertexSet& free, Rng& rng)
{
    while (true) {
        const std::size_t m = seq.size();
        const int a = seq[m - 3], b = seq[m - 2], c = seq[m - 1];
        VertexSet cand = h.pair_neighbourhood(a, b) & h.pair_neighbourhood(a, c) &
                         h.pair_neighbourhood(b, c) & free;
        if (cand.empty())
            return;
        const int pick = cand.nth(static_cast<int>(rng.below(static_cast<std::uint64_t>(cand.size()))));
        seq.push_back(pick);
        free.erase(pick);
    }
}

}  // namespace detail

/// Grows vertex-disjoint squared-tight-paths (at least 4 vertices each) from
/// random seed edges among the uncovered vertices until fewer than gamma*n
/// vertices remain uncovered or no seed edge yields a path.
inline PathCover greedy_path_cover(const ThreeGraph& h, double gamma, std::uint64_t seed)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("leftover fraction must lie in (0, 1)");
    PathCover out;
    out.n = h.n();
    Rng rng(seed);
    VertexSet free = VertexSet::range(h.n());
    std::vector<Triple> seeds = h.edges();
    rng.shuffle(seeds);
    std::size_t next = 0;
    while (static_cast<double>(free.size()) >= gamma * h.n() && next < seeds.size()) {
        auto e = seeds[next++];
        if (!free.contains(e[0]) || !free.contains(e[1]) || !free.contains(e[2]))
            continue;
        std::swap(e[0], e[rng.below(3)]);
        std::swap(e[1], e[1 + rng.below(2)]);
        std::vector<int> seq(e.begin(), e.end());
        VertexSet pool = free;
        for (int v : seq)
            pool.erase(v);
        detail::extend_greedily(h, seq, pool, rng);
        std::reverse(seq.begin(), seq.end());
        detail::extend_greedily(h, seq, pool, rng);
        if (seq.size() < 4)
            continue;
        free = pool;
        out.covered += static_cast<int>(seq.size());
        out.paths.push_back(VertexSequence::path(std::move(seq)));
    }
    return out;
}

}  // namespace tetraham
