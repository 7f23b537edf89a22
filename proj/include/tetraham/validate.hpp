#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "walks.hpp"

namespace tetraham {

/// Result of the absorption soundness oracle. Built only from plain
/// vertex lists and edge lookups, so it shares no code with the rewrite.
struct SoundnessReport {
    bool paths_valid = true;
    bool disjoint = true;
    bool coverage = true;
    bool ends_preserved = true;
    std::vector<std::string> problems;

    bool ok() const { return paths_valid && disjoint && coverage && ends_preserved; }
};

namespace plain {

inline bool window_ok(const ThreeGraph& h, int a, int b, int c, int d)
{
    const std::set<int> s{a, b, c, d};
    if (s.size() != 4)
        return false;
    const std::vector<int> w(s.begin(), s.end());
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<int> t;
        for (int i = 0; i < 4; ++i)
            if (i != skip)
                t.push_back(w[static_cast<std::size_t>(i)]);
        if (!h.has_edge({t[0], t[1], t[2]}))
            return false;
    }
    return true;
}

inline bool squared_path(const ThreeGraph& h, const std::vector<int>& p)
{
    if (p.size() < 4)
        return false;
    if (std::set<int>(p.begin(), p.end()).size() != p.size())
        return false;
    for (int v : p)
        if (v < 0 || v >= h.n())
            return false;
    for (std::size_t i = 0; i + 3 < p.size(); ++i)
        if (!window_ok(h, p[i], p[i + 1], p[i + 2], p[i + 3]))
            return false;
    return true;
}

}  // namespace plain

/// Checks a rewrite P -> Q (index-aligned) against a leftover set L:
/// every path of Q is a squared-tight-path, the paths of Q are pairwise
/// disjoint, V(Q) = V(P) + L, and Q[i] has the ends of P[i].
inline SoundnessReport check_absorption(const ThreeGraph& h, const std::vector<std::vector<int>>& before,
                                        const std::vector<std::vector<int>>& after,
                                        const std::vector<int>& leftover)
{
    SoundnessReport r;
    for (std::size_t i = 0; i < after.size(); ++i)
        if (!plain::squared_path(h, after[i])) {
            r.paths_valid = false;
            r.problems.push_back("path " + std::to_string(i) + " is not a squared-tight-path");
        }

    std::multiset<int> seen;
    for (const auto& p : after)
        seen.insert(p.begin(), p.end());
    const std::set<int> got(seen.begin(), seen.end());
    if (got.size() != seen.size()) {
        r.disjoint = false;
        r.problems.push_back("output paths share vertices");
    }

    std::set<int> want(leftover.begin(), leftover.end());
    for (const auto& p : before)
        want.insert(p.begin(), p.end());
    if (want != got) {
        r.coverage = false;
        r.problems.push_back("output vertices differ from input vertices plus leftover");
    }

    if (before.size() != after.size()) {
        r.ends_preserved = false;
        r.problems.push_back("path counts differ");
    } else {
        for (std::size_t i = 0; i < before.size(); ++i) {
            const auto& p = before[i];
            const auto& q = after[i];
            if (p.size() < 3 || q.size() < 3 || !std::equal(p.begin(), p.begin() + 3, q.begin()) ||
                !std::equal(p.end() - 3, p.end(), q.end() - 3)) {
                r.ends_preserved = false;
                r.problems.push_back("path " + std::to_string(i) + " changed its ends");
            }
        }
    }
    return r;
}

inline SoundnessReport check_absorption(const ThreeGraph& h, const std::vector<VertexSequence>& before,
                                        const std::vector<VertexSequence>& after, const std::vector<int>& leftover)
{
    std::vector<std::vector<int>> b, a;
    for (const auto& p : before)
        b.push_back(p.vertices());
    for (const auto& p : after)
        a.push_back(p.vertices());
    return check_absorption(h, b, a, leftover);
}

}  // namespace tetraham
