#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadgets.hpp"
#include "rng.hpp"
#include "validate.hpp"
#include "walks.hpp"

namespace tetraham {

struct DemoConfig {
    std::string name;
    bool donation = false;
    int leftover = 4;
};

/// Configurations in the order demo_absorb tries them. The donation one
/// needs room for a 20-vertex donation path next to the absorber.
inline std::vector<DemoConfig> demo_configs(int n)
{
    std::vector<DemoConfig> out;
    if (n >= 36 + 20 + 3)
        out.push_back({"absorber+donation", true, 3});
    out.push_back({"absorber", false, 4});
    return out;
}

struct DemoResult {
    SearchStatus status = SearchStatus::none;
    std::optional<DemoConfig> config;
    std::vector<int> leftover;
    AbsorbingSystem system;
    std::vector<VertexSequence> connectors;
    std::vector<std::pair<std::size_t, bool>> layout;   ///< (system path index, reversed) in joining order
    AbsorbResult absorbed;
    VertexSequence absorbing_path;   ///< P: system paths joined by the connectors
    VertexSequence final_path;       ///< P': Q joined by the same connectors
    SoundnessReport soundness;
    bool final_valid = false;
    std::vector<std::string> log;
    std::uint64_t nodes = 0;

    bool ok() const { return status == SearchStatus::found && soundness.ok() && final_valid; }
};

namespace detail {

inline std::vector<VertexSequence> arrange(const std::vector<VertexSequence>& paths,
                                           const std::vector<std::pair<std::size_t, bool>>& layout)
{
    std::vector<VertexSequence> out;
    for (const auto& [i, rev] : layout)
        out.push_back(rev ? reverse(paths[i]) : paths[i]);
    return out;
}

inline std::vector<int> join_paths(const std::vector<VertexSequence>& parts, const std::vector<VertexSequence>& links)
{
    std::vector<int> seq = parts.front().vertices();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const auto& c = links[i].vertices();
        seq.insert(seq.end(), c.begin() + 3, c.end() - 3);
        const auto& q = parts[i + 1].vertices();
        seq.insert(seq.end(), q.begin(), q.end());
    }
    return seq;
}

}  // namespace detail

/// Small-n absorb-and-connect pipeline: pick a random leftover set L, build
/// an absorber (and a donation path when there is room), join the path
/// system into one squared-tight-path P with connectors, absorb L and rejoin
/// into P' with V(P') = V(P) + L and the ends of P. Paths of the system may
/// be joined in any order and direction; a few random layouts are tried.
inline DemoResult demo_absorb(const ThreeGraph& h, std::uint64_t seed, std::uint64_t budget,
                              int attempts = 16, int layouts = 8, int threads = 1)
{
    DemoResult out;
    const Rng root(seed);
    bool exhausted = false;
    const auto configs = demo_configs(h.n());
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto& cfg = configs[ci];
        for (int at = 0; at < attempts; ++at) {
            Rng rng = root.split(ci * 1000 + static_cast<std::uint64_t>(at));
            const std::string tag = cfg.name + " attempt " + std::to_string(at) + ": ";
            AbsorbingSystem sys;
            VertexSet taken;
            if (cfg.donation) {
                auto d = find_donation_path(h, {}, budget, rng());
                out.nodes += d.nodes;
                if (!d.found()) {
                    exhausted = exhausted || d.status == SearchStatus::budget_exhausted;
                    out.log.push_back(tag + "no donation path (" + to_string(d.status) + ")");
                    break;
                }
                sys.donation = d.value;
                taken = d.value->vertex_set();
            }
            std::vector<int> pool = (VertexSet::range(h.n()) - taken).to_vector();
            rng.shuffle(pool);
            std::vector<int> left(pool.begin(), pool.begin() + cfg.leftover);
            std::sort(left.begin(), left.end());
            std::vector<int> target = left;
            if (sys.donation)
                for (int k = 0; k < 4 - cfg.leftover; ++k)
                    target.push_back(sys.donation->donatable()[static_cast<std::size_t>(k)]);
            std::sort(target.begin(), target.end());

            auto a = find_absorber(h, {target[0], target[1], target[2], target[3]}, budget, rng(), taken, 4,
                                   threads);
            out.nodes += a.nodes;
            if (!a.found()) {
                exhausted = exhausted || a.status == SearchStatus::budget_exhausted;
                out.log.push_back(tag + "no absorber (" + to_string(a.status) + ")");
                continue;
            }
            sys.absorbers.push_back(*a.value);

            const auto before = sys.paths();
            const VertexSet lset = VertexSet::of(left);
            std::optional<ConnectManyResult> links;
            std::vector<std::pair<std::size_t, bool>> layout;
            for (int lay = 0; lay < layouts && !links; ++lay) {
                layout.clear();
                for (std::size_t i = 0; i < before.size(); ++i)
                    layout.push_back({i, lay > 0 && rng.below(2) == 1});
                if (lay > 0)
                    rng.shuffle(layout);
                const auto seq = detail::arrange(before, layout);
                std::vector<ConnectRequest> req;
                VertexSet ends;
                for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                    req.push_back({TripleOrdered(seq[i].final_triple()), TripleOrdered(seq[i + 1].initial_triple())});
                    ends |= req.back().from.as_set() | req.back().to.as_set();
                }
                auto r = connect_many(h, req, (sys.vertex_set() | lset) - ends, 12, budget);
                out.nodes += r.nodes;
                if (r.status == SearchStatus::found)
                    links = std::move(r);
                else
                    exhausted = exhausted || r.status == SearchStatus::budget_exhausted;
            }
            if (!links) {
                out.log.push_back(tag + "connectors failed for " + std::to_string(layouts) + " layouts");
                continue;
            }

            out.absorbed = absorb(h, sys, lset);
            out.config = cfg;
            out.leftover = left;
            out.system = sys;
            out.connectors = links->paths;
            out.layout = layout;
            out.absorbing_path = VertexSequence::path(detail::join_paths(detail::arrange(before, layout), links->paths));
            out.final_path = VertexSequence::classify(
                detail::join_paths(detail::arrange(out.absorbed.after, layout), links->paths));
            out.soundness = check_absorption(h, out.absorbed.before, out.absorbed.after, left);
            const VertexSet want = out.absorbing_path.vertex_set() | lset;
            out.final_valid = out.final_path.is_path() && is_squared_tight_path(h, out.final_path) &&
                              out.final_path.vertex_set() == want &&
                              out.final_path.initial_triple() == out.absorbing_path.initial_triple() &&
                              out.final_path.final_triple() == out.absorbing_path.final_triple();
            out.status = SearchStatus::found;
            out.log.push_back(tag + "ok");
            return out;
        }
    }
    out.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    return out;
}

}  // namespace tetraham
