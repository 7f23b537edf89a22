#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "demo.hpp"
#include "gadgets.hpp"
#include "generators.hpp"
#include "search.hpp"
#include "tight.hpp"
#include "validate.hpp"
#include "verifiers.hpp"

namespace tetraham {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(const Witness& w)
{
    return Json{{"kind", w.kind}, {"vertices", w.vertices}, {"components", w.components}};
}

inline Json to_json(const LemmaReport& r)
{
    Json j{{"id", to_string(r.id)},
           {"hypothesis_met", r.hypothesis_met},
           {"conclusion_holds", r.conclusion_holds},
           {"violations", r.violations},
           {"checked_universe_size", r.checked_universe_size},
           {"budget_exhausted", r.budget_exhausted}};
    j["measure"] = r.measure ? Json(*r.measure) : Json(nullptr);
    j["witnesses"] = Json::array();
    for (const auto& w : r.witnesses)
        j["witnesses"].push_back(to_json(w));
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline Json to_json(const Absorber& a)
{
    Json u = Json::array();
    for (const auto& row : a.u)
        u.push_back(row);
    return Json{{"x", a.x}, {"y", a.y}, {"z", a.z}, {"u", u}};
}

inline Absorber absorber_from_json(const Json& j)
{
    Absorber a;
    auto quad = [&](const char* key, Tuple4& out) {
        const auto v = j.at(key).get<std::vector<int>>();
        if (v.size() != 4)
            throw std::invalid_argument(std::string("absorber field ") + key + " needs 4 vertices");
        std::copy(v.begin(), v.end(), out.begin());
    };
    quad("x", a.x);
    quad("y", a.y);
    quad("z", a.z);
    const auto& u = j.at("u");
    if (!u.is_array() || u.size() != 4)
        throw std::invalid_argument("absorber field u needs 4 rows");
    for (std::size_t i = 0; i < 4; ++i) {
        const auto row = u[i].get<std::vector<int>>();
        if (row.size() != 6)
            throw std::invalid_argument("absorber rows of u need 6 vertices");
        std::copy(row.begin(), row.end(), a.u[i].begin());
    }
    if (!a.labels_distinct())
        throw std::invalid_argument("absorber labels collide");
    return a;
}

inline Json to_json(const DonationPath& d)
{
    return Json{{"a", d.a}, {"b", d.b}, {"c", d.c}, {"d", d.d}};
}

inline DonationPath donation_from_json(const Json& j)
{
    DonationPath d;
    auto five = [&](const char* key, std::array<int, 5>& out) {
        const auto v = j.at(key).get<std::vector<int>>();
        if (v.size() != 5)
            throw std::invalid_argument(std::string("donation field ") + key + " needs 5 vertices");
        std::copy(v.begin(), v.end(), out.begin());
    };
    five("a", d.a);
    five("b", d.b);
    five("c", d.c);
    five("d", d.d);
    if (!VertexSequence::distinct(d.sequence()))
        throw std::invalid_argument("donation path repeats a vertex");
    return d;
}

inline Json to_json(const std::vector<VertexSequence>& paths)
{
    Json out = Json::array();
    for (const auto& p : paths)
        out.push_back(p.vertices());
    return out;
}

inline Json to_json(const SoundnessReport& s)
{
    return Json{{"ok", s.ok()},
                {"paths_valid", s.paths_valid},
                {"disjoint", s.disjoint},
                {"coverage", s.coverage},
                {"ends_preserved", s.ends_preserved},
                {"problems", s.problems}};
}

inline Json to_json(const AbsorbResult& r)
{
    Json as = Json::array();
    for (const auto& a : r.assignments)
        as.push_back(Json{{"absorber", a.absorber}, {"tuple", a.tuple}});
    return Json{{"before", to_json(r.before)},
                {"after", to_json(r.after)},
                {"donated", r.donated},
                {"assignments", as}};
}

inline Json to_json(const DemoResult& d)
{
    Json j{{"schema", kSchemaVersion}, {"status", to_string(d.status)}, {"ok", d.ok()}};
    j["config"] = d.config ? Json(d.config->name) : Json(nullptr);
    j["log"] = d.log;
    j["nodes"] = d.nodes;
    if (d.status != SearchStatus::found)
        return j;
    j["leftover"] = d.leftover;
    Json abs = Json::array();
    for (const auto& a : d.system.absorbers)
        abs.push_back(to_json(a));
    j["absorbers"] = abs;
    j["donation"] = d.system.donation ? to_json(*d.system.donation) : Json(nullptr);
    Json layout = Json::array();
    for (const auto& [i, rev] : d.layout)
        layout.push_back(Json{{"path", i}, {"reversed", rev}});
    j["layout"] = layout;
    j["connectors"] = to_json(d.connectors);
    j["absorb"] = to_json(d.absorbed);
    j["absorbing_path"] = d.absorbing_path.vertices();
    j["final_path"] = d.final_path.vertices();
    j["final_valid"] = d.final_valid;
    j["soundness"] = to_json(d.soundness);
    return j;
}

inline Json to_json(const HamiltonResult& r)
{
    return Json{{"schema", kSchemaVersion},
                {"result", to_string(r.status)},
                {"exhaustive", r.exhaustive},
                {"cycle", r.cycle},
                {"nodes", r.nodes}};
}

// ---------------------------------------------------------------------------
// Analysis report

struct AnalysisReport {
    int n = 0;
    std::size_t edge_count = 0;
    int delta2 = 0;
    std::optional<int> delta2_positive;
    std::size_t tetra_edge_count = 0;
    int tetra_component_count = 0;
    bool phi_defined = false;
    std::string phi_error;
    std::vector<int> spanning_component_ids;
    std::vector<LemmaReport> per_lemma;
    std::vector<std::pair<std::string, double>> timings;   ///< seconds
};

inline AnalysisReport analyze(const ThreeGraph& h, const ScanOptions& opt = {})
{
    using Clock = std::chrono::steady_clock;
    AnalysisReport r;
    auto lap = [&, t = Clock::now()](const std::string& what) mutable {
        const auto now = Clock::now();
        r.timings.push_back({what, std::chrono::duration<double>(now - t).count()});
        t = now;
    };
    r.n = h.n();
    r.edge_count = h.edge_count();
    r.delta2 = h.n() >= 2 ? min_codegree(h) : 0;
    r.delta2_positive = min_positive_codegree(h);
    const FourGraph t = h.n() >= 4 ? tetrahedral_graph(h, opt.threads) : FourGraph(h.n());
    r.tetra_edge_count = t.edge_count();
    r.tetra_component_count = tight_components(t).component_count;
    lap("tetrahedral");
    try {
        const PhiColouring pc(h, opt.threads);
        r.phi_defined = true;
        r.spanning_component_ids = spanning_components(pc);
        lap("phi");
        r.per_lemma = verify_all(pc, opt);
    } catch (const EdgeNotInTetrahedron& e) {
        r.phi_error = e.what();
        r.per_lemma = verify_without_phi(h, {kAllLemmas.begin(), kAllLemmas.end()}, e.what());
    }
    lap("lemmas");
    return r;
}

inline Json to_json(const AnalysisReport& r, bool with_timings)
{
    Json j{{"schema", kSchemaVersion},
           {"n", r.n},
           {"edge_count", r.edge_count},
           {"delta2", r.delta2}};
    j["delta2_positive"] = r.delta2_positive ? Json(*r.delta2_positive) : Json(nullptr);
    j["tetra_edge_count"] = r.tetra_edge_count;
    j["tetra_component_count"] = r.tetra_component_count;
    j["phi_defined"] = r.phi_defined;
    if (!r.phi_defined)
        j["phi_error"] = r.phi_error;
    j["spanning_component_ids"] = r.spanning_component_ids;
    Json lemmas = Json::array();
    for (const auto& l : r.per_lemma)
        lemmas.push_back(to_json(l));
    j["per_lemma"] = lemmas;
    if (with_timings) {
        Json t = Json::object();
        for (const auto& [k, v] : r.timings)
            t[k] = v;
        j["timings"] = t;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Threshold mining

inline constexpr const char* kMineHeader = "n,delta2,sample,tetra_components,lem14_ok,absorber_hits";

struct MineRow {
    int n = 0;
    int d = 0;
    int sample = 0;
    int tetra_components = 0;
    std::optional<bool> lem14_ok;   ///< empty when 9 delta2 <= 7n
    int absorber_hits = 0;
};

inline constexpr int kMineAbsorberTargets = 4;
inline constexpr std::uint64_t kMineAbsorberBudget = 200000;

inline MineRow mine_one(int n, int d, int sample, std::uint64_t seed)
{
    const Rng rng = Rng(seed).split(static_cast<std::uint64_t>(d)).split(static_cast<std::uint64_t>(sample));
    auto h = conditioned_sampler(n, d, rng.seed());
    if (!h)
        throw std::invalid_argument("codegree target exceeds n - 2");
    MineRow row{n, d, sample, 0, std::nullopt, 0};
    row.tetra_components = n >= 4 ? tight_components(tetrahedral_graph(*h)).component_count : 0;
    if (above_seven_ninths(min_codegree(*h), n))
        row.lem14_ok = row.tetra_components == 1;
    if (n >= 40) {
        Rng pick = rng.split(99);
        for (int t = 0; t < kMineAbsorberTargets; ++t) {
            std::vector<int> all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 0);
            pick.shuffle(all);
            auto a = find_absorber(*h, {all[0], all[1], all[2], all[3]}, kMineAbsorberBudget, pick());
            row.absorber_hits += a.found();
        }
    }
    return row;
}

/// Rows ordered by (d as given, sample); every row depends only on
/// (seed, d, sample), so the output does not depend on threads.
inline std::vector<MineRow> mine_threshold(int n, const std::vector<int>& ds, int samples, std::uint64_t seed,
                                           int threads = 1)
{
    if (n < 3)
        throw std::invalid_argument("mining needs n >= 3");
    if (samples < 0)
        throw std::invalid_argument("sample count must be non-negative");
    for (int d : ds)
        if (d < 0 || d > n - 2)
            throw std::invalid_argument("codegree target " + std::to_string(d) + " outside [0, n - 2]");
    const std::size_t per = static_cast<std::size_t>(samples);
    std::vector<MineRow> rows(ds.size() * per);
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        rows[i] = mine_one(n, ds[i / per], static_cast<int>(i % per), seed);
    });
    return rows;
}

inline std::string to_csv(const std::vector<MineRow>& rows)
{
    std::ostringstream os;
    os << kMineHeader << '\n';
    for (const auto& r : rows)
        os << r.n << ',' << r.d << ',' << r.sample << ',' << r.tetra_components << ','
           << (r.lem14_ok ? (*r.lem14_ok ? "1" : "0") : "na") << ',' << r.absorber_hits << '\n';
    return os.str();
}

}  // namespace tetraham
