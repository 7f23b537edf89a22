#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tetraham/io.hpp"
#include "tetraham/report.hpp"

using namespace tetraham;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "1000", "10^9", "1e9"
std::uint64_t parse_budget(const std::string& s)
{
    auto fail = [&] { return UsageError("bad budget '" + s + "'"); };
    try {
        if (auto caret = s.find('^'); caret != std::string::npos) {
            const double b = std::stod(s.substr(0, caret)), e = std::stod(s.substr(caret + 1));
            const double v = std::pow(b, e);
            if (!(v >= 1) || v > 1.8e19)
                throw fail();
            return static_cast<std::uint64_t>(v);
        }
        std::size_t used = 0;
        if (s.find_first_of("eE.") != std::string::npos) {
            const double v = std::stod(s, &used);
            if (used != s.size() || !(v >= 1) || v > 1.8e19)
                throw fail();
            return static_cast<std::uint64_t>(v);
        }
        const auto v = std::stoull(s, &used);
        if (used != s.size() || v == 0)
            throw fail();
        return v;
    } catch (const std::logic_error&) {
        throw fail();
    }
}

std::vector<int> parse_list(const std::string& s, std::size_t want = 0)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw UsageError("bad vertex '" + item + "'");
        } catch (const std::logic_error&) {
            throw UsageError("bad vertex '" + item + "'");
        }
    }
    if (want && out.size() != want)
        throw UsageError("expected " + std::to_string(want) + " comma separated vertices in '" + s + "'");
    return out;
}

ThreeGraph read_graph(const std::string& path)
{
    if (path == "-")
        return read_text<3>(std::cin);
    if (!std::ifstream(path))
        throw UsageError("cannot open " + path);
    return load<3>(path);
}

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    return Json::parse(in);
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw std::runtime_error("cannot write " + out);
    f << text;
}

void emit(const Json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

int exit_for(SearchStatus s)
{
    return s == SearchStatus::found ? kOk : s == SearchStatus::none ? kFailure : kBudget;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tetraham: squared tight cycles in dense 3-graphs"};
    app.require_subcommand(1);
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default TETRAHAM_THREADS or hardware)")
        ->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a 3-graph");
    std::string gen_kind, gen_out;
    int gen_n = 0, gen_d = -1;
    double gen_p = -1;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("kind", gen_kind, "pikhurko | complete | random | conditioned")
        ->required()
        ->check(CLI::IsMember({"pikhurko", "complete", "random", "conditioned"}));
    gen->add_option("--n", gen_n, "vertices")->required();
    gen->add_option("--d", gen_d, "codegree floor (conditioned)");
    gen->add_option("--p", gen_p, "edge probability (random)");
    gen->add_option("--seed", gen_seed, "seed (random, conditioned)");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "codegree, tetrahedral components and lemma reports as JSON");
    std::string ana_file, ana_out;
    bool ana_timings = false, ana_scan = false;
    ana->add_option("file", ana_file, "graph file or -")->required();
    ana->add_flag("--timings", ana_timings, "include wall-clock timings");
    ana->add_flag("--scan", ana_scan, "collect all witnesses instead of stopping at the first");
    ana->add_option("-o,--out", ana_out, "output file");

    // verify
    auto* ver = app.add_subcommand("verify", "run lemma checkers");
    std::string ver_file, ver_out, ver_budget = "1e12";
    std::vector<std::string> ver_tags;
    bool ver_scan = false;
    std::optional<std::uint64_t> ver_seed;
    std::size_t ver_witnesses = 64;
    ver->add_option("file", ver_file, "graph file or -")->required();
    ver->add_option("--lemma", ver_tags, "lemma tag (repeatable, default all)");
    ver->add_flag("--scan", ver_scan, "collect all witnesses");
    ver->add_option("--budget", ver_budget, "node budget per lemma");
    ver->add_option("--seed", ver_seed, "seed for the random pair families");
    ver->add_option("--max-witnesses", ver_witnesses, "witness cap");
    ver->add_option("-o,--out", ver_out, "output file");

    // search
    auto* srch = app.add_subcommand("search", "squared tight Hamilton cycles and connectors");
    srch->require_subcommand(1);
    auto* ham = srch->add_subcommand("ham-square", "decide the square of a tight Hamilton cycle");
    std::string ham_file, ham_budget = "1e9", ham_out;
    ham->add_option("file", ham_file)->required();
    ham->add_option("--budget", ham_budget, "node budget");
    ham->add_option("-o,--out", ham_out, "output file");
    auto* con = srch->add_subcommand("connect", "squared-tight-path between two ordered triples");
    std::string con_file, con_from, con_to, con_forbid, con_budget = "1e7", con_out;
    std::size_t con_max = 12;
    con->add_option("file", con_file)->required();
    con->add_option("--from", con_from, "a,b,c")->required();
    con->add_option("--to", con_to, "a,b,c")->required();
    con->add_option("--forbid", con_forbid, "comma separated vertices");
    con->add_option("--max-vertices", con_max, "longest path allowed");
    con->add_option("--budget", con_budget, "node budget");
    con->add_option("-o,--out", con_out, "output file");

    // absorber
    auto* ab = app.add_subcommand("absorber", "absorber gadgets");
    ab->require_subcommand(1);
    auto* abf = ab->add_subcommand("find", "search an absorber for a 4-tuple");
    std::string abf_file, abf_target, abf_budget = "1e7", abf_out;
    std::optional<std::uint64_t> abf_seed;
    abf->add_option("file", abf_file)->required();
    abf->add_option("--target", abf_target, "v1,v2,v3,v4")->required();
    abf->add_option("--seed", abf_seed, "seed")->required();
    abf->add_option("--budget", abf_budget, "node budget");
    abf->add_option("-o,--out", abf_out, "output file");
    auto* abc = ab->add_subcommand("check", "is the given gadget an absorber for the tuple");
    std::string abc_file, abc_abs, abc_target;
    abc->add_option("file", abc_file)->required();
    abc->add_option("--absorber", abc_abs, "absorber JSON")->required();
    abc->add_option("--target", abc_target, "v1,v2,v3,v4")->required();
    auto* aba = ab->add_subcommand("absorb", "absorb a leftover set into a path system");
    std::string aba_file, aba_sys, aba_left, aba_out;
    aba->add_option("file", aba_file)->required();
    aba->add_option("--system", aba_sys, "JSON {\"absorbers\": [...], \"donation\": {...} or null}")->required();
    aba->add_option("--leftover", aba_left, "comma separated vertices");
    aba->add_option("-o,--out", aba_out, "output file");

    // mine
    auto* mine = app.add_subcommand("mine", "sample conditioned graphs around the threshold (CSV)");
    int mine_n = 0, mine_samples = 10;
    std::vector<int> mine_d;
    std::optional<std::uint64_t> mine_seed;
    std::string mine_out;
    mine->add_option("--n", mine_n, "vertices")->required();
    mine->add_option("--d", mine_d, "codegree targets")->required()->delimiter(',');
    mine->add_option("--samples", mine_samples, "samples per target");
    mine->add_option("--seed", mine_seed, "seed")->required();
    mine->add_option("-o,--out", mine_out, "output file");

    // demo-absorb
    auto* demo = app.add_subcommand("demo-absorb", "absorb-and-connect pipeline on a small graph");
    std::string demo_file, demo_budget = "1e6", demo_out;
    int demo_n = 45, demo_d = 37;
    std::optional<std::uint64_t> demo_seed;
    demo->add_option("file", demo_file, "graph file (default: conditioned sample from --n/--d)");
    demo->add_option("--n", demo_n, "vertices of the sample");
    demo->add_option("--d", demo_d, "codegree floor of the sample");
    demo->add_option("--seed", demo_seed, "seed")->required();
    demo->add_option("--budget", demo_budget, "node budget per search");
    demo->add_option("-o,--out", demo_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            ThreeGraph h;
            if (gen_kind == "pikhurko") {
                h = pikhurko_construction(gen_n).graph;
            } else if (gen_kind == "complete") {
                h = complete(gen_n);
            } else if (gen_kind == "random") {
                if (!gen_seed || gen_p < 0 || gen_p > 1)
                    throw UsageError("random needs --seed and --p in [0, 1]");
                h = random_threegraph(gen_n, gen_p, *gen_seed);
            } else {
                if (!gen_seed || gen_d < 0)
                    throw UsageError("conditioned needs --seed and --d");
                auto s = conditioned_sampler(gen_n, gen_d, *gen_seed);
                if (!s)
                    throw UsageError("--d exceeds n - 2");
                h = std::move(*s);
            }
            emit(to_text(h), gen_out);
            return kOk;
        }
        if (*ana) {
            ScanOptions opt;
            opt.threads = threads;
            opt.mode = ana_scan ? VerifyMode::scan : VerifyMode::assert_mode;
            emit(to_json(analyze(read_graph(ana_file), opt), ana_timings), ana_out);
            return kOk;
        }
        if (*ver) {
            std::vector<LemmaId> ids;
            if (ver_tags.empty())
                ids.assign(kAllLemmas.begin(), kAllLemmas.end());
            for (const auto& t : ver_tags)
                for (LemmaId id : parse_lemma_tag(t))
                    ids.push_back(id);
            const bool random = std::find(ids.begin(), ids.end(), LemmaId::PROP_3_6i) != ids.end() ||
                                std::find(ids.begin(), ids.end(), LemmaId::PROP_3_6ii) != ids.end();
            if (random && !ver_seed)
                throw UsageError("PROP_3_6 samples pair families and needs --seed");
            ScanOptions opt;
            opt.threads = threads;
            opt.mode = ver_scan ? VerifyMode::scan : VerifyMode::assert_mode;
            opt.node_budget = parse_budget(ver_budget);
            opt.max_witnesses = ver_witnesses;
            opt.seed = ver_seed.value_or(1);
            const ThreeGraph h = read_graph(ver_file);
            std::vector<LemmaReport> reports;
            std::optional<PhiColouring> pc;
            try {
                pc.emplace(h, threads);
            } catch (const EdgeNotInTetrahedron& e) {
                reports = verify_without_phi(h, ids, e.what());
            }
            if (pc)
                reports = verify(*pc, ids, opt);
            Json j{{"schema", kSchemaVersion}, {"phi_defined", pc.has_value()}};
            j["component_count"] = pc ? pc->component_count()
                                      : tight_components(h.n() >= 4 ? tetrahedral_graph(h) : FourGraph(h.n()))
                                            .component_count;
            Json rs = Json::array();
            bool failed = false, exhausted = false;
            for (const auto& r : reports) {
                rs.push_back(to_json(r));
                failed = failed || r.failed_assertion();
                exhausted = exhausted || r.budget_exhausted;
            }
            j["reports"] = rs;
            emit(j, ver_out);
            return failed ? kFailure : exhausted ? kBudget : kOk;
        }
        if (*ham) {
            auto r = find_squared_tight_hamilton_cycle(read_graph(ham_file), parse_budget(ham_budget), threads);
            emit(to_json(r), ham_out);
            return r.status == SearchStatus::budget_exhausted ? kBudget : kOk;
        }
        if (*con) {
            const ThreeGraph h = read_graph(con_file);
            const auto f = parse_list(con_from, 3), t = parse_list(con_to, 3);
            const VertexSet forbid = con_forbid.empty() ? VertexSet{} : VertexSet::of(parse_list(con_forbid));
            auto r = find_squared_tight_path(h, TripleOrdered(f[0], f[1], f[2]), TripleOrdered(t[0], t[1], t[2]),
                                             forbid, con_max, parse_budget(con_budget));
            Json j{{"schema", kSchemaVersion}, {"result", to_string(r.status)}, {"nodes", r.nodes}};
            j["path"] = r.value ? Json(r.value->vertices()) : Json(nullptr);
            emit(j, con_out);
            return r.status == SearchStatus::budget_exhausted ? kBudget : kOk;
        }
        if (*abf) {
            const auto v = parse_list(abf_target, 4);
            auto r = find_absorber(read_graph(abf_file), {v[0], v[1], v[2], v[3]}, parse_budget(abf_budget),
                                   *abf_seed, {}, 4, threads);
            Json j{{"schema", kSchemaVersion}, {"result", to_string(r.status)}, {"nodes", r.nodes}};
            j["absorber"] = r.value ? to_json(*r.value) : Json(nullptr);
            emit(j, abf_out);
            return exit_for(r.status);
        }
        if (*abc) {
            const auto v = parse_list(abc_target, 4);
            const bool ok = is_absorber(read_graph(abc_file), absorber_from_json(read_json(abc_abs)),
                                        {v[0], v[1], v[2], v[3]});
            emit(Json{{"schema", kSchemaVersion}, {"is_absorber", ok}}, "");
            return ok ? kOk : kFailure;
        }
        if (*aba) {
            const ThreeGraph h = read_graph(aba_file);
            const Json sj = read_json(aba_sys);
            AbsorbingSystem sys;
            for (const auto& a : sj.at("absorbers"))
                sys.absorbers.push_back(absorber_from_json(a));
            if (sj.contains("donation") && !sj["donation"].is_null())
                sys.donation = donation_from_json(sj["donation"]);
            const auto left = aba_left.empty() ? std::vector<int>{} : parse_list(aba_left);
            try {
                auto r = absorb(h, sys, VertexSet::of(left));
                Json j = to_json(r);
                j["soundness"] = to_json(check_absorption(h, r.before, r.after, left));
                j["schema"] = kSchemaVersion;
                emit(j, aba_out);
                return j["soundness"]["ok"].get<bool>() ? kOk : kFailure;
            } catch (const InsufficientAbsorbers& e) {
                emit(Json{{"schema", kSchemaVersion}, {"error", e.what()}, {"tuple", e.tuple()}}, aba_out);
                return kFailure;
            }
        }
        if (*mine) {
            for (int d : mine_d)
                if (d < 0 || d > mine_n - 2)
                    throw UsageError("--d values must lie in [0, n - 2]");
            emit(to_csv(mine_threshold(mine_n, mine_d, mine_samples, *mine_seed, threads)), mine_out);
            return kOk;
        }
        if (*demo) {
            ThreeGraph h;
            if (!demo_file.empty()) {
                h = read_graph(demo_file);
            } else {
                auto s = conditioned_sampler(demo_n, demo_d, *demo_seed);
                if (!s)
                    throw UsageError("--d exceeds n - 2");
                h = std::move(*s);
            }
            auto r = demo_absorb(h, *demo_seed, parse_budget(demo_budget), 16, 8, threads);
            emit(to_json(r), demo_out);
            if (r.status == SearchStatus::budget_exhausted)
                return kBudget;
            return r.ok() ? kOk : kFailure;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
