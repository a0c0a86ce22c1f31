// udom: command-line front end for domination-count queries on uncertain data.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "udom/bench.hpp"
#include "udom/idca.hpp"
#include "udom/model.hpp"
#include "udom/oracle.hpp"
#include "udom/queries.hpp"

using json = nlohmann::json;

namespace {

struct EngineFlags {
    int max_depth = 10;
    double epsilon = -1.0;
    std::size_t pair_budget = std::size_t{1} << 16;
    std::string criterion = "optimal";
    double norm = 2.0;

    void add_to(CLI::App* app)
    {
        app->add_option("--max-depth", max_depth, "kd-tree height cap")->capture_default_str();
        app->add_option("--epsilon", epsilon, "stop once total uncertainty <= epsilon");
        app->add_option("--pair-budget", pair_budget, "max (target, reference) leaf pairs")
            ->capture_default_str();
        app->add_option("--criterion", criterion, "complete-domination test")
            ->check(CLI::IsMember({"optimal", "minmax"}))
            ->capture_default_str();
        app->add_option("--norm", norm, "L_p exponent")->capture_default_str();
    }

    udom::IdcaConfig config() const
    {
        udom::IdcaConfig cfg;
        cfg.norm = udom::NormOrder(norm);
        cfg.criterion = udom::parse_criterion(criterion);
        cfg.max_depth = max_depth;
        cfg.pair_budget = pair_budget;
        cfg.stop = udom::StopCriterion::max_depth(max_depth);
        if (epsilon >= 0.0) cfg.stop = cfg.stop || udom::StopCriterion::uncertainty_below(epsilon);
        return cfg;
    }
};

struct DatasetFlags {
    std::string path;
    std::string format;
    std::uint64_t seed = 1;

    void add_to(CLI::App* app, bool required = true)
    {
        auto* opt = app->add_option("--dataset", path, "JSONL or Gaussian CSV dataset");
        if (required) opt->required();
        app->add_option("--format", format, "jsonl or csv (default: by extension)");
        app->add_option("--seed", seed, "seed for sampled inputs")->capture_default_str();
    }

    std::vector<udom::UncertainObject> load() const
    {
        if (format.empty()) return udom::load_dataset(path, seed);
        return udom::load_dataset(path, udom::parse_dataset_format(format), seed);
    }
};

bool parse_point(const std::string& spec, std::vector<double>& out)
{
    std::stringstream ss(spec);
    std::string cell;
    out.clear();
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(cell, &pos);
            if (pos != cell.size()) return false;
            out.push_back(v);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

// An id from the dataset, an inline point "x1,x2,...", or a JSONL file whose
// first row is the object.
udom::UncertainObject resolve_object(const std::string& spec,
                                     const std::vector<udom::UncertainObject>& db)
{
    for (const auto& o : db) {
        if (o.id() == spec) return o;
    }
    std::vector<double> point;
    if (parse_point(spec, point)) return udom::certain_object("query", std::move(point));
    if (std::filesystem::exists(spec)) {
        auto objs = udom::load_dataset(spec);
        if (objs.empty()) throw udom::Error("no object in '" + spec + "'");
        return objs.front();
    }
    throw udom::Error("'" + spec + "' is neither a dataset id, a point, nor a file");
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw udom::Error("cannot open '" + path + "' for writing");
    os << text;
}

json bounds_json(const udom::DomCountDistribution& d)
{
    return json{{"lb", d.lb}, {"ub", d.ub}};
}

json answer_json(const udom::QueryAnswer& ans)
{
    json objs = json::array();
    for (const auto& o : ans.objects) {
        objs.push_back({{"id", o.id},
                        {"decision", udom::to_string(o.decision)},
                        {"lb", o.probability.lb},
                        {"ub", o.probability.ub},
                        {"iterations", o.iterations},
                        {"stop_reason", udom::to_string(o.stop_reason)},
                        {"influence_objects", o.influence_objects},
                        {"uncertainty", o.uncertainty}});
    }
    return json{{"results", ans.result_ids()}, {"objects", objs}};
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flags from a key = value file. Blank lines, [sections] and lines starting
// with # or ; are ignored; surrounding quotes on values are dropped.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw udom::Error("cannot open config '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw udom::Error(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        while (!key.empty() && key[0] == '-') key.erase(0, 1);
        std::replace(key.begin(), key.end(), '_', '-');
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front()) {
            value = value.substr(1, value.size() - 2);
        }
        out.emplace_back(key, value);
    }
    return out;
}

// Replaces `--config FILE` by the flags it lists. Flags given explicitly on
// the command line win. The flags are appended, so they bind to the deepest
// subcommand.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    auto given = [&](const std::string& flag) {
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    for (const auto& [key, value] : read_config(path)) {
        std::string flag = "--" + key;
        if (given(flag)) continue;
        args.push_back(flag);
        args.push_back(value);
    }
    return args;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Probabilistic domination count queries on uncertain objects"};
    std::string config_path;  // consumed by expand_config; declared for --help
    app.add_option("--config", config_path, "key = value file supplying flags");
    app.require_subcommand(1);

    // generate ---------------------------------------------------------------
    udom::SyntheticConfig gen;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "write a synthetic dataset as JSONL");
    generate->add_option("--n", gen.n, "number of objects")->capture_default_str();
    generate->add_option("--dims", gen.dims, "dimensionality")->capture_default_str();
    generate->add_option("--max-extent", gen.max_extent, "max side length")->capture_default_str();
    generate->add_option("--samples", gen.samples_per_object, "samples per object")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "random seed")->capture_default_str();
    generate->add_option("--out", gen_out, "output JSONL path")->required();

    // query ------------------------------------------------------------------
    auto* query = app.add_subcommand("query", "run a probabilistic query");
    query->require_subcommand(1);
    DatasetFlags qdata;
    EngineFlags qengine;
    std::string q_out, q_spec, b_spec, r_spec;
    int k = 1;
    double tau = 0.5;

    auto* knn = query->add_subcommand("knn", "probabilistic threshold kNN");
    auto* rknn = query->add_subcommand("rknn", "probabilistic threshold reverse kNN");
    auto* irank = query->add_subcommand("irank", "inverse ranking of --b w.r.t. --r");
    auto* erank = query->add_subcommand("erank", "expected rank of every object w.r.t. --q");
    for (auto* sub : {knn, rknn, irank, erank}) {
        qdata.add_to(sub);
        qengine.add_to(sub);
        sub->add_option("--out", q_out, "JSON answer path (default stdout)");
    }
    for (auto* sub : {knn, rknn}) {
        sub->add_option("--k", k, "neighbor count")->required();
        sub->add_option("--tau", tau, "probability threshold")->required();
        sub->add_option("--q", q_spec, "query: dataset id, x1,x2,... or JSONL file")->required();
    }
    erank->add_option("--q", q_spec, "query: dataset id, x1,x2,... or JSONL file")->required();
    irank->add_option("--b", b_spec, "target object id")->required();
    irank->add_option("--r", r_spec, "reference: dataset id, x1,x2,... or JSONL file")->required();

    // oracle -----------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "ground-truth domination count PDFs");
    oracle->require_subcommand(1);
    DatasetFlags odata;
    std::string o_out, ob_spec, or_spec;
    std::uint64_t sample_budget = 0;
    std::uint64_t world_budget = 10'000'000;
    double o_norm = 2.0;
    auto* exact = oracle->add_subcommand("exact", "possible-worlds enumeration");
    auto* mc = oracle->add_subcommand("mc", "sampling baseline");
    for (auto* sub : {exact, mc}) {
        odata.add_to(sub);
        sub->add_option("--b", ob_spec, "target object id")->required();
        sub->add_option("--r,--q", or_spec, "reference: dataset id, x1,x2,... or JSONL file")
            ->required();
        sub->add_option("--norm", o_norm, "L_p exponent")->capture_default_str();
        sub->add_option("--out", o_out, "JSON output path (default stdout)");
    }
    exact->add_option("--world-budget", world_budget, "max possible worlds")->capture_default_str();
    mc->add_option("--sample-budget", sample_budget, "reference draws (0 = every sample)")
        ->capture_default_str();

    // bench ------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "benchmark harness emitting CSV");
    bench->require_subcommand(1);
    udom::BenchConfig bcfg;
    EngineFlags bengine;
    std::string b_out, mc_list = "100,1000", pk_list, tau_list, scaling_list;
    auto* pruning = bench->add_subcommand("pruning", "optimal vs min/max candidates");
    auto* runtime = bench->add_subcommand("runtime", "IDCA iterations vs sampling baseline");
    for (auto* sub : {pruning, runtime}) {
        sub->add_option("--dataset", bcfg.dataset_path, "dataset (default: generated)");
        sub->add_option("--n", bcfg.synthetic.n, "generated objects")->capture_default_str();
        sub->add_option("--dims", bcfg.synthetic.dims, "dimensionality")->capture_default_str();
        sub->add_option("--max-extent", bcfg.synthetic.max_extent, "max side length")
            ->capture_default_str();
        sub->add_option("--samples", bcfg.synthetic.samples_per_object, "samples per object")
            ->capture_default_str();
        sub->add_option("--seed", bcfg.seed, "random seed")->capture_default_str();
        sub->add_option("--repetitions", bcfg.repetitions, "queries")->capture_default_str();
        sub->add_option("--target-rank", bcfg.target_rank, "MinDist rank of the target")
            ->capture_default_str();
        bengine.add_to(sub);
        sub->add_option("--out", b_out, "CSV output path (default stdout)");
    }
    runtime->add_option("--mc-samples", mc_list, "comma-separated baseline sample sizes")
        ->capture_default_str();
    runtime->add_option("--predicate-k", pk_list, "comma-separated k for predicate queries");
    runtime->add_option("--tau", tau_list, "comma-separated tau for predicate queries");
    runtime->add_option("--scaling", scaling_list, "comma-separated database sizes");

    try {
        std::vector<std::string> args = expand_config(std::vector<std::string>(argv, argv + argc));
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(cargs.size()), cargs.data());
        } catch (const CLI::ParseError& e) {
            return app.exit(e);
        }

        if (*generate) {
            udom::save_jsonl(udom::generate_synthetic(gen), gen_out);
            return 0;
        }

        if (*query) {
            auto db = qdata.load();
            auto cfg = qengine.config();
            json out;
            if (*knn || *rknn) {
                auto q = resolve_object(q_spec, db);
                auto ans = *knn ? udom::pknn_query(db, q, k, tau, cfg)
                                : udom::prknn_query(db, q, k, tau, cfg);
                out = answer_json(ans);
                out["query"] = *knn ? "knn" : "rknn";
                out["k"] = k;
                out["tau"] = tau;
                out["q"] = q.id();
            } else if (*irank) {
                auto b = resolve_object(b_spec, db);
                auto r = resolve_object(r_spec, db);
                auto res = udom::inverse_ranking(db, b, r, cfg);
                json ranks = json::array();
                for (std::size_t i = 0; i < res.rank.size(); ++i) {
                    ranks.push_back({{"rank", i + 1}, {"lb", res.rank.lb[i]}, {"ub", res.rank.ub[i]}});
                }
                out = {{"query", "irank"},
                       {"b", b.id()},
                       {"r", r.id()},
                       {"ranks", ranks},
                       {"iterations", res.engine.iterations_run},
                       {"stop_reason", udom::to_string(res.engine.stop_reason)},
                       {"complete_dominators", res.engine.classification.complete_domination_count},
                       {"influence_objects", res.engine.classification.influence_objects.size()},
                       {"uncertainty_trace", res.engine.uncertainty_trace}};
            } else {
                auto q = resolve_object(q_spec, db);
                json objs = json::array();
                for (const auto& e : udom::expected_rank(db, q, cfg)) {
                    objs.push_back({{"id", e.id}, {"lb", e.lb}, {"ub", e.ub},
                                    {"iterations", e.iterations}});
                }
                out = {{"query", "erank"}, {"q", q.id()}, {"objects", objs}};
            }
            write_text(q_out, out.dump(2) + "\n");
            return 0;
        }

        if (*oracle) {
            auto db = odata.load();
            auto b = resolve_object(ob_spec, db);
            auto r = resolve_object(or_spec, db);
            udom::ExactPdf pdf;
            json out;
            if (*exact) {
                udom::EnumerateOptions eo;
                eo.norm = udom::NormOrder(o_norm);
                eo.world_budget = world_budget;
                pdf = udom::enumerate_exact(db, b, r, eo);
                out["oracle"] = "exact";
            } else {
                udom::McOptions mo;
                mo.norm = udom::NormOrder(o_norm);
                mo.samples = sample_budget;
                mo.seed = odata.seed;
                pdf = udom::mc_baseline(db, b, r, mo).estimate;
                out["oracle"] = "mc";
            }
            out["b"] = b.id();
            out["r"] = r.id();
            out["pdf"] = pdf.pdf;
            out["provenance"] = pdf.provenance;
            out["worlds"] = pdf.worlds;
            write_text(o_out, out.dump(2) + "\n");
            return 0;
        }

        if (*bench) {
            bcfg.synthetic.seed = bcfg.seed;
            bcfg.engine = bengine.config();
            bcfg.mc_samples.clear();
            for (const auto& s : split_list(mc_list)) bcfg.mc_samples.push_back(std::stoull(s));
            for (const auto& s : split_list(pk_list)) bcfg.predicate_k.push_back(std::stoi(s));
            for (const auto& s : split_list(tau_list)) bcfg.predicate_tau.push_back(std::stod(s));
            for (const auto& s : split_list(scaling_list)) {
                bcfg.scaling_sizes.push_back(std::stoull(s));
            }
            auto db = udom::bench_dataset(bcfg);
            std::ostringstream csv;
            if (*pruning) {
                auto summary = udom::bench_pruning(db, bcfg, csv);
                std::cerr << "mean influence objects: optimal " << summary.mean_candidates_optimal
                          << ", minmax " << summary.mean_candidates_minmax << " ("
                          << summary.candidate_reduction_percent << "% fewer with optimal)\n";
            } else {
                udom::bench_runtime(db, bcfg, csv);
            }
            write_text(b_out, csv.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "udom: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
