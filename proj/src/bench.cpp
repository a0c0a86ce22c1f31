#include "udom/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

#include "udom/oracle.hpp"
#include "udom/queries.hpp"

namespace udom {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

// Mass of `pdf` lying outside the per-count interval [lb, ub].
double interval_violation(const std::vector<double>& pdf, const DomCountDistribution& bounds)
{
    double err = 0.0;
    for (std::size_t k = 0; k < pdf.size() && k < bounds.size(); ++k) {
        if (pdf[k] < bounds.lb[k]) err += bounds.lb[k] - pdf[k];
        if (pdf[k] > bounds.ub[k]) err += pdf[k] - bounds.ub[k];
    }
    return err;
}

}  // namespace

std::vector<UncertainObject> bench_dataset(const BenchConfig& config)
{
    if (!config.dataset_path.empty()) return load_dataset(config.dataset_path, config.seed);
    return generate_synthetic(config.synthetic);
}

std::vector<BenchQuery> select_queries(const std::vector<UncertainObject>& db,
                                       const BenchConfig& config)
{
    if (config.repetitions < 1) throw Error("repetitions must be >= 1");
    if (config.target_rank < 1) throw Error("target rank must be >= 1");
    if (db.size() < config.target_rank + 1) {
        throw Error("database too small for target rank " + std::to_string(config.target_rank));
    }
    std::mt19937_64 rng(config.seed);
    std::vector<BenchQuery> out;
    std::vector<std::pair<double, std::size_t>> by_dist;
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        std::size_t ref = static_cast<std::size_t>(rng() % db.size());
        by_dist.clear();
        for (std::size_t i = 0; i < db.size(); ++i) {
            if (i == ref) continue;
            by_dist.emplace_back(min_dist_pow(db[i].mbr(), db[ref].mbr(), config.engine.norm), i);
        }
        auto nth = by_dist.begin() + static_cast<std::ptrdiff_t>(config.target_rank - 1);
        std::nth_element(by_dist.begin(), nth, by_dist.end());
        out.push_back({ref, nth->second});
    }
    return out;
}

PruningSummary bench_pruning(const std::vector<UncertainObject>& db, const BenchConfig& config,
                             std::ostream& csv)
{
    csv << "query,reference,target,criterion,candidate_count,iteration,uncertainty\n";
    PruningSummary summary;
    auto queries = select_queries(db, config);
    double sum_opt = 0.0, sum_mm = 0.0;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto& ref = db[queries[q].reference];
        const auto& target = db[queries[q].target];
        for (Criterion c : {Criterion::optimal, Criterion::minmax}) {
            IdcaConfig cfg = config.engine;
            cfg.criterion = c;
            IdcaResult res = idca(db, target, ref, cfg);
            std::size_t cands = res.classification.influence_objects.size();
            (c == Criterion::optimal ? sum_opt : sum_mm) += static_cast<double>(cands);
            for (std::size_t it = 0; it < res.uncertainty_trace.size(); ++it) {
                csv << q << ',' << ref.id() << ',' << target.id() << ',' << to_string(c) << ','
                    << cands << ',' << it << ',' << fmt(res.uncertainty_trace[it]) << '\n';
            }
        }
    }
    summary.queries = queries.size();
    summary.mean_candidates_optimal = sum_opt / static_cast<double>(queries.size());
    summary.mean_candidates_minmax = sum_mm / static_cast<double>(queries.size());
    summary.candidate_reduction_percent =
        sum_mm > 0.0 ? 100.0 * (1.0 - sum_opt / sum_mm) : 0.0;
    return summary;
}

void bench_runtime(const std::vector<UncertainObject>& db, const BenchConfig& config,
                   std::ostream& csv)
{
    csv << "query,method,param,wall_ms,uncertainty_or_error,decided_iteration\n";
    auto queries = select_queries(db, config);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto& ref = db[queries[q].reference];
        const auto& target = db[queries[q].target];

        // Cumulative wall time at each refinement iteration.
        IdcaConfig cfg = config.engine;
        std::vector<double> stamps;
        auto t0 = Clock::now();
        cfg.on_iteration = [&](const IterationState&) { stamps.push_back(ms_since(t0)); };
        IdcaResult res = idca(db, target, ref, cfg);
        for (std::size_t it = 0; it < res.uncertainty_trace.size(); ++it) {
            csv << q << ",idca_iter_" << it << ',' << it << ',' << fmt(stamps[it]) << ','
                << fmt(res.uncertainty_trace[it]) << ",\n";
        }

        // The sampling baseline sees the same filtered candidate set; complete
        // dominators only shift its PDF.
        std::vector<UncertainObject> influence;
        for (std::size_t idx : res.classification.influence_objects) influence.push_back(db[idx]);
        for (std::uint64_t s : config.mc_samples) {
            McOptions mo;
            mo.norm = config.engine.norm;
            mo.samples = s;
            mo.seed = config.seed + q;
            auto t1 = Clock::now();
            McResult mc = mc_baseline(influence, target, ref, mo);
            double wall = ms_since(t1);
            std::vector<double> shifted(res.distribution.size(), 0.0);
            for (std::size_t k = 0; k < mc.estimate.pdf.size(); ++k) {
                std::size_t at = k + res.classification.complete_domination_count;
                if (at < shifted.size()) shifted[at] = mc.estimate.pdf[k];
            }
            csv << q << ",mc_" << s << ',' << s << ',' << fmt(wall) << ','
                << fmt(interval_violation(shifted, res.distribution)) << ",\n";
        }

        for (int k : config.predicate_k) {
            for (double tau : config.predicate_tau) {
                IdcaConfig pc = config.engine;
                pc.truncate_at = k;
                KnnThreshold pred{k, tau};
                pc.stop = config.engine.stop ||
                          StopCriterion::predicate_decided([pred](const DomCountDistribution& d) {
                              return predicate_decided(pred, d);
                          });
                auto t2 = Clock::now();
                IdcaResult pr = idca(db, target, ref, pc);
                double wall = ms_since(t2);
                bool decided = threshold_decision(knn_probability_bounds(pr.distribution, k),
                                                  tau) != Decision::undecided;
                csv << q << ",idca_predicate,k=" << k << ";tau=" << fmt(tau) << ',' << fmt(wall)
                    << ',' << fmt(pr.uncertainty_trace.back()) << ','
                    << (decided ? std::to_string(pr.iterations_run) : std::string("")) << '\n';
            }
        }
    }

    for (std::size_t n : config.scaling_sizes) {
        BenchConfig sc = config;
        sc.synthetic.n = n;
        sc.repetitions = 1;
        auto scaled = generate_synthetic(sc.synthetic);
        auto sq = select_queries(scaled, sc);
        auto t3 = Clock::now();
        IdcaResult res = idca(scaled, scaled[sq[0].target], scaled[sq[0].reference], config.engine);
        csv << "scaling,idca_scaling," << n << ',' << fmt(ms_since(t3)) << ','
            << fmt(res.uncertainty_trace.back()) << ",\n";
    }
}

}  // namespace udom
