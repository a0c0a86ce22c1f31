#include "udom/queries.hpp"

#include <algorithm>

namespace udom {

std::string to_string(Decision d)
{
    switch (d) {
    case Decision::in: return "in";
    case Decision::out: return "out";
    case Decision::undecided: return "undecided";
    }
    return "undecided";
}

ProbBounds knn_probability_bounds(const DomCountDistribution& dist, int k)
{
    if (k < 1) throw Error("k must be >= 1");
    if (static_cast<std::size_t>(k) >= dist.size()) return {1.0, 1.0};
    double lb = 0.0, ub = 0.0;
    for (int i = 0; i < k; ++i) {
        lb += dist.lb[static_cast<std::size_t>(i)];
        ub += dist.ub[static_cast<std::size_t>(i)];
    }
    ProbBounds out;
    out.ub = std::min(1.0, ub);
    out.lb = std::min(lb, out.ub);
    return out;
}

Decision threshold_decision(const ProbBounds& p, double tau)
{
    if (p.lb > tau) return Decision::in;
    if (p.ub <= tau) return Decision::out;
    return Decision::undecided;
}

bool predicate_decided(const QueryPredicate& pred, const DomCountDistribution& dist)
{
    return std::visit(
        [&](const auto& p) -> bool {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, KnnThreshold> || std::is_same_v<T, RknnThreshold>) {
                return threshold_decision(knn_probability_bounds(dist, p.k), p.tau) !=
                       Decision::undecided;
            } else {
                return false;
            }
        },
        pred);
}

std::vector<std::string> QueryAnswer::result_ids() const
{
    std::vector<std::string> ids;
    for (const auto& o : objects) {
        if (o.decision == Decision::in) ids.push_back(o.id);
    }
    return ids;
}

namespace {

void check_threshold(int k, double tau)
{
    if (k < 1) throw Error("k must be >= 1");
    if (!(tau >= 0.0 && tau <= 1.0)) throw Error("tau must lie in [0, 1]");
}

IdcaConfig with_predicate(const IdcaConfig& base, const QueryPredicate& pred, int k)
{
    IdcaConfig cfg = base;
    cfg.truncate_at = k;
    cfg.stop = base.stop ||
               StopCriterion::predicate_decided(
                   [pred](const DomCountDistribution& d) { return predicate_decided(pred, d); });
    return cfg;
}

ObjectAnswer answer_from(const std::string& id, const IdcaResult& res, int k, double tau)
{
    ObjectAnswer a;
    a.id = id;
    a.probability = knn_probability_bounds(res.distribution, k);
    a.decision = threshold_decision(a.probability, tau);
    a.iterations = res.iterations_run;
    a.stop_reason = res.stop_reason;
    a.influence_objects = res.classification.influence_objects.size();
    a.uncertainty = res.uncertainty_trace.empty() ? 0.0 : res.uncertainty_trace.back();
    return a;
}

}  // namespace

QueryAnswer pknn_query(std::span<const UncertainObject> db, const UncertainObject& q, int k,
                       double tau, const IdcaConfig& config)
{
    check_threshold(k, tau);
    IdcaConfig cfg = with_predicate(config, KnnThreshold{k, tau}, k);
    QueryAnswer out;
    for (const auto& b : db) {
        if (b.id() == q.id()) continue;
        out.objects.push_back(answer_from(b.id(), idca(db, b, q, cfg), k, tau));
    }
    return out;
}

QueryAnswer prknn_query(std::span<const UncertainObject> db, const UncertainObject& q, int k,
                        double tau, const IdcaConfig& config)
{
    check_threshold(k, tau);
    IdcaConfig cfg = with_predicate(config, RknnThreshold{k, tau}, k);
    QueryAnswer out;
    for (const auto& b : db) {
        if (b.id() == q.id()) continue;
        out.objects.push_back(answer_from(b.id(), idca(db, q, b, cfg), k, tau));
    }
    return out;
}

RankDistribution inverse_ranking(std::span<const UncertainObject> db, const UncertainObject& b,
                                 const UncertainObject& r, const IdcaConfig& config)
{
    RankDistribution out;
    out.engine = idca(db, b, r, config);
    // P(Rank = i) = P(DomCount = i - 1): same arrays, read with a 1-based rank.
    out.rank = out.engine.distribution;
    return out;
}

RankInterval expected_rank_bounds(const DomCountDistribution& dist)
{
    const std::size_t n = dist.size();
    if (n == 0) return {1.0, 1.0};
    double lb_mass = 0.0;
    for (double x : dist.lb) lb_mass += x;
    const double free_mass = std::max(0.0, 1.0 - lb_mass);

    auto fill = [&](bool ascending) {
        std::vector<double> mass = dist.lb;
        double left = free_mass;
        for (std::size_t step = 0; step < n && left > 0.0; ++step) {
            std::size_t i = ascending ? step : n - 1 - step;
            double add = std::min(std::max(0.0, dist.ub[i] - dist.lb[i]), left);
            mass[i] += add;
            left -= add;
        }
        // Whatever the upper bounds cannot absorb goes to the extreme rank.
        mass[ascending ? 0 : n - 1] += left;
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e += mass[i] * static_cast<double>(i + 1);
        return e;
    };
    return {fill(true), fill(false)};
}

std::vector<ExpectedRankEntry> expected_rank(std::span<const UncertainObject> db,
                                             const UncertainObject& q, const IdcaConfig& config)
{
    std::vector<ExpectedRankEntry> out;
    for (const auto& a : db) {
        if (a.id() == q.id()) continue;
        IdcaResult res = idca(db, a, q, config);
        RankInterval e = expected_rank_bounds(res.distribution);
        out.push_back({a.id(), e.lb, e.ub, res.iterations_run});
    }
    return out;
}

}  // namespace udom
