#include "udom/idca.hpp"

#include <utility>

namespace udom {

double uncertainty(const DomCountDistribution& dist)
{
    double s = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) s += dist.ub[k] - dist.lb[k];
    return s;
}

// ---------------------------------------------------------------------------
// StopCriterion

StopCriterion StopCriterion::max_depth(int h)
{
    if (h < 1) throw Error("max depth must be >= 1");
    return StopCriterion(std::make_shared<const Node>(Node{Kind::max_depth, h, 0.0, {}, {}, {}}));
}

StopCriterion StopCriterion::uncertainty_below(double epsilon)
{
    if (!(epsilon >= 0.0)) throw Error("uncertainty threshold must be >= 0");
    return StopCriterion(
        std::make_shared<const Node>(Node{Kind::uncertainty_below, 0, epsilon, {}, {}, {}}));
}

StopCriterion StopCriterion::predicate_decided(Predicate decided)
{
    return StopCriterion(
        std::make_shared<const Node>(Node{Kind::predicate, 0, 0.0, std::move(decided), {}, {}}));
}

StopCriterion StopCriterion::never()
{
    return StopCriterion(std::make_shared<const Node>(Node{Kind::never, 0, 0.0, {}, {}, {}}));
}

StopCriterion operator&&(StopCriterion a, StopCriterion b)
{
    using N = StopCriterion::Node;
    return StopCriterion(std::make_shared<const N>(
        N{StopCriterion::Kind::all, 0, 0.0, {}, std::move(a.node_), std::move(b.node_)}));
}

StopCriterion operator||(StopCriterion a, StopCriterion b)
{
    using N = StopCriterion::Node;
    return StopCriterion(std::make_shared<const N>(
        N{StopCriterion::Kind::any, 0, 0.0, {}, std::move(a.node_), std::move(b.node_)}));
}

bool StopCriterion::eval(const Node& n, const IterationState& s)
{
    switch (n.kind) {
    case Kind::max_depth: return s.depth >= n.depth;
    case Kind::uncertainty_below: return s.uncertainty <= n.epsilon;
    case Kind::predicate: return s.distribution && n.decided(*s.distribution);
    case Kind::never: return false;
    case Kind::all: return eval(*n.lhs, s) && eval(*n.rhs, s);
    case Kind::any: return eval(*n.lhs, s) || eval(*n.rhs, s);
    }
    return false;
}

bool StopCriterion::should_stop(const IterationState& s) const
{
    return eval(*node_, s);
}

std::string to_string(StopReason r)
{
    switch (r) {
    case StopReason::criterion: return "criterion";
    case StopReason::converged: return "converged";
    case StopReason::pair_budget: return "pair_budget";
    case StopReason::depth_limit: return "depth_limit";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct Frontiers {
    std::vector<const Partition*> b;
    std::vector<const Partition*> r;
    std::vector<std::vector<const Partition*>> candidates;
};

Frontiers cut(std::span<const UncertainObject> db, const std::vector<std::size_t>& influence,
              const UncertainObject& b, const UncertainObject& r, int depth)
{
    Frontiers f;
    f.b = b.leaves_at_depth(depth);
    f.r = r.leaves_at_depth(depth);
    f.candidates.reserve(influence.size());
    for (std::size_t idx : influence) f.candidates.push_back(db[idx].leaves_at_depth(depth));
    return f;
}

bool grew(const Frontiers& before, const Frontiers& after)
{
    if (after.b.size() != before.b.size() || after.r.size() != before.r.size()) return true;
    for (std::size_t i = 0; i < before.candidates.size(); ++i) {
        if (after.candidates[i].size() != before.candidates[i].size()) return true;
    }
    return false;
}

DomCountDistribution evaluate(const Frontiers& f, const DominationClassification& cls,
                              std::size_t counts, const IdcaConfig& cfg)
{
    const std::size_t c = f.candidates.size();
    DistributionMixer mixer(c + 1);
    std::vector<BernoulliBounds> bounds(c);
    // Fixed pair order keeps the reduction deterministic.
    for (const Partition* bp : f.b) {
        for (const Partition* rp : f.r) {
            for (std::size_t i = 0; i < c; ++i) {
                bounds[i] = pdom_bounds(f.candidates[i], *bp, *rp, cfg.norm, cfg.criterion);
            }
            UGFPoly poly = ugf_expand(bounds, cfg.truncate_at);
            mixer.add(extract_bounds(poly, c), bp->mass * rp->mass);
        }
    }
    return shift_right(pad_to(mixer.finish(), counts), cls.complete_domination_count);
}

}  // namespace

IdcaResult idca(std::span<const UncertainObject> db, const UncertainObject& b,
                const UncertainObject& r, const IdcaConfig& config)
{
    if (config.max_depth < 1) throw Error("max depth must be >= 1");
    if (config.pair_budget < 1) throw Error("pair budget must be >= 1");

    IdcaResult out;
    out.classification = classify(db, b, r, config.norm, config.criterion);
    const std::size_t counts = out.classification.candidate_count() + 1;
    const auto& influence = out.classification.influence_objects;

    int depth = 1;
    Frontiers frontiers = cut(db, influence, b, r, depth);
    out.distribution = evaluate(frontiers, out.classification, counts, config);

    for (;;) {
        double u = uncertainty(out.distribution);
        out.uncertainty_trace.push_back(u);
        if (config.record_history) out.history.push_back(out.distribution);

        IterationState state{depth, out.iterations_run, &out.distribution, u};
        if (config.on_iteration) config.on_iteration(state);
        if (config.stop.should_stop(state)) {
            out.stop_reason = StopReason::criterion;
            break;
        }
        if (u == 0.0) {
            out.stop_reason = StopReason::converged;
            break;
        }
        if (depth >= config.max_depth) {
            out.stop_reason = StopReason::depth_limit;
            break;
        }
        Frontiers next = cut(db, influence, b, r, depth + 1);
        if (!grew(frontiers, next)) {
            out.stop_reason = StopReason::converged;
            break;
        }
        if (next.b.size() * next.r.size() > config.pair_budget) {
            out.stop_reason = StopReason::pair_budget;
            break;
        }
        frontiers = std::move(next);
        ++depth;
        ++out.iterations_run;
        out.distribution = evaluate(frontiers, out.classification, counts, config);
    }
    out.depth = depth;
    return out;
}

}  // namespace udom
