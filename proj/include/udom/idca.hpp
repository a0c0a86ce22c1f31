#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udom/domination.hpp"
#include "udom/genfunc.hpp"
#include "udom/model.hpp"

namespace udom {

/// Sum over counts of ub - lb; zero iff the bounds are tight everywhere.
double uncertainty(const DomCountDistribution& dist);

/// Snapshot handed to stop criteria after each iteration.
struct IterationState {
    int depth = 1;       // decomposition depth just evaluated (root = 1)
    int iteration = 0;   // 0 = complete-domination pass at full MBRs
    const DomCountDistribution* distribution = nullptr;
    double uncertainty = 0.0;
};

/// Composable stop rule for the refinement loop.
class StopCriterion {
public:
    using Predicate = std::function<bool(const DomCountDistribution&)>;

    static StopCriterion max_depth(int h);
    static StopCriterion uncertainty_below(double epsilon);
    /// Stops once `decided` reports that the query predicate is settled.
    static StopCriterion predicate_decided(Predicate decided);
    static StopCriterion never();

    friend StopCriterion operator&&(StopCriterion a, StopCriterion b);
    friend StopCriterion operator||(StopCriterion a, StopCriterion b);

    bool should_stop(const IterationState& s) const;

private:
    enum class Kind { max_depth, uncertainty_below, predicate, never, all, any };

    struct Node {
        Kind kind;
        int depth = 0;
        double epsilon = 0.0;
        Predicate decided;
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit StopCriterion(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static bool eval(const Node& n, const IterationState& s);

    std::shared_ptr<const Node> node_;
};

enum class StopReason { criterion, converged, pair_budget, depth_limit };

std::string to_string(StopReason r);

struct IdcaConfig {
    NormOrder norm{};
    Criterion criterion = Criterion::optimal;
    StopCriterion stop = StopCriterion::max_depth(10);
    /// Hard ceiling on kd-tree height regardless of the stop criterion.
    int max_depth = 10;
    /// Stop before an iteration whose (B', R') pair count would exceed this.
    std::size_t pair_budget = std::size_t{1} << 16;
    /// Only counts below this are needed (kNN-style predicates).
    std::optional<int> truncate_at;
    bool record_history = false;
    /// Called after every iteration's distribution is available.
    std::function<void(const IterationState&)> on_iteration;
};

struct IdcaResult {
    DomCountDistribution distribution;
    int iterations_run = 0;
    int depth = 1;
    StopReason stop_reason = StopReason::criterion;
    std::vector<double> uncertainty_trace;
    std::vector<DomCountDistribution> history;  // filled when record_history is set
    DominationClassification classification;
};

/// Iterative domination count approximation for target `b` and reference
/// `r`. Objects sharing an id with `b` or `r` do not count. Distributions
/// cover counts 0 .. (number of remaining objects).
///
/// Iteration t evaluates every object at decomposition depth t + 1. Per
/// iteration, each pair (B', R') of target and reference leaves yields
/// per-candidate bounds that are independent given the pair; their UGF bounds
/// are mixed with weight P(B') P(R') and shifted by the complete dominators.
IdcaResult idca(std::span<const UncertainObject> db, const UncertainObject& b,
                const UncertainObject& r, const IdcaConfig& config = {});

}  // namespace udom
