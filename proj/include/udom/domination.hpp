#pragma once

#include <span>
#include <string>
#include <vector>

#include "udom/geometry.hpp"
#include "udom/model.hpp"

namespace udom {

/// A [lb, ub] interval on a probability.
struct ProbBounds {
    double lb = 0.0;
    double ub = 1.0;

    bool valid() const { return 0.0 <= lb && lb <= ub && ub <= 1.0; }
    double width() const { return ub - lb; }
};

/// Partition of the database (minus the target and the reference) with
/// respect to a target pair (B, R). Entries are indices into the database.
struct DominationClassification {
    std::size_t complete_domination_count = 0;
    std::vector<std::size_t> dominators;
    std::vector<std::size_t> influence_objects;
    std::vector<std::size_t> irrelevant;

    /// Number of objects that took part in the classification.
    std::size_t candidate_count() const
    {
        return complete_domination_count + influence_objects.size() + irrelevant.size();
    }
};

/// Splits `db` into complete dominators of `b` w.r.t. `r`, objects completely
/// dominated by `b`, and influence objects. Objects sharing the id of `b` or
/// `r` are excluded.
DominationClassification classify(std::span<const UncertainObject> db, const UncertainObject& b,
                                  const UncertainObject& r, NormOrder p = {},
                                  Criterion criterion = Criterion::optimal);

/// Bounds on the probability that an object whose current frontier is
/// `a_leaves` dominates the fixed partition `b_part` w.r.t. the fixed partition
/// `r_part`. Bounds are conditional on b lying in `b_part` and r in `r_part`;
/// aggregating over decompositions of b and r is the caller's job.
ProbBounds pdom_bounds(std::span<const Partition* const> a_leaves, const Partition& b_part,
                       const Partition& r_part, NormOrder p = {},
                       Criterion criterion = Criterion::optimal);

/// Convenience overload that cuts `a` at `depth` levels.
ProbBounds pdom_bounds(const UncertainObject& a, int depth, const Partition& b_part,
                       const Partition& r_part, NormOrder p = {},
                       Criterion criterion = Criterion::optimal);

}  // namespace udom
