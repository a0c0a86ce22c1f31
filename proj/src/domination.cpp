#include "udom/domination.hpp"

#include <algorithm>

namespace udom {

DominationClassification classify(std::span<const UncertainObject> db, const UncertainObject& b,
                                  const UncertainObject& r, NormOrder p, Criterion criterion)
{
    if (b.dims() != r.dims()) throw Error("target and reference dimensionality differ");
    DominationClassification out;
    for (std::size_t i = 0; i < db.size(); ++i) {
        const UncertainObject& a = db[i];
        if (a.id() == b.id() || a.id() == r.id()) continue;
        if (a.dims() != b.dims()) {
            throw Error("object '" + a.id() + "' has dimensionality " + std::to_string(a.dims()) +
                        ", expected " + std::to_string(b.dims()));
        }
        if (dominates(criterion, a.mbr(), b.mbr(), r.mbr(), p)) {
            ++out.complete_domination_count;
            out.dominators.push_back(i);
        } else if (dominates(criterion, b.mbr(), a.mbr(), r.mbr(), p)) {
            out.irrelevant.push_back(i);
        } else {
            out.influence_objects.push_back(i);
        }
    }
    return out;
}

ProbBounds pdom_bounds(std::span<const Partition* const> a_leaves, const Partition& b_part,
                       const Partition& r_part, NormOrder p, Criterion criterion)
{
    double dominating = 0.0;
    double dominated = 0.0;
    for (const Partition* a : a_leaves) {
        if (dominates(criterion, a->rect, b_part.rect, r_part.rect, p)) {
            dominating += a->mass;
        } else if (dominates(criterion, b_part.rect, a->rect, r_part.rect, p)) {
            dominated += a->mass;
        }
    }
    ProbBounds out;
    out.lb = std::clamp(dominating, 0.0, 1.0);
    out.ub = std::clamp(1.0 - dominated, out.lb, 1.0);
    return out;
}

ProbBounds pdom_bounds(const UncertainObject& a, int depth, const Partition& b_part,
                       const Partition& r_part, NormOrder p, Criterion criterion)
{
    auto leaves = a.leaves_at_depth(depth);
    return pdom_bounds(leaves, b_part, r_part, p, criterion);
}

}  // namespace udom
