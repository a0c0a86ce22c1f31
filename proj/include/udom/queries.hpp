#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "udom/domination.hpp"
#include "udom/genfunc.hpp"
#include "udom/idca.hpp"
#include "udom/model.hpp"

namespace udom {

struct KnnThreshold {
    int k = 1;
    double tau = 0.5;
};
struct RknnThreshold {
    int k = 1;
    double tau = 0.5;
};
struct InverseRank {};
struct ExpectedRank {};

using QueryPredicate = std::variant<KnnThreshold, RknnThreshold, InverseRank, ExpectedRank>;

enum class Decision { in, out, undecided };

std::string to_string(Decision d);

/// P(count < k) bounds: (sum_{i<k} lb[i], min(1, sum_{i<k} ub[i])). When k
/// exceeds every representable count the event is certain and (1, 1) is
/// returned.
ProbBounds knn_probability_bounds(const DomCountDistribution& dist, int k);

/// in iff lb > tau, out iff ub <= tau.
Decision threshold_decision(const ProbBounds& p, double tau);

/// Whether the predicate is already settled by `dist`. Threshold predicates
/// read the distribution of the object whose count is being bounded; rank
/// predicates are never settled early.
bool predicate_decided(const QueryPredicate& pred, const DomCountDistribution& dist);

struct ObjectAnswer {
    std::string id;
    Decision decision = Decision::undecided;
    ProbBounds probability;
    int iterations = 0;
    StopReason stop_reason = StopReason::criterion;
    std::size_t influence_objects = 0;
    double uncertainty = 0.0;
};

/// Answers ordered by database position.
struct QueryAnswer {
    std::vector<ObjectAnswer> objects;

    std::vector<std::string> result_ids() const;
};

/// Probabilistic threshold kNN: each object B is in iff P(DomCount(B, q) < k) > tau.
/// The predicate is folded into `config.stop`, and the UGF is truncated at k.
QueryAnswer pknn_query(std::span<const UncertainObject> db, const UncertainObject& q, int k,
                       double tau, const IdcaConfig& config = {});

/// Probabilistic threshold RkNN: B is in iff P(DomCount(q, B) < k) > tau,
/// i.e. fewer than k objects are closer to B than q is.
QueryAnswer prknn_query(std::span<const UncertainObject> db, const UncertainObject& q, int k,
                        double tau, const IdcaConfig& config = {});

/// Rank distribution bounds; entry i-1 bounds P(Rank = i), ranks 1..counts.
struct RankDistribution {
    DomCountDistribution rank;  // index 0 is rank 1
    IdcaResult engine;
};

RankDistribution inverse_ranking(std::span<const UncertainObject> db, const UncertainObject& b,
                                 const UncertainObject& r, const IdcaConfig& config = {});

struct RankInterval {
    double lb = 0.0;
    double ub = 0.0;
};

/// Tightest expected-rank interval supported by per-count bounds: start from
/// lb and place the free mass at the lowest (for lb) or highest (for ub)
/// ranks that still have room under ub.
RankInterval expected_rank_bounds(const DomCountDistribution& dist);

struct ExpectedRankEntry {
    std::string id;
    double lb = 0.0;
    double ub = 0.0;
    int iterations = 0;
};

/// Expected rank of every database object w.r.t. q, from DomCount(A, q).
std::vector<ExpectedRankEntry> expected_rank(std::span<const UncertainObject> db,
                                             const UncertainObject& q,
                                             const IdcaConfig& config = {});

}  // namespace udom
