#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "udom/idca.hpp"
#include "udom/model.hpp"

namespace udom {

struct BenchConfig {
    /// Generated when `dataset_path` is empty.
    SyntheticConfig synthetic{10000, 2, 0.004, 100, 1};
    std::string dataset_path;
    /// Target = object with the m-th smallest MinDist to the reference.
    std::size_t target_rank = 10;
    std::size_t repetitions = 20;
    std::uint64_t seed = 1;
    IdcaConfig engine{};
    /// Reference-sample counts for the sampling baseline (runtime bench).
    std::vector<std::uint64_t> mc_samples{100, 1000};
    /// Predicate queries (runtime bench): kNN with these k and tau values.
    std::vector<int> predicate_k;
    std::vector<double> predicate_tau;
    /// Database sizes for the scaling sweep (runtime bench); empty = skip.
    std::vector<std::size_t> scaling_sizes;
};

/// One chosen (reference, target) pair.
struct BenchQuery {
    std::size_t reference = 0;
    std::size_t target = 0;
};

/// Reference drawn uniformly from the database; target is the object with the
/// configured MinDist rank to it (excluding the reference).
std::vector<BenchQuery> select_queries(const std::vector<UncertainObject>& db,
                                       const BenchConfig& config);

struct PruningSummary {
    std::size_t queries = 0;
    double mean_candidates_optimal = 0.0;
    double mean_candidates_minmax = 0.0;
    /// 1 - optimal / minmax, in percent.
    double candidate_reduction_percent = 0.0;
};

/// CSV header: query,reference,target,criterion,candidate_count,iteration,uncertainty
PruningSummary bench_pruning(const std::vector<UncertainObject>& db, const BenchConfig& config,
                             std::ostream& csv);

/// CSV header: query,method,param,wall_ms,uncertainty_or_error,decided_iteration
void bench_runtime(const std::vector<UncertainObject>& db, const BenchConfig& config,
                   std::ostream& csv);

std::vector<UncertainObject> bench_dataset(const BenchConfig& config);

}  // namespace udom
