#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "udom/geometry.hpp"
#include "udom/model.hpp"

namespace udom {

/// A domination-count PDF from one of the ground-truth engines.
struct ExactPdf {
    std::vector<double> pdf;
    std::string provenance;
    std::uint64_t worlds = 0;

    double total() const;
};

struct EnumerateOptions {
    NormOrder norm{};
    std::uint64_t world_budget = 10'000'000;
};

/// Possible-worlds enumeration: every joint choice of one sample per object
/// (target, reference and each counted object), weighted by the product of
/// sample weights, counting dominators by direct distance comparison.
/// Throws if the world count exceeds the budget.
ExactPdf enumerate_exact(std::span<const UncertainObject> db, const UncertainObject& b,
                         const UncertainObject& r, const EnumerateOptions& options = {});

struct McOptions {
    NormOrder norm{};
    /// Reference draws. 0 visits every reference sample once with its weight.
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
};

/// PDF of the count conditioned on one reference sample, with its weight in
/// the final average.
struct ConditionalPdf {
    std::size_t reference_sample = 0;
    double weight = 0.0;
    std::vector<double> pdf;
};

struct McResult {
    ExactPdf estimate;
    std::vector<ConditionalPdf> conditionals;
    std::uint64_t draws = 0;  // 0 when every reference sample was visited
};

/// Sampling baseline: draw reference samples; for each draw and each target
/// sample compute every object's exact domination probability from its
/// samples, combine them with the ordinary generating function, and average.
McResult mc_baseline(std::span<const UncertainObject> db, const UncertainObject& b,
                     const UncertainObject& r, const McOptions& options = {});

struct McThresholdEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error of P(count < k) over the reference draws. The
/// error is zero when the reference was enumerated rather than sampled.
McThresholdEstimate mc_threshold_estimate(const McResult& mc, int k);

}  // namespace udom
