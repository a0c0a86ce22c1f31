#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udom/domination.hpp"

namespace udom {

/// Bounds on P(X = 1) for one Bernoulli variable.
using BernoulliBounds = ProbBounds;

/// Per-count lower/upper probability bounds, indexed by count.
struct DomCountDistribution {
    std::vector<double> lb;
    std::vector<double> ub;

    DomCountDistribution() = default;
    /// `size` counts with the uninformative bounds [lb_value, ub_value].
    explicit DomCountDistribution(std::size_t size, double lb_value = 0.0, double ub_value = 1.0)
        : lb(size, lb_value), ub(size, ub_value)
    {
    }

    std::size_t size() const { return lb.size(); }
    bool valid() const;
};

/// Exact PDF of a sum of independent Bernoulli variables via the generating
/// function prod(1 - p_i + p_i x). c[j] = P(sum = j).
std::vector<double> gf_exact(std::span<const double> probs);

/// Product of linear factors (a_i + b_i x); coefficients in ascending degree.
/// The factors need not be probability distributions.
std::vector<double> expand_linear(std::span<const std::pair<double, double>> factors);

/// Sparse bivariate polynomial sum c_{i,j} x^i y^j over uncertain Bernoulli
/// factors. x counts definite dominations, y counts undecided ones.
///
/// Terms are kept sorted by (i, j). With a truncation bound k, terms with
/// i >= k are dropped and y-degrees are capped at k - i (merging the
/// coefficients they collapse onto), which leaves every extracted bound for
/// counts below k unchanged.
class UGFPoly {
public:
    struct Term {
        int x_deg;
        int y_deg;
        double c;
    };

    UGFPoly() : terms_{{0, 0, 1.0}} {}
    explicit UGFPoly(std::optional<int> truncate_at);

    /// Multiplies in (lb x + (ub - lb) y + (1 - ub)).
    void multiply(const BernoulliBounds& b);

    std::span<const Term> terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    std::size_t factor_count() const { return factors_; }
    std::optional<int> truncation() const { return truncate_at_; }

    /// Coefficient of x^i y^j (0 if absent).
    double coefficient(int i, int j) const;
    double total_mass() const;

private:
    std::vector<Term> terms_;
    std::vector<Term> scratch_;
    std::size_t factors_ = 0;
    std::optional<int> truncate_at_;
};

UGFPoly ugf_expand(std::span<const BernoulliBounds> bounds,
                   std::optional<int> truncate_at = std::nullopt);

/// lb[k] = c_{k,0}; ub[k] = sum of c_{i,j} with i <= k <= i + j. Arrays have
/// n + 1 entries. For a truncated polynomial, counts >= k get [0, 1].
DomCountDistribution extract_bounds(const UGFPoly& poly, std::size_t n);

/// Bounds from two ordinary generating functions, one over (lb x + 1 - ub)
/// and one over (ub x + 1 - lb). Kept for comparison with the UGF route.
DomCountDistribution gf_bounds_plain(std::span<const BernoulliBounds> bounds);

/// Accumulates weighted distributions; finish() checks the weights sum to one.
class DistributionMixer {
public:
    explicit DistributionMixer(std::size_t size) : acc_(size, 0.0, 0.0) {}

    void add(const DomCountDistribution& d, double weight);
    DomCountDistribution finish(double tolerance = 1e-9) const;
    double weight_sum() const { return weight_sum_; }

private:
    DomCountDistribution acc_;
    double weight_sum_ = 0.0;
};

DomCountDistribution weighted_mix(
    std::span<const std::pair<DomCountDistribution, double>> parts);

/// Moves every entry up by `offset` counts; vacated counts become [0, 0].
/// Throws if an entry with nonzero upper bound would fall off the end.
DomCountDistribution shift_right(const DomCountDistribution& dist, std::size_t offset);

/// Copy padded with [0, 0] entries up to `size` counts.
DomCountDistribution pad_to(const DomCountDistribution& dist, std::size_t size);

}  // namespace udom
