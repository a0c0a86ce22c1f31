#include "udom/genfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace udom {

bool DomCountDistribution::valid() const
{
    if (lb.size() != ub.size()) return false;
    for (std::size_t k = 0; k < lb.size(); ++k) {
        if (!(0.0 <= lb[k] && lb[k] <= ub[k] && ub[k] <= 1.0)) return false;
    }
    return true;
}

std::vector<double> expand_linear(std::span<const std::pair<double, double>> factors)
{
    std::vector<double> c{1.0};
    c.reserve(factors.size() + 1);
    for (const auto& [a, b] : factors) {
        c.push_back(0.0);
        for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j] * a + c[j - 1] * b;
        c[0] *= a;
    }
    return c;
}

std::vector<double> gf_exact(std::span<const double> probs)
{
    std::vector<std::pair<double, double>> factors;
    factors.reserve(probs.size());
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error("probability outside [0, 1]");
        factors.emplace_back(1.0 - p, p);
    }
    return expand_linear(factors);
}

// ---------------------------------------------------------------------------
// UGFPoly

UGFPoly::UGFPoly(std::optional<int> truncate_at) : UGFPoly()
{
    if (truncate_at && *truncate_at < 1) throw Error("truncation bound must be >= 1");
    truncate_at_ = truncate_at;
}

void UGFPoly::multiply(const BernoulliBounds& b)
{
    if (!b.valid()) throw Error("invalid Bernoulli bounds");
    const double yes = b.lb;
    const double unknown = b.ub - b.lb;
    const double no = 1.0 - b.ub;
    const int k = truncate_at_.value_or(0);
    const bool truncated = truncate_at_.has_value();

    // Three shifted copies of the (sorted) term list, each still sorted after
    // capping, merged in one pass.
    struct Source {
        int dx, dy;
        double f;
        std::size_t pos = 0;
    };
    Source src[3] = {{0, 0, no}, {0, 1, unknown}, {1, 0, yes}};

    auto key_of = [&](const Source& s, const Term& t, int& i, int& j) {
        i = t.x_deg + s.dx;
        j = t.y_deg + s.dy;
        if (truncated) {
            if (i >= k) return false;
            j = std::min(j, k - i);
        }
        return true;
    };

    scratch_.clear();
    scratch_.reserve(terms_.size() * 2 + 1);
    for (;;) {
        int best = -1, bi = 0, bj = 0;
        for (int s = 0; s < 3; ++s) {
            Source& so = src[s];
            if (so.f == 0.0) continue;
            int i = 0, j = 0;
            while (so.pos < terms_.size() && !key_of(so, terms_[so.pos], i, j)) {
                so.pos = terms_.size();  // dropped terms form a suffix
            }
            if (so.pos >= terms_.size()) continue;
            if (best < 0 || i < bi || (i == bi && j < bj)) {
                best = s;
                bi = i;
                bj = j;
            }
        }
        if (best < 0) break;
        Source& so = src[best];
        double c = terms_[so.pos].c * so.f;
        ++so.pos;
        if (!scratch_.empty() && scratch_.back().x_deg == bi && scratch_.back().y_deg == bj) {
            scratch_.back().c += c;
        } else {
            scratch_.push_back({bi, bj, c});
        }
    }
    std::swap(terms_, scratch_);
    ++factors_;
}

double UGFPoly::coefficient(int i, int j) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{i, j},
                               [](const Term& t, const std::pair<int, int>& key) {
                                   return t.x_deg < key.first ||
                                          (t.x_deg == key.first && t.y_deg < key.second);
                               });
    if (it != terms_.end() && it->x_deg == i && it->y_deg == j) return it->c;
    return 0.0;
}

double UGFPoly::total_mass() const
{
    double s = 0.0;
    for (const Term& t : terms_) s += t.c;
    return s;
}

UGFPoly ugf_expand(std::span<const BernoulliBounds> bounds, std::optional<int> truncate_at)
{
    UGFPoly poly(truncate_at);
    for (const auto& b : bounds) poly.multiply(b);
    return poly;
}

DomCountDistribution extract_bounds(const UGFPoly& poly, std::size_t n)
{
    if (n < poly.factor_count()) {
        throw Error("extract_bounds: " + std::to_string(poly.factor_count()) +
                    " factors do not fit in " + std::to_string(n + 1) + " counts");
    }
    DomCountDistribution out(n + 1, 0.0, 0.0);
    std::size_t limit = n + 1;
    if (auto k = poly.truncation(); k && static_cast<std::size_t>(*k) < limit) {
        limit = static_cast<std::size_t>(*k);
        for (std::size_t c = limit; c <= n; ++c) out.ub[c] = 1.0;
    }
    for (const auto& t : poly.terms()) {
        auto i = static_cast<std::size_t>(t.x_deg);
        if (i >= limit) continue;
        if (t.y_deg == 0) out.lb[i] = t.c;
        std::size_t top = std::min(i + static_cast<std::size_t>(t.y_deg), limit - 1);
        for (std::size_t c = i; c <= top; ++c) out.ub[c] += t.c;
    }
    for (std::size_t c = 0; c < limit; ++c) {
        out.ub[c] = std::min(out.ub[c], 1.0);
        out.lb[c] = std::min(out.lb[c], out.ub[c]);
    }
    return out;
}

DomCountDistribution gf_bounds_plain(std::span<const BernoulliBounds> bounds)
{
    std::vector<std::pair<double, double>> lower, upper;
    lower.reserve(bounds.size());
    upper.reserve(bounds.size());
    for (const auto& b : bounds) {
        if (!b.valid()) throw Error("invalid Bernoulli bounds");
        lower.emplace_back(1.0 - b.ub, b.lb);
        upper.emplace_back(1.0 - b.lb, b.ub);
    }
    DomCountDistribution out;
    out.lb = expand_linear(lower);
    // Not clamped: the raw coefficients are what the comparison with the UGF
    // route is about, and they can exceed one.
    out.ub = expand_linear(upper);
    return out;
}

// ---------------------------------------------------------------------------
// Mixing and shifting

void DistributionMixer::add(const DomCountDistribution& d, double weight)
{
    if (d.size() != acc_.size()) throw Error("weighted_mix: distribution lengths differ");
    if (!(weight >= 0.0)) throw Error("weighted_mix: negative weight");
    for (std::size_t k = 0; k < d.size(); ++k) {
        acc_.lb[k] += d.lb[k] * weight;
        acc_.ub[k] += d.ub[k] * weight;
    }
    weight_sum_ += weight;
}

DomCountDistribution DistributionMixer::finish(double tolerance) const
{
    if (std::fabs(weight_sum_ - 1.0) > tolerance) {
        throw Error("weighted_mix: weights sum to " + std::to_string(weight_sum_) + ", not 1");
    }
    DomCountDistribution out = acc_;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.ub[k] = std::min(out.ub[k], 1.0);
        out.lb[k] = std::min(out.lb[k], out.ub[k]);
    }
    return out;
}

DomCountDistribution weighted_mix(std::span<const std::pair<DomCountDistribution, double>> parts)
{
    if (parts.empty()) throw Error("weighted_mix: no parts");
    DistributionMixer mixer(parts.front().first.size());
    for (const auto& [d, w] : parts) mixer.add(d, w);
    return mixer.finish();
}

DomCountDistribution shift_right(const DomCountDistribution& dist, std::size_t offset)
{
    const std::size_t n = dist.size();
    for (std::size_t k = (offset >= n ? 0 : n - offset); k < n; ++k) {
        if (dist.ub[k] > 0.0) {
            throw Error("shift_right: shifting by " + std::to_string(offset) +
                        " overflows a distribution over " + std::to_string(n) + " counts");
        }
    }
    DomCountDistribution out(n, 0.0, 0.0);
    for (std::size_t k = 0; k + offset < n; ++k) {
        out.lb[k + offset] = dist.lb[k];
        out.ub[k + offset] = dist.ub[k];
    }
    return out;
}

DomCountDistribution pad_to(const DomCountDistribution& dist, std::size_t size)
{
    if (size < dist.size()) throw Error("pad_to: target shorter than distribution");
    DomCountDistribution out = dist;
    out.lb.resize(size, 0.0);
    out.ub.resize(size, 0.0);
    return out;
}

}  // namespace udom
