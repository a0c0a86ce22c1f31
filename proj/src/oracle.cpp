#include "udom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "udom/genfunc.hpp"

namespace udom {

double ExactPdf::total() const
{
    double s = 0.0;
    for (double x : pdf) s += x;
    return s;
}

namespace {

std::vector<const UncertainObject*> counted_objects(std::span<const UncertainObject> db,
                                                    const UncertainObject& b,
                                                    const UncertainObject& r)
{
    if (b.dims() != r.dims()) throw Error("target and reference dimensionality differ");
    std::vector<const UncertainObject*> out;
    for (const auto& a : db) {
        if (a.id() == b.id() || a.id() == r.id()) continue;
        if (a.dims() != b.dims()) throw Error("object '" + a.id() + "' has wrong dimensionality");
        out.push_back(&a);
    }
    return out;
}

struct WorldWalker {
    const std::vector<std::vector<char>>& closer;
    const std::vector<const UncertainObject*>& objs;
    std::vector<double>& pdf;
    std::uint64_t worlds = 0;

    void walk(std::size_t j, double weight, std::size_t count)
    {
        if (j == objs.size()) {
            pdf[count] += weight;
            ++worlds;
            return;
        }
        const UncertainObject& a = *objs[j];
        for (std::size_t s = 0; s < a.sample_count(); ++s) {
            walk(j + 1, weight * a.weight(s), count + (closer[j][s] ? 1 : 0));
        }
    }
};

}  // namespace

ExactPdf enumerate_exact(std::span<const UncertainObject> db, const UncertainObject& b,
                         const UncertainObject& r, const EnumerateOptions& options)
{
    auto objs = counted_objects(db, b, r);

    std::uint64_t worlds = b.sample_count();
    auto grow = [&](std::uint64_t n) {
        if (worlds > options.world_budget / n) {
            throw Error("enumerate_exact: world count exceeds budget of " +
                        std::to_string(options.world_budget));
        }
        worlds *= n;
    };
    grow(r.sample_count());
    for (const auto* a : objs) grow(a->sample_count());
    if (worlds > options.world_budget) {
        throw Error("enumerate_exact: world count exceeds budget of " +
                    std::to_string(options.world_budget));
    }

    ExactPdf out;
    out.pdf.assign(objs.size() + 1, 0.0);
    std::vector<std::vector<char>> closer(objs.size());
    for (std::size_t bs = 0; bs < b.sample_count(); ++bs) {
        for (std::size_t rs = 0; rs < r.sample_count(); ++rs) {
            const double b_dist = dist_pow(b.sample(bs), r.sample(rs), options.norm);
            for (std::size_t j = 0; j < objs.size(); ++j) {
                const UncertainObject& a = *objs[j];
                closer[j].resize(a.sample_count());
                for (std::size_t s = 0; s < a.sample_count(); ++s) {
                    closer[j][s] = dist_pow(a.sample(s), r.sample(rs), options.norm) < b_dist;
                }
            }
            WorldWalker walker{closer, objs, out.pdf};
            walker.walk(0, b.weight(bs) * r.weight(rs), 0);
            out.worlds += walker.worlds;
        }
    }
    out.provenance = "enumerated " + std::to_string(out.worlds) + " possible worlds";
    return out;
}

McResult mc_baseline(std::span<const UncertainObject> db, const UncertainObject& b,
                     const UncertainObject& r, const McOptions& options)
{
    auto objs = counted_objects(db, b, r);

    // Reference sample -> weight in the average.
    std::map<std::size_t, double> draws;
    if (options.samples == 0) {
        for (std::size_t s = 0; s < r.sample_count(); ++s) draws[s] = r.weight(s);
    } else {
        std::mt19937_64 rng(options.seed);
        std::vector<double> cdf(r.sample_count());
        double acc = 0.0;
        for (std::size_t s = 0; s < r.sample_count(); ++s) cdf[s] = acc += r.weight(s);
        std::map<std::size_t, std::uint64_t> hits;
        for (std::uint64_t d = 0; d < options.samples; ++d) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            std::size_t s = std::min<std::size_t>(
                static_cast<std::size_t>(it - cdf.begin()), r.sample_count() - 1);
            ++hits[s];
        }
        for (const auto& [s, n] : hits) {
            draws[s] = static_cast<double>(n) / static_cast<double>(options.samples);
        }
    }

    McResult out;
    out.draws = options.samples;
    out.estimate.pdf.assign(objs.size() + 1, 0.0);
    std::vector<double> probs(objs.size());
    for (const auto& [rs, weight] : draws) {
        ConditionalPdf cond{rs, weight, std::vector<double>(objs.size() + 1, 0.0)};
        for (std::size_t bs = 0; bs < b.sample_count(); ++bs) {
            const double b_dist = dist_pow(b.sample(bs), r.sample(rs), options.norm);
            for (std::size_t j = 0; j < objs.size(); ++j) {
                const UncertainObject& a = *objs[j];
                double p = 0.0;
                for (std::size_t s = 0; s < a.sample_count(); ++s) {
                    if (dist_pow(a.sample(s), r.sample(rs), options.norm) < b_dist) {
                        p += a.weight(s);
                    }
                }
                probs[j] = std::clamp(p, 0.0, 1.0);
            }
            auto pdf = gf_exact(probs);
            for (std::size_t c = 0; c < pdf.size(); ++c) cond.pdf[c] += b.weight(bs) * pdf[c];
        }
        for (std::size_t c = 0; c < cond.pdf.size(); ++c) {
            out.estimate.pdf[c] += weight * cond.pdf[c];
        }
        out.conditionals.push_back(std::move(cond));
    }
    out.estimate.worlds = draws.size();
    out.estimate.provenance =
        options.samples == 0
            ? "averaged over all " + std::to_string(r.sample_count()) + " reference samples"
            : "averaged over " + std::to_string(options.samples) + " reference draws";
    return out;
}

McThresholdEstimate mc_threshold_estimate(const McResult& mc, int k)
{
    if (k < 1) throw Error("k must be >= 1");
    double mean = 0.0, second = 0.0;
    for (const auto& cond : mc.conditionals) {
        double y = 0.0;
        for (std::size_t c = 0; c < cond.pdf.size() && c < static_cast<std::size_t>(k); ++c) {
            y += cond.pdf[c];
        }
        mean += cond.weight * y;
        second += cond.weight * y * y;
    }
    McThresholdEstimate out;
    out.mean = mean;
    if (mc.draws > 0) {
        double var = std::max(0.0, second - mean * mean);
        out.std_error = std::sqrt(var / static_cast<double>(mc.draws));
    }
    return out;
}

}  // namespace udom
