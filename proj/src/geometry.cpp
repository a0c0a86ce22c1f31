#include "udom/geometry.hpp"

#include <algorithm>

namespace udom {

namespace {

void require_same_dims(const Rect& a, const Rect& b, const Rect& r)
{
    if (a.dims() != b.dims() || a.dims() != r.dims()) {
        throw Error("dimension mismatch: " + std::to_string(a.dims()) + ", " +
                    std::to_string(b.dims()) + ", " + std::to_string(r.dims()));
    }
    if (a.dims() == 0) throw Error("rectangles must have at least one dimension");
}

}  // namespace

Rect::Rect(std::vector<Interval> dims) : dims_(std::move(dims))
{
    for (const auto& iv : dims_) {
        if (!iv.valid()) throw Error("invalid interval: lo > hi");
    }
}

Rect::Rect(std::initializer_list<Interval> dims) : Rect(std::vector<Interval>(dims)) {}

Rect Rect::point(std::span<const double> coords)
{
    std::vector<Interval> dims;
    dims.reserve(coords.size());
    for (double c : coords) dims.push_back({c, c});
    return Rect(std::move(dims));
}

bool Rect::contains(const Rect& o) const
{
    if (o.dims() != dims()) return false;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (!dims_[i].contains(o.dims_[i])) return false;
    }
    return true;
}

bool Rect::contains_point(std::span<const double> p) const
{
    if (p.size() != dims()) return false;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (!dims_[i].contains(p[i])) return false;
    }
    return true;
}

NormOrder::NormOrder(double exponent) : p(exponent)
{
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
        throw Error("norm exponent must be a finite value >= 1");
    }
}

Criterion parse_criterion(const std::string& name)
{
    if (name == "optimal") return Criterion::optimal;
    if (name == "minmax") return Criterion::minmax;
    throw Error("unknown criterion '" + name + "' (expected optimal or minmax)");
}

std::string to_string(Criterion c)
{
    return c == Criterion::optimal ? "optimal" : "minmax";
}

double min_dist_1d(const Interval& a, double r)
{
    if (r < a.lo) return a.lo - r;
    if (r > a.hi) return r - a.hi;
    return 0.0;
}

double max_dist_1d(const Interval& a, double r)
{
    return std::max(std::fabs(r - a.lo), std::fabs(r - a.hi));
}

double dist_pow(std::span<const double> x, std::span<const double> y, NormOrder p)
{
    if (x.size() != y.size()) throw Error("dimension mismatch between points");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += p.power(x[i] - y[i]);
    return s;
}

double min_dist_pow(const Rect& a, const Rect& b, NormOrder p)
{
    require_same_dims(a, b, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        double gap = std::max({0.0, b[i].lo - a[i].hi, a[i].lo - b[i].hi});
        s += p.power(gap);
    }
    return s;
}

double max_dist_pow(const Rect& a, const Rect& b, NormOrder p)
{
    require_same_dims(a, b, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        double span = std::max(std::fabs(a[i].hi - b[i].lo), std::fabs(b[i].hi - a[i].lo));
        s += p.power(span);
    }
    return s;
}

bool dominates_optimal(const Rect& a, const Rect& b, const Rect& r, NormOrder p)
{
    require_same_dims(a, b, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        double worst = -INFINITY;
        for (double ri : {r[i].lo, r[i].hi}) {
            double diff = p.power(max_dist_1d(a[i], ri)) - p.power(min_dist_1d(b[i], ri));
            worst = std::max(worst, diff);
        }
        sum += worst;
    }
    return sum < 0.0;
}

bool dominates_minmax(const Rect& a, const Rect& b, const Rect& r, NormOrder p)
{
    require_same_dims(a, b, r);
    return max_dist_pow(a, r, p) < min_dist_pow(b, r, p);
}

bool dominates(Criterion c, const Rect& a, const Rect& b, const Rect& r, NormOrder p)
{
    return c == Criterion::optimal ? dominates_optimal(a, b, r, p)
                                   : dominates_minmax(a, b, r, p);
}

}  // namespace udom
