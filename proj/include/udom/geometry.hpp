#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udom {

/// Error raised for malformed inputs (dimension mismatch, bad parameters).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool valid() const { return lo <= hi; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    double length() const { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box. Degenerate extents (lo == hi) are legal; a point is a Rect.
class Rect {
public:
    Rect() = default;
    explicit Rect(std::vector<Interval> dims);
    Rect(std::initializer_list<Interval> dims);

    static Rect point(std::span<const double> coords);

    std::size_t dims() const { return dims_.size(); }
    const Interval& operator[](std::size_t i) const { return dims_[i]; }
    std::span<const Interval> intervals() const { return dims_; }

    bool contains(const Rect& o) const;
    bool contains_point(std::span<const double> p) const;

    friend bool operator==(const Rect&, const Rect&) = default;

private:
    std::vector<Interval> dims_;
};

/// Exponent of the L_p norm. Distances are compared as p-th powers, never rooted.
struct NormOrder {
    double p = 2.0;

    NormOrder() = default;
    explicit NormOrder(double exponent);

    /// |x|^p, with the common exponents special-cased.
    double power(double x) const
    {
        x = std::fabs(x);
        if (p == 2.0) return x * x;
        if (p == 1.0) return x;
        return std::pow(x, p);
    }
};

enum class Criterion { optimal, minmax };

Criterion parse_criterion(const std::string& name);
std::string to_string(Criterion c);

double min_dist_1d(const Interval& a, double r);
double max_dist_1d(const Interval& a, double r);

/// p-th power of the L_p distance between two points.
double dist_pow(std::span<const double> x, std::span<const double> y, NormOrder p);

/// p-th powers of the smallest and largest L_p distance between two boxes.
double min_dist_pow(const Rect& a, const Rect& b, NormOrder p);
double max_dist_pow(const Rect& a, const Rect& b, NormOrder p);

/// True iff every point of `a` is strictly closer than every point of `b` to
/// every point of `r`. Evaluates, per dimension, the worst case over the two
/// endpoints of r's interval of MaxDist(a_i, r_i)^p - MinDist(b_i, r_i)^p and
/// requires the sum to be negative. Exact for boxes.
bool dominates_optimal(const Rect& a, const Rect& b, const Rect& r, NormOrder p = {});

/// The classic sufficient test MaxDist(a, r) < MinDist(b, r). Never fires where
/// dominates_optimal does not.
bool dominates_minmax(const Rect& a, const Rect& b, const Rect& r, NormOrder p = {});

bool dominates(Criterion c, const Rect& a, const Rect& b, const Rect& r, NormOrder p = {});

}  // namespace udom
