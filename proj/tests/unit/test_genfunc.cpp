#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "udom/genfunc.hpp"

using namespace udom;

namespace {

std::vector<BernoulliBounds> random_bounds(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<BernoulliBounds> out;
    for (std::size_t i = 0; i < n; ++i) {
        double a = u(rng), b = u(rng);
        switch (rng() % 5) {
        case 0: out.push_back({a, a}); break;
        case 1: out.push_back({0.0, a}); break;
        case 2: out.push_back({a, 1.0}); break;
        default: out.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("gf_exact small example")
{
    std::vector<double> p{0.2, 0.1, 0.3};
    auto c = gf_exact(p);
    REQUIRE(c.size() == 4);
    // Hand expansion: 0.8*0.9*0.7, then one, two and three successes.
    CHECK(c[0] == doctest::Approx(0.504).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(0.126 + 0.056 + 0.216).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(0.014 + 0.054 + 0.024).epsilon(1e-12));
    CHECK(c[3] == doctest::Approx(0.006).epsilon(1e-12));
}

TEST_CASE("gf_exact of nothing")
{
    auto c = gf_exact({});
    REQUIRE(c.size() == 1);
    CHECK(c[0] == 1.0);
}

TEST_CASE("gf_exact agrees with subset enumeration")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n : {1u, 5u, 12u, 15u}) {
        std::vector<double> p(n);
        for (auto& x : p) x = u(rng);
        auto c = gf_exact(p);
        auto ref = testing::subset_pdf(p);
        REQUIRE(c.size() == ref.size());
        for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(c[k] - ref[k]) < 1e-12);
    }
}

TEST_CASE("UGF of two factors")
{
    // (0.2x + 0.5y + 0.3)(0.6x + 0.2y + 0.2), expanded by hand.
    std::vector<BernoulliBounds> b{{0.2, 0.7}, {0.6, 0.8}};
    auto poly = ugf_expand(b);
    CHECK(poly.term_count() == 6);
    CHECK(poly.coefficient(2, 0) == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(poly.coefficient(1, 1) == doctest::Approx(0.04 + 0.30).epsilon(1e-12));
    CHECK(poly.coefficient(1, 0) == doctest::Approx(0.04 + 0.18).epsilon(1e-12));
    CHECK(poly.coefficient(0, 2) == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(poly.coefficient(0, 1) == doctest::Approx(0.10 + 0.06).epsilon(1e-12));
    CHECK(poly.coefficient(0, 0) == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(poly.total_mass() == doctest::Approx(1.0));

    auto d = extract_bounds(poly, 2);
    REQUIRE(d.size() == 3);
    // Both certainly one: 0.2 * 0.6. Both possibly one: 0.7 * 0.8.
    CHECK(d.lb[2] == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(d.ub[2] == doctest::Approx(0.56).epsilon(1e-12));
    CHECK(d.lb[1] == doctest::Approx(0.22).epsilon(1e-12));
    CHECK(d.ub[1] == doctest::Approx(0.82).epsilon(1e-12));
    CHECK(d.lb[0] == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(d.ub[0] == doctest::Approx(0.32).epsilon(1e-12));
}

TEST_CASE("tight bounds collapse to the plain generating function")
{
    std::vector<BernoulliBounds> b{{0.2, 0.2}, {0.1, 0.1}, {0.3, 0.3}};
    auto poly = ugf_expand(b);
    for (const auto& t : poly.terms()) CHECK(t.y_deg == 0);
    auto d = extract_bounds(poly, 3);
    auto c = gf_exact(std::vector<double>{0.2, 0.1, 0.3});
    auto plain = gf_bounds_plain(b);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(d.lb[k] == doctest::Approx(c[k]).epsilon(1e-12));
        CHECK(d.ub[k] == doctest::Approx(c[k]).epsilon(1e-12));
        CHECK(plain.lb[k] == doctest::Approx(c[k]).epsilon(1e-12));
        CHECK(plain.ub[k] == doctest::Approx(c[k]).epsilon(1e-12));
    }
}

TEST_CASE("extracted bounds equal the {0,1,?} enumeration")
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        auto b = random_bounds(rng, 1 + rng() % 8);
        auto poly = ugf_expand(b);
        CHECK(poly.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
        auto d = extract_bounds(poly, b.size());
        auto ref = testing::resolution_bounds(b);
        for (std::size_t k = 0; k <= b.size(); ++k) {
            CHECK(std::abs(d.lb[k] - ref.lb[k]) < 1e-12);
            CHECK(std::abs(d.ub[k] - std::min(1.0, ref.ub[k])) < 1e-12);
        }
    }
}

TEST_CASE("any resolution of the bounds stays inside the extracted interval")
{
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        auto b = random_bounds(rng, 1 + rng() % 7);
        auto d = extract_bounds(ugf_expand(b), b.size());
        for (int s = 0; s < 20; ++s) {
            std::vector<double> q;
            for (const auto& x : b) {
                double pick = s == 0 ? x.lb : s == 1 ? x.ub : x.lb + u(rng) * (x.ub - x.lb);
                q.push_back(pick);
            }
            auto c = testing::subset_pdf(q);
            for (std::size_t k = 0; k < c.size(); ++k) {
                CHECK(c[k] >= d.lb[k] - 1e-12);
                CHECK(c[k] <= d.ub[k] + 1e-12);
            }
        }
    }
}

TEST_CASE("truncation leaves counts below k unchanged")
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; ++t) {
        auto b = random_bounds(rng, 10);
        auto full = extract_bounds(ugf_expand(b), b.size());
        for (int k : {1, 2, 3, 5}) {
            auto poly = ugf_expand(b, k);
            auto tr = extract_bounds(poly, b.size());
            for (int c = 0; c < k; ++c) {
                CHECK(std::abs(tr.lb[c] - full.lb[c]) < 1e-12);
                CHECK(std::abs(tr.ub[c] - full.ub[c]) < 1e-12);
            }
            for (const auto& term : poly.terms()) {
                CHECK(term.x_deg < k);
                CHECK(term.x_deg + term.y_deg <= k);
            }
        }
    }
}

TEST_CASE("truncated term count stays quadratic in k")
{
    std::mt19937_64 rng(15);
    auto b = random_bounds(rng, 60);
    for (int k : {1, 2, 3, 5, 8}) {
        UGFPoly poly(k);
        std::size_t cap = static_cast<std::size_t>(k * (k + 3) / 2);
        for (const auto& f : b) {
            poly.multiply(f);
            REQUIRE(poly.term_count() <= cap);
        }
    }
}

TEST_CASE("plain GF versus UGF")
{
    std::mt19937_64 rng(16);
    for (int t = 0; t < 300; ++t) {
        auto b = random_bounds(rng, 1 + rng() % 10);
        auto plain = gf_bounds_plain(b);
        auto ugf = extract_bounds(ugf_expand(b), b.size());
        for (std::size_t k = 0; k <= b.size(); ++k) {
            CHECK(std::abs(plain.lb[k] - ugf.lb[k]) < 1e-12);
            CHECK(plain.ub[k] >= ugf.ub[k] - 1e-12);
        }
    }
    std::vector<BernoulliBounds> two{{0.2, 0.7}, {0.6, 0.8}};
    auto plain = gf_bounds_plain(two);
    auto ugf = extract_bounds(ugf_expand(two), 2);
    CHECK(plain.ub[1] - ugf.ub[1] == doctest::Approx(0.5 * 0.2).epsilon(1e-12));
}

TEST_CASE("invalid bounds are rejected")
{
    std::vector<BernoulliBounds> bad{{0.6, 0.4}};
    CHECK_THROWS_AS(ugf_expand(bad), Error);
    CHECK_THROWS_AS(gf_bounds_plain(bad), Error);
    std::vector<BernoulliBounds> one{{0.1, 0.2}};
    CHECK_THROWS_AS(extract_bounds(ugf_expand(one), 0), Error);
}

TEST_CASE("weighted mixing")
{
    DomCountDistribution d(3);
    d.lb = {0.1, 0.2, 0.3};
    d.ub = {0.4, 0.5, 0.6};
    std::vector<std::pair<DomCountDistribution, double>> one{{d, 1.0}};
    auto m1 = weighted_mix(one);
    CHECK(m1.lb == d.lb);
    CHECK(m1.ub == d.ub);
    std::vector<std::pair<DomCountDistribution, double>> two{{d, 0.5}, {d, 0.5}};
    auto m2 = weighted_mix(two);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(m2.lb[k] == doctest::Approx(d.lb[k]));
        CHECK(m2.ub[k] == doctest::Approx(d.ub[k]));
    }
    std::vector<std::pair<DomCountDistribution, double>> short_weight{{d, 0.5}};
    CHECK_THROWS_AS(weighted_mix(short_weight), Error);
    std::vector<std::pair<DomCountDistribution, double>> ragged{{d, 0.5},
                                                                {DomCountDistribution(2), 0.5}};
    CHECK_THROWS_AS(weighted_mix(ragged), Error);
}

TEST_CASE("mixtures contain mixtures of exact PDFs")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        std::size_t parts = 1 + rng() % 4;
        std::vector<std::pair<DomCountDistribution, double>> mix;
        std::vector<double> exact(n + 1, 0.0);
        double wsum = 0.0;
        std::vector<double> w(parts);
        for (auto& x : w) wsum += (x = 0.1 + u(rng));
        for (std::size_t p = 0; p < parts; ++p) {
            auto b = random_bounds(rng, n);
            mix.emplace_back(extract_bounds(ugf_expand(b), n), w[p] / wsum);
            std::vector<double> q;
            for (const auto& x : b) q.push_back(x.lb + u(rng) * (x.ub - x.lb));
            auto c = testing::subset_pdf(q);
            for (std::size_t k = 0; k <= n; ++k) exact[k] += c[k] * w[p] / wsum;
        }
        auto m = weighted_mix(mix);
        CHECK(m.valid());
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(exact[k] >= m.lb[k] - 1e-12);
            CHECK(exact[k] <= m.ub[k] + 1e-12);
        }
    }
}

TEST_CASE("shift right")
{
    DomCountDistribution d(5, 0.0, 0.0);
    d.lb[0] = d.ub[0] = 1.0;
    auto same = shift_right(d, 0);
    CHECK(same.lb == d.lb);
    auto s = shift_right(d, 3);
    CHECK(s.lb[3] == 1.0);
    CHECK(s.ub[3] == 1.0);
    CHECK(s.ub[0] == 0.0);
    CHECK(s.size() == 5);
    CHECK_THROWS_AS(shift_right(d, 5), Error);

    auto padded = pad_to(d, 8);
    CHECK(padded.size() == 8);
    CHECK(padded.ub[7] == 0.0);
}
