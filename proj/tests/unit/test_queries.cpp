#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "udom/oracle.hpp"
#include "udom/queries.hpp"

using namespace udom;

namespace {

DomCountDistribution ugf_example()
{
    DomCountDistribution d(3);
    d.lb = {0.10, 0.34, 0.12};
    d.ub = {0.32, 0.78, 0.40};
    return d;
}

DomCountDistribution tight(const std::vector<double>& pdf)
{
    DomCountDistribution d(pdf.size());
    d.lb = d.ub = pdf;
    return d;
}

double exact_rank(const std::vector<double>& pdf)
{
    double e = 0.0;
    for (std::size_t i = 0; i < pdf.size(); ++i) e += pdf[i] * static_cast<double>(i + 1);
    return e;
}

}  // namespace

TEST_CASE("kNN probability bounds")
{
    auto p = knn_probability_bounds(ugf_example(), 2);
    CHECK(p.lb == doctest::Approx(0.44).epsilon(1e-12));
    CHECK(p.ub == 1.0);

    auto c = tight(gf_exact(std::vector<double>{0.2, 0.1, 0.3}));
    auto q = knn_probability_bounds(c, 2);
    CHECK(q.lb == doctest::Approx(c.lb[0] + c.lb[1]).epsilon(1e-12));
    CHECK(q.ub == doctest::Approx(0.902).epsilon(1e-12));

    auto all = knn_probability_bounds(ugf_example(), 3);
    CHECK(all.lb == 1.0);
    CHECK(all.ub == 1.0);
    CHECK_THROWS_AS(knn_probability_bounds(ugf_example(), 0), Error);
}

TEST_CASE("threshold decisions")
{
    CHECK(threshold_decision({0.6, 0.9}, 0.5) == Decision::in);
    CHECK(threshold_decision({0.1, 0.5}, 0.5) == Decision::out);
    CHECK(threshold_decision({0.4, 0.6}, 0.5) == Decision::undecided);
    CHECK(threshold_decision({0.0, 0.0}, 0.0) == Decision::out);
    CHECK(threshold_decision({0.1, 0.3}, 0.0) == Decision::in);
    CHECK(to_string(Decision::undecided) == "undecided");
    CHECK(predicate_decided(KnnThreshold{2, 0.3}, ugf_example()));
    CHECK_FALSE(predicate_decided(KnnThreshold{2, 0.5}, ugf_example()));
    CHECK_FALSE(predicate_decided(ExpectedRank{}, ugf_example()));
}

TEST_CASE("singleton and pair databases")
{
    std::vector<UncertainObject> db{build_object("only", {{{0, 0}, 1}, {{1, 1}, 1}})};
    auto q = build_object("q", {{{3, 3}, 1}, {{4, 2}, 1}});
    auto ans = pknn_query(db, q, 1, 0.99);
    REQUIRE(ans.objects.size() == 1);
    CHECK(ans.objects[0].decision == Decision::in);
    CHECK(ans.result_ids() == std::vector<std::string>{"only"});

    std::vector<UncertainObject> pair{db[0], q};
    auto rk = prknn_query(pair, q, 1, 0.99);
    REQUIRE(rk.objects.size() == 1);
    CHECK(rk.objects[0].decision == Decision::in);
    CHECK(rk.objects[0].probability.lb == 1.0);

    CHECK_THROWS_AS(pknn_query(db, q, 0, 0.5), Error);
    CHECK_THROWS_AS(pknn_query(db, q, 1, 1.5), Error);
}

TEST_CASE("reverse kNN with k = |D| always qualifies")
{
    std::mt19937_64 rng(41);
    auto inst = testing::random_instance(rng, 6, 3);
    auto q = inst.db[0];
    auto ans = prknn_query(inst.db, q, static_cast<int>(inst.db.size()), 1.0);
    for (const auto& o : ans.objects) {
        CHECK(o.probability.lb == 1.0);
        CHECK(o.probability.ub == 1.0);
    }
}

TEST_CASE("threshold queries agree with exact probabilities")
{
    std::mt19937_64 rng(42);
    int decided = 0;
    for (int t = 0; t < 15; ++t) {
        auto inst = testing::random_instance(rng, 7, 4);
        const auto& q = inst.r();
        for (int k : {1, 2, 3}) {
            for (double tau : {0.2, 0.5, 0.8}) {
                auto kn = pknn_query(inst.db, q, k, tau);
                auto rk = prknn_query(inst.db, q, k, tau);
                std::size_t i = 0;
                for (const auto& b : inst.db) {
                    if (b.id() == q.id()) continue;
                    auto pk = testing::worlds_pdf(inst.db, b, q);
                    auto pr = testing::worlds_pdf(inst.db, q, b);
                    double p_knn = 0.0, p_rknn = 0.0;
                    for (int c = 0; c < k; ++c) {
                        if (c < static_cast<int>(pk.size())) p_knn += pk[c];
                        if (c < static_cast<int>(pr.size())) p_rknn += pr[c];
                    }
                    if (std::abs(p_knn - tau) > 1e-9) {
                        CHECK(kn.objects[i].decision == (p_knn > tau ? Decision::in : Decision::out));
                        ++decided;
                    }
                    if (std::abs(p_rknn - tau) > 1e-9) {
                        CHECK(rk.objects[i].decision ==
                              (p_rknn > tau ? Decision::in : Decision::out));
                    }
                    ++i;
                }
            }
        }
    }
    CHECK(decided > 100);
}

TEST_CASE("predicate stopping returns the full-depth decision")
{
    std::mt19937_64 rng(43);
    int early = 0;
    for (int t = 0; t < 20; ++t) {
        auto inst = testing::random_instance(rng, 8, 8);
        int k = 1 + static_cast<int>(rng() % 3);
        double tau = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        auto fast = pknn_query(inst.db, inst.r(), k, tau);
        IdcaConfig full;
        full.stop = StopCriterion::never();
        std::size_t i = 0;
        for (const auto& b : inst.db) {
            if (b.id() == inst.r().id()) continue;
            auto res = idca(inst.db, b, inst.r(), full);
            auto slow = threshold_decision(knn_probability_bounds(res.distribution, k), tau);
            if (fast.objects[i].decision != Decision::undecided) {
                CHECK(fast.objects[i].decision == slow);
            }
            if (fast.objects[i].stop_reason == StopReason::criterion) ++early;
            ++i;
        }
    }
    CHECK(early > 0);
}

TEST_CASE("inverse ranking")
{
    auto r = certain_object("r", {0.0, 0.0});
    std::vector<UncertainObject> db{certain_object("a", {0.1, 0.0}),
                                    certain_object("c", {0.0, 0.2}),
                                    build_object("b", {{{3, 3}, 1}, {{4, 4}, 1}})};
    auto res = inverse_ranking(db, db[2], r);
    REQUIRE(res.rank.size() == 3);
    CHECK(res.rank.lb[2] == 1.0);
    CHECK(res.rank.ub[0] == 0.0);

    std::mt19937_64 rng(44);
    for (int t = 0; t < 20; ++t) {
        auto inst = testing::random_instance(rng, 6, 4);
        auto exact = testing::worlds_pdf(inst.db, inst.b(), inst.r());
        auto ir = inverse_ranking(inst.db, inst.b(), inst.r());
        for (std::size_t i = 0; i < exact.size(); ++i) {
            CHECK(std::abs(ir.rank.lb[i] - exact[i]) < 1e-9);
            CHECK(std::abs(ir.rank.ub[i] - exact[i]) < 1e-9);
        }
    }
}

TEST_CASE("expected rank bounds")
{
    auto c = tight(gf_exact(std::vector<double>{0.2, 0.1, 0.3}));
    auto e = expected_rank_bounds(c);
    double ref = exact_rank(testing::subset_pdf(std::vector<double>{0.2, 0.1, 0.3}));
    CHECK(ref == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(e.lb == doctest::Approx(ref).epsilon(1e-12));
    CHECK(e.ub == doctest::Approx(ref).epsilon(1e-12));

    auto zero = tight({1.0, 0.0, 0.0});
    CHECK(expected_rank_bounds(zero).lb == 1.0);
    CHECK(expected_rank_bounds(zero).ub == 1.0);

    auto loose = expected_rank_bounds(DomCountDistribution(4));
    CHECK(loose.lb == 1.0);
    CHECK(loose.ub == 4.0);

    auto ex = expected_rank_bounds(ugf_example());
    CHECK(ex.lb <= ex.ub);
    CHECK(ex.lb >= 1.0);
    CHECK(ex.ub <= 3.0);
}

TEST_CASE("expected rank contains the exact value at every depth")
{
    std::mt19937_64 rng(45);
    for (int t = 0; t < 15; ++t) {
        auto inst = testing::random_instance(rng, 6, 4);
        const auto& q = inst.r();
        for (int depth : {1, 2, 10}) {
            IdcaConfig cfg;
            cfg.stop = StopCriterion::max_depth(depth);
            auto ranks = expected_rank(inst.db, q, cfg);
            std::size_t i = 0;
            for (const auto& a : inst.db) {
                if (a.id() == q.id()) continue;
                double exact = exact_rank(testing::worlds_pdf(inst.db, a, q));
                CHECK(ranks[i].id == a.id());
                CHECK(ranks[i].lb <= exact + 1e-9);
                CHECK(exact <= ranks[i].ub + 1e-9);
                if (depth == 10) {
                    CHECK(std::abs(ranks[i].lb - exact) < 1e-6);
                    CHECK(std::abs(ranks[i].ub - exact) < 1e-6);
                }
                ++i;
            }
        }
    }
}
