#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "udom/idca.hpp"

using namespace udom;

TEST_CASE("uncertainty")
{
    DomCountDistribution tight(4, 0.25, 0.25);
    CHECK(uncertainty(tight) == 0.0);
    CHECK(uncertainty(DomCountDistribution(7)) == 7.0);
    DomCountDistribution ex(3);
    ex.lb = {0.10, 0.34, 0.12};
    ex.ub = {0.32, 0.78, 0.40};
    CHECK(uncertainty(ex) == doctest::Approx(0.94).epsilon(1e-12));
}

TEST_CASE("stop criteria")
{
    DomCountDistribution d(2);
    IterationState s{3, 2, &d, 0.5};
    CHECK(StopCriterion::max_depth(3).should_stop(s));
    CHECK_FALSE(StopCriterion::max_depth(4).should_stop(s));
    CHECK(StopCriterion::uncertainty_below(0.5).should_stop(s));
    CHECK_FALSE(StopCriterion::uncertainty_below(0.4).should_stop(s));
    CHECK_FALSE(StopCriterion::never().should_stop(s));
    auto yes = StopCriterion::predicate_decided([](const DomCountDistribution&) { return true; });
    CHECK(yes.should_stop(s));
    CHECK((yes && StopCriterion::never()).should_stop(s) == false);
    CHECK((yes || StopCriterion::never()).should_stop(s));
    CHECK_THROWS_AS(StopCriterion::max_depth(0), Error);
    CHECK_THROWS_AS(StopCriterion::uncertainty_below(-1.0), Error);
}

TEST_CASE("all others completely dominate b")
{
    auto r = certain_object("r", {0.0, 0.0});
    std::vector<UncertainObject> db;
    for (int i = 0; i < 4; ++i) {
        db.push_back(build_object("a" + std::to_string(i),
                                  {{{0.1 * i, 0.1}, 1}, {{0.1 * i + 0.05, 0.15}, 1}}));
    }
    db.push_back(build_object("b", {{{5, 5}, 1}, {{6, 6}, 1}}));
    IdcaConfig cfg;
    cfg.record_history = true;
    auto res = idca(db, db.back(), r, cfg);
    REQUIRE(res.distribution.size() == db.size());
    const auto& first = res.history.front();
    CHECK(first.lb[4] == 1.0);
    CHECK(first.ub[4] == 1.0);
    for (int k = 0; k < 4; ++k) CHECK(first.ub[k] == 0.0);
    CHECK(res.iterations_run == 0);
    CHECK(res.stop_reason == StopReason::converged);
}

TEST_CASE("dependent dominations are not multiplied as if independent")
{
    auto db = testing::twin_dominators_db();
    auto r = testing::twin_dominators_reference();
    auto res = idca(db, db[2], r);
    REQUIRE(res.distribution.size() == 3);
    CHECK(res.distribution.lb[2] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(res.distribution.ub[2] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(res.distribution.ub[1] == doctest::Approx(0.0));
    CHECK(res.distribution.lb[0] == doctest::Approx(0.5).epsilon(1e-9));
    // The per-object marginal is 0.5 for both A's; treating them as
    // independent would put only 0.25 on count 2.
    auto naive = gf_exact(std::vector<double>{0.5, 0.5});
    CHECK(naive[2] == doctest::Approx(0.25));
}

TEST_CASE("bounds contain the exact PDF, tighten monotonically and converge")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        auto inst = testing::random_instance(rng, 6, 4);
        auto exact = testing::worlds_pdf(inst.db, inst.b(), inst.r());
        for (Criterion c : {Criterion::optimal, Criterion::minmax}) {
            IdcaConfig cfg;
            cfg.criterion = c;
            cfg.record_history = true;
            auto res = idca(inst.db, inst.b(), inst.r(), cfg);
            REQUIRE(res.distribution.size() == exact.size());
            for (std::size_t it = 0; it < res.history.size(); ++it) {
                const auto& d = res.history[it];
                CHECK(d.valid());
                for (std::size_t k = 0; k < exact.size(); ++k) {
                    CHECK(exact[k] >= d.lb[k] - 1e-12);
                    CHECK(exact[k] <= d.ub[k] + 1e-12);
                    if (it > 0) {
                        CHECK(d.lb[k] >= res.history[it - 1].lb[k] - 1e-12);
                        CHECK(d.ub[k] <= res.history[it - 1].ub[k] + 1e-12);
                    }
                }
                if (it > 0) {
                    CHECK(res.uncertainty_trace[it] <= res.uncertainty_trace[it - 1] + 1e-12);
                }
            }
            for (std::size_t k = 0; k < exact.size(); ++k) {
                CHECK(std::abs(res.distribution.lb[k] - exact[k]) < 1e-9);
                CHECK(std::abs(res.distribution.ub[k] - exact[k]) < 1e-9);
            }
            CHECK(res.stop_reason == StopReason::converged);
            for (std::size_t k = 0; k < res.classification.complete_domination_count; ++k) {
                CHECK(res.distribution.ub[k] == 0.0);
            }
        }
    }
}

TEST_CASE("stop reasons and iteration callback")
{
    std::mt19937_64 rng(32);
    std::vector<UncertainObject> db;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        std::vector<std::pair<std::vector<double>, double>> s;
        for (int j = 0; j < 16; ++j) s.push_back({{0.3 * u(rng) + 0.05 * i, 0.3 * u(rng)}, 1.0});
        db.push_back(build_object(std::to_string(i), s));
    }
    const auto& b = db[3];
    const auto& r = db[5];

    IdcaConfig one;
    one.stop = StopCriterion::max_depth(1);
    auto r1 = idca(db, b, r, one);
    CHECK(r1.iterations_run == 0);
    CHECK(r1.depth == 1);
    CHECK(r1.stop_reason == StopReason::criterion);

    IdcaConfig cap;
    cap.stop = StopCriterion::never();
    cap.max_depth = 3;
    int calls = 0;
    cap.on_iteration = [&](const IterationState& s) {
        CHECK(s.depth == calls + 1);
        CHECK(s.iteration == calls);
        ++calls;
    };
    auto r3 = idca(db, b, r, cap);
    CHECK(r3.stop_reason == StopReason::depth_limit);
    CHECK(r3.depth == 3);
    CHECK(calls == 3);
    CHECK(r3.uncertainty_trace.size() == 3);

    IdcaConfig budget;
    budget.stop = StopCriterion::never();
    budget.pair_budget = 4;
    auto rb = idca(db, b, r, budget);
    CHECK(rb.stop_reason == StopReason::pair_budget);
    CHECK(rb.depth == 2);

    IdcaConfig eps;
    eps.stop = StopCriterion::uncertainty_below(1.0);
    auto re = idca(db, b, r, eps);
    if (re.stop_reason == StopReason::criterion) CHECK(re.uncertainty_trace.back() <= 1.0);

    IdcaConfig bad;
    bad.max_depth = 0;
    CHECK_THROWS_AS(idca(db, b, r, bad), Error);
    auto flat = certain_object("flat", {0.0});
    CHECK_THROWS_AS(idca(db, b, flat), Error);
}

TEST_CASE("truncated runs agree with full runs below k")
{
    std::mt19937_64 rng(33);
    for (int t = 0; t < 30; ++t) {
        auto inst = testing::random_instance(rng, 8, 4);
        for (int k : {1, 2, 3}) {
            IdcaConfig full, tr;
            tr.truncate_at = k;
            full.stop = tr.stop = StopCriterion::max_depth(2);
            auto a = idca(inst.db, inst.b(), inst.r(), full);
            auto b = idca(inst.db, inst.b(), inst.r(), tr);
            for (int c = 0; c < k && c < static_cast<int>(a.distribution.size()); ++c) {
                CHECK(std::abs(a.distribution.lb[c] - b.distribution.lb[c]) < 1e-12);
                CHECK(std::abs(a.distribution.ub[c] - b.distribution.ub[c]) < 1e-12);
            }
        }
    }
}
