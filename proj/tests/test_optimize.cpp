#include <doctest.h>

#include "perfo/optimize.hpp"

using namespace perfo;

TEST_CASE("evaluation of a domain without holes") {
    PerforatedDomain d;
    d.base = Base::Disk;
    EvalSettings es;
    es.mesh.h = 0.1;
    auto e = evaluate(d, es);
    REQUIRE(e.ok);
    CHECK(std::abs(e.gap) < 2e-2);

    PerforatedDomain s;
    es.mesh.h = 0.15;
    auto es2 = evaluate(s, es);
    REQUIRE(es2.ok);
    CHECK(std::isinf(es2.first));
}

TEST_CASE("evaluation errors are captured") {
    EvalSettings es;
    es.mesh.minRadius = 0.5;
    auto e = evaluate(equator_poles(8, 0.5), es);
    CHECK_FALSE(e.ok);
    CHECK(e.error.find("floor") != std::string::npos);
}

TEST_CASE("balance radius") {
    EvalSettings es;
    es.mesh.h = 0.15;
    auto b = balance_radius("equator-poles", Json{{"k", 16}, {"c", 0.5}}, std::exp(-8.0), std::exp(-1.0), 1e-2, es);
    CHECK(b.converged);
    CHECK(std::abs(b.first - b.second) <= 1e-2);
    CHECK(b.r > std::exp(-8.0));
    CHECK(b.r < std::exp(-1.0));

    // lambda_D is monotone in log r along the bracket
    auto scan = scan_radius("equator-poles", Json{{"k", 16}, {"c", 0.5}}, std::exp(-8.0), std::exp(-2.5), 5, es);
    for (size_t i = 0; i + 1 < scan.size(); ++i) CHECK(scan[i + 1][1] > scan[i][1]);

    CHECK_THROWS(balance_radius("equator-poles", Json{{"k", 16}, {"c", 0.5}}, 0.1, 0.01, 1e-2, es));
}

TEST_CASE("maximize agrees with balancing on a one-parameter family") {
    EvalSettings es;
    es.mesh.h = 0.2;
    Json p{{"k", 8}, {"c", 0.5}};
    auto b = balance_radius("equator-poles", p, std::exp(-6.0), std::exp(-1.0), 1e-4, es);

    OptProblem prob;
    prob.family = "equator-poles";
    prob.params = p;
    prob.lower = {-6.0};
    prob.upper = {-1.0};
    prob.x0 = {-3.0};
    prob.hSchedule = {0.2};
    prob.tol = 1e-4;
    prob.maxEvals = 80;
    auto t = maximize(prob);
    CHECK(t.certified.ok);
    CHECK(t.best[0] == doctest::Approx(std::log(b.r)).epsilon(0.02));
    CHECK(t.bestObjective <= 8 * kPi);

    auto again = maximize(prob);
    CHECK(again.best == t.best);
    CHECK(again.iterates.size() == t.iterates.size());
}

TEST_CASE("problem json round trip") {
    OptProblem p;
    p.family = "stek-boundary";
    p.params = Json{{"k", 4}};
    p.lower = {-5};
    p.upper = {-1};
    p.x0 = {-2};
    p.objective = Objective::SigmaBar;
    p.certifySearch = true;
    auto q = problem_from_json(to_json(p));
    CHECK(q.family == p.family);
    CHECK(q.objective == Objective::SigmaBar);
    CHECK(q.lower == p.lower);
    CHECK(q.certifySearch);
}

TEST_CASE("sweeps") {
    SweepOptions so;
    so.eval.mesh.h = 0.2;
    CHECK(sweep("equator-poles", {}, so).empty());

    std::vector<Json> grid;
    for (int k : {8, 16}) grid.push_back(Json{{"k", k}, {"c", 0.5}});
    so.threads = 2;
    auto pts = sweep_points("equator-poles", grid, so);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(p.ok);
        CHECK(p.sample.gap > 0);
    }
    CHECK(pts[0].sample.x == 8);
}
