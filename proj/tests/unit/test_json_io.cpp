#include "doctest.h"
#include "oracles.hpp"
#include "ppt/error.hpp"
#include "ppt/generate.hpp"
#include "ppt/json_io.hpp"

using namespace ppt;

TEST_SUITE_BEGIN("json");

TEST_CASE("rationals are exact strings") {
    json j = Rational(-3, 6);
    CHECK(j == "-1/2");
    CHECK(j.get<Rational>() == Rational(-1, 2));
    CHECK(json(Rational(4)).get<Rational>() == Rational(4));
}

TEST_CASE("plans round trip through text") {
    for (const auto& p : ppt::testing::all_fixture_presentations()) {
        if (!fox_decision(build_connectivity(simulate(p))).yes) continue;
        ReimbeddingPlan plan = plan_reimbedding(p);
        ReimbeddingPlan bare = parse_plan(json(plan).dump());
        CHECK(bare == plan);
        ReimbeddingPlan wrapped = parse_plan(make_report("plan", p.name, std::nullopt, json(plan)).dump(2));
        CHECK(wrapped == plan);
        CHECK(verify_plan(p, wrapped).pass);
    }
    std::mt19937_64 rng(41);
    int done = 0;
    while (done < 50) {
        Presentation p = random_presentation(rng, {});
        if (!fox_decision(build_connectivity(simulate(p))).yes) continue;
        ReimbeddingPlan plan = plan_reimbedding(p);
        CHECK(parse_plan(json(plan).dump()) == plan);
        ++done;
    }
}

TEST_CASE("schedules round trip through text") {
    BipartiteGraph g = parse_bipartite(ppt::testing::read_text(ppt::testing::fixture_path("k33.bg")));
    BipartiteEmbedding emb = embed_bipartite(g);
    SlideSchedule s = flatten(emb);
    SlideSchedule back = parse_schedule(json(s).dump());
    CHECK(json(back) == json(s));
    CHECK(replay(emb, back).pass);
    json wrapped = {{"schedule", json(s)}};
    CHECK(json(parse_schedule(wrapped.dump())) == json(s));
}

TEST_CASE("report envelope") {
    json r = make_report("width", "three_thick.word", 7, json{{"width", 98}});
    CHECK(r["tool"] == "ppt");
    CHECK(r["command"] == "width");
    CHECK(r["seed"] == 7);
    CHECK(r["version"] == version());
    CHECK(r["result"]["width"] == 98);
    CHECK(make_report("width", "x", std::nullopt, json::object())["seed"].is_null());
}

TEST_CASE("malformed documents are parse errors") {
    CHECK_THROWS_AS(parse_plan("{"), ParseError);
    CHECK_THROWS_AS(parse_plan("{\"roots\": 3}"), ParseError);
    CHECK_THROWS_AS(parse_schedule("[1, 2]"), ParseError);
    CHECK_THROWS_AS(parse_schedule("{\"moves\": [{\"op\": \"teleport\"}]}"), ParseError);
}

TEST_SUITE_END();
