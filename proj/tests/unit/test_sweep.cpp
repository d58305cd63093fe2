#include "doctest.h"
#include "oracles.hpp"
#include "ppt/dsl.hpp"
#include "ppt/error.hpp"
#include "ppt/generate.hpp"
#include "ppt/sweep.hpp"

using namespace ppt;
using ppt::testing::load_fixture;

namespace {

std::vector<std::string> classes(const Trace& t) {
    std::vector<std::string> out;
    for (const auto& e : t.entries) out.push_back(describe(e.cls));
    return out;
}

int parse_error_line(const std::string& text) {
    try {
        parse_presentation(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("ball") {
    Trace t = simulate(load_fixture("ball"));
    CHECK(classes(t) == std::vector<std::string>{"external min", "external max"});
    CHECK(t.census == std::vector<int>{0, 1, 0});
    // Both faces are leaves when the last circle dies; the inside one goes.
    CHECK(t.event(2).site.dying_face == "f1");
}

TEST_CASE("donut_flat") {
    Presentation p = load_fixture("donut_flat");
    CHECK(p.events.size() == 4);
    Trace t = simulate(p);
    CHECK(classes(t) == std::vector<std::string>{"external min", "nested lower saddle", "nested upper saddle",
                                                 "external max"});
    CHECK(t.census == std::vector<int>{0, 1, 1, 1, 0});
}

TEST_CASE("donut_vertical") {
    Trace t = simulate(load_fixture("donut_vertical"));
    CHECK(classes(t) == std::vector<std::string>{"external min", "unnested lower saddle",
                                                 "unnested upper saddle", "external max"});
    CHECK(t.census == std::vector<int>{0, 1, 2, 1, 0});
}

TEST_CASE("two_balls and shell") {
    Trace t = simulate(load_fixture("two_balls"));
    CHECK(classes(t) == std::vector<std::string>{"external min", "external min", "unnested upper saddle",
                                                 "external max"});
    Trace s = simulate(load_fixture("shell"));
    CHECK(classes(s) == std::vector<std::string>{"external min", "internal min", "internal max", "external max"});
    CHECK(s.census == std::vector<int>{0, 1, 1, 1, 0});
}

TEST_CASE("parse errors carry the line") {
    CHECK(parse_error_line("min c1 in f0 new f1\nmax c9\n") == 2);
    CHECK(parse_error_line("min c1 in f0 new f1\nmin c1 in f0 new f2\n") == 2);
    CHECK(parse_error_line("min c1 in f0 new f1\nmin c2 in f0 new f2\nmerge c1 c1 in f0 as c3\n") == 3);
    CHECK(parse_error_line("min c1 in f0 new f1\nbogus c1\n") == 2);
    CHECK(parse_error_line("# only a comment\n") == 0);
    CHECK(parse_error_line("min c1 in f0 new f1 @ 1\nmax c1\n") >= 1);
    CHECK(parse_error_line("min c1 in f0 new f1 @ 1\nmax c1 @ 1\n") >= 1);
}

TEST_CASE("heights order the events") {
    Presentation p = parse_presentation("max c1 @ 2.5\nmin c1 in f0 new f1 @ -1\n", "h");
    REQUIRE(p.events.size() == 2);
    CHECK(std::holds_alternative<Birth>(p.events[0].kind));
    CHECK(p.events[0].ordinal == 1);
    CHECK_NOTHROW(simulate(p));
}

TEST_CASE("simulation errors name the event") {
    CHECK_THROWS_AS(simulate(parse_presentation("min c1 in f0 new f1\n")), SimulationError);
    try {
        simulate(parse_presentation("min c1 in f0 new f1\nmin c2 in f0 new f2\n"
                                    "split c1 thru f2 as c3:f3[] c4:f4\n"));
        FAIL("expected a simulation error");
    } catch (const SimulationError& e) {
        CHECK(e.ordinal() == 3);
    }
}

TEST_CASE("format round trip") {
    for (const auto& p : ppt::testing::all_fixture_presentations()) {
        Presentation q = parse_presentation(format_presentation(p), p.name);
        REQUIRE(q.events.size() == p.events.size());
        for (std::size_t i = 0; i < p.events.size(); ++i) {
            CHECK(format_event(q.events[i]) == format_event(p.events[i]));
        }
    }
}

TEST_CASE("reflection exchanges minima and maxima and upper and lower") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Presentation p = random_presentation(rng, {});
        Trace a = simulate(p);
        Trace b = simulate(reflect(p));
        REQUIRE(a.event_count() == b.event_count());
        int n = a.event_count();
        for (int k = 1; k <= n; ++k) {
            const EventClass& x = a.event(k).cls;
            const EventClass& y = b.event(n + 1 - k).cls;
            CHECK(x.nesting == y.nesting);
            CHECK(x.locality == y.locality);
            if (x.is_saddle()) CHECK(x.vertical != y.vertical);
            else CHECK(x.polarity != y.polarity);
        }
        std::vector<int> rev(a.census.rbegin(), a.census.rend());
        CHECK(b.census == rev);
    }
}

TEST_CASE("random words keep the level a labeled tree and agree on nesting") {
    std::mt19937_64 rng(3);
    RandomOptions opt;
    opt.max_events = 30;
    for (int i = 0; i < 500; ++i) {
        Trace t = simulate(random_presentation(rng, opt));
        for (int gap = 0; gap <= t.event_count(); ++gap) REQUIRE_FALSE(ppt::testing::level_problem(t.at_gap(gap)));
        for (int k = 1; k <= t.event_count(); ++k) {
            const auto& e = t.event(k);
            if (!e.cls.is_saddle()) continue;
            auto via = ppt::testing::nesting_by_via_face(t.at_gap(k - 1), e.event);
            CHECK(via == e.cls.nesting);
            CHECK(nesting_from_census(t.census[k - 1], t.census[k]) == e.cls.nesting);
        }
    }
}

TEST_SUITE_END();
