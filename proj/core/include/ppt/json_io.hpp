#pragma once

// JSON forms of everything the library produces. Rationals are written as
// "p/q" strings so they round-trip exactly. Plans and slide schedules can
// be read back.

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ppt/bipartite.hpp"
#include "ppt/connectivity.hpp"
#include "ppt/heegaard.hpp"
#include "ppt/knot_width.hpp"
#include "ppt/leveled_graph.hpp"
#include "ppt/sweep.hpp"

namespace ppt {

using json = nlohmann::json;

std::string version();

/// Common envelope for CLI output: tool, version, command, fixture, seed.
json make_report(const std::string& command, const std::string& fixture,
                 std::optional<std::uint64_t> seed, json result);

void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);

void to_json(json& j, const Trace& t);
void to_json(json& j, const ConnectivityGraph& g);
void to_json(json& j, const FoxWitness& w);
void to_json(json& j, const FoxDecision& d);
void to_json(json& j, const OracleReport& r);
void to_json(json& j, const ThickThin& t);
void to_json(json& j, const LeveledGraph& g);
void to_json(json& j, const UnknotCertificate& c);
void to_json(json& j, const HandlebodySum& s);
void to_json(json& j, const EquivalenceReport& r);

void to_json(json& j, const BipartiteGraph& g);
void from_json(const json& j, BipartiteGraph& g);
void to_json(json& j, const BipartiteEmbedding& e);
void to_json(json& j, const SlideSchedule& s);
void from_json(const json& j, SlideSchedule& s);
void to_json(json& j, const ReplayReport& r);

void to_json(json& j, const GluingGraph& g);
void from_json(const json& j, GluingGraph& g);
void to_json(json& j, const BraidMove& b);
void from_json(const json& j, BraidMove& b);
void to_json(json& j, const PlanStep& s);
void from_json(const json& j, PlanStep& s);
void to_json(json& j, const TerminalClaim& t);
void from_json(const json& j, TerminalClaim& t);
void to_json(json& j, const ReimbeddingPlan& p);
void from_json(const json& j, ReimbeddingPlan& p);
void to_json(json& j, const PlanReport& r);

/// Accepts either a bare plan or a report envelope whose result is a plan.
/// Throws ParseError on malformed input.
ReimbeddingPlan parse_plan(const std::string& text);
/// Accepts a bare schedule, a report envelope, or an object with a "schedule" member.
SlideSchedule parse_schedule(const std::string& text);

}  // namespace ppt
