#pragma once

// Text form of presentations (.pp files), one event per line:
//
//   min <circle> in <face> new <face>
//   max <circle>
//   merge <c1> <c2> in <face> as <c>
//   split <c> thru <face> as <c1>:<face1>[<circle-list>] <c2>:<face2>
//
// '#' starts a comment. Any line may end with "@ <height>"; heights are
// optional but must then be present on every line and pairwise distinct,
// and events are ordered by them. The initial face is always f0.

#include <string>
#include <string_view>

#include "ppt/sweep.hpp"

namespace ppt {

/// Throws ParseError on syntax errors, unknown identifiers, redefinitions,
/// identical merge circles, repeated heights, and empty input.
Presentation parse_presentation(std::string_view text, std::string name = {});

/// Canonical text; parse_presentation(format_presentation(p)) == p up to line numbers.
std::string format_presentation(const Presentation& p);

std::string format_event(const MorseEvent& e);

}  // namespace ppt
