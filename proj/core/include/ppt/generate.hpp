#pragma once

// Random legal presentations and the height reflection of a presentation.

#include <cstdint>
#include <random>

#include "ppt/sweep.hpp"

namespace ppt {

struct RandomOptions {
    int max_events = 20;
    /// Bias toward saddles once some circles exist (0..1).
    double saddle_bias = 0.5;
};

/// A uniformly-seeded random word that closes up within `max_events`
/// events. Circle ids are c1, c2, ...; face ids f1, f2, ...
Presentation random_presentation(std::mt19937_64& rng, const RandomOptions& opt = {});

/// The presentation of the same surface with heights negated: events in
/// reverse order, births and deaths exchanged, merges and splits exchanged.
/// Circle ids are kept; faces get fresh ids.
Presentation reflect(const Presentation& p);

}  // namespace ppt
