#pragma once

// Level spheres of a planar presentation as labeled face trees, and the
// sweep that carries one through a word of Morse events.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ppt {

using CircleId = std::string;
using FaceId = std::string;

/// Which side of the boundary surface a face of a level sphere lies on.
enum class Membership { inside, outside };

inline Membership opposite(Membership m) {
    return m == Membership::inside ? Membership::outside : Membership::inside;
}

/// Circles on a generic level sphere. Faces are the complementary regions;
/// faces and circles form a tree whose labels alternate across every circle.
/// The inside faces are exactly the components of M meeting the level.
class LevelState {
public:
    static constexpr const char* initial_face = "f0";

    /// One outside face, no circles.
    static LevelState empty();

    const std::map<FaceId, Membership>& faces() const { return faces_; }
    const std::map<CircleId, std::pair<FaceId, FaceId>>& circles() const { return circles_; }

    bool has_face(const FaceId& f) const { return faces_.count(f) != 0; }
    bool has_circle(const CircleId& c) const { return circles_.count(c) != 0; }
    Membership label(const FaceId& f) const { return faces_.at(f); }

    /// Circles bounding `face`, in identifier order.
    std::vector<CircleId> circles_of(const FaceId& face) const;
    bool incident(const CircleId& c, const FaceId& f) const;
    /// The face across `c` from `f`.
    FaceId across(const CircleId& c, const FaceId& f) const;
    /// The inside face bounded by `c` (alternation guarantees exactly one).
    FaceId inside_face(const CircleId& c) const;

    std::vector<FaceId> inside_faces() const;
    int inside_count() const;

    /// One outside face and nothing else (face name is irrelevant).
    bool is_empty_level() const;

    /// Tree shape, alternation, and referential integrity. Returns a
    /// description of the first violation, or nothing.
    std::optional<std::string> violation() const;

    // Raw mutation for the event rules; callers re-check with violation().
    void add_face(const FaceId& f, Membership m) { faces_[f] = m; }
    void remove_face(const FaceId& f) { faces_.erase(f); }
    void add_circle(const CircleId& c, const FaceId& a, const FaceId& b) { circles_[c] = {a, b}; }
    void remove_circle(const CircleId& c) { circles_.erase(c); }
    void reattach(const CircleId& c, const FaceId& from, const FaceId& to);

    friend bool operator==(const LevelState&, const LevelState&) = default;

private:
    std::map<FaceId, Membership> faces_;
    std::map<CircleId, std::pair<FaceId, FaceId>> circles_;
};

/// A circle is born as a leaf of `host_face`; `new_face` is the disk it bounds.
struct Birth {
    CircleId circle;
    FaceId host_face;
    FaceId new_face;
};

/// A circle bounding a leaf face shrinks to a point.
struct Death {
    CircleId circle;
};

/// Two circles bounding `via_face` are joined by a band through it.
struct Merge {
    CircleId circle_a;
    CircleId circle_b;
    FaceId via_face;
    CircleId new_circle;
};

/// A chord of `via_face` from `circle` to itself cuts the face in two.
/// `side_a` lists the other circles of the face that end up on side a.
struct Split {
    CircleId circle;
    FaceId via_face;
    CircleId new_circle_a;
    FaceId new_face_a;
    std::vector<CircleId> side_a;
    CircleId new_circle_b;
    FaceId new_face_b;
};

using EventKind = std::variant<Birth, Death, Merge, Split>;

struct MorseEvent {
    EventKind kind;
    int ordinal = 0;                // 1-based position in the word
    std::optional<double> height;   // author-supplied; only its order matters
    int line = 0;                   // source line, 0 if synthesized
};

enum class Polarity { min, max, saddle };
enum class Vertical { upper, lower };
enum class Nesting { nested, unnested };
enum class Locality { internal, external };

struct EventClass {
    Polarity polarity = Polarity::min;
    std::optional<Vertical> vertical;   // saddles only
    std::optional<Nesting> nesting;     // saddles only
    std::optional<Locality> locality;   // extrema only

    /// Unnested saddles and external extrema cut M into connectivity-graph vertices.
    bool is_cut() const {
        return nesting == Nesting::unnested || locality == Locality::external;
    }
    bool is_saddle() const { return polarity == Polarity::saddle; }

    friend bool operator==(const EventClass&, const EventClass&) = default;
};

std::string describe(const EventClass& cls);

/// Face bookkeeping an event leaves behind, used downstream to follow
/// faces across the critical level.
struct EventSite {
    FaceId dying_face;      // Death
    FaceId surviving_face;  // Death
    FaceId far_face;        // Split: face across the split circle; Merge: the fused face (kept id)
    FaceId retired_face;    // Merge: far face of circle_b, absorbed into far_face
};

struct StepResult {
    LevelState state;
    EventClass cls;
    EventSite site;
};

/// Apply one event. Throws SimulationError (ordinal from the event) when the
/// event is illegal in `state`.
StepResult apply_event(const LevelState& state, const MorseEvent& event);

struct Presentation {
    std::string name;
    std::vector<MorseEvent> events;
};

struct TraceEntry {
    MorseEvent event;
    EventClass cls;
    EventSite site;
    LevelState after;
};

/// The full sweep. Gap g is the regular level between event g and g+1
/// (gap 0 lies below every event, gap n above).
struct Trace {
    std::string name;
    LevelState initial;
    std::vector<TraceEntry> entries;
    std::vector<int> census;   // inside-face count per gap, size n+1

    int event_count() const { return static_cast<int>(entries.size()); }
    const LevelState& at_gap(int gap) const {
        return gap == 0 ? initial : entries.at(static_cast<std::size_t>(gap - 1)).after;
    }
    const TraceEntry& event(int ordinal) const {
        return entries.at(static_cast<std::size_t>(ordinal - 1));
    }
};

/// Sweep a presentation from the empty level to the empty level.
Trace simulate(const Presentation& p);

/// Nesting as read off the inside-face census on both sides of a saddle.
Nesting nesting_from_census(int inside_before, int inside_after);

/// Polarity of an event kind alone.
Polarity polarity_of(const EventKind& kind);

}  // namespace ppt
