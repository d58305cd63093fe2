#include "ppt/sweep.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ppt/error.hpp"

namespace ppt {

LevelState LevelState::empty() {
    LevelState s;
    s.add_face(initial_face, Membership::outside);
    return s;
}

std::vector<CircleId> LevelState::circles_of(const FaceId& face) const {
    std::vector<CircleId> out;
    for (const auto& [c, ends] : circles_) {
        if (ends.first == face || ends.second == face) {
            out.push_back(c);
        }
    }
    return out;
}

bool LevelState::incident(const CircleId& c, const FaceId& f) const {
    auto it = circles_.find(c);
    return it != circles_.end() && (it->second.first == f || it->second.second == f);
}

FaceId LevelState::across(const CircleId& c, const FaceId& f) const {
    const auto& ends = circles_.at(c);
    return ends.first == f ? ends.second : ends.first;
}

FaceId LevelState::inside_face(const CircleId& c) const {
    const auto& ends = circles_.at(c);
    return label(ends.first) == Membership::inside ? ends.first : ends.second;
}

std::vector<FaceId> LevelState::inside_faces() const {
    std::vector<FaceId> out;
    for (const auto& [f, m] : faces_) {
        if (m == Membership::inside) {
            out.push_back(f);
        }
    }
    return out;
}

int LevelState::inside_count() const {
    return static_cast<int>(std::count_if(faces_.begin(), faces_.end(), [](const auto& kv) {
        return kv.second == Membership::inside;
    }));
}

bool LevelState::is_empty_level() const {
    return circles_.empty() && faces_.size() == 1 &&
           faces_.begin()->second == Membership::outside;
}

void LevelState::reattach(const CircleId& c, const FaceId& from, const FaceId& to) {
    auto& ends = circles_.at(c);
    if (ends.first == from) {
        ends.first = to;
    } else if (ends.second == from) {
        ends.second = to;
    }
}

std::optional<std::string> LevelState::violation() const {
    if (faces_.empty()) {
        return "no faces";
    }
    std::map<FaceId, std::vector<FaceId>> adj;
    for (const auto& [c, ends] : circles_) {
        if (!has_face(ends.first) || !has_face(ends.second)) {
            return "circle " + c + " bounds a missing face";
        }
        if (ends.first == ends.second) {
            return "circle " + c + " has the same face on both sides";
        }
        if (label(ends.first) == label(ends.second)) {
            return "labels do not alternate across circle " + c;
        }
        adj[ends.first].push_back(ends.second);
        adj[ends.second].push_back(ends.first);
    }
    if (circles_.size() + 1 != faces_.size()) {
        return "circle count " + std::to_string(circles_.size()) + " is not face count minus one (" +
               std::to_string(faces_.size()) + " faces)";
    }
    std::set<FaceId> seen{faces_.begin()->first};
    std::deque<FaceId> queue{faces_.begin()->first};
    while (!queue.empty()) {
        FaceId f = queue.front();
        queue.pop_front();
        for (const auto& g : adj[f]) {
            if (seen.insert(g).second) {
                queue.push_back(g);
            }
        }
    }
    if (seen.size() != faces_.size()) {
        return "face tree is disconnected";
    }
    return std::nullopt;
}

std::string describe(const EventClass& cls) {
    std::string out;
    if (cls.polarity == Polarity::saddle) {
        out += cls.nesting == Nesting::nested ? "nested " : "unnested ";
        out += cls.vertical == Vertical::upper ? "upper saddle" : "lower saddle";
    } else {
        out += cls.locality == Locality::external ? "external " : "internal ";
        out += cls.polarity == Polarity::min ? "min" : "max";
    }
    return out;
}

Polarity polarity_of(const EventKind& kind) {
    if (std::holds_alternative<Birth>(kind)) return Polarity::min;
    if (std::holds_alternative<Death>(kind)) return Polarity::max;
    return Polarity::saddle;
}

Nesting nesting_from_census(int inside_before, int inside_after) {
    return inside_before == inside_after ? Nesting::nested : Nesting::unnested;
}

namespace {

struct Applier {
    const LevelState& before;
    int ordinal;

    [[noreturn]] void fail(const std::string& msg) const { throw SimulationError(ordinal, msg); }

    void need_circle(const CircleId& c) const {
        if (!before.has_circle(c)) fail("circle " + c + " is not live");
    }
    void need_face(const FaceId& f) const {
        if (!before.has_face(f)) fail("face " + f + " is not live");
    }
    void need_fresh_circle(const CircleId& c) const {
        if (before.has_circle(c)) fail("circle " + c + " is already live");
    }
    void need_fresh_face(const FaceId& f) const {
        if (before.has_face(f)) fail("face " + f + " is already live");
    }

    StepResult operator()(const Birth& e) const {
        need_face(e.host_face);
        need_fresh_circle(e.circle);
        need_fresh_face(e.new_face);
        StepResult r{before, {}, {}};
        Membership host = before.label(e.host_face);
        r.state.add_face(e.new_face, opposite(host));
        r.state.add_circle(e.circle, e.host_face, e.new_face);
        r.cls.polarity = Polarity::min;
        r.cls.locality = host == Membership::outside ? Locality::external : Locality::internal;
        return r;
    }

    StepResult operator()(const Death& e) const {
        need_circle(e.circle);
        const auto& [p, q] = before.circles().at(e.circle);
        bool p_leaf = before.circles_of(p).size() == 1;
        bool q_leaf = before.circles_of(q).size() == 1;
        FaceId dying;
        if (p_leaf && q_leaf) {
            // Two faces left: the inside disk shrinks so the level stays off M.
            dying = before.label(p) == Membership::inside ? p : q;
        } else if (p_leaf) {
            dying = p;
        } else if (q_leaf) {
            dying = q;
        } else {
            fail("circle " + e.circle + " does not bound a leaf face");
        }
        StepResult r{before, {}, {}};
        r.site.dying_face = dying;
        r.site.surviving_face = before.across(e.circle, dying);
        r.state.remove_circle(e.circle);
        r.state.remove_face(dying);
        r.cls.polarity = Polarity::max;
        r.cls.locality = before.label(dying) == Membership::inside ? Locality::external
                                                                    : Locality::internal;
        return r;
    }

    StepResult operator()(const Merge& e) const {
        if (e.circle_a == e.circle_b) fail("merge needs two distinct circles");
        need_circle(e.circle_a);
        need_circle(e.circle_b);
        need_face(e.via_face);
        need_fresh_circle(e.new_circle);
        if (!before.incident(e.circle_a, e.via_face) || !before.incident(e.circle_b, e.via_face)) {
            fail("circles " + e.circle_a + " and " + e.circle_b + " are not both on face " +
                 e.via_face);
        }
        FaceId fa = before.across(e.circle_a, e.via_face);
        FaceId fb = before.across(e.circle_b, e.via_face);
        StepResult r{before, {}, {}};
        r.state.remove_circle(e.circle_a);
        r.state.remove_circle(e.circle_b);
        for (const auto& c : r.state.circles_of(fb)) {
            r.state.reattach(c, fb, fa);
        }
        r.state.remove_face(fb);
        r.state.add_circle(e.new_circle, e.via_face, fa);
        r.site.far_face = fa;
        r.site.retired_face = fb;
        r.cls.polarity = Polarity::saddle;
        r.cls.vertical = Vertical::upper;
        r.cls.nesting = before.label(e.via_face) == Membership::inside ? Nesting::nested
                                                                        : Nesting::unnested;
        return r;
    }

    StepResult operator()(const Split& e) const {
        need_circle(e.circle);
        need_face(e.via_face);
        if (!before.incident(e.circle, e.via_face)) {
            fail("circle " + e.circle + " is not on face " + e.via_face);
        }
        if (e.new_circle_a == e.new_circle_b) fail("split produces two circles with one name");
        if (e.new_face_a == e.new_face_b) fail("split produces two faces with one name");
        need_fresh_circle(e.new_circle_a);
        need_fresh_circle(e.new_circle_b);
        need_fresh_face(e.new_face_a);
        need_fresh_face(e.new_face_b);

        std::vector<CircleId> others = before.circles_of(e.via_face);
        others.erase(std::remove(others.begin(), others.end(), e.circle), others.end());
        std::set<CircleId> side_a;
        for (const auto& c : e.side_a) {
            if (std::find(others.begin(), others.end(), c) == others.end()) {
                fail("circle " + c + " in the side list is not another circle of face " +
                     e.via_face);
            }
            if (!side_a.insert(c).second) fail("circle " + c + " listed twice");
        }

        FaceId far = before.across(e.circle, e.via_face);
        Membership m = before.label(e.via_face);
        StepResult r{before, {}, {}};
        r.state.remove_circle(e.circle);
        r.state.add_face(e.new_face_a, m);
        r.state.add_face(e.new_face_b, m);
        for (const auto& c : others) {
            r.state.reattach(c, e.via_face, side_a.count(c) ? e.new_face_a : e.new_face_b);
        }
        r.state.remove_face(e.via_face);
        r.state.add_circle(e.new_circle_a, e.new_face_a, far);
        r.state.add_circle(e.new_circle_b, e.new_face_b, far);
        r.site.far_face = far;
        r.cls.polarity = Polarity::saddle;
        r.cls.vertical = Vertical::lower;
        r.cls.nesting = m == Membership::inside ? Nesting::unnested : Nesting::nested;
        return r;
    }
};

void introduce(std::set<std::string>& seen, const std::string& id, int ordinal) {
    if (!seen.insert(id).second) {
        throw SimulationError(ordinal, "identifier " + id + " is reused");
    }
}

}  // namespace

StepResult apply_event(const LevelState& state, const MorseEvent& event) {
    StepResult r = std::visit(Applier{state, event.ordinal}, event.kind);
    if (auto bad = r.state.violation()) {
        throw SimulationError(event.ordinal, "illegal result: " + *bad);
    }
    return r;
}

Trace simulate(const Presentation& p) {
    Trace t;
    t.name = p.name;
    t.initial = LevelState::empty();
    t.census.push_back(0);

    std::set<std::string> seen{LevelState::initial_face};
    const LevelState* cur = &t.initial;
    for (std::size_t i = 0; i < p.events.size(); ++i) {
        MorseEvent ev = p.events[i];
        ev.ordinal = static_cast<int>(i + 1);
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, Birth>) {
                    introduce(seen, e.circle, ev.ordinal);
                    introduce(seen, e.new_face, ev.ordinal);
                } else if constexpr (std::is_same_v<T, Merge>) {
                    introduce(seen, e.new_circle, ev.ordinal);
                } else if constexpr (std::is_same_v<T, Split>) {
                    introduce(seen, e.new_circle_a, ev.ordinal);
                    introduce(seen, e.new_circle_b, ev.ordinal);
                    introduce(seen, e.new_face_a, ev.ordinal);
                    introduce(seen, e.new_face_b, ev.ordinal);
                }
            },
            ev.kind);
        StepResult r = apply_event(*cur, ev);
        t.entries.push_back(TraceEntry{ev, r.cls, r.site, std::move(r.state)});
        cur = &t.entries.back().after;
        t.census.push_back(cur->inside_count());
    }
    if (!cur->is_empty_level()) {
        throw SimulationError(0,
                              "non-empty final state: M touches a pole or is unclosed "
                              "(remove the polar ball above the top critical level first)");
    }
    return t;
}

}  // namespace ppt
