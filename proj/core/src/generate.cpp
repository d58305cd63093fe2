#include "ppt/generate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ppt {

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

bool coin(std::mt19937_64& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

class Builder {
public:
    explicit Builder(std::mt19937_64& rng) : rng_(rng), state_(LevelState::empty()) {}

    int events() const { return static_cast<int>(p_.events.size()); }
    int circles() const { return static_cast<int>(state_.circles().size()); }

    void birth() {
        std::vector<FaceId> faces;
        for (const auto& [f, m] : state_.faces()) faces.push_back(f);
        push(Birth{fresh_circle(), pick(rng_, faces), fresh_face()});
    }

    std::vector<CircleId> leaf_circles() const {
        std::vector<CircleId> out;
        for (const auto& [c, ends] : state_.circles()) {
            if (state_.circles_of(ends.first).size() == 1 ||
                state_.circles_of(ends.second).size() == 1) {
                out.push_back(c);
            }
        }
        return out;
    }

    void death() { push(Death{pick(rng_, leaf_circles())}); }

    bool merge() {
        std::vector<FaceId> faces;
        for (const auto& [f, m] : state_.faces()) {
            if (state_.circles_of(f).size() >= 2) faces.push_back(f);
        }
        if (faces.empty()) return false;
        FaceId f = pick(rng_, faces);
        auto cs = state_.circles_of(f);
        std::shuffle(cs.begin(), cs.end(), rng_);
        push(Merge{cs[0], cs[1], f, fresh_circle()});
        return true;
    }

    bool split() {
        if (state_.circles().empty()) return false;
        std::vector<CircleId> all;
        for (const auto& [c, ends] : state_.circles()) all.push_back(c);
        CircleId c = pick(rng_, all);
        const auto& ends = state_.circles().at(c);
        FaceId via = coin(rng_, 0.5) ? ends.first : ends.second;
        Split s;
        s.circle = c;
        s.via_face = via;
        s.new_circle_a = fresh_circle();
        s.new_face_a = fresh_face();
        for (const auto& other : state_.circles_of(via)) {
            if (other != c && coin(rng_, 0.5)) s.side_a.push_back(other);
        }
        s.new_circle_b = fresh_circle();
        s.new_face_b = fresh_face();
        push(s);
        return true;
    }

    Presentation finish() { return std::move(p_); }

private:
    CircleId fresh_circle() { return "c" + std::to_string(++circle_counter_); }
    FaceId fresh_face() { return "f" + std::to_string(++face_counter_); }

    void push(EventKind k) {
        MorseEvent ev;
        ev.kind = std::move(k);
        ev.ordinal = events() + 1;
        state_ = apply_event(state_, ev).state;
        p_.events.push_back(std::move(ev));
    }

    std::mt19937_64& rng_;
    LevelState state_;
    Presentation p_;
    int circle_counter_ = 0;
    int face_counter_ = 0;
};

}  // namespace

Presentation random_presentation(std::mt19937_64& rng, const RandomOptions& opt) {
    int budget = std::max(2, opt.max_events);
    int target = std::uniform_int_distribution<int>(2, budget)(rng);
    Builder b(rng);
    b.birth();
    // Each live circle costs at least one more event (its death) to close.
    while (b.events() + b.circles() < target) {
        int room = budget - b.events() - 1;
        bool grow_ok = room >= b.circles() + 1;
        bool saddle = b.circles() > 0 && coin(rng, opt.saddle_bias);
        if (saddle) {
            bool done = (grow_ok && coin(rng, 0.5)) ? b.split() : b.merge();
            if (!done && grow_ok) done = b.split();
            if (done) continue;
        }
        if (grow_ok && coin(rng, 0.6)) {
            b.birth();
        } else if (b.circles() > 0) {
            b.death();
        } else if (grow_ok) {
            b.birth();
        } else {
            break;
        }
    }
    while (b.circles() > 0) b.death();
    return b.finish();
}

Presentation reflect(const Presentation& p) {
    Trace t = simulate(p);
    int n = t.event_count();
    int counter = 0;
    auto fresh = [&] { return "f" + std::to_string(++counter); };

    std::map<FaceId, FaceId> cur;
    cur[t.at_gap(n).faces().begin()->first] = LevelState::initial_face;

    Presentation out;
    out.name = p.name.empty() ? std::string() : p.name + ".reflected";
    for (int k = n; k >= 1; --k) {
        const TraceEntry& e = t.event(k);
        const LevelState& below = t.at_gap(k - 1);
        MorseEvent ev;
        ev.ordinal = n - k + 1;
        if (e.event.height) ev.height = -*e.event.height;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Death>) {
                    FaceId f = fresh();
                    ev.kind = Birth{x.circle, cur.at(e.site.surviving_face), f};
                    cur[e.site.dying_face] = f;
                } else if constexpr (std::is_same_v<T, Birth>) {
                    ev.kind = Death{x.circle};
                    cur.erase(x.new_face);
                } else if constexpr (std::is_same_v<T, Merge>) {
                    const FaceId& fa = e.site.far_face;
                    const FaceId& fb = e.site.retired_face;
                    Split s;
                    s.circle = x.new_circle;
                    s.via_face = cur.at(fa);
                    s.new_circle_a = x.circle_a;
                    s.new_face_a = fresh();
                    for (const auto& c : below.circles_of(fa)) {
                        if (c != x.circle_a) s.side_a.push_back(c);
                    }
                    s.new_circle_b = x.circle_b;
                    s.new_face_b = fresh();
                    cur[fa] = s.new_face_a;
                    cur[fb] = s.new_face_b;
                    ev.kind = s;
                } else {
                    const FaceId& g = e.site.far_face;
                    ev.kind = Merge{x.new_circle_a, x.new_circle_b, cur.at(g), x.circle};
                    cur[x.via_face] = cur.at(x.new_face_a);
                    cur.erase(x.new_face_a);
                    cur.erase(x.new_face_b);
                }
            },
            e.event.kind);
        out.events.push_back(std::move(ev));
    }
    return out;
}

}  // namespace ppt
