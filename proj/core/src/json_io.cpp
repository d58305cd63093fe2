#include "ppt/json_io.hpp"

#include "ppt/dsl.hpp"
#include "ppt/error.hpp"

#ifndef PPT_VERSION
#define PPT_VERSION "0.0.0"
#endif

namespace ppt {

namespace {

const char* vertical_name(Vertical v) { return v == Vertical::upper ? "upper" : "lower"; }

Vertical parse_vertical(const std::string& s) {
    if (s == "upper") return Vertical::upper;
    if (s == "lower") return Vertical::lower;
    throw ParseError(0, 0, "orientation must be upper or lower, got '" + s + "'");
}

const char* vertex_kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::boundary_top: return "top";
        case VertexKind::boundary_bottom: return "bottom";
        case VertexKind::interior: return "interior";
    }
    return "interior";
}

const char* ambient_name(Ambient a) {
    switch (a) {
        case Ambient::ball: return "ball";
        case Ambient::sphere: return "sphere";
        case Ambient::shell: return "shell";
    }
    return "ball";
}

ChainKind parse_chain_kind(const std::string& s) {
    for (auto k : {ChainKind::extremum, ChainKind::pile_on, ChainKind::glue_across}) {
        if (chain_kind_name(k) == s) return k;
    }
    throw ParseError(0, 0, "unknown chain step kind '" + s + "'");
}

StepKind parse_step_kind(const std::string& s) {
    for (auto k : {StepKind::nested_interval, StepKind::combine_lower, StepKind::turn_saddle}) {
        if (step_kind_name(k) == s) return k;
    }
    throw ParseError(0, 0, "unknown plan step kind '" + s + "'");
}

UnknotRule parse_rule(const std::string& s) {
    for (auto r : {UnknotRule::no_y, UnknotRule::concave, UnknotRule::pile_on, UnknotRule::unknown}) {
        if (rule_name(r) == s) return r;
    }
    throw ParseError(0, 0, "unknown unknottedness rule '" + s + "'");
}

const json& unwrap(const json& j, const char* member) {
    if (j.is_object() && j.contains("result") && j.contains("tool")) return unwrap(j.at("result"), member);
    if (member && j.is_object() && j.contains(member)) return j.at(member);
    return j;
}

}  // namespace

std::string version() { return PPT_VERSION; }

json make_report(const std::string& command, const std::string& fixture,
                 std::optional<std::uint64_t> seed, json result) {
    json j;
    j["tool"] = "ppt";
    j["version"] = version();
    j["command"] = command;
    j["fixture"] = fixture;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["result"] = std::move(result);
    return j;
}

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
    if (j.is_number_integer()) {
        r = Rational(j.get<std::int64_t>());
        return;
    }
    r = Rational::parse(j.get<std::string>());
}

void to_json(json& j, const Trace& t) {
    j = json::object();
    j["name"] = t.name;
    j["events"] = json::array();
    for (const auto& e : t.entries) {
        json ev;
        ev["ordinal"] = e.event.ordinal;
        ev["text"] = format_event(e.event);
        ev["class"] = describe(e.cls);
        ev["cut"] = e.cls.is_cut();
        if (e.event.height) ev["height"] = *e.event.height;
        ev["inside_faces_after"] = e.after.inside_count();
        j["events"].push_back(std::move(ev));
    }
    j["census"] = t.census;
}

void to_json(json& j, const ConnectivityGraph& g) {
    j = json::object();
    j["name"] = g.name;
    j["event_count"] = g.event_count;
    j["cuts"] = g.cuts;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices) {
        j["vertices"].push_back({{"id", v.id},
                                 {"lower_cut", v.lower_cut},
                                 {"upper_cut", v.upper_cut},
                                 {"face", v.face},
                                 {"born", v.born},
                                 {"dies", v.dies}});
    }
    j["edges"] = json::array();
    for (const auto& e : g.edges) {
        j["edges"].push_back({{"id", e.id},
                              {"below", e.below},
                              {"above", e.above},
                              {"cut", e.cut},
                              {"face_below", e.face_below},
                              {"face_above", e.face_above},
                              {"kind", e.kind == EdgeKind::saddle ? "saddle" : "pass"}});
    }
}

void to_json(json& j, const FoxWitness& w) {
    j = {{"edge", w.edge}, {"cut", w.cut}, {"face_below", w.face_below}, {"face_above", w.face_above}};
}

void to_json(json& j, const FoxDecision& d) {
    j = json::object();
    j["verdict"] = d.yes ? "yes" : "no";
    j["yes"] = d.yes;
    j["components"] = json::array();
    for (const auto& c : d.components) {
        json cj{{"vertices", c.vertices}, {"edge_count", c.edge_count}, {"tree", c.tree}};
        cj["witness"] = c.witness ? json(*c.witness) : json(nullptr);
        j["components"].push_back(std::move(cj));
    }
    j["witness"] = d.witness ? json(*d.witness) : json(nullptr);
}

void to_json(json& j, const OracleReport& r) {
    j = {{"ok", r.ok},
         {"failure", r.failure},
         {"cells", r.cells},
         {"classes", r.classes},
         {"surface_components", r.surface_components},
         {"graph_components", r.graph_components}};
}

void to_json(json& j, const ThickThin& t) { j = {{"thick", t.thick}, {"thin", t.thin}}; }

void to_json(json& j, const LeveledGraph& g) {
    j = json::object();
    j["vertices"] = json::array();
    for (const auto& v : g.vertices()) {
        j["vertices"].push_back({{"id", v.id}, {"height", v.height}, {"kind", vertex_kind_name(v.kind)}});
    }
    j["edges"] = json::array();
    for (const auto& [a, b] : g.edges()) {
        j["edges"].push_back({g.vertices()[a].id, g.vertices()[b].id});
    }
    j["tiny_circles"] = g.tiny_circles();
}

void to_json(json& j, const UnknotCertificate& c) {
    j = json::object();
    j["rule"] = rule_name(c.rule);
    j["split_height"] = c.split_height ? json(*c.split_height) : json(nullptr);
    j["sub"] = json::array();
    for (const auto& s : c.sub) j["sub"].push_back(s);
}

void to_json(json& j, const HandlebodySum& s) {
    j = json::object();
    j["ambient"] = ambient_name(s.ambient);
    j["total_genus"] = s.total_genus();
    j["summands"] = json::array();
    for (const auto& h : s.summands) {
        j["summands"].push_back({{"chi", h.chi},
                                 {"boundary_points", h.boundary_points},
                                 {"genus", h.genus},
                                 {"punctured", h.punctured}});
    }
}

void to_json(json& j, const EquivalenceReport& r) {
    j = {{"equivalent", r.equivalent}, {"mismatches", r.mismatches}};
}

void to_json(json& j, const BipartiteGraph& g) {
    j = json::object();
    j["a_count"] = g.a_count;
    j["b_count"] = g.b_count;
    j["edges"] = json::array();
    for (const auto& [a, b] : g.edges) j["edges"].push_back({a, b});
    j["designated"] = g.designated ? json(*g.designated) : json(nullptr);
}

void from_json(const json& j, BipartiteGraph& g) {
    g = BipartiteGraph{};
    g.a_count = j.at("a_count").get<int>();
    g.b_count = j.at("b_count").get<int>();
    for (const auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("designated") && !j.at("designated").is_null()) g.designated = j.at("designated").get<int>();
}

void to_json(json& j, const BipartiteEmbedding& e) {
    j = json::object();
    j["graph"] = e.graph;
    j["ell"] = e.ell;
    j["layer_inset"] = layer_inset();
    j["a_vertices"] = json::array();
    for (std::size_t i = 0; i < e.a_input.size(); ++i) {
        int p = static_cast<int>(i);
        Point3 pt = e.a_point(p);
        j["a_vertices"].push_back({{"label", vertex_label(true, p)},
                                   {"input", e.a_input[i]},
                                   {"distance", e.a_distance[i]},
                                   {"component", e.a_component[i]},
                                   {"point", {pt.x, pt.y, pt.z}}});
    }
    j["b_vertices"] = json::array();
    for (std::size_t i = 0; i < e.b_input.size(); ++i) {
        int p = static_cast<int>(i);
        Point3 pt = e.b_point(p);
        j["b_vertices"].push_back({{"label", vertex_label(false, p)},
                                   {"input", e.b_input[i]},
                                   {"distance", e.b_distance[i]},
                                   {"component", e.b_component[i]},
                                   {"point", {pt.x, pt.y, pt.z}}});
    }
    j["components"] = json::array();
    for (const auto& c : e.components) {
        j["components"].push_back({{"root_edge", c.root_edge},
                                   {"a_vertices", c.a_vertices},
                                   {"b_vertices", c.b_vertices},
                                   {"edge_count", c.edge_count},
                                   {"stages", c.stages}});
    }
    j["edges"] = json::array();
    for (const auto& ed : e.edges) {
        json poly = json::array();
        for (const auto& p : ed.polyline) poly.push_back({p.x, p.y, p.z});
        j["edges"].push_back({{"id", ed.id},
                              {"a", ed.a},
                              {"b", ed.b},
                              {"stage", ed.stage},
                              {"root", ed.root},
                              {"z", ed.z},
                              {"polyline", std::move(poly)}});
    }
}

void to_json(json& j, const SlideSchedule& s) {
    j = json::object();
    j["slides"] = s.slide_count();
    j["tiny_circles"] = s.tiny_circles();
    j["moves"] = json::array();
    for (const auto& m : s.moves) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, SlideOver>) {
                    j["moves"].push_back(
                        {{"op", "slide"}, {"moving", x.moving}, {"anchor", x.anchor}, {"shared", x.shared}});
                } else if constexpr (std::is_same_v<T, CollapseParallel>) {
                    j["moves"].push_back({{"op", "collapse"},
                                          {"moving", x.moving},
                                          {"onto", x.onto},
                                          {"tiny_circle", x.tiny_circle}});
                } else {
                    j["moves"].push_back({{"op", "translate"}, {"stage", x.stage}, {"height", x.height}});
                }
            },
            m);
    }
}

void from_json(const json& j, SlideSchedule& s) {
    s = SlideSchedule{};
    for (const auto& m : j.at("moves")) {
        std::string op = m.at("op").get<std::string>();
        if (op == "slide") {
            s.moves.push_back(SlideOver{m.at("moving").get<int>(), m.at("anchor").get<int>(),
                                        m.at("shared").get<std::string>()});
        } else if (op == "collapse") {
            s.moves.push_back(CollapseParallel{m.at("moving").get<int>(), m.at("onto").get<int>(),
                                               m.at("tiny_circle").get<std::string>()});
        } else if (op == "translate") {
            s.moves.push_back(TranslateLayer{m.at("stage").get<int>(), m.at("height").get<Rational>()});
        } else {
            throw ParseError(0, 0, "unknown schedule move '" + op + "'");
        }
    }
}

void to_json(json& j, const ReplayReport& r) {
    j = {{"pass", r.pass},
         {"applied", r.applied},
         {"failed_move", r.failed_move ? json(*r.failed_move) : json(nullptr)},
         {"reason", r.reason},
         {"tiny_per_component", r.tiny_per_component}};
}

void to_json(json& j, const GluingGraph& g) {
    j = {{"graph", g.graph}, {"a_labels", g.a_labels}, {"b_labels", g.b_labels}, {"edge_labels", g.edge_labels}};
}

void from_json(const json& j, GluingGraph& g) {
    g.graph = j.at("graph").get<BipartiteGraph>();
    g.a_labels = j.at("a_labels").get<std::vector<std::string>>();
    g.b_labels = j.at("b_labels").get<std::vector<std::string>>();
    g.edge_labels = j.at("edge_labels").get<std::vector<std::string>>();
}

void to_json(json& j, const BraidMove& b) {
    j = {{"gap", b.gap}, {"face", b.face}, {"gluing_graph", b.gluing}};
}

void from_json(const json& j, BraidMove& b) {
    b.gap = j.at("gap").get<int>();
    b.face = j.at("face").get<std::string>();
    b.gluing = j.at("gluing_graph").get<GluingGraph>();
}

void to_json(json& j, const PlanStep& s) {
    j = json::object();
    j["kind"] = step_kind_name(s.kind);
    if (s.kind == StepKind::nested_interval) {
        j["interval"] = {{"face", s.face}, {"lo_gap", s.lo_gap}, {"hi_gap", s.hi_gap}};
        j["gamma_vertices"] = s.gamma_vertices;
        if (s.certificate) {
            json chain = json::array();
            for (const auto& c : s.certificate->chain) {
                json cj{{"event", c.event}, {"kind", chain_kind_name(c.kind)}};
                if (c.braid) cj["braid_move"] = *c.braid;
                chain.push_back(std::move(cj));
            }
            j["certificate"] = {{"chain", std::move(chain)}, {"graph_rule", rule_name(s.certificate->graph_rule)}};
        } else {
            j["certificate"] = nullptr;
        }
    } else {
        j["saddle"] = {{"event", s.saddle},
                       {"orientation", vertical_name(s.orientation)},
                       {"via_reflection", s.via_reflection}};
        if (s.braid) j["braid_move"] = *s.braid;
    }
    j["children"] = json::array();
    for (const auto& c : s.children) j["children"].push_back(c);
}

void from_json(const json& j, PlanStep& s) {
    s = PlanStep{};
    s.kind = parse_step_kind(j.at("kind").get<std::string>());
    if (s.kind == StepKind::nested_interval) {
        const json& iv = j.at("interval");
        s.face = iv.at("face").get<std::string>();
        s.lo_gap = iv.at("lo_gap").get<int>();
        s.hi_gap = iv.at("hi_gap").get<int>();
        if (j.contains("gamma_vertices")) s.gamma_vertices = j.at("gamma_vertices").get<std::vector<int>>();
        if (j.contains("certificate") && !j.at("certificate").is_null()) {
            LeafCertificate cert;
            const json& cj = j.at("certificate");
            for (const auto& c : cj.at("chain")) {
                ChainStep step;
                step.event = c.at("event").get<int>();
                step.kind = parse_chain_kind(c.at("kind").get<std::string>());
                if (c.contains("braid_move") && !c.at("braid_move").is_null()) {
                    step.braid = c.at("braid_move").get<BraidMove>();
                }
                cert.chain.push_back(std::move(step));
            }
            cert.graph_rule = parse_rule(cj.at("graph_rule").get<std::string>());
            s.certificate = std::move(cert);
        }
    } else {
        const json& sd = j.at("saddle");
        s.saddle = sd.at("event").get<int>();
        s.orientation = parse_vertical(sd.at("orientation").get<std::string>());
        s.via_reflection = sd.at("via_reflection").get<bool>();
        if (j.contains("braid_move") && !j.at("braid_move").is_null()) s.braid = j.at("braid_move").get<BraidMove>();
    }
    if (j.contains("children")) {
        for (const auto& c : j.at("children")) s.children.push_back(c.get<PlanStep>());
    }
}

void to_json(json& j, const TerminalClaim& t) {
    j = {{"genera", t.genera},
         {"punctured", t.punctured},
         {"component", t.component},
         {"total_genus", t.total_genus()}};
}

void from_json(const json& j, TerminalClaim& t) {
    t.genera = j.at("genera").get<std::vector<int>>();
    t.punctured = j.at("punctured").get<std::vector<bool>>();
    t.component = j.at("component").get<std::vector<int>>();
}

void to_json(json& j, const ReimbeddingPlan& p) {
    j = json::object();
    j["name"] = p.name;
    j["leaves"] = p.leaf_count();
    j["braid_moves"] = p.braid_moves();
    j["roots"] = json::array();
    for (const auto& r : p.roots) j["roots"].push_back(r);
    j["terminal"] = p.terminal;
}

void from_json(const json& j, ReimbeddingPlan& p) {
    p = ReimbeddingPlan{};
    p.name = j.value("name", "");
    for (const auto& r : j.at("roots")) p.roots.push_back(r.get<PlanStep>());
    p.terminal = j.at("terminal").get<TerminalClaim>();
}

void to_json(json& j, const PlanReport& r) {
    j = {{"pass", r.pass},
         {"failures", r.failures},
         {"steps_checked", r.steps_checked},
         {"braid_moves_checked", r.braid_moves_checked}};
}

ReimbeddingPlan parse_plan(const std::string& text) {
    try {
        return unwrap(json::parse(text), "plan").get<ReimbeddingPlan>();
    } catch (const json::exception& e) {
        throw ParseError(0, 0, std::string("malformed plan: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, 0, std::string("malformed plan: ") + e.what());
    }
}

SlideSchedule parse_schedule(const std::string& text) {
    try {
        return unwrap(json::parse(text), "schedule").get<SlideSchedule>();
    } catch (const json::exception& e) {
        throw ParseError(0, 0, std::string("malformed schedule: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, 0, std::string("malformed schedule: ") + e.what());
    }
}

}  // namespace ppt
