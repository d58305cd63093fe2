// ppt: command-line front end for planar presentations.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ppt/bipartite.hpp"
#include "ppt/connectivity.hpp"
#include "ppt/dsl.hpp"
#include "ppt/error.hpp"
#include "ppt/generate.hpp"
#include "ppt/heegaard.hpp"
#include "ppt/json_io.hpp"
#include "ppt/knot_width.hpp"
#include "ppt/leveled_graph.hpp"
#include "ppt/sweep.hpp"

namespace {

using ppt::json;

struct Config {
    std::string format = "json";
    std::string out;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    bool verbose = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ppt::ParseError(0, 0, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ppt::PreconditionError("cannot write " + cfg.out);
    out << text;
}

void emit_json(const Config& cfg, const std::string& command, const std::string& fixture, json result) {
    emit(cfg, ppt::make_report(command, fixture, cfg.seed, std::move(result)).dump(2) + "\n");
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (cfg.format == f) return;
    }
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
    throw UsageError("format '" + cfg.format + "' is not available here (choose " + list + ")");
}

ppt::Presentation load_presentation(const std::string& path) {
    return ppt::parse_presentation(read_file(path), stem(path));
}

// Runs `work(i)` for i in [0, n) on cfg.jobs threads; results land by index.
template <class R, class F>
std::vector<R> parallel_map(int n, int jobs, F work) {
    std::vector<R> out(static_cast<std::size_t>(n));
    jobs = std::max(1, std::min(jobs, n));
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += jobs) out[static_cast<std::size_t>(i)] = work(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

ppt::KnotWord word_from(const std::string& word, const std::string& file) {
    if (!word.empty()) return ppt::KnotWord::parse(word);
    if (!file.empty()) return ppt::KnotWord::parse(read_file(file));
    throw UsageError("give --word or a word file");
}

struct OracleOutcome {
    std::string source;
    bool ok = true;
    std::string failure;
    int events = 0;
};

OracleOutcome oracle_one(const ppt::Presentation& p, std::string source) {
    OracleOutcome o;
    o.source = std::move(source);
    o.events = static_cast<int>(p.events.size());
    try {
        ppt::Trace t = ppt::simulate(p);
        for (int gap = 0; gap <= t.event_count(); ++gap) {
            if (auto v = t.at_gap(gap).violation()) {
                o.ok = false;
                o.failure = "gap " + std::to_string(gap) + ": " + *v;
                return o;
            }
        }
        ppt::OracleReport r = ppt::oracle_check(t, ppt::build_connectivity(t));
        o.ok = r.ok;
        o.failure = r.failure;
    } catch (const std::exception& e) {
        o.ok = false;
        o.failure = e.what();
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar presentations of 3-manifolds in S^3: sweeps, connectivity, widths, plans"};
    app.set_version_flag("--version", ppt::version());
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--format", cfg.format, "Output format: json, dot, csv, svg, lg")
        ->check(CLI::IsMember({"json", "dot", "csv", "svg", "lg"}));
    app.add_option("--out", cfg.out, "Write to this file instead of standard output");
    app.add_option("--seed", cfg.seed, "Seed for randomized runs (recorded in the report)");
    app.add_option("--jobs", cfg.jobs, "Worker threads for enumeration and oracle runs")->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", cfg.verbose, "Progress notes on standard error");

    std::string input;
    std::vector<std::string> inputs;

    auto* validate = app.add_subcommand("validate", "Simulate a presentation and report its trace");
    validate->add_option("file", input, ".pp file")->required();

    auto* connectivity = app.add_subcommand("connectivity", "Connectivity graph (JSON or DOT)");
    connectivity->add_option("file", input, ".pp file")->required();

    auto* fox = app.add_subcommand("fox", "Decide whether the connectivity graph is a forest");
    fox->add_option("file", input, ".pp file")->required();

    int random_count = 0;
    int max_events = 30;
    auto* oracle = app.add_subcommand("oracle", "Cross-check connectivity by slab cells");
    oracle->add_option("files", inputs, ".pp files");
    oracle->add_option("--random", random_count, "Number of random presentations")->check(CLI::NonNegativeNumber);
    oracle->add_option("--max-events", max_events, "Event budget for random presentations")
        ->check(CLI::PositiveNumber);

    std::string word, word_file;
    bool check_formula = false;
    auto* width = app.add_subcommand("width", "Width of a knot's Morse word");
    width->add_option("--word", word, "Letters m (minimum) and M (maximum), bottom to top");
    width->add_option("file", word_file, "File holding the word");
    width->add_flag("--check-formula", check_formula, "Also evaluate the thick/thin formula");

    auto* thickthin = app.add_subcommand("thickthin", "Thick and thin levels of a Morse word");
    thickthin->add_option("--word", word, "Morse word");
    thickthin->add_option("file", word_file, "File holding the word");

    int n_events = 0;
    bool list_words = false;
    auto* enumerate = app.add_subcommand("enumerate", "All Morse words with n events, checking the formula");
    enumerate->add_option("--events", n_events, "Even number of events")->required();
    enumerate->add_flag("--list", list_words, "Include every word and its width");

    int first = 0, last = 0;
    std::string face;
    auto* extract = app.add_subcommand("extract", "Leveled graph of a nested piece (JSON or .lg)");
    extract->add_option("file", input, ".pp file")->required();
    extract->add_option("--first", first, "First event")->required();
    extract->add_option("--last", last, "Last event")->required();
    extract->add_option("--face", face, "In-face just below the first event")->required();

    auto* certify = app.add_subcommand("certify", "Look for an unknottedness certificate");
    certify->add_option("file", input, ".lg file")->required();

    std::string ambient = "ball";
    auto* complement = app.add_subcommand("complement", "Handlebody structure of a certified graph's complement");
    complement->add_option("file", input, ".lg file")->required();
    complement->add_option("--ambient", ambient, "ball, sphere or shell")
        ->check(CLI::IsMember({"ball", "sphere", "shell"}));

    auto* embed = app.add_subcommand("embed", "Layered embedding of a bipartite graph (JSON or SVG)");
    embed->add_option("file", input, ".bg file")->required();

    auto* flatten = app.add_subcommand("flatten", "Edge-slide schedule flattening the embedding");
    flatten->add_option("file", input, ".bg file")->required();

    std::string schedule_file;
    auto* replay = app.add_subcommand("replay", "Replay a slide schedule against the embedding");
    replay->add_option("file", input, ".bg file")->required();
    replay->add_option("--schedule", schedule_file, "Schedule JSON (defaults to the computed one)");

    std::optional<int> root_gap;
    std::string root_face;
    auto* plan = app.add_subcommand("plan", "Reimbedding plan for a presentation whose graph is a tree");
    plan->add_option("file", input, ".pp file")->required();
    plan->add_option("--root-gap", root_gap, "Root the plan at the piece containing this gap...");
    plan->add_option("--root-face", root_face, "...and this in-face");

    std::string plan_file;
    auto* verify = app.add_subcommand("verify-plan", "Audit a reimbedding plan");
    verify->add_option("file", input, ".pp file")->required();
    verify->add_option("--plan", plan_file, "Plan JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) {
            ppt::Presentation p = load_presentation(input);
            ppt::Trace t = ppt::simulate(p);
            require_format(cfg, {"json", "csv"});
            if (cfg.format == "csv") {
                std::ostringstream out;
                out << "gap,inside_faces\n";
                for (std::size_t g = 0; g < t.census.size(); ++g) out << g << ',' << t.census[g] << '\n';
                emit(cfg, out.str());
            } else {
                emit_json(cfg, "validate", p.name, json(t));
            }
        } else if (*connectivity) {
            ppt::Presentation p = load_presentation(input);
            ppt::ConnectivityGraph g = ppt::build_connectivity(ppt::simulate(p));
            require_format(cfg, {"json", "dot"});
            if (cfg.format == "dot") emit(cfg, ppt::to_dot(g));
            else emit_json(cfg, "connectivity", p.name, json(g));
        } else if (*fox) {
            require_format(cfg, {"json"});
            ppt::Presentation p = load_presentation(input);
            emit_json(cfg, "fox", p.name, json(ppt::fox_decision(ppt::build_connectivity(ppt::simulate(p)))));
        } else if (*oracle) {
            require_format(cfg, {"json"});
            std::vector<OracleOutcome> outcomes;
            for (const auto& f : inputs) outcomes.push_back(oracle_one(load_presentation(f), stem(f)));
            if (random_count > 0) {
                if (!cfg.seed) cfg.seed = 1;
                std::mt19937_64 master(*cfg.seed);
                std::vector<std::uint64_t> seeds(static_cast<std::size_t>(random_count));
                for (auto& s : seeds) s = master();
                ppt::RandomOptions opt;
                opt.max_events = max_events;
                auto rnd = parallel_map<OracleOutcome>(random_count, cfg.jobs, [&](int i) {
                    std::mt19937_64 rng(seeds[static_cast<std::size_t>(i)]);
                    return oracle_one(ppt::random_presentation(rng, opt), "random#" + std::to_string(i));
                });
                outcomes.insert(outcomes.end(), rnd.begin(), rnd.end());
            }
            json failures = json::array();
            int max_seen = 0;
            for (const auto& o : outcomes) {
                max_seen = std::max(max_seen, o.events);
                if (!o.ok) failures.push_back({{"source", o.source}, {"failure", o.failure}});
            }
            json result{{"checked", outcomes.size()},
                        {"random", random_count},
                        {"max_events", max_events},
                        {"largest_presentation", max_seen},
                        {"failures", failures},
                        {"ok", failures.empty()}};
            emit_json(cfg, "oracle", inputs.empty() ? "random" : stem(inputs.front()), std::move(result));
        } else if (*width) {
            require_format(cfg, {"json"});
            ppt::KnotWord w = word_from(word, word_file);
            json result{{"word", w.letters()}, {"events", w.size()}, {"width", ppt::width(w)}};
            if (check_formula) {
                auto f = ppt::width_formula(ppt::thick_thin(w));
                result["formula"] = f;
                result["agree"] = f == ppt::width(w);
            }
            emit_json(cfg, "width", word_file.empty() ? "word" : stem(word_file), std::move(result));
        } else if (*thickthin) {
            require_format(cfg, {"json", "csv"});
            ppt::KnotWord w = word_from(word, word_file);
            ppt::ThickThin tt = ppt::thick_thin(w);
            if (cfg.format == "csv") {
                std::ostringstream out;
                out << "level,dots\n";
                for (int i = 1; i < w.size(); ++i) out << i << ',' << w.dots(i) << '\n';
                emit(cfg, out.str());
            } else {
                json result = tt;
                std::vector<int> dots;
                for (int i = 0; i <= w.size(); ++i) dots.push_back(w.dots(i));
                result["word"] = w.letters();
                result["dots"] = dots;
                emit_json(cfg, "thickthin", word_file.empty() ? "word" : stem(word_file), std::move(result));
            }
        } else if (*enumerate) {
            require_format(cfg, {"json"});
            std::vector<ppt::KnotWord> words = ppt::enumerate_words(n_events);
            struct Row {
                std::int64_t width = 0;
                std::int64_t formula = 0;
            };
            auto rows = parallel_map<Row>(static_cast<int>(words.size()), cfg.jobs, [&](int i) {
                const auto& w = words[static_cast<std::size_t>(i)];
                return Row{ppt::width(w), ppt::width_formula(ppt::thick_thin(w))};
            });
            int disagree = 0;
            std::int64_t min_w = 0, max_w = 0;
            json listed = json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                disagree += rows[i].width != rows[i].formula;
                min_w = i == 0 ? rows[i].width : std::min(min_w, rows[i].width);
                max_w = i == 0 ? rows[i].width : std::max(max_w, rows[i].width);
                if (list_words) listed.push_back({{"word", words[i].letters()}, {"width", rows[i].width}});
            }
            json result{{"events", n_events},
                        {"count", words.size()},
                        {"disagreements", disagree},
                        {"agree", disagree == 0},
                        {"min_width", min_w},
                        {"max_width", max_w}};
            if (list_words) result["words"] = std::move(listed);
            emit_json(cfg, "enumerate", "n" + std::to_string(n_events), std::move(result));
        } else if (*extract) {
            require_format(cfg, {"json", "lg"});
            ppt::Presentation p = load_presentation(input);
            ppt::LeveledGraph g = ppt::extract_leveled_graph(ppt::simulate(p), first, last, face);
            if (cfg.format == "lg") {
                emit(cfg, ppt::format_leveled_graph(g));
            } else {
                json result{{"first", first}, {"last", last}, {"face", face}, {"graph", g}};
                emit_json(cfg, "extract", p.name, std::move(result));
            }
        } else if (*certify) {
            require_format(cfg, {"json"});
            ppt::LeveledGraph g = ppt::parse_leveled_graph(read_file(input));
            if (auto v = g.violation()) throw ppt::PreconditionError("not a leveled graph: " + *v);
            ppt::UnknotCertificate c = ppt::check_unknotted(g);
            json result{{"certificate", c}, {"verified", ppt::verify_certificate(g, c)}};
            emit_json(cfg, "certify", stem(input), std::move(result));
        } else if (*complement) {
            require_format(cfg, {"json"});
            ppt::LeveledGraph g = ppt::parse_leveled_graph(read_file(input));
            if (auto v = g.violation()) throw ppt::PreconditionError("not a leveled graph: " + *v);
            ppt::Ambient a = ambient == "sphere" ? ppt::Ambient::sphere
                             : ambient == "shell" ? ppt::Ambient::shell
                                                  : ppt::Ambient::ball;
            ppt::UnknotCertificate c = ppt::check_unknotted(g);
            json result{{"certificate", c}, {"structure", ppt::complement_structure(g, c, a)}};
            emit_json(cfg, "complement", stem(input), std::move(result));
        } else if (*embed) {
            require_format(cfg, {"json", "svg"});
            ppt::BipartiteEmbedding e = ppt::embed_bipartite(ppt::parse_bipartite(read_file(input)));
            if (cfg.format == "svg") emit(cfg, ppt::to_svg(e));
            else emit_json(cfg, "embed", stem(input), json(e));
        } else if (*flatten) {
            require_format(cfg, {"json"});
            ppt::BipartiteEmbedding e = ppt::embed_bipartite(ppt::parse_bipartite(read_file(input)));
            emit_json(cfg, "flatten", stem(input), json{{"schedule", ppt::flatten(e)}});
        } else if (*replay) {
            require_format(cfg, {"json"});
            ppt::BipartiteEmbedding e = ppt::embed_bipartite(ppt::parse_bipartite(read_file(input)));
            ppt::SlideSchedule s =
                schedule_file.empty() ? ppt::flatten(e) : ppt::parse_schedule(read_file(schedule_file));
            emit_json(cfg, "replay", stem(input), json(ppt::replay(e, s)));
        } else if (*plan) {
            require_format(cfg, {"json"});
            ppt::Presentation p = load_presentation(input);
            ppt::PlanOptions opt;
            if (root_gap.has_value() != !root_face.empty()) {
                throw UsageError("--root-gap and --root-face go together");
            }
            if (root_gap) opt.root = std::pair(*root_gap, root_face);
            emit_json(cfg, "plan", p.name, json(ppt::plan_reimbedding(p, opt)));
        } else if (*verify) {
            require_format(cfg, {"json"});
            ppt::Presentation p = load_presentation(input);
            ppt::ReimbeddingPlan pl = ppt::parse_plan(read_file(plan_file));
            emit_json(cfg, "verify-plan", p.name, json(ppt::verify_plan(p, pl)));
        }
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 1;
    } catch (const ppt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const ppt::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return 2;
    } catch (const ppt::NotATreeError& e) {
        std::cerr << "NotATree: " << e.what() << '\n';
        return 3;
    } catch (const ppt::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
