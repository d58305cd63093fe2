#include "ppt/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "ppt/error.hpp"

namespace ppt {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineScanner {
public:
    LineScanner(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

    std::string identifier(const char* what) {
        skip_space();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
            fail(std::string("expected ") + what);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void keyword(std::string_view kw) {
        int col = (skip_space(), column());
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (text_.substr(start, pos_ - start) != kw) {
            throw ParseError(line_, col, "expected '" + std::string(kw) + "'");
        }
    }

    void punct(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double number() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string tok(text_.substr(start, pos_ - start));
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            pos_ = start;
            fail("expected a height after '@'");
        }
    }

private:
    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

/// Tracks every identifier ever introduced so references can be resolved
/// and redefinitions rejected at parse time. Liveness is left to the sweep.
class Symbols {
public:
    explicit Symbols(bool resolve = true) : resolve_(resolve) { faces_.insert(LevelState::initial_face); }

    void define_circle(LineScanner& s, const std::string& id, int col) { define(s, circles_, id, col, "circle"); }
    void define_face(LineScanner& s, const std::string& id, int col) { define(s, faces_, id, col, "face"); }
    void use_circle(int line, int col, const std::string& id) const { use(line, col, circles_, id, "circle"); }
    void use_face(int line, int col, const std::string& id) const { use(line, col, faces_, id, "face"); }
    void set_line(int line) { line_ = line; }

private:
    void define(LineScanner&, std::set<std::string>& table, const std::string& id, int col,
                const char* what) {
        if (!resolve_) return;
        if (circles_.count(id) || faces_.count(id)) {
            throw ParseError(line_, col, std::string("redefinition of ") + what + " " + id);
        }
        table.insert(id);
    }
    void use(int line, int col, const std::set<std::string>& table, const std::string& id,
             const char* what) const {
        if (resolve_ && !table.count(id)) {
            throw ParseError(line, col, std::string("unknown ") + what + " " + id);
        }
    }

    bool resolve_;
    std::set<std::string> circles_;
    std::set<std::string> faces_;
    int line_ = 0;
};

MorseEvent parse_line(LineScanner& s, Symbols& sym, int line) {
    sym.set_line(line);
    auto next_ident = [&](const char* what, int& col) {
        col = (s.skip_space(), s.column());
        return s.identifier(what);
    };
    int col0 = (s.skip_space(), s.column());
    std::string verb = s.identifier("an event keyword (min, max, merge, split)");
    MorseEvent ev;
    ev.line = line;
    int col = 0;
    if (verb == "min") {
        Birth b;
        b.circle = next_ident("a circle", col);
        sym.define_circle(s, b.circle, col);
        s.keyword("in");
        b.host_face = next_ident("a face", col);
        sym.use_face(line, col, b.host_face);
        s.keyword("new");
        b.new_face = next_ident("a face", col);
        sym.define_face(s, b.new_face, col);
        ev.kind = b;
    } else if (verb == "max") {
        Death d;
        d.circle = next_ident("a circle", col);
        sym.use_circle(line, col, d.circle);
        ev.kind = d;
    } else if (verb == "merge") {
        Merge m;
        int col_a = 0;
        m.circle_a = next_ident("a circle", col_a);
        sym.use_circle(line, col_a, m.circle_a);
        m.circle_b = next_ident("a circle", col);
        sym.use_circle(line, col, m.circle_b);
        if (m.circle_a == m.circle_b) {
            throw ParseError(line, col, "merge with identical circles " + m.circle_a);
        }
        s.keyword("in");
        m.via_face = next_ident("a face", col);
        sym.use_face(line, col, m.via_face);
        s.keyword("as");
        m.new_circle = next_ident("a circle", col);
        sym.define_circle(s, m.new_circle, col);
        ev.kind = m;
    } else if (verb == "split") {
        Split sp;
        sp.circle = next_ident("a circle", col);
        sym.use_circle(line, col, sp.circle);
        s.keyword("thru");
        sp.via_face = next_ident("a face", col);
        sym.use_face(line, col, sp.via_face);
        s.keyword("as");
        sp.new_circle_a = next_ident("a circle", col);
        sym.define_circle(s, sp.new_circle_a, col);
        s.punct(':');
        sp.new_face_a = next_ident("a face", col);
        sym.define_face(s, sp.new_face_a, col);
        s.punct('[');
        while (s.peek() != ']') {
            if (s.peek() == '\0') s.fail("unterminated circle list");
            std::string c = next_ident("a circle", col);
            sym.use_circle(line, col, c);
            sp.side_a.push_back(c);
            if (s.peek() == ',') s.punct(',');
        }
        s.punct(']');
        sp.new_circle_b = next_ident("a circle", col);
        sym.define_circle(s, sp.new_circle_b, col);
        s.punct(':');
        sp.new_face_b = next_ident("a face", col);
        sym.define_face(s, sp.new_face_b, col);
        ev.kind = sp;
    } else {
        throw ParseError(line, col0, "unknown event keyword '" + verb + "'");
    }
    if (s.peek() == '@') {
        s.punct('@');
        ev.height = s.number();
    }
    if (!s.at_end()) s.fail("unexpected trailing text");
    return ev;
}

}  // namespace

Presentation parse_presentation(std::string_view text, std::string name) {
    // First pass: syntax and heights only. Identifiers are resolved in event
    // order, which heights may change, so that waits for the second pass.
    std::vector<std::pair<int, std::string_view>> lines;
    std::vector<MorseEvent> events;
    Symbols lax(false);
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        LineScanner s(raw, line_no);
        if (!s.at_end()) {
            events.push_back(parse_line(s, lax, line_no));
            lines.emplace_back(line_no, raw);
        }
        if (end == text.size()) break;
    }
    if (events.empty()) {
        throw ParseError(0, 0, "empty presentation");
    }

    std::size_t with_height = std::count_if(events.begin(), events.end(),
                                            [](const MorseEvent& e) { return e.height.has_value(); });
    if (with_height != 0 && with_height != events.size()) {
        auto it = std::find_if(events.begin(), events.end(),
                               [](const MorseEvent& e) { return !e.height.has_value(); });
        throw ParseError(it->line, 1, "heights must be given on every line or on none");
    }
    std::vector<std::size_t> order(events.size());
    std::iota(order.begin(), order.end(), 0);
    if (with_height != 0) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return *events[a].height < *events[b].height; });
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (*events[order[i]].height == *events[order[i - 1]].height) {
                throw ParseError(events[order[i]].line, 1,
                                 "non-generic input: two events at height " +
                                     std::to_string(*events[order[i]].height));
            }
        }
    }

    Presentation p;
    p.name = std::move(name);
    Symbols sym;
    for (std::size_t i : order) {
        LineScanner s(lines[i].second, lines[i].first);
        p.events.push_back(parse_line(s, sym, lines[i].first));
        p.events.back().ordinal = static_cast<int>(p.events.size());
    }
    return p;
}

std::string format_event(const MorseEvent& e) {
    std::ostringstream out;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Birth>) {
                out << "min " << k.circle << " in " << k.host_face << " new " << k.new_face;
            } else if constexpr (std::is_same_v<T, Death>) {
                out << "max " << k.circle;
            } else if constexpr (std::is_same_v<T, Merge>) {
                out << "merge " << k.circle_a << ' ' << k.circle_b << " in " << k.via_face << " as "
                    << k.new_circle;
            } else {
                out << "split " << k.circle << " thru " << k.via_face << " as " << k.new_circle_a
                    << ':' << k.new_face_a << '[';
                for (std::size_t i = 0; i < k.side_a.size(); ++i) {
                    out << (i ? "," : "") << k.side_a[i];
                }
                out << "] " << k.new_circle_b << ':' << k.new_face_b;
            }
        },
        e.kind);
    return out.str();
}

std::string format_presentation(const Presentation& p) {
    std::ostringstream out;
    if (!p.name.empty()) out << "# " << p.name << '\n';
    for (const auto& e : p.events) out << format_event(e) << '\n';
    return out.str();
}

}  // namespace ppt
