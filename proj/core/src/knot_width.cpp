#include "ppt/knot_width.hpp"

#include <algorithm>
#include <cctype>

#include "ppt/error.hpp"

namespace ppt {

KnotWord KnotWord::parse(std::string_view text) {
    KnotWord w;
    w.dots_.push_back(0);
    int line = 1, col = 0;
    for (char ch : text) {
        ++col;
        if (ch == '\n') {
            ++line;
            col = 0;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch != 'm' && ch != 'M') {
            throw ParseError(line, col, std::string("bad character '") + ch + "' in knot word");
        }
        if (w.dots_.size() > 1 && w.dots_.back() == 0) {
            throw ParseError(line, col, "level with no strands inside the word");
        }
        w.letters_.push_back(ch);
        w.dots_.push_back(w.dots_.back() + (ch == 'm' ? 1 : -1));
        if (w.dots_.back() < 0) {
            throw ParseError(line, col, "maximum with no strands below it");
        }
    }
    if (w.letters_.empty()) throw ParseError(0, 0, "empty knot word");
    if (w.dots_.back() != 0) throw ParseError(0, 0, "knot word does not close up");
    return w;
}

int KnotWord::max_dots() const { return *std::max_element(dots_.begin(), dots_.end()); }

std::int64_t width(const KnotWord& w) {
    std::int64_t total = 0;
    for (int i = 1; i < w.size(); ++i) total += 2 * w.dots(i);
    return total;
}

ThickThin thick_thin(const KnotWord& w) {
    ThickThin d;
    const auto& s = w.letters();
    for (int i = 1; i < w.size(); ++i) {
        char below = s[i - 1], above = s[i];
        if (below == 'm' && above == 'M') d.thick.push_back(w.dots(i));
        if (below == 'M' && above == 'm') d.thin.push_back(w.dots(i));
    }
    return d;
}

std::int64_t width_formula(const ThickThin& d) {
    std::int64_t total = 0;
    for (int a : d.thick) total += 2 * static_cast<std::int64_t>(a) * a;
    for (int b : d.thin) total -= 2 * static_cast<std::int64_t>(b) * b;
    return total;
}

KnotWord stack(const KnotWord& w1, const KnotWord& w2) {
    std::string s = w1.letters().substr(0, w1.letters().size() - 1) + w2.letters().substr(1);
    return KnotWord::parse(s);
}

KnotWord reverse(const KnotWord& w) {
    std::string s(w.letters().rbegin(), w.letters().rend());
    for (char& c : s) c = c == 'm' ? 'M' : 'm';
    return KnotWord::parse(s);
}

void enumerate_words(int n, const std::function<void(const KnotWord&)>& visit) {
    if (n < 2 || n % 2 != 0) {
        throw PreconditionError("word length must be even and at least 2, got " + std::to_string(n));
    }
    std::string buf;
    buf.reserve(static_cast<std::size_t>(n));
    // Depth-first with 'm' tried before 'M' yields lexicographic order.
    auto rec = [&](auto&& self, int dots) -> void {
        int pos = static_cast<int>(buf.size());
        if (pos == n) {
            visit(KnotWord::parse(buf));
            return;
        }
        int left = n - pos;
        if (dots + 1 <= left - 1) {
            buf.push_back('m');
            self(self, dots + 1);
            buf.pop_back();
        }
        // A maximum may only empty the level at the very end.
        if (dots - 1 >= 1 || (dots == 1 && left == 1)) {
            buf.push_back('M');
            self(self, dots - 1);
            buf.pop_back();
        }
    };
    rec(rec, 0);
}

std::vector<KnotWord> enumerate_words(int n) {
    std::vector<KnotWord> out;
    enumerate_words(n, [&](const KnotWord& w) { out.push_back(w); });
    return out;
}

}  // namespace ppt
