#pragma once

// Morse words of knots in S^3 (minima 'm', maxima 'M', bottom to top) and
// their width, thin and thick levels.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ppt {

class KnotWord {
public:
    /// Throws ParseError on a bad character, a proper prefix with no strands,
    /// or a word that does not close up. Whitespace is ignored.
    static KnotWord parse(std::string_view text);

    const std::string& letters() const { return letters_; }
    int size() const { return static_cast<int>(letters_.size()); }
    /// Strand pairs just above event i (0 <= i <= n).
    int dots(int i) const { return dots_.at(static_cast<std::size_t>(i)); }
    int max_dots() const;

    friend bool operator==(const KnotWord& a, const KnotWord& b) { return a.letters_ == b.letters_; }

private:
    std::string letters_;
    std::vector<int> dots_;
};

struct ThickThin {
    std::vector<int> thick;   // dots at levels between a minimum and the maximum above it
    std::vector<int> thin;    // dots at levels between a maximum and the minimum above it
};

/// Sum over the n - 1 regular levels of the number of intersection points.
std::int64_t width(const KnotWord& w);
ThickThin thick_thin(const KnotWord& w);
/// 2 * sum(thick^2) - 2 * sum(thin^2), in dot units.
std::int64_t width_formula(const ThickThin& d);

/// `w1` placed on top of `w2`: the connected sum with the top max of w1's
/// bottom part and the bottom min of w2's top part cancelled.
KnotWord stack(const KnotWord& w1, const KnotWord& w2);

/// The word read top to bottom with minima and maxima exchanged.
KnotWord reverse(const KnotWord& w);

/// Every valid word with n events in lexicographic order (m < M).
/// Throws PreconditionError if n is odd or below 2.
void enumerate_words(int n, const std::function<void(const KnotWord&)>& visit);
std::vector<KnotWord> enumerate_words(int n);

}  // namespace ppt
