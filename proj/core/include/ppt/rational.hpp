#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ppt {

/// Exact rational with 64-bit parts, always in lowest terms with positive
/// denominator. Heights in leveled graphs use it so midpoints stay exact.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p", "p/q", or a decimal such as "-0.375". Throws std::invalid_argument.
    static Rational parse(std::string_view text);
    /// "p" or "p/q".
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace ppt
