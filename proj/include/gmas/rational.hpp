#ifndef GMAS_RATIONAL_HPP
#define GMAS_RATIONAL_HPP

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmas {

// GMP rationals are kept canonical by every arithmetic operation, so
// numerator and denominator are always coprime with a positive denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class RationalParseError : public std::invalid_argument {
public:
    explicit RationalParseError(const std::string& token)
        : std::invalid_argument("not a rational number: '" + token + "'") {}
};

/// Parses "p/q", integers and plain decimals ("-0.25", "1e-3") exactly.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(std::span<const Rational> v);

inline int sign(const Rational& q) { return sgn(q); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

bool is_zero(std::span<const Rational> v);

}  // namespace gmas

#endif  // GMAS_RATIONAL_HPP
