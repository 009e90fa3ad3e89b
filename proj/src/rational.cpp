#include "gmas/rational.hpp"

#include <algorithm>
#include <cctype>

namespace gmas {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Integer with optional sign.
mpz_class parse_integer(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    bool negative = false;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) throw RationalParseError(std::string(whole));
    mpz_class z(std::string(digits), 10);
    return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw RationalParseError("");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw RationalParseError(std::string(text));
        mpz_class den(std::string(den_text), 10);
        if (den == 0) throw RationalParseError(std::string(text));
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // Decimal: [sign] digits [. digits] [e|E [sign] digits]
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        mpz_class ez = parse_integer(text.substr(e + 1), text);
        if (!ez.fits_slong_p() || abs(ez) > 4096) throw RationalParseError(std::string(text));
        exponent = ez.get_si();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw RationalParseError(std::string(text));
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw RationalParseError(std::string(text));

    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits, 10);
    exponent -= static_cast<long>(frac_part.size());

    Rational q;
    if (exponent >= 0) {
        q = Rational(num * pow10(static_cast<unsigned long>(exponent)));
    } else {
        q = Rational(num, pow10(static_cast<unsigned long>(-exponent)));
        q.canonicalize();
    }
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<double> to_double(std::span<const Rational> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_d());
    return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace gmas
