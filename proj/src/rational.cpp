#include "trispline/rational.hpp"

#include "trispline/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace trispline {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("invalid rational literal '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return Rational(negative ? mpz_class(-z) : z);
}

Rational pow10(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(text.substr(0, slash), text);
        Rational den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational q = num / den;
        q.canonicalize();
        return q;
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        std::string_view digits = exp_text;
        if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
        if (!all_digits(digits) || digits.size() > 6) {
            throw ParseError("invalid exponent in '" + std::string(text) + "'");
        }
        exponent = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    auto dot = mantissa.find('.');
    if (dot == std::string_view::npos) {
        digits = std::string(mantissa);
    } else {
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw ParseError("invalid rational literal '" + std::string(text) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    }
    if (!all_digits(digits)) throw ParseError("invalid rational literal '" + std::string(text) + "'");

    Rational value(mpz_class(digits, 10));
    value *= pow10(exponent);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
    return value.get_str(10);
}

std::string to_decimal_string(const Rational& value) {
    mpz_class den = value.get_den();
    int twos = 0;
    int fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return to_string(value);

    const int places = std::max(twos, fives);
    if (places == 0) return value.get_num().get_str(10);

    Rational scaled = value * pow10(places);
    mpz_class n = scaled.get_num();  // exact integer after scaling
    const bool negative = n < 0;
    std::string s = mpz_class(abs(n)).get_str(10);
    if (static_cast<int>(s.size()) <= places) s.insert(0, static_cast<std::size_t>(places) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(places), ".");
    return negative ? "-" + s : s;
}

double to_double(const Rational& value) {
    return value.get_d();
}

}  // namespace trispline
