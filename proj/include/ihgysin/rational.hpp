#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ihgysin/linalg.hpp"

namespace ihgysin {

using Rational = mpq_class;
using Vec = Vector<Rational>;
using Mat = Matrix<Rational>;

/// Parses "n" or "n/m" with an optional leading sign.  Floating literals are
/// rejected.
inline Rational parse_rational(std::string_view text)
{
    auto bad = [&] { return std::invalid_argument("malformed rational literal '" + std::string(text) + "'"); };
    if (text.empty())
        throw bad();
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+')
        ++i;
    const std::size_t num_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == num_start)
        throw bad();
    std::string num(text.substr(num_start, i - num_start));
    std::string den = "1";
    if (i < text.size()) {
        if (text[i] != '/')
            throw bad();
        const std::size_t den_start = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (i == den_start || i != text.size())
            throw bad();
        den = std::string(text.substr(den_start));
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (text[0] == '-')
        n = -n;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline Vec zero_vector(std::size_t n)
{
    return Vec(n, Rational(0));
}

inline Vec unit_vector(std::size_t n, std::size_t i)
{
    Vec v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

} // namespace ihgysin
