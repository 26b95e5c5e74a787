#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "groves/errors.hpp"

namespace groves {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" with decimal integers; rejects zero denominators and stray text.
inline Rational parse_rational(const std::string& text) {
    auto digits = [](const std::string& s, bool allow_sign) {
        std::size_t start = (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start) return false;
        for (std::size_t t = start; t < s.size(); ++t)
            if (!std::isdigit(static_cast<unsigned char>(s[t]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw InvalidArgument("malformed rational \"" + text + "\"");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10), d(den, 10);
    if (d == 0) throw InvalidArgument("zero denominator in \"" + text + "\"");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace groves
