#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace uenv {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;

inline Scalar parse_scalar(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Scalar(mpz_class(s, 10));
        }
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        Scalar q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

/// Always "p/q", also for integers ("3/1").
inline std::string format_scalar(const Scalar& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Scalar sign_scalar(int sign) { return Scalar(sign); }

} // namespace uenv
