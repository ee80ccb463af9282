#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace healie {

/// Exact rational numbers. Arbitrary precision: lattice pairings grow
/// without bound under iterated brackets, so fixed-width types are out.
using Rational = mpq_class;

/// Configuration / input-validation failure (bad tables, mismatched fields,
/// unparseable configs). Distinct from std::domain_error, which signals a
/// violated mathematical precondition on an otherwise valid session.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational rat(long num, long den = 1)
{
    if (den == 0)
        throw std::domain_error("rat: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool fits_int64(const mpz_class& z)
{
    return z >= mpz_class(INT64_MIN) && z <= mpz_class(INT64_MAX);
}

inline std::string rational_str(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace healie
