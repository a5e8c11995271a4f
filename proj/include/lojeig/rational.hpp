#ifndef LOJEIG_RATIONAL_HPP
#define LOJEIG_RATIONAL_HPP

#include <cmath>
#include <gmpxx.h>
#include <string>

#include "lojeig/errors.hpp"

namespace lojeig {

using BigInt = mpz_class;
using Rational = mpq_class;

// log of a positive big integer; exact enough (1e-15 relative) for any size.
inline double log_bigint(const BigInt& v) {
    if (v <= 0) throw input_error("log_bigint: argument must be positive");
    long e = 0;
    double mant = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::log(2.0);
}

// log of a positive rational, computed as log(num) - log(den).
inline double log_rational(const Rational& q) {
    if (q <= 0) throw input_error("log_rational: argument must be positive");
    return log_bigint(q.get_num()) - log_bigint(q.get_den());
}

// Parses an exact coefficient string: integer "-3", fraction "2/7", or a
// decimal "1.25" / "2.5e-3" (converted exactly, never through binary floats).
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

} // namespace lojeig

#endif
