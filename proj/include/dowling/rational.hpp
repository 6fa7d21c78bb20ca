#ifndef DOWLING_RATIONAL_HPP
#define DOWLING_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace dowling
{

using rational = mpq_class;
using integer = mpz_class;

inline rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw invalid_argument("zero denominator");
    }
    rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const rational &r)
{
    return r.get_str();
}

// Number-theoretic Moebius function by trial factorization.
inline int number_mobius(long d)
{
    if (d < 1) {
        throw invalid_argument("number_mobius: argument must be positive");
    }
    int result = 1;
    for (long p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) {
                return 0;
            }
            result = -result;
        }
    }
    if (d > 1) {
        result = -result;
    }
    return result;
}

inline integer factorial(unsigned long n)
{
    integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline integer ipow(const integer &b, unsigned long e)
{
    integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline rational rpow(const rational &b, long e)
{
    if (e < 0) {
        if (b == 0) {
            throw invalid_argument("rpow: zero to a negative power");
        }
        return rpow(1 / b, -e);
    }
    rational r(1);
    for (long i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

// Generalized binomial coefficient alpha choose k.
inline rational binomial(const rational &alpha, unsigned long k)
{
    rational r(1);
    for (unsigned long j = 0; j < k; ++j) {
        r *= (alpha - static_cast<long>(j));
        r /= static_cast<long>(j + 1);
    }
    return r;
}

inline long lcm_positive(long a, long b)
{
    return std::lcm(a, b);
}

} // namespace dowling

#endif
