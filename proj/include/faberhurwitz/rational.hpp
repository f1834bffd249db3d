#ifndef FABERHURWITZ_RATIONAL_HPP
#define FABERHURWITZ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace faberhurwitz {

// Every scalar in the library is an exact rational.  cpp_rational keeps
// values in lowest terms with a positive denominator, which is exactly the
// invariant we need; no floating point appears anywhere.
using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

inline bigint rat_num(const rat& r) { return boost::multiprecision::numerator(r); }
inline bigint rat_den(const rat& r) { return boost::multiprecision::denominator(r); }

inline std::string num_string(const rat& r) { return rat_num(r).str(); }
inline std::string den_string(const rat& r) { return rat_den(r).str(); }

inline bigint factorial(long n)
{
    if (n < 0) {
        throw std::invalid_argument("factorial: negative argument");
    }
    bigint out = 1;
    for (long i = 2; i <= n; ++i) {
        out *= i;
    }
    return out;
}

// C(n, k) with the usual convention that out-of-range k gives 0.
inline bigint binomial(long n, long k)
{
    if (k < 0 || k > n || n < 0) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    bigint out = 1;
    for (long i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1);
    }
    return out;
}

inline bigint ipow(const bigint& base, long exp)
{
    if (exp < 0) {
        throw std::invalid_argument("ipow: negative exponent");
    }
    bigint out = 1, b = base;
    for (long e = exp; e > 0; e >>= 1) {
        if (e & 1) {
            out *= b;
        }
        b *= b;
    }
    return out;
}

// base^exp for rationals, exp may be negative (base must be nonzero then).
inline rat rat_pow(const rat& base, long exp)
{
    if (exp >= 0) {
        return rat(ipow(rat_num(base), exp), ipow(rat_den(base), exp));
    }
    if (base == 0) {
        throw std::domain_error("rat_pow: zero base with negative exponent");
    }
    return rat(ipow(rat_den(base), -exp), ipow(rat_num(base), -exp));
}

// Odd double factorial: (-1)!! = 1, k!! = k (k-2)!! for odd k >= 1.
inline bigint double_factorial_odd(long k)
{
    if (k < -1 || (k % 2) == 0) {
        throw std::invalid_argument("double_factorial_odd: argument must be odd and >= -1");
    }
    bigint out = 1;
    for (long i = k; i >= 3; i -= 2) {
        out *= i;
    }
    return out;
}

} // namespace faberhurwitz

#endif
