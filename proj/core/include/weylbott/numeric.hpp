#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace weylbott {

// All arithmetic in the library is exact. Weyl dimension products overflow
// 64-bit integers already for F4, so we use arbitrary precision throughout.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q))
        throw std::logic_error("expected integer, got " + q.str());
    return numerator(q);
}

inline long to_long(const Int& n) { return static_cast<long>(n); }

inline std::string rat_str(const Rat& q) { return q.str(); }

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace weylbott
