#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bsgeom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

// n^e for e of either sign.
inline Rational rational_pow(long n, long e) {
    if (e >= 0) return Rational(big_pow(n, static_cast<unsigned>(e)));
    return Rational(1, big_pow(n, static_cast<unsigned>(-e)));
}

// Largest integer r with r^e == m, if one exists for this e.
inline bool integer_root(const BigInt& m, unsigned e, BigInt& root) {
    if (m < 0) return false;
    if (e == 0) throw std::invalid_argument("integer_root: e == 0");
    if (m == 0) { root = 0; return true; }
    // bisection on r^e
    BigInt lo = 1, hi = m;
    while (lo <= hi) {
        BigInt mid = (lo + hi) / 2;
        BigInt p = big_pow(mid, e);
        if (p == m) { root = mid; return true; }
        if (p < m) lo = mid + 1; else hi = mid - 1;
    }
    return false;
}

// FNV-1a, used for stable config hashes in CLI output.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace bsgeom
