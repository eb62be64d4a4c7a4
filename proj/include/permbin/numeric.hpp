#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "permbin/errors.hpp"

namespace permbin {

// rN and j*ell products reach ~n^2; all exponent arithmetic runs in 128 bits.
using int128 = __int128;
using uint128 = unsigned __int128;

inline bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    if (v % 3 == 0) return v == 3;
    for (std::uint64_t d = 5; d * d <= v; d += 6) {
        if (v % d == 0 || v % (d + 2) == 0) return false;
    }
    return true;
}

// Distinct prime factors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

inline bool pow_fits_u64(std::uint64_t base, std::uint32_t exp, std::uint64_t* out) {
    uint128 acc = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > ~std::uint64_t{0}) return false;
    }
    *out = static_cast<std::uint64_t>(acc);
    return true;
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t out = 0;
    if (!pow_fits_u64(base, exp, &out)) raise(Errc::size_exceeded, "integer power overflows 64 bits");
    return out;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % mod);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t acc = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, mod);
        base = mulmod_u64(base, base, mod);
        exp >>= 1;
    }
    return acc;
}

inline std::uint64_t isqrt_u64(std::uint64_t v) {
    if (v == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Shape of an extension tower F_{q^e} / F_q with q = p^m.  Pure integer data;
// usable without building field tables (theory predicates, task enumeration).
struct FieldShape {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t e = 0;
    std::uint64_t q = 0;    // p^m
    std::uint64_t n = 0;    // q^e
    std::uint64_t ell = 0;  // (q^e - 1) / (q - 1)
};

inline FieldShape make_shape(std::uint32_t p, std::uint32_t m, std::uint32_t e) {
    if (!is_prime_u64(p)) raise(Errc::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (m < 1) raise(Errc::precond_violated, "m must be >= 1");
    if (e < 2) raise(Errc::precond_violated, "e must be >= 2 (proper extension of F_q)");
    FieldShape sh;
    sh.p = p;
    sh.m = m;
    sh.e = e;
    sh.q = pow_u64(p, m);
    sh.n = pow_u64(sh.q, e);
    sh.ell = (sh.n - 1) / (sh.q - 1);
    return sh;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace permbin
