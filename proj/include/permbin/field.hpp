#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "permbin/errors.hpp"
#include "permbin/numeric.hpp"

namespace permbin {

namespace detail {

// Dense polynomials over F_p, coefficients ascending, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline bool poly_is_one(const Poly& v) { return v.size() == 1 && v[0] == 1; }

// a * b reduced by the monic modulus f.  Schoolbook; degrees stay <= 24.
inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    const std::size_t d = f.size() - 1;
    for (std::size_t i = acc.size(); i-- > d;) {
        std::uint64_t c = acc[i] % p;
        if (c == 0) continue;
        const std::uint64_t neg = p - static_cast<std::uint32_t>(c);
        for (std::size_t j = 0; j < d; ++j) acc[i - d + j] += neg * f[j];
        acc[i] = 0;
    }
    Poly out(d, 0);
    for (std::size_t i = 0; i < d && i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
    poly_trim(out);
    return out;
}

inline Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& f, std::uint32_t p) {
    Poly acc{1};
    while (exp) {
        if (exp & 1) acc = poly_mulmod(acc, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return acc;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    poly_trim(a);
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    auto mod_inverse = [p](std::uint32_t v) { return static_cast<std::uint32_t>(powmod_u64(v, p - 2, p)); };
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        const std::uint32_t inv = mod_inverse(b.back());
        while (a.size() >= b.size()) {
            std::uint32_t c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.back()) * inv) % p);
            if (c != 0) {
                const std::size_t off = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[off + i] = static_cast<std::uint32_t>((a[off + i] + static_cast<std::uint64_t>(p - c) * b[i]) % p);
            }
            a.pop_back();
            poly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f (monic, degree d) is irreducible over F_p iff
// x^{p^d} == x (mod f) and gcd(x^{p^{d/t}} - x, f) = 1 for every prime t | d.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t d = f.size() - 1;
    if (d == 0) return false;
    if (!f.empty() && f[0] == 0) return false;  // divisible by x
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t t : prime_factors(d)) checkpoints.push_back(d / t);
    const Poly x{0, 1};
    Poly h = x;  // x^{p^k} after k steps
    for (std::size_t k = 1; k <= d; ++k) {
        h = poly_powmod(h, p, f, p);
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
            Poly g = poly_gcd(poly_sub(h, x, p), f, p);
            if (!(g.size() == 1)) return false;  // nontrivial common factor
        }
    }
    return h == x;
}

}  // namespace detail

class Field;

// Element of F_{p^{me}}: the discrete log of the field's primitive element xi,
// or the zero marker.  Value type; the owning Field must outlive it.
class FieldElement {
public:
    FieldElement() = default;

    bool is_zero() const { return code_ == kZeroCode; }
    const Field* field() const { return field_; }

    // Exponent k with xi^k == *this (precondition: nonzero).
    std::uint64_t exponent() const {
        if (is_zero()) raise(Errc::precond_violated, "zero has no discrete log");
        return code_;
    }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        if (x.field_ && y.field_ && x.field_ != y.field_)
            raise(Errc::field_mismatch, "comparing elements of different fields");
        return x.code_ == y.code_;
    }
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

private:
    friend class Field;
    static constexpr std::uint32_t kZeroCode = 0xFFFFFFFFu;
    FieldElement(const Field* f, std::uint32_t code) : field_(f), code_(code) {}

    const Field* field_ = nullptr;
    std::uint32_t code_ = kZeroCode;  // exponent of xi, or kZeroCode
};

// F_{p^{m*e}} with full log/antilog tables.  Construction is deterministic:
// the modulus is the lexicographically smallest monic irreducible polynomial
// of degree m*e (coefficients compared low-degree first), xi the smallest
// element (same coefficient order) of multiplicative order n-1.
// Immutable after construction; safe to share across threads.
class Field {
public:
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

    Field(std::uint32_t p, std::uint32_t m, std::uint32_t e) {
        shape_ = make_shape(p, m, e);
        if (shape_.n > kMaxOrder)
            raise(Errc::size_exceeded, "field order " + std::to_string(shape_.n) + " exceeds table limit 2^24");
        degree_ = m * e;
        build_tables();
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    const FieldShape& shape() const { return shape_; }
    std::uint32_t characteristic() const { return shape_.p; }
    std::uint64_t q() const { return shape_.q; }
    std::uint64_t order() const { return shape_.n; }
    std::uint32_t degree() const { return degree_; }

    // Modulus coefficients ascending; degree m*e, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::uint32_t xi_code() const { return xi_code_; }

    FieldElement zero() const { return FieldElement(this, FieldElement::kZeroCode); }
    FieldElement one() const { return FieldElement(this, 0); }
    FieldElement xi() const { return FieldElement(this, 1 % order_minus_1()); }

    FieldElement minus_one() const {
        if (shape_.p == 2) return one();
        return FieldElement(this, static_cast<std::uint32_t>(order_minus_1() / 2));
    }

    FieldElement from_exponent(std::uint64_t k) const {
        return FieldElement(this, static_cast<std::uint32_t>(k % order_minus_1()));
    }

    // Element with the given packed coefficient vector (sum c_i p^i).
    FieldElement from_packed(std::uint32_t packed) const {
        if (packed >= shape_.n) raise(Errc::precond_violated, "packed code out of range");
        if (packed == 0) return zero();
        return FieldElement(this, logtab_[packed]);
    }

    // The residue c embedded as a constant polynomial.
    FieldElement from_residue(std::uint64_t c) const { return from_packed(static_cast<std::uint32_t>(c % shape_.p)); }

    std::uint32_t packed(const FieldElement& x) const {
        check_mine(x);
        return x.is_zero() ? 0 : antilog_[x.code_];
    }

    // Coefficient vector, length m*e, ascending degree.
    std::vector<std::uint32_t> coeffs(const FieldElement& x) const {
        std::uint32_t v = packed(x);
        std::vector<std::uint32_t> out(degree_, 0);
        for (std::uint32_t i = 0; i < degree_ && v; ++i) {
            out[i] = v % shape_.p;
            v /= shape_.p;
        }
        return out;
    }

    FieldElement mul(FieldElement x, FieldElement y) const {
        check_mine(x);
        check_mine(y);
        if (x.is_zero() || y.is_zero()) return zero();
        std::uint64_t k = static_cast<std::uint64_t>(x.code_) + y.code_;
        if (k >= order_minus_1()) k -= order_minus_1();
        return FieldElement(this, static_cast<std::uint32_t>(k));
    }

    FieldElement add(FieldElement x, FieldElement y) const {
        check_mine(x);
        check_mine(y);
        return from_packed(packed_add(packed(x), packed(y)));
    }

    FieldElement neg(FieldElement x) const {
        check_mine(x);
        if (x.is_zero() || shape_.p == 2) return x;
        return mul(x, minus_one());
    }

    FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

    FieldElement pow(FieldElement x, std::int64_t k) const {
        check_mine(x);
        if (x.is_zero()) {
            if (k <= 0) raise(Errc::zero_to_nonpositive, "0 raised to a non-positive power");
            return zero();
        }
        const int128 n1 = static_cast<int128>(order_minus_1());
        int128 t = static_cast<int128>(x.code_) * k % n1;
        if (t < 0) t += n1;
        return FieldElement(this, static_cast<std::uint32_t>(t));
    }

    FieldElement inv(FieldElement x) const { return pow(x, -1); }

    // --- raw table access (hot loops: permutation tester, MPW sums) ---

    // Packed coefficient vector of xi^k, k in [0, n-2].
    std::uint32_t antilog(std::uint64_t k) const { return antilog_[k]; }

    // Discrete log of a packed nonzero value.
    std::uint32_t log_of_packed(std::uint32_t packed_value) const { return logtab_[packed_value]; }

    // Digit-wise sum of two packed coefficient vectors.
    std::uint32_t packed_add(std::uint32_t a, std::uint32_t b) const {
        const std::uint32_t p = shape_.p;
        if (p == 2) return a ^ b;
        std::uint32_t res = 0, mult = 1;
        while (a || b) {
            std::uint32_t s = a % p + b % p;
            if (s >= p) s -= p;
            res += s * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        return res;
    }

private:
    std::uint64_t order_minus_1() const { return shape_.n - 1; }

    void check_mine(const FieldElement& x) const {
        if (x.field_ != this) raise(Errc::field_mismatch, "element does not belong to this field");
    }

    // Candidate polynomial for lex counter value: digit at p^{d-1-i} becomes
    // the coefficient of x^i, so counter order == lexicographic order with
    // low-degree coefficients compared first.
    static detail::Poly lex_counter_to_coeffs(std::uint64_t counter, std::uint32_t d, std::uint32_t p) {
        detail::Poly c(d, 0);
        for (std::uint32_t i = 0; i < d; ++i) {
            c[d - 1 - i] = counter % p;
            counter /= p;
        }
        return c;  // trailing zeros kept; caller trims
    }

    void build_tables() {
        const std::uint32_t p = shape_.p;
        const std::uint32_t d = degree_;
        const std::uint64_t n = shape_.n;

        // 1. modulus: first irreducible in lex order
        std::uint64_t pd1 = pow_u64(p, d - 1);
        bool found = false;
        for (std::uint64_t counter = pd1; counter < n; ++counter) {
            detail::Poly cand = lex_counter_to_coeffs(counter, d, p);
            cand.push_back(1);  // monic of degree d
            if (detail::poly_irreducible(cand, p)) {
                modulus_ = cand;
                found = true;
                break;
            }
        }
        if (!found) raise(Errc::internal, "no irreducible modulus found");

        // 2. xi: first element (lex order) of multiplicative order n-1
        const auto factors = prime_factors(n - 1);
        detail::Poly xi_poly;
        found = false;
        for (std::uint64_t counter = 1; counter < n; ++counter) {
            detail::Poly cand = lex_counter_to_coeffs(counter, d, p);
            detail::poly_trim(cand);
            bool primitive = true;
            for (std::uint64_t t : factors) {
                if (detail::poly_is_one(detail::poly_powmod(cand, (n - 1) / t, modulus_, p))) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                xi_poly = cand;
                found = true;
                break;
            }
        }
        if (!found) raise(Errc::internal, "no primitive element found");

        auto pack = [p, d](const detail::Poly& v) {
            std::uint32_t res = 0, mult = 1;
            for (std::uint32_t i = 0; i < d; ++i) {
                if (i < v.size()) res += v[i] * mult;
                mult *= p;
            }
            return res;
        };
        xi_code_ = pack(xi_poly);

        // 3. log/antilog tables by repeated multiplication with xi
        antilog_.assign(n - 1, 0);
        logtab_.assign(n, 0xFFFFFFFFu);
        detail::Poly cur{1};
        for (std::uint64_t k = 0; k < n - 1; ++k) {
            const std::uint32_t code = pack(cur);
            if (logtab_[code] != 0xFFFFFFFFu) raise(Errc::internal, "xi does not generate the unit group");
            antilog_[k] = code;
            logtab_[code] = static_cast<std::uint32_t>(k);
            cur = detail::poly_mulmod(cur, xi_poly, modulus_, p);
        }
        if (!detail::poly_is_one(cur)) raise(Errc::internal, "xi order is not n-1");
    }

    FieldShape shape_;
    std::uint32_t degree_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::uint32_t xi_code_ = 0;
    std::vector<std::uint32_t> antilog_;  // exponent -> packed coeffs
    std::vector<std::uint32_t> logtab_;   // packed coeffs -> exponent
};

inline FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    const Field* f = x.field() ? x.field() : y.field();
    if (!f) raise(Errc::precond_violated, "operands carry no field");
    return f->mul(x, y);
}

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    const Field* f = x.field() ? x.field() : y.field();
    if (!f) raise(Errc::precond_violated, "operands carry no field");
    return f->add(x, y);
}

}  // namespace permbin
