#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "permbin/errors.hpp"
#include "permbin/field.hpp"
#include "permbin/numeric.hpp"

namespace permbin {

// ell = (q^e - 1) / (q - 1) = q^{e-1} + ... + q + 1, the index of the
// binomial family x^r (x^{q-1} + a) inside F_{q^e}.
inline std::uint64_t ell(std::uint64_t q, std::uint32_t e) {
    if (q < 2) raise(Errc::precond_violated, "q must be >= 2");
    uint128 acc = 0, pw = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        acc += pw;
        if (acc > ~std::uint64_t{0}) raise(Errc::size_exceeded, "ell overflows 64 bits");
        pw *= q;
        if (i + 1 < e && pw > ~std::uint64_t{0}) raise(Errc::size_exceeded, "ell overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

// f(x) = x^r (x^{q-1} + a) over F_{q^e}, a != 0.  The exponent r is stored
// normalized into [1, q^e - 1]: reduction mod q^e - 1 floors to q^e - 1
// rather than 0, which agrees with x^r on every nonzero x.
struct BinomialSpec {
    const Field* field;
    std::uint64_t r;
    FieldElement a;

    BinomialSpec(const Field& f, std::uint64_t r_raw, FieldElement a_value)
        : field(&f), r(0), a(a_value) {
        if (r_raw == 0) raise(Errc::precond_violated, "exponent r must be >= 1");
        if (a.is_zero()) raise(Errc::precond_violated, "coefficient a must be nonzero");
        if (a.field() != &f) raise(Errc::field_mismatch, "coefficient a belongs to another field");
        const std::uint64_t n1 = f.order() - 1;
        r = r_raw % n1;
        if (r == 0) r = n1;
    }
};

inline FieldElement eval_binomial(const BinomialSpec& spec, FieldElement x) {
    const Field& f = *spec.field;
    if (x.is_zero()) return f.zero();
    FieldElement factor = f.add(f.pow(x, static_cast<std::int64_t>(f.q() - 1)), spec.a);
    if (factor.is_zero()) return f.zero();
    return f.mul(f.pow(x, static_cast<std::int64_t>(spec.r)), factor);
}

// The index set S_N = { A_j = j*ell - rN/(q-1) integral, 0 <= A_j <= N }.
// Nonempty only when (q-1) | rN; members are consecutive in j and ascend
// by ell.
struct SnMember {
    std::int64_t j;
    std::uint64_t a_value;
};

struct SNSet {
    std::uint64_t q = 0;
    std::uint32_t e = 0;
    std::uint64_t r = 0;
    std::uint64_t big_n = 0;
    std::uint64_t ell = 0;
    std::vector<SnMember> members;

    std::vector<std::uint64_t> a_values() const {
        std::vector<std::uint64_t> out;
        out.reserve(members.size());
        for (const auto& m : members) out.push_back(m.a_value);
        return out;
    }
};

inline SNSet compute_SN(std::uint64_t q, std::uint32_t e, std::uint64_t r, std::uint64_t big_n) {
    SNSet sn;
    sn.q = q;
    sn.e = e;
    sn.r = r;
    sn.big_n = big_n;
    sn.ell = ell(q, e);
    if (r == 0) raise(Errc::precond_violated, "r must be >= 1");
    if (big_n == 0) raise(Errc::precond_violated, "N must be >= 1");

    const int128 s = static_cast<int128>(q) - 1;
    if ((static_cast<int128>(r) * big_n) % s != 0) return sn;  // no integral A_j

    const int128 base = static_cast<int128>(r) * big_n / s;
    const int128 L = static_cast<int128>(sn.ell);
    const int128 j_lo = (base + L - 1) / L;          // ceil(base / ell), base >= 0
    const int128 j_hi = (base + static_cast<int128>(big_n)) / L;
    for (int128 j = j_lo; j <= j_hi; ++j) {
        const int128 a = j * L - base;
        if (a < 0 || a > static_cast<int128>(big_n)) raise(Errc::internal, "S_N member out of range");
        sn.members.push_back({static_cast<std::int64_t>(j), static_cast<std::uint64_t>(a)});
    }
    return sn;
}

// |S_N| is floor(N/ell) or floor(N/ell) + 1 whenever (q-1) | rN.
inline std::pair<std::uint64_t, std::uint64_t> sn_cardinality_bound(std::uint64_t q, std::uint32_t e,
                                                                    std::uint64_t r, std::uint64_t big_n) {
    if ((static_cast<uint128>(r) * big_n) % (q - 1) != 0)
        raise(Errc::precond_violated, "S_N cardinality bound requires (q-1) | rN");
    const std::uint64_t lo = big_n / ell(q, e);
    return {lo, lo + 1};
}

// C(n, k) mod p by Lucas' theorem: product of digit binomials base p.
// Convention C(n, k) = 0 for k > n.
inline std::uint64_t lucas_binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (!is_prime_u64(p)) raise(Errc::not_prime, "Lucas reduction requires prime modulus");
    if (k > n) return 0;
    auto small_binom = [p](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        // a, b < p
        if (b > a) return 0;
        b = std::min(b, a - b);
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < b; ++i) {
            num = mulmod_u64(num, (a - i) % p, p);
            den = mulmod_u64(den, (i + 1) % p, p);
        }
        return mulmod_u64(num, powmod_u64(den, p - 2, p), p);
    };
    std::uint64_t res = 1;
    while (n || k) {
        const std::uint64_t c = small_binom(n % p, k % p);
        if (c == 0) return 0;
        res = mulmod_u64(res, c, p);
        n /= p;
        k /= p;
    }
    return res;
}

// One MPW coefficient sum: sum over A in S_N of C(N, A) a^{N-A}, evaluated
// inside the field.  Empty S_N gives zero.
inline FieldElement mpw_sum(const BinomialSpec& spec, std::uint64_t big_n) {
    const Field& f = *spec.field;
    const SNSet sn = compute_SN(f.q(), f.shape().e, spec.r, big_n);
    FieldElement acc = f.zero();
    for (const auto& m : sn.members) {
        const std::uint64_t c = lucas_binom_mod_p(big_n, m.a_value, f.characteristic());
        if (c == 0) continue;
        FieldElement term = f.mul(f.from_residue(c), f.pow(spec.a, static_cast<std::int64_t>(big_n - m.a_value)));
        acc = f.add(acc, term);
    }
    return acc;
}

// Full MPW permutation criterion: f permutes F_{q^e} iff the sum vanishes for
// every N in [1, q^e - 2] and equals 1 at N = q^e - 1.  Only N with
// (q-1) | rN can contribute (S_N empty otherwise), so iteration steps through
// exactly those N; the final N = q^e - 1 is always among them.
inline bool mpw_is_permutation(const BinomialSpec& spec) {
    const Field& f = *spec.field;
    const std::uint64_t n1 = f.order() - 1;
    const std::uint64_t qm1 = f.q() - 1;
    const std::uint64_t step = qm1 / std::gcd(spec.r, qm1);
    for (std::uint64_t big_n = step; big_n <= n1; big_n += step) {
        const FieldElement s = mpw_sum(spec, big_n);
        if (big_n == n1) return s == f.one();
        if (!s.is_zero()) return false;
    }
    raise(Errc::internal, "MPW iteration skipped N = q^e - 1");
}

// Reusable O(n) bijectivity check for one field.  For a fixed a the second
// factor x^{q-1} + a only depends on log(x) mod ell, so a table of ell
// factor logs turns each probe of f into two exponent additions and a bitset
// test.  f(0) = 0 always; any further root of f fails immediately.
class PermutationTester {
public:
    explicit PermutationTester(const Field& f)
        : field_(&f),
          n1_(f.order() - 1),
          ell_(f.shape().ell),
          qm1_(f.q() - 1),
          factor_log_(ell_, kZeroMark),
          seen_((n1_ + 63) / 64, 0) {}

    // a = xi^{a_exp}
    void set_a_exponent(std::uint64_t a_exp) {
        const std::uint32_t packed_a = field_->antilog(a_exp % n1_);
        std::uint64_t u = 0;
        for (std::uint64_t c = 0; c < ell_; ++c) {
            const std::uint32_t s = field_->packed_add(field_->antilog(u), packed_a);
            factor_log_[c] = (s == 0) ? kZeroMark : field_->log_of_packed(s);
            u += qm1_;
            if (u >= n1_) u -= n1_;
        }
    }

    bool is_permutation(std::uint64_t r) {
        std::fill(seen_.begin(), seen_.end(), 0);
        const std::uint64_t rm = r % n1_;
        std::uint64_t k = 0, c = 0;
        for (std::uint64_t i = 0; i < n1_; ++i) {
            const std::uint32_t t = factor_log_[c];
            if (t == kZeroMark) return false;  // nonzero x collides with f(0) = 0
            std::uint64_t img = k + t;
            if (img >= n1_) img -= n1_;
            const std::uint64_t word = img >> 6;
            const std::uint64_t bit = std::uint64_t{1} << (img & 63);
            if (seen_[word] & bit) return false;
            seen_[word] |= bit;
            k += rm;
            if (k >= n1_) k -= n1_;
            if (++c == ell_) c = 0;
        }
        return true;
    }

private:
    static constexpr std::uint32_t kZeroMark = 0xFFFFFFFFu;

    const Field* field_;
    std::uint64_t n1_, ell_, qm1_;
    std::vector<std::uint32_t> factor_log_;
    std::vector<std::uint64_t> seen_;
};

// Independent oracle: walk all of F_{q^e}^* once and check injectivity.
inline bool brute_force_is_permutation(const BinomialSpec& spec) {
    PermutationTester tester(*spec.field);
    tester.set_a_exponent(spec.a.exponent());
    return tester.is_permutation(spec.r);
}

}  // namespace permbin
