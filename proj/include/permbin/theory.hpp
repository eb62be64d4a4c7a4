#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "permbin/criterion.hpp"
#include "permbin/errors.hpp"
#include "permbin/field.hpp"
#include "permbin/numeric.hpp"

namespace permbin {

// Both immediate necessary conditions at once: gcd(r, q-1) = 1 and a outside
// the (q-1)-th power obstruction, i.e. (-a)^ell != 1.
inline bool necessary_conditions(const BinomialSpec& spec) {
    const Field& f = *spec.field;
    if (std::gcd(spec.r, f.q() - 1) != 1) return false;
    return f.pow(f.neg(spec.a), static_cast<std::int64_t>(f.shape().ell)) != f.one();
}

// L(x) = x^{q^h} + a x on F_{q^e}.
struct LinearizedSpec {
    const Field* field;
    std::uint32_t h;
    FieldElement a;

    LinearizedSpec(const Field& f, std::uint32_t h_value, FieldElement a_value)
        : field(&f), h(h_value), a(a_value) {
        if (h < 1) raise(Errc::precond_violated, "Frobenius power h must be >= 1");
        if (a.is_zero()) raise(Errc::precond_violated, "coefficient a must be nonzero");
        if (a.field() != &f) raise(Errc::field_mismatch, "coefficient a belongs to another field");
    }
};

// L permutes F_{q^e} iff (-a)^{(q^e-1)/(q^d-1)} != 1 with d = gcd(e, h):
// the kernel of L is trivial exactly then.
inline bool linearized_permutes(const LinearizedSpec& spec) {
    const Field& f = *spec.field;
    const std::uint32_t d = std::gcd(f.shape().e, spec.h);
    const std::uint64_t qd = pow_u64(f.q(), d);
    const std::uint64_t exp = (f.order() - 1) / (qd - 1);
    return f.pow(f.neg(spec.a), static_cast<std::int64_t>(exp)) != f.one();
}

// One member of the composition family: for each h in [1, e-1] coprime to e,
// the exponent r == s*ell + sum_{i<k} q^{hi} (mod q^e - 1) with k = h^{-1}
// (mod e) makes x^r (x^{q-1} + a) a composition of x^{q^h} + a x with
// monomials.  The defining congruence is r (q^h - 1) == q - 1 (mod q^e - 1).
struct ConstructionItem {
    std::uint32_t h;
    std::uint32_t k;
    std::uint64_t base_r;           // mod q^e - 1
    std::uint64_t residue_mod_ell;  // base_r mod ell
};

inline std::vector<ConstructionItem> construction_items(const FieldShape& sh) {
    const std::uint64_t big_m = sh.n - 1;
    std::vector<ConstructionItem> items;
    for (std::uint32_t h = 1; h < sh.e; ++h) {
        if (std::gcd(h, sh.e) != 1) continue;
        std::uint32_t k = 0;
        for (std::uint32_t c = 1; c < sh.e; ++c) {
            if (static_cast<std::uint64_t>(h) * c % sh.e == 1) {
                k = c;
                break;
            }
        }
        if (k == 0) raise(Errc::internal, "no inverse of h mod e despite gcd(h, e) = 1");
        uint128 acc = 0;
        for (std::uint32_t i = 0; i < k; ++i)
            acc += powmod_u64(sh.q, static_cast<std::uint64_t>(h) * i, big_m);
        const std::uint64_t base = static_cast<std::uint64_t>(acc % big_m);
        // re-verify the defining congruence
        const std::uint64_t qh1 = (powmod_u64(sh.q, h, big_m) + big_m - 1) % big_m;
        if (mulmod_u64(base, qh1, big_m) != (sh.q - 1) % big_m)
            raise(Errc::internal, "construction congruence failed for h = " + std::to_string(h));
        items.push_back({h, k, base, base % sh.ell});
    }
    return items;
}

inline std::vector<std::uint64_t> construction_residues(const FieldShape& sh) {
    std::vector<std::uint64_t> out;
    for (const auto& it : construction_items(sh)) out.push_back(it.residue_mod_ell);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exponents r with both the residue form of the construction and the side
// conditions; together with admissible a this is the full composition family.
inline bool construction_is_permutation(const FieldShape& sh, std::uint64_t r, const Field& f,
                                        FieldElement a) {
    if (a.is_zero()) raise(Errc::precond_violated, "coefficient a must be nonzero");
    if (f.pow(f.neg(a), static_cast<std::int64_t>(sh.ell)) == f.one()) return false;
    if (std::gcd(r, sh.q - 1) != 1) return false;
    const auto residues = construction_residues(sh);
    return std::binary_search(residues.begin(), residues.end(), r % sh.ell);
}

// Residues guaranteed by the closed half of the theory: 1 and ell - q always;
// for odd e also q^{(e+1)/2} + 1 and ell - q^{(e+1)/2} - q.
inline std::vector<std::uint64_t> corollary_residues(const FieldShape& sh) {
    std::vector<std::uint64_t> out{1 % sh.ell, (sh.ell - sh.q) % sh.ell};
    if (sh.e % 2 == 1) {
        const std::uint64_t mid = pow_u64(sh.q, (sh.e + 1) / 2);
        out.push_back((mid + 1) % sh.ell);
        out.push_back((sh.ell - mid - sh.q) % sh.ell);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- nonexistence filters on rho = r mod ell (true = rho survives) ---

// Prop 4.1: a permutation requires rho = hq + 1 for some integer h >= 0
// (in particular rho >= 1).
inline bool filter_residue_form(std::uint64_t q, std::uint64_t rho) {
    return rho >= 1 && rho % q == 1;
}

// Prop 4.2 (e even, rho = hq + 1): requires (q + 1) | h.
inline bool filter_even_e(std::uint64_t q, std::uint64_t rho) {
    return ((rho - 1) / q) % (q + 1) == 0;
}

// Prop 4.3 (q odd, rho = hq + 1): requires p | h.
inline bool filter_odd_char(std::uint32_t p, std::uint64_t q, std::uint64_t rho) {
    return ((rho - 1) / q) % p == 0;
}

// Prop 4.5 (q >= 3, e >= 3): rho = h (ell - q^{e-1} - 1) + 1 with
// 1 <= h <= q - 1 never yields a permutation.
inline bool filter_block_h(const FieldShape& sh, std::uint64_t rho) {
    const std::uint64_t delta = sh.ell - pow_u64(sh.q, sh.e - 1) - 1;
    const std::uint64_t x = rho - 1;  // rho >= 1 after Prop 4.1
    if (x == 0 || x % delta != 0) return true;
    const std::uint64_t h = x / delta;
    return h > sh.q - 1;
}

// All residues mod ell surviving every applicable filter, ascending.
// Prop 4.2 applies for even e, Prop 4.3 for odd q, Prop 4.5 for q >= 3 and
// e >= 3.  The divisibility filters compose into a stride on h.
inline std::vector<std::uint64_t> candidate_residues(const FieldShape& sh) {
    std::uint64_t stride = 1;
    if (sh.p != 2) stride = sh.p;                              // Prop 4.3
    if (sh.e % 2 == 0) stride = std::lcm(stride, sh.q + 1);    // Prop 4.2
    const bool use_block = sh.q >= 3 && sh.e >= 3;
    const std::uint64_t delta = use_block ? sh.ell - pow_u64(sh.q, sh.e - 1) - 1 : 0;

    std::vector<std::uint64_t> out;
    for (uint128 h = 0;; h += stride) {
        const uint128 rho = h * sh.q + 1;
        if (rho > sh.ell - 1) break;
        const std::uint64_t r64 = static_cast<std::uint64_t>(rho);
        if (use_block && r64 > 1 && (r64 - 1) % delta == 0) {
            const std::uint64_t hh = (r64 - 1) / delta;
            if (hh >= 1 && hh <= sh.q - 1) continue;
        }
        out.push_back(r64);
    }
    return out;
}

// Status of the exact characterization for the shape, with the residue set it
// pins down.  Outside the proved range the construction family is the
// conjectured answer.
enum class CharStatus { proved, conjectural };

struct Characterization {
    CharStatus status;
    std::string source;  // label printed by the CLI
    std::vector<std::uint64_t> residues;
};

inline Characterization characterized_residues(const FieldShape& sh) {
    auto sorted_unique = [](std::vector<std::uint64_t> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    if (sh.e >= 2 && sh.e <= 4)
        return {CharStatus::proved, "Prop 5.1", sorted_unique({1, sh.ell - sh.q})};
    const bool prime_odd_q = (sh.m == 1 && sh.p != 2);
    if (sh.e == 5 && prime_odd_q) {
        const std::uint64_t q = sh.q;
        return {CharStatus::proved, "Prop 5.2, prime q",
                sorted_unique({1, q * q * q + 1, q * q * q * q + q * q + 1, sh.ell - q})};
    }
    if (sh.e == 6 && prime_odd_q)
        return {CharStatus::proved, "Prop 5.3, prime q", sorted_unique({1, sh.ell - sh.q})};
    return {CharStatus::conjectural, "conjectural", construction_residues(sh)};
}

// Smallest h in [1, e-1] with r (q^h - 1) == q - 1 (mod q^e - 1), if any.
// Solvability forces gcd(h, e) = 1, so a plain scan suffices.  Whether some h
// exists depends only on r mod ell and matches the construction residues.
inline std::optional<std::uint32_t> is_composition_of_linearized(const FieldShape& sh, std::uint64_t r) {
    const std::uint64_t big_m = sh.n - 1;
    const std::uint64_t target = (sh.q - 1) % big_m;
    for (std::uint32_t h = 1; h < sh.e; ++h) {
        const std::uint64_t qh1 = (powmod_u64(sh.q, h, big_m) + big_m - 1) % big_m;
        if (mulmod_u64(r % big_m, qh1, big_m) == target) return h;
    }
    return std::nullopt;
}

inline std::optional<std::uint32_t> is_composition_of_linearized(const BinomialSpec& spec) {
    return is_composition_of_linearized(spec.field->shape(), spec.r);
}

}  // namespace permbin
