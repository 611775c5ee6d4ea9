#pragma once

// Densities omega_P = |W_P(N)|/P and slice variants as exact rationals,
// the asymptotic constants C1 = e^gamma, C2 (twin prime constant), C3 with
// bracketed truncation tails, the N >= 312 threshold inequalities, and the
// empirical error-ratio (omega N - t - S)/S.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/counting.hpp"
#include "goldbach/modulus.hpp"
#include "goldbach/primes.hpp"

namespace goldbach {

struct DensityValue {
    Rat exact;
    double approx;
};

// omega_P(N) = (1/c') prod_{p|N_P}(1-1/p) prod_{p|P_2N}(1-2/p);
// omega_P^d(N) = (1/(cd)) prod_{p|N_P}(1-1/p) prod_{p|P_6dN}(1-3/p).
inline DensityValue omega(const ProblemInstance& inst,
                          std::optional<uint64_t> slice = std::nullopt) {
    Rat value(1);
    for (uint64_t p : inst.N_P().factors()) {
        value = value * Rat(static_cast<long>(p) - 1, static_cast<long>(p));
    }
    if (!slice) {
        value = value / Rat(static_cast<long>(inst.c_prime()));
        for (uint64_t p : inst.P_2N().factors()) {
            value = value * Rat(static_cast<long>(p) - 2, static_cast<long>(p));
        }
    } else {
        uint64_t d = *slice;
        if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
            throw std::invalid_argument("omega: slice does not divide P_6N");
        }
        value = value / Rat(Int(inst.c()) * Int(d), Int(1));
        for (uint64_t p : inst.P_6N().factors()) {
            if (d % p != 0) value = value * Rat(static_cast<long>(p) - 3, static_cast<long>(p));
        }
    }
    return DensityValue{value, value.to_double()};
}

// ---- asymptotic constants ----

inline constexpr double kEulerGamma = 0.57721566490153286;

struct AsymptoticConstants {
    double C1;        // e^gamma
    double C2;        // prod_{3 <= p <= z} p(p-2)/(p-1)^2
    double C3;        // prod_{5 <= p <= z} p^2(p-3)/(p-1)^3
    double d_N;       // prod_{p | N, p >= 3} (p-1)/(p-2)
    double d_N_prime; // (2 if 3 | N) * prod_{p | N, p >= 5} (p-1)/(p-3)
    double hl_ratio;  // (8/C1^2 - 2)/2
    double tail_bound;  // |log truncation error| bound for C2/C3
};

// Partial products through primes <= z. The omitted factors are
// 1 - O(1/p^2), so |log tail| < sum_{p>z} 3/p^2 < 3/(z log z).
inline AsymptoticConstants constants(uint64_t z, std::optional<Int> n = std::nullopt) {
    if (z < 5) throw std::invalid_argument("constants: z must be at least 5");
    auto table = PrimeTable::get(z);
    double c2 = 1.0;
    double c3 = 1.0;
    for (uint32_t p : table->primes_up_to(z)) {
        double dp = static_cast<double>(p);
        if (p >= 3) c2 *= dp * (dp - 2.0) / ((dp - 1.0) * (dp - 1.0));
        if (p >= 5) c3 *= dp * dp * (dp - 3.0) / ((dp - 1.0) * (dp - 1.0) * (dp - 1.0));
    }
    double c1 = std::exp(kEulerGamma);
    double dn = 1.0;
    double dnp = 1.0;
    if (n) {
        for (uint64_t p : distinct_prime_factors(n->to_u64())) {
            double dp = static_cast<double>(p);
            if (p >= 3) dn *= (dp - 1.0) / (dp - 2.0);
            if (p == 3) dnp *= 2.0;
            if (p >= 5) dnp *= (dp - 1.0) / (dp - 3.0);
        }
    }
    double hl = (8.0 / (c1 * c1) - 2.0) / 2.0;
    double zf = static_cast<double>(z);
    return AsymptoticConstants{c1, c2, c3, dn, dnp, hl, 3.0 / (zf * std::log(zf))};
}

// Exact check of the full-primorial density rewritten as Mertens-style
// products, P = primorial(z):
//   omega   = 2 prod_{3<=p<=z} p(p-2)/(p-1)^2 prod_{p|N,3<=p<=z} (p-1)/(p-2)
//               prod_{2<=p<=z} (1-1/p)^2
//   omega^1 = (9/2) prod_{5<=p<=z} p^2(p-3)/(p-1)^3 (2 if 3|N)
//               prod_{p|N,5<=p<=z} (p-1)/(p-3) prod_{2<=p<=z} (1-1/p)^3
inline IdentityCheck density_product_check(const Int& n, uint64_t z, bool core_slice) {
    if (z < 3) throw std::invalid_argument("density_product_check: z must be at least 3");
    SquareFreeModulus p = primorial(static_cast<double>(z));
    ProblemInstance inst(n, p);
    Rat direct = core_slice ? omega(inst, 1).exact : omega(inst).exact;
    Rat rhs = core_slice ? Rat(9, 2) : Rat(2);
    for (uint64_t q : p.factors()) {
        long lq = static_cast<long>(q);
        bool divides_n = n.divisible_by_u64(q);
        if (!core_slice) {
            if (q >= 3) rhs = rhs * Rat(lq * (lq - 2), (lq - 1) * (lq - 1));
            if (q >= 3 && divides_n) rhs = rhs * Rat(lq - 1, lq - 2);
            rhs = rhs * Rat((lq - 1) * (lq - 1), lq * lq);
        } else {
            if (q >= 5) rhs = rhs * Rat(lq * lq * (lq - 3), (lq - 1) * (lq - 1) * (lq - 1));
            if (q == 3 && divides_n) rhs = rhs * Rat(2);
            if (q >= 5 && divides_n) rhs = rhs * Rat(lq - 1, lq - 3);
            rhs = rhs * Rat((lq - 1) * (lq - 1) * (lq - 1), static_cast<long>(q * q * q));
        }
    }
    return IdentityCheck{direct, rhs};
}

// log z * prod_{p <= z} (1 - 1/p); approaches e^{-gamma} (Mertens).
inline double mertens_partial(uint64_t z) {
    if (z < 2) throw std::invalid_argument("mertens_partial: z must be at least 2");
    auto table = PrimeTable::get(z);
    double prod = 1.0;
    for (uint32_t p : table->primes_up_to(z)) {
        prod *= 1.0 - 1.0 / static_cast<double>(p);
    }
    return std::log(static_cast<double>(z)) * prod;
}

// ---- threshold inequalities ----

// For P = primorial(sqrt(2N)): (N-2) omega_P^1(N) > 2^{#N - 1} and
// N omega_P^1(N) > 4, both by exact cross-multiplication.
// omega^1 = (1/c) prod_{p|N_P}(1-1/p) prod_{p|P_6N}(1-3/p).
inline std::pair<bool, bool> threshold_check(uint64_t n) {
    if (n < 2) throw std::invalid_argument("threshold_check: N must be at least 2");
    SquareFreeModulus p = primorial_under_sqrt(2 * n);
    ProblemInstance inst(Int(n), p);
    // omega^1 = num/den with num = prod(p-1) prod(p-3), den = c * prod over the
    // same primes of p.
    Int num(1);
    Int den(static_cast<unsigned long>(inst.c()));
    for (uint64_t q : inst.N_P().factors()) {
        num *= Int(q - 1);
        den *= Int(q);
    }
    for (uint64_t q : inst.P_6N().factors()) {
        num *= Int(q - 3);
        den *= Int(q);
    }
    uint64_t omega_small = distinct_prime_factors(n).size();
    Int half_pow = omega_small == 0 ? Int(1) : Int::two_pow(omega_small - 1);
    bool first = Int(n - 2) * num > half_pow * den;
    bool second = Int(n) * num > Int(4) * den;
    return {first, second};
}

// ---- empirical error ratio ----

// (omega_P(N) N - t - S) / S with S = S_P(N, N) counted by a sieve over
// [1, N], P = primorial(sqrt(2N)). Exact rational, returned with its double.
inline DensityValue hl_ratio_empirical(uint64_t n) {
    if (n < 4) throw std::invalid_argument("hl_ratio_empirical: N must be at least 4");
    SquareFreeModulus p = primorial_under_sqrt(2 * n);
    ProblemInstance inst(Int(n), p);
    Int s = count_S(inst, Rat(Int(n), Int(1)), std::nullopt, n);
    if (s.is_zero()) throw std::domain_error("hl_ratio_empirical: S_P(N,N) is zero");
    Rat omega_n = omega(inst).exact * Rat(Int(n));
    Rat ratio = (omega_n - t_term(inst) - Rat(s)) / Rat(s);
    return DensityValue{ratio, ratio.to_double()};
}

}  // namespace goldbach
