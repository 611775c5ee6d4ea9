#pragma once

// The modulo set Q = {(a,b) : [a,b] | P, gcd(a,b) | 2N}, the least offsets
// m_ab (a | N-m, b | N+m), canonical offsets, unit sets/values, the sum-sieve
// equation E(x,s), and the Q_d cosine products.
//
// Q is exponential in #P (each prime lands in a, b, both when p | 2N, or
// neither), so construction is guarded at #P <= 6; large P goes through the
// closed-form spectra instead.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/modulus.hpp"

namespace goldbach {

constexpr size_t kModuloSetFactorGuard = 6;

struct ModPair {
    uint64_t a;
    uint64_t b;
    uint64_t lcm;
    uint64_t m;   // least m >= 0 with a | N-m, b | N+m; 0 <= m < lcm
    int mu;       // mobius(a) * mobius(b)
};

struct ModuloSet {
    std::vector<ModPair> pairs;  // ordered by (a, b)
};

// ---- least offset ----

// CRT merge of m == N (mod a) and m == -N (mod b); solvable iff gcd(a,b) | 2N.
inline uint64_t least_offset(const ProblemInstance& inst, uint64_t a, uint64_t b) {
    const Int& P = inst.P().value();
    if (a == 0 || b == 0 || !P.divisible_by_u64(a) || !P.divisible_by_u64(b)) {
        throw std::invalid_argument("least_offset: [a,b] does not divide P");
    }
    uint64_t g = std::gcd(a, b);
    Int two_n = inst.N() + inst.N();
    if (!two_n.divisible_by_u64(g)) {
        throw std::invalid_argument("least_offset: gcd(a,b) does not divide 2N, no offset exists");
    }
    uint64_t r1 = inst.N().mod_u64(a);
    uint64_t r2 = (b - inst.N().mod_u64(b)) % b;
    // m = r1 + a*t with t == (r2 - r1)/g * inv(a/g) (mod b/g).
    uint64_t bg = b / g;
    if (bg == 1) return r1;
    unsigned __int128 diff = (r2 % b + b - r1 % b) % b;  // r2 - r1, nonnegative mod b
    uint64_t step = static_cast<uint64_t>(diff / g) % bg;
    uint64_t inv = detail::inv_mod_u64((a / g) % bg, bg);
    uint64_t t = static_cast<uint64_t>((static_cast<unsigned __int128>(step) * inv) % bg);
    unsigned __int128 m = static_cast<unsigned __int128>(a) * t + r1;
    return static_cast<uint64_t>(m);
}

// m_ab + m_ba is 0 when [a,b] | N, else [a,b].
struct ReflectionCheck {
    uint64_t m_ab;
    uint64_t m_ba;
    uint64_t expected;  // 0 or [a,b]
    bool ok() const { return m_ab + m_ba == expected; }
};

inline ReflectionCheck offset_reflection_check(const ProblemInstance& inst, uint64_t a, uint64_t b) {
    uint64_t m_ab = least_offset(inst, a, b);
    uint64_t m_ba = least_offset(inst, b, a);
    uint64_t l = std::lcm(a, b);
    uint64_t expected = inst.N().divisible_by_u64(l) ? 0 : l;
    return {m_ab, m_ba, expected};
}

// ---- canonical offset ----

// m_ab' = delta_2(a,b)*N*e_2 + N*sum_{p|a'} e_p - N*sum_{p|b'} e_p reduced
// mod [a,b], where a' = a/gcd(2N,a), b' = b/gcd(2N,b), e_p the idempotent at
// p, and delta_2 = 1 iff 2 | [a,b] and N odd. Congruent to m_ab mod [a,b].
inline uint64_t canonical_offset(const ProblemInstance& inst, uint64_t a, uint64_t b) {
    const Int& P = inst.P().value();
    if (a == 0 || b == 0 || !P.divisible_by_u64(a) || !P.divisible_by_u64(b)) {
        throw std::invalid_argument("canonical_offset: [a,b] does not divide P");
    }
    Int two_n = inst.N() + inst.N();
    uint64_t g = std::gcd(a, b);
    if (!two_n.divisible_by_u64(g)) {
        throw std::invalid_argument("canonical_offset: pair not in Q");
    }
    uint64_t l = std::lcm(a, b);
    uint64_t a_red = a / Int::gcd(two_n, Int(static_cast<unsigned long>(a))).to_u64();
    uint64_t b_red = b / Int::gcd(two_n, Int(static_cast<unsigned long>(b))).to_u64();

    Int acc(0ul);
    if (l % 2 == 0 && inst.N().odd()) acc += inst.N() * idempotent_mod_P(inst.P(), 2);
    for (uint64_t p : inst.P().factors()) {
        if (a_red % p == 0) acc += inst.N() * idempotent_mod_P(inst.P(), p);
        if (b_red % p == 0) acc -= inst.N() * idempotent_mod_P(inst.P(), p);
    }
    return Int::fdiv_r(acc, Int(static_cast<unsigned long>(l))).to_u64();
}

// ---- Q construction ----

inline ModuloSet build_modulo_set(const ProblemInstance& inst,
                                  size_t factor_guard = kModuloSetFactorGuard) {
    if (inst.P().num_factors() > factor_guard) {
        throw std::length_error("build_modulo_set: too many prime factors for Q enumeration");
    }
    Int two_n = inst.N() + inst.N();
    const auto& primes = inst.P().factors();
    std::vector<ModPair> pairs;
    // Each prime goes to a only, b only, both (iff p | 2N), or neither.
    struct Choice {
        uint64_t a = 1, b = 1;
        int mu = 1;
    };
    std::vector<Choice> partial{{}};
    for (uint64_t p : primes) {
        bool in_both_ok = two_n.divisible_by_u64(p);
        std::vector<Choice> next;
        next.reserve(partial.size() * (in_both_ok ? 4 : 3));
        for (const Choice& ch : partial) {
            next.push_back(ch);
            next.push_back({ch.a * p, ch.b, -ch.mu});
            next.push_back({ch.a, ch.b * p, -ch.mu});
            if (in_both_ok) next.push_back({ch.a * p, ch.b * p, ch.mu});
        }
        partial = std::move(next);
    }
    pairs.reserve(partial.size());
    for (const Choice& ch : partial) {
        uint64_t l = std::lcm(ch.a, ch.b);
        pairs.push_back({ch.a, ch.b, l, least_offset(inst, ch.a, ch.b), ch.mu});
    }
    std::sort(pairs.begin(), pairs.end(), [](const ModPair& x, const ModPair& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return {std::move(pairs)};
}

// ---- unit sets and values ----

// U_n = {(a,b) in Q : [a,b] | n - m_ab}.
inline std::vector<ModPair> unit_set(const ModuloSet& qset, const Int& n) {
    std::vector<ModPair> out;
    for (const ModPair& pr : qset.pairs) {
        Int diff = n - Int(static_cast<unsigned long>(pr.m));
        if (diff.divisible_by_u64(pr.lcm)) out.push_back(pr);
    }
    return out;
}

// u_n = sum over U_n of mu(a)mu(b); equals the admissibility indicator.
inline int unit_value(const ProblemInstance& inst, const Int& n,
                      size_t factor_guard = kModuloSetFactorGuard) {
    if (n < 1) throw std::invalid_argument("unit_value: n must be >= 1");
    ModuloSet qset = build_modulo_set(inst, factor_guard);
    int sum = 0;
    for (const ModPair& pr : unit_set(qset, n)) sum += pr.mu;
    return sum;
}

// ---- sum-sieve equation ----

// E(x,s) = sum_Q mu(a)mu(b) (e^{i B_ab(x) s} - e^{i A_ab s}) / (2i sin([a,b]s))
// with A_ab = [a,b] - 2m_ab, n_ab(x) = floor((x+m_ab)/[a,b]),
// B_ab(x) = A_ab + 2 n_ab(x) [a,b]. Equals sum_{1<=n<=x} u_n e^{2ins} when
// sin(Ps) != 0. E1 = Re E, E2 = -Im E.
inline std::complex<double> sum_sieve_eval(const ProblemInstance& inst, double x, double s,
                                           double eps = 1e-9,
                                           size_t factor_guard = kModuloSetFactorGuard) {
    if (x < 0) throw std::invalid_argument("sum_sieve_eval: x must be >= 0");
    ModuloSet qset = build_modulo_set(inst, factor_guard);
    for (const ModPair& pr : qset.pairs) {
        if (std::abs(std::sin(static_cast<double>(pr.lcm) * s)) <= eps) {
            throw std::domain_error("sum_sieve_eval: s too close to a zero of sin([a,b]s)");
        }
    }
    std::complex<double> total(0.0, 0.0);
    const std::complex<double> i2(0.0, 2.0);
    for (const ModPair& pr : qset.pairs) {
        double l = static_cast<double>(pr.lcm);
        double A = l - 2.0 * static_cast<double>(pr.m);
        double n_ab = std::floor((x + static_cast<double>(pr.m)) / l);
        double B = A + 2.0 * n_ab * l;
        std::complex<double> num = std::exp(std::complex<double>(0.0, B * s)) -
                                   std::exp(std::complex<double>(0.0, A * s));
        total += static_cast<double>(pr.mu) * num / (i2 * std::sin(l * s));
    }
    return total;
}

// Direct right side of the sum-sieve equation with u_n from the per-prime
// membership test; the independent oracle for E.
inline std::complex<double> direct_unit_expsum(const ProblemInstance& inst, double x, double s) {
    std::complex<double> total(0.0, 0.0);
    for (uint64_t n = 1; n <= static_cast<uint64_t>(std::floor(x)); ++n) {
        if (is_admissible(inst, Int(static_cast<unsigned long>(n)))) {
            total += std::exp(std::complex<double>(0.0, 2.0 * static_cast<double>(n) * s));
        }
    }
    return total;
}

// ---- Q_d and the cosine product ----

// Q_d = {(a,b) : ab = P_d, b coprime to 2N}.
inline std::vector<ModPair> qd_pairs(const ProblemInstance& inst, uint64_t d) {
    if (d == 0 || !inst.P().value().divisible_by_u64(d)) {
        throw std::invalid_argument("qd_pairs: d does not divide P");
    }
    SquareFreeModulus pd = cofactor(inst.P(), d);
    Int two_n = inst.N() + inst.N();
    SquareFreeModulus b_primes = pd.filter([&](uint64_t p) { return !two_n.divisible_by_u64(p); });
    uint64_t pd_val = pd.value_u64();
    std::vector<ModPair> out;
    for (uint64_t b : divisors_of(b_primes)) {
        uint64_t a = pd_val / b;
        // a and b are coprime with ab = P_d, so mu(a)mu(b) = mu(P_d).
        out.push_back({a, b, pd_val, least_offset(inst, a, b), pd.mobius()});
    }
    std::sort(out.begin(), out.end(), [](const ModPair& x, const ModPair& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

// Any-function collapse, exact:
//   sum_Q mu(a)mu(b) F(m_ab, [a,b]) = sum_{d|P} mu(P_d) sum_{Q_d} F(m_ab, [a,b])
// The callable f takes (m, lcm) and returns an integer.
template <typename F>
inline IdentityCheck qd_collapse_check(const ProblemInstance& inst, F&& f,
                                       size_t factor_guard = kModuloSetFactorGuard) {
    Rat lhs(0);
    for (const ModPair& pr : build_modulo_set(inst, factor_guard).pairs) {
        lhs += Rat(static_cast<long>(pr.mu) * f(pr.m, pr.lcm));
    }
    Rat rhs(0);
    for (uint64_t d : divisors_of(inst.P())) {
        for (const ModPair& pr : qd_pairs(inst, d)) {
            rhs += Rat(static_cast<long>(pr.mu) * f(pr.m, pr.lcm));
        }
    }
    return {lhs, rhs};
}

struct CosineProductCheck {
    double lhs;
    double rhs;
};

// sum_{(a,b) in Q_d} cos(2 m_ab k pi / P)
//   = (-1)^{k + k P_dN} prod_{p | P_2dN} 2 cos(2 k N ov(P_p) pi / p),   d | k.
inline CosineProductCheck qd_cosine_product_check(const ProblemInstance& inst, uint64_t d,
                                                  const Int& k) {
    if (!k.divisible_by_u64(d)) throw std::invalid_argument("qd_cosine_product_check: d does not divide k");
    uint64_t P = inst.P().value_u64();
    double lhs = 0.0;
    for (const ModPair& pr : qd_pairs(inst, d)) {
        uint64_t r = (Int(static_cast<unsigned long>(pr.m)) * k).mod_u64(P);
        lhs += std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(P));
    }
    SquareFreeModulus p_dn = cofactor(inst.P(), Int(static_cast<unsigned long>(d)) * inst.N());
    bool p_dn_even = p_dn.contains(2);
    bool k_odd = k.odd();
    double sign = (k_odd && p_dn_even) ? -1.0 : 1.0;
    double rhs = sign;
    Int two_dn = Int(static_cast<unsigned long>(2 * d)) * inst.N();
    for (uint64_t p : inst.P().factors()) {
        if (two_dn.divisible_by_u64(p)) continue;  // p | P_2dN only
        uint64_t ov = inverse_of_cofactor(inst.P(), p);
        uint64_t r = ((k.mod_u64(p) * inst.n_mod(p)) % p * (ov % p)) % p;
        rhs *= 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
    }
    return {lhs, rhs};
}

}  // namespace goldbach
