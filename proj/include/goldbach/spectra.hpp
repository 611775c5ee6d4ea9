#pragma once

// Closed-form Goldbach cosine sums and their direct-summation oracles:
//
//   C_P(N,k)   = mu(N_P) prod_{p|gcd(k,N_P)}(1-p) prod_{p|P_2N} alpha_p(P,kN)
//   C_P^d(N,k) = mu(N_P) prod_{p|gcd(k,N_P)}(1-p) prod_{p|P_6dN}(alpha_p(P,kN)-1)
//
// with alpha_p(P,m) = p-2 when p | m, else -2cos(2 m ov(P_p) pi / p). The
// P_2N and P_6N forms of C_P agree because alpha_3 = 1 whenever 3 | P_2N.
// Trig arguments are reduced exactly (n k mod P first) before any cosine.
// Extension beyond k >= 1 by even symmetry: C(-k) = C(k), C(0) = |W|.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/modulus.hpp"

namespace goldbach {

// alpha_p(P, m); the p | m branch is exactly p - 2.
inline double alpha(const ProblemInstance& inst, uint64_t p, const Int& m) {
    if (!inst.P().contains(p)) throw std::invalid_argument("alpha: p does not divide P");
    uint64_t mr = m.mod_u64(p);
    if (mr == 0) return static_cast<double>(p - 2);
    uint64_t r = (mr * inverse_of_cofactor(inst.P(), p)) % p;
    return -2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
}

namespace detail {

// alpha_p(P, kN) for p coprime to N, branching on p | k; avoids forming k*N.
inline double alpha_kn(const ProblemInstance& inst, uint64_t p, const Int& k) {
    uint64_t kr = k.mod_u64(p);
    if (kr == 0) return static_cast<double>(p - 2);
    uint64_t r = (kr * inst.n_mod(p)) % p;
    r = (r * inverse_of_cofactor(inst.P(), p)) % p;
    return -2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
}

inline double spectrum_prefactor(const ProblemInstance& inst, const Int& k) {
    double out = inst.N_P().mobius();
    for (uint64_t p : inst.N_P().factors()) {
        if (k.mod_u64(p) == 0) out *= 1.0 - static_cast<double>(p);
    }
    return out;
}

}  // namespace detail

// C_P(N, k) via the sum-product formula; computes both the P_2N and the P_6N
// forms and requires them to agree.
inline double spectrum_product(const ProblemInstance& inst, const Int& k_in) {
    Int k = k_in.abs();
    double pre = detail::spectrum_prefactor(inst, k);
    double via_p2n = pre;
    for (uint64_t p : inst.P_2N().factors()) via_p2n *= detail::alpha_kn(inst, p, k);
    double via_p6n = pre;
    for (uint64_t p : inst.P_6N().factors()) via_p6n *= detail::alpha_kn(inst, p, k);
    double scale = std::max(1.0, size_W(inst).to_double());
    if (std::abs(via_p2n - via_p6n) > 1e-9 * scale) {
        throw std::logic_error("spectrum_product: P_2N and P_6N forms disagree");
    }
    return via_p2n;
}

// C_P^d(N, k) via the slice sum-product formula, d | P_6N.
inline double slice_spectrum_product(const ProblemInstance& inst, uint64_t d, const Int& k_in) {
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("slice_spectrum_product: d does not divide P_6N");
    }
    Int k = k_in.abs();
    double out = detail::spectrum_prefactor(inst, k);
    for (uint64_t p : inst.P_6N().factors()) {
        if (d % p != 0) out *= detail::alpha_kn(inst, p, k) - 1.0;
    }
    return out;
}

// Literal sums over an enumerated pattern.
inline double spectrum_direct(const ResiduePattern& pattern, const Int& k) {
    uint64_t P = pattern.instance.P().value_u64();
    uint64_t kr = k.abs().mod_u64(P);
    double total = 0.0;
    for (uint64_t n : pattern.members) {
        uint64_t r = (n * kr) % P;
        total += std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(P));
    }
    return total;
}

inline double spectrum_direct(const ProblemInstance& inst, const Int& k,
                              uint64_t guard = kEnumerationGuard) {
    return spectrum_direct(enumerate_W(inst, guard), k);
}

inline double slice_spectrum_direct(const ResiduePattern& pattern, uint64_t d, const Int& k) {
    uint64_t P = pattern.instance.P().value_u64();
    uint64_t kr = k.abs().mod_u64(P);
    auto it = pattern.slices.find(d);
    if (it == pattern.slices.end()) {
        throw std::invalid_argument("slice_spectrum_direct: no such slice");
    }
    double total = 0.0;
    for (uint64_t n : it->second) {
        uint64_t r = (n * kr) % P;
        total += std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(P));
    }
    return total;
}

// ---- derived instances ----

// The instance (P_p, pbar*N mod P_p) appearing on the right side of every
// deduction formula; the representative is taken in [1, P_p].
inline ProblemInstance reduced_instance(const ProblemInstance& inst, uint64_t d) {
    SquareFreeModulus pd = cofactor(inst.P(), d);
    Int dbar = inverse_bar(inst.P(), d);
    Int n2 = Int::fdiv_r(dbar * inst.N(), pd.value());
    if (n2.is_zero()) n2 = pd.value();
    return ProblemInstance(n2, pd);
}

// ---- spectral deduction relations ----

struct SpectrumCheck {
    double lhs;
    double rhs;
};

// C_P(N,k) = C_{P_p}(pbar N, k) * alpha_p(P, kN) for p | P_2N.
inline SpectrumCheck spectrum_deduction_check(const ProblemInstance& inst, uint64_t p,
                                              const Int& k) {
    if (!inst.P_2N().contains(p)) {
        throw std::invalid_argument("spectrum_deduction_check: p does not divide P_2N");
    }
    double lhs = spectrum_product(inst, k);
    double rhs = spectrum_product(reduced_instance(inst, p), k) *
                 detail::alpha_kn(inst, p, k.abs());
    return {lhs, rhs};
}

// Slice version: C_P^d(N,k) = C_{P_p}^d(pbar N, k) * (alpha_p(P,kN) - 1) for
// d | P_6N and p | P_6dN.
inline SpectrumCheck spectrum_deduction_check_slice(const ProblemInstance& inst, uint64_t d,
                                                    uint64_t p, const Int& k) {
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("spectrum_deduction_check_slice: d does not divide P_6N");
    }
    if (!inst.P_6N().contains(p) || d % p == 0) {
        throw std::invalid_argument("spectrum_deduction_check_slice: p does not divide P_6dN");
    }
    double lhs = slice_spectrum_product(inst, d, k);
    double rhs = slice_spectrum_product(reduced_instance(inst, p), d, k) *
                 (detail::alpha_kn(inst, p, k.abs()) - 1.0);
    return {lhs, rhs};
}

// Same-modulus slice extension: C_P^d(N,k) = C_P^{dp}(N,k) * (alpha_p(P,kN) - 1).
inline SpectrumCheck spectrum_slice_extension_check(const ProblemInstance& inst, uint64_t d,
                                                    uint64_t p, const Int& k) {
    if (!inst.P_6N().contains(p) || d % p == 0) {
        throw std::invalid_argument("spectrum_slice_extension_check: p does not divide P_6dN");
    }
    double lhs = slice_spectrum_product(inst, d, k);
    double rhs = slice_spectrum_product(inst, d * p, k) * (detail::alpha_kn(inst, p, k.abs()) - 1.0);
    return {lhs, rhs};
}

// Second-deduction spectral relation for p | N_P:
// C_P(N,k) = -C_{P_p}(pbar N, k) * p_k with p_k = 1 if p ∤ k else 1-p.
inline SpectrumCheck spectrum_second_deduction_check(const ProblemInstance& inst, uint64_t p,
                                                     const Int& k) {
    if (!inst.N_P().contains(p)) {
        throw std::invalid_argument("spectrum_second_deduction_check: p does not divide N_P");
    }
    double lhs = spectrum_product(inst, k);
    double p_k = (k.abs().mod_u64(p) == 0) ? 1.0 - static_cast<double>(p) : 1.0;
    double rhs = -spectrum_product(reduced_instance(inst, p), k) * p_k;
    return {lhs, rhs};
}

}  // namespace goldbach
