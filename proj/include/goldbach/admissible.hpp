#pragma once

// The admissible set W_P(N) = {n in [1,P] : (N-n)(N+n) coprime to P}, its
// slices W_P^d(N) keyed by d = gcd(P_6N, n), the core sets V_P^d(N), exact
// product-formula sizes, and the factor-sum / momentum identities.
//
// Size formulas (exact):
//   |W_P(N)|   = prod_{p|N_P}(p-1) * prod_{p|P_6N}(p-2)
//   |W_P^d(N)| = prod_{p|N_P}(p-1) * prod_{p|P_6dN}(p-3)
// The missing factors at p = 2, 3 are all 1, so the P_2N and P_6N forms agree.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "goldbach/bigint.hpp"
#include "goldbach/modulus.hpp"

namespace goldbach {

constexpr uint64_t kEnumerationGuard = 10'000'000;

// ---- ResiduePattern ----

struct ResiduePattern {
    ProblemInstance instance;
    std::vector<uint64_t> members;                       // sorted, in [1, P]
    std::map<uint64_t, std::vector<uint64_t>> slices;    // d | P_6N -> sorted members
};

// Complete membership by per-prime residue striking over [1, P].
inline ResiduePattern enumerate_W(const ProblemInstance& inst,
                                  uint64_t guard = kEnumerationGuard) {
    if (!inst.P().value().fits_u64() || inst.P().value_u64() > guard) {
        throw std::length_error("enumerate_W: P exceeds enumeration guard");
    }
    uint64_t P = inst.P().value_u64();
    std::vector<uint8_t> live(P + 1, 1);
    for (uint64_t q : inst.P().factors()) {
        uint64_t r = inst.n_mod(q);
        for (uint64_t f : {r, (q - r) % q}) {
            for (uint64_t n = (f == 0) ? q : f; n <= P; n += q) live[n] = 0;
            if (r == 0) break;  // q | N strikes the single residue 0
        }
    }

    ResiduePattern out{inst, {}, {}};
    const auto& p6n = inst.P_6N().factors();
    for (uint64_t n = 1; n <= P; ++n) {
        if (!live[n]) continue;
        out.members.push_back(n);
        uint64_t d = 1;
        for (uint64_t q : p6n) {
            if (n % q == 0) d *= q;
        }
        out.slices[d].push_back(n);
    }
    return out;
}

// ---- product-formula sizes ----

inline Int size_W(const ProblemInstance& inst) {
    Int out(1ul);
    for (uint64_t p : inst.N_P().factors()) out *= static_cast<unsigned long>(p - 1);
    for (uint64_t p : inst.P_6N().factors()) out *= static_cast<unsigned long>(p - 2);
    return out;
}

inline Int size_W_d(const ProblemInstance& inst, uint64_t d) {
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("size_W_d: d does not divide P_6N");
    }
    Int out(1ul);
    for (uint64_t p : inst.N_P().factors()) out *= static_cast<unsigned long>(p - 1);
    for (uint64_t p : inst.P_6N().factors()) {
        if (d % p != 0) out *= static_cast<unsigned long>(p - 3);
    }
    return out;
}

// ---- membership ----

// Per-prime membership test: n survives iff n mod q avoids {N, -N} mod q for
// every q | P. With a slice d, additionally q | n exactly for the q | d among
// the P_6N primes. O(#P) per call; usable at scan scale.
inline bool is_admissible(const ProblemInstance& inst, const Int& n,
                          std::optional<uint64_t> slice = std::nullopt) {
    if (n < 1) throw std::invalid_argument("is_admissible: n must be >= 1");
    for (uint64_t q : inst.P().factors()) {
        uint64_t r = inst.n_mod(q);
        uint64_t nr = n.mod_u64(q);
        if (nr == r || nr == (q - r) % q) return false;
    }
    if (slice) {
        if (*slice == 0 || !inst.P_6N().value().divisible_by_u64(*slice)) {
            throw std::invalid_argument("is_admissible: slice does not divide P_6N");
        }
        for (uint64_t q : inst.P_6N().factors()) {
            bool in_d = (*slice % q == 0);
            if (in_d != (n.mod_u64(q) == 0)) return false;
        }
    }
    return true;
}

// ---- core sets V_P^d ----

// V_P^d(N) = {k : n = c*d*k, n in W_P^d(N)}; every slice member is divisible
// by c*d, per the slice bijection.
inline std::vector<uint64_t> core_set(const ResiduePattern& pattern, uint64_t d) {
    auto it = pattern.slices.find(d);
    std::vector<uint64_t> out;
    if (it == pattern.slices.end()) return out;
    uint64_t cd = pattern.instance.c() * d;
    for (uint64_t n : it->second) {
        if (n % cd != 0) throw std::logic_error("core_set: slice member not divisible by c*d");
        out.push_back(n / cd);
    }
    return out;
}

// ---- identities ----

struct IdentityCheck {
    Rat lhs;
    Rat rhs;
    bool ok() const { return lhs == rhs; }
};

// prod_{p|K}(h_p + 1) = sum_{d|K} prod_{p|K_d} h_p, exact.
inline IdentityCheck factor_sum_identity_check(const SquareFreeModulus& K,
                                               const std::map<uint64_t, Rat>& h) {
    Rat lhs(1);
    for (uint64_t p : K.factors()) {
        auto it = h.find(p);
        if (it == h.end()) throw std::invalid_argument("factor_sum_identity_check: missing h value");
        lhs *= it->second + Rat(1);
    }
    Rat rhs(0);
    for (uint64_t d : divisors_of(K)) {
        Rat term(1);
        for (uint64_t p : K.factors()) {
            if (d % p != 0) term *= h.at(p);  // p | K_d
        }
        rhs += term;
    }
    return {lhs, rhs};
}

// Goldbach momentum formula, exact:
//   sum_{n in W} prod_{p|P_n} (f_p-1)/(p-1)
//     = prod_{p|N_P}(f_p-1) * prod_{p|P_6N}(f_p - 2(f_p-1)/(p-1))
inline IdentityCheck momentum_check(const ProblemInstance& inst,
                                    const std::map<uint64_t, Rat>& f,
                                    uint64_t guard = kEnumerationGuard) {
    for (uint64_t p : inst.P().factors()) {
        if (!f.count(p)) throw std::invalid_argument("momentum_check: missing f value");
    }
    ResiduePattern pattern = enumerate_W(inst, guard);
    Rat lhs(0);
    for (uint64_t n : pattern.members) {
        Rat term(1);
        for (uint64_t p : inst.P().factors()) {
            if (n % p != 0) {  // p | P_n
                term *= (f.at(p) - Rat(1)) / Rat(static_cast<long>(p - 1));
            }
        }
        lhs += term;
    }
    Rat rhs(1);
    for (uint64_t p : inst.N_P().factors()) rhs *= f.at(p) - Rat(1);
    for (uint64_t p : inst.P_6N().factors()) {
        rhs *= f.at(p) - Rat(2) * (f.at(p) - Rat(1)) / Rat(static_cast<long>(p - 1));
    }
    return {lhs, rhs};
}

}  // namespace goldbach
