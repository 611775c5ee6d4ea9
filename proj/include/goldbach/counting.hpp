#pragma once

// Exact counting S_P(N,x) = #{n in [1,x] : (N-n)(N+n) coprime to P}, slice
// variants, the boundary term t, and the error term T in three forms:
//
//   fracsum      T = sum_{n in W} ({(x-n)/P} - 1/2)        exact rational
//   from_counts  T = |W| x / P - t - S                      exact rational
//   fourier      T = -sum_{k=1..K} C(N,k) sin(2 k pi x/P)/(k pi)   real
//
// plus the five deduction identities and windowed slice counting. Evaluation
// points are exact rationals; the identities require non-integer x, and all
// counting functions are constant between integers, so half-integers are the
// canonical grid. The Fourier form is a convergence demonstration only and is
// never used for verdicts.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/modulus.hpp"
#include "goldbach/spectra.hpp"

namespace goldbach {

inline constexpr uint64_t kCountGuard = 1'000'000'000;

inline Rat half_integer(long k) { return Rat(2 * k + 1, 2); }

namespace detail {

inline const std::vector<uint64_t>& slice_members(const ResiduePattern& pattern, uint64_t d) {
    if (d == 0 || !pattern.instance.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("slice_members: d does not divide P_6N");
    }
    return pattern.slices.at(d);  // every slice is populated: |W^d| >= 1
}

// One forbidden residue class f (mod q) of n, mapped into candidate-index
// space n = start + j * step.
struct StrikeClass {
    uint64_t q;
    uint64_t j0;
};

// Residues of n forbidden mod q: n ≡ ±N, plus n ≡ 0 when a slice is given
// that excludes q (no slice means the full set W, which keeps its multiples
// of P_6N primes). Returns them deduplicated.
inline int forbidden_residues(const ProblemInstance& inst, uint64_t q,
                              std::optional<uint64_t> slice, uint64_t out[3]) {
    int nf = 0;
    uint64_t nq = inst.n_mod(q);
    out[nf++] = nq;
    uint64_t f2 = (q - nq) % q;
    if (f2 != nq) out[nf++] = f2;
    if (slice && inst.P_6N().contains(q) && *slice % q != 0) {
        if (nq != 0) out[nf++] = 0;
    }
    return nf;
}

// Counts slice-d (or, without a slice, all) admissible integers n = j*d with
// j in [1, jmax], by striking forbidden residue classes over segmented index
// buffers.
inline Int sieve_count_slice(const ProblemInstance& inst, std::optional<uint64_t> slice,
                             uint64_t jmax) {
    uint64_t d = slice.value_or(1);
    std::vector<StrikeClass> classes;
    for (uint64_t q : inst.P().factors()) {
        if (d % q == 0) continue;
        uint64_t dinv = inv_mod_u64(d % q, q);
        uint64_t fs[3];
        int nf = forbidden_residues(inst, q, slice, fs);
        for (int i = 0; i < nf; ++i) {
            classes.push_back({q, (fs[i] % q) * dinv % q});
        }
    }
    constexpr uint64_t kSegment = 1u << 20;
    std::vector<uint8_t> alive(std::min(jmax, kSegment));
    uint64_t total = 0;
    for (uint64_t lo = 1; lo <= jmax; lo += kSegment) {
        uint64_t hi = std::min(jmax, lo + kSegment - 1);
        uint64_t len = hi - lo + 1;
        std::memset(alive.data(), 1, len);
        for (const StrikeClass& c : classes) {
            uint64_t first = c.j0 >= lo % c.q ? c.j0 - lo % c.q : c.j0 + c.q - lo % c.q;
            for (uint64_t j = first; j < len; j += c.q) alive[j] = 0;
        }
        for (uint64_t j = 0; j < len; ++j) total += alive[j];
    }
    return Int(total);
}

}  // namespace detail

// ---- counting ----

inline Int count_S(const ResiduePattern& pattern, const Rat& x,
                   std::optional<uint64_t> slice = std::nullopt) {
    if (x.sign() < 0) throw std::invalid_argument("count_S: x must be nonnegative");
    Int limit = x.floor();
    if (limit.sign() <= 0) return Int(0);
    const std::vector<uint64_t>& members =
        slice ? detail::slice_members(pattern, *slice) : pattern.members;
    Int P = pattern.instance.P().value();
    Int full = Int::fdiv_q(limit, P);
    uint64_t rem = Int::fdiv_r(limit, P).to_u64();
    auto it = std::upper_bound(members.begin(), members.end(), rem);
    uint64_t partial = static_cast<uint64_t>(it - members.begin());
    return full * Int(static_cast<unsigned long>(members.size())) +
           Int(static_cast<unsigned long>(partial));
}

inline Int count_S(const ProblemInstance& inst, const Rat& x,
                   std::optional<uint64_t> slice = std::nullopt,
                   uint64_t guard = kCountGuard) {
    if (x.sign() < 0) throw std::invalid_argument("count_S: x must be nonnegative");
    if (inst.P().value() <= Int(static_cast<unsigned long>(kEnumerationGuard))) {
        return count_S(enumerate_W(inst), x, slice);
    }
    Int limit = x.floor();
    if (limit.sign() <= 0) return Int(0);
    if (!limit.fits_u64() || limit.to_u64() > guard) {
        throw std::invalid_argument("count_S: x exceeds the direct-mode guard");
    }
    uint64_t d = slice.value_or(1);
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("count_S: slice does not divide P_6N");
    }
    return detail::sieve_count_slice(inst, slice, limit.to_u64() / d);
}

// t_P(N) = 1/2 iff N_P = 1; t_P^d(N) = 1/2 iff P_d | 6 and gcd(P_d, dbar N) = 1.
inline Rat t_term(const ProblemInstance& inst, std::optional<uint64_t> slice = std::nullopt) {
    if (!slice) return inst.N_P().value().is_one() ? Rat(1, 2) : Rat(0);
    uint64_t d = *slice;
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("t_term: slice does not divide P_6N");
    }
    SquareFreeModulus pd = cofactor(inst.P(), Int(static_cast<unsigned long>(d)));
    if (!Int(6).divisible_by(pd.value())) return Rat(0);
    Int dbar_n = inverse_bar(inst.P(), d) * inst.N();
    return Int::gcd(pd.value(), dbar_n).is_one() ? Rat(1, 2) : Rat(0);
}

// ---- error term T ----

inline Rat error_T_fracsum(const ResiduePattern& pattern, const Rat& x,
                           std::optional<uint64_t> slice = std::nullopt) {
    if (x.is_integer()) throw std::invalid_argument("error_T_fracsum: x must not be an integer");
    const std::vector<uint64_t>& members =
        slice ? detail::slice_members(pattern, *slice) : pattern.members;
    Int a = x.num();
    Int b = x.den();
    Int D = b * pattern.instance.P().value();
    Int sum(0);
    for (uint64_t n : members) {
        sum += Int::fdiv_r(a - Int(n) * b, D);
    }
    return Rat(sum, D) - Rat(Int(static_cast<unsigned long>(members.size())), Int(2));
}

inline Rat error_T_fracsum(const ProblemInstance& inst, const Rat& x,
                           std::optional<uint64_t> slice = std::nullopt,
                           uint64_t guard = kEnumerationGuard) {
    return error_T_fracsum(enumerate_W(inst, guard), x, slice);
}

inline Rat error_T_from_counts(const ProblemInstance& inst, const Rat& x,
                               std::optional<uint64_t> slice = std::nullopt,
                               uint64_t guard = kCountGuard) {
    Int w = slice ? size_W_d(inst, *slice) : size_W(inst);
    Rat omega_times_x(w * x.num(), x.den() * inst.P().value());
    return omega_times_x - t_term(inst, slice) - Rat(count_S(inst, x, slice, guard));
}

inline double error_T_fourier(const ProblemInstance& inst, const Rat& x, uint64_t K,
                              std::optional<uint64_t> slice = std::nullopt) {
    if (K == 0) throw std::invalid_argument("error_T_fourier: K must be positive");
    Int D = x.den() * inst.P().value();
    Int A = Int::fdiv_r(x.num(), D);
    if (A.is_zero()) throw std::invalid_argument("error_T_fourier: x/P must not be an integer");
    Int r(0);
    double dD = D.to_double();
    double total = 0.0;
    for (uint64_t k = 1; k <= K; ++k) {
        r += A;
        if (r >= D) r -= D;
        double c = slice ? slice_spectrum_product(inst, *slice, Int(k))
                         : spectrum_product(inst, Int(k));
        double angle = 2.0 * std::numbers::pi * (r.to_double() / dD);
        total -= c * std::sin(angle) / (static_cast<double>(k) * std::numbers::pi);
    }
    return total;
}

// S, t, T, and |W|x/P packaged in the exact representation; T comes from the
// fractional-part sum, so consistent() genuinely checks S = |W|x/P - t - T.
struct CountBundle {
    Int S;
    Rat t;
    Rat T;
    Rat omega_times_x;

    bool consistent() const { return Rat(S) == omega_times_x - t - T; }
};

inline CountBundle count_bundle(const ResiduePattern& pattern, const Rat& x,
                                std::optional<uint64_t> slice = std::nullopt) {
    const ProblemInstance& inst = pattern.instance;
    Int w = slice ? size_W_d(inst, *slice) : size_W(inst);
    return CountBundle{count_S(pattern, x, slice), t_term(inst, slice),
                       error_T_fracsum(pattern, x, slice),
                       Rat(w * x.num(), x.den() * inst.P().value())};
}

// ---- deduction identities ----

namespace detail {

// y = N * inv(P_p mod p) * P_p, the reflection point of the first deduction.
inline Int reflection_point(const ProblemInstance& inst, uint64_t p) {
    SquareFreeModulus pp = cofactor(inst.P(), Int(static_cast<unsigned long>(p)));
    return inst.N() * Int(static_cast<unsigned long>(inverse_of_cofactor(inst.P(), p))) *
           pp.value();
}

}  // namespace detail

// S_P(N,x) = S_{P_p}(N,x) - S_{P_p}(pbar N, (y+x)/p) + S_{P_p}(pbar N, (y-x)/p)
// for p | P_2N, non-integer x < y = N inv(P_p) P_p.
inline bool deduction_check_S_first(const ProblemInstance& inst, uint64_t p, const Rat& x,
                                    uint64_t guard = kCountGuard) {
    if (!inst.P_2N().contains(p)) {
        throw std::invalid_argument("deduction_check_S_first: p does not divide P_2N");
    }
    if (x.is_integer() || x.sign() < 0) {
        throw std::invalid_argument("deduction_check_S_first: x must be non-integer and nonnegative");
    }
    Int y = detail::reflection_point(inst, p);
    if (!(x < Rat(y))) throw std::invalid_argument("deduction_check_S_first: x must lie below the reflection point");
    ProblemInstance same(inst.N(), cofactor(inst.P(), Int(static_cast<unsigned long>(p))));
    ProblemInstance flip = reduced_instance(inst, p);
    Int pb(static_cast<unsigned long>(p));
    Rat x_plus(y * x.den() + x.num(), x.den() * pb);
    Rat x_minus(y * x.den() - x.num(), x.den() * pb);
    Int lhs = count_S(inst, x, std::nullopt, guard);
    Int rhs = count_S(same, x, std::nullopt, guard) - count_S(flip, x_plus, std::nullopt, guard) +
              count_S(flip, x_minus, std::nullopt, guard);
    return lhs == rhs;
}

enum class TDeductionVariant { first, first_slice, second, second_slice, third };

// Exact-rational verification of the deduction identities for T. Variants:
//   first        p | P_2N:  T_P(N,x) = T_{P_p}(N,x) - T_{P_p}(pbar N,(y+x)/p)
//                                      + T_{P_p}(pbar N,(y-x)/p)
//   first_slice  p | P_6dN: T_P^d(N,x) = T_{P_p}^d(N,x) - T_P^{dp}(N,x)
//                                      - T_P^{dp}(N,y+x) + T_P^{dp}(N,y-x)
//   second       p | N_P:   T_P(N,x) = T_{P_p}(N,x) - T_{P_p}(pbar N, x/p)
//   second_slice p | N_P:   same with slice d on both T_{P_p} terms
//   third        c = index: T_P(N,x) = T_{P_c}(cbar N, x/c), also per slice d
inline bool deduction_check_T(const ProblemInstance& inst, TDeductionVariant variant,
                              const Rat& x, std::optional<uint64_t> p_opt = std::nullopt,
                              std::optional<uint64_t> d_opt = std::nullopt,
                              uint64_t guard = kEnumerationGuard) {
    if (x.is_integer()) throw std::invalid_argument("deduction_check_T: x must not be an integer");
    auto T = [guard](const ProblemInstance& i, const Rat& at,
                     std::optional<uint64_t> d = std::nullopt) {
        return error_T_fracsum(i, at, d, guard);
    };
    auto over = [](const Rat& v, const Int& q) { return Rat(v.num(), v.den() * q); };
    auto shifted = [](const Int& y, const Rat& v, int sgn) {
        return Rat(y * v.den() + (sgn < 0 ? -v.num() : v.num()), v.den());
    };
    switch (variant) {
        case TDeductionVariant::first: {
            if (!p_opt) throw std::invalid_argument("deduction_check_T: first requires p");
            uint64_t p = *p_opt;
            if (!inst.P_2N().contains(p)) {
                throw std::invalid_argument("deduction_check_T: p does not divide P_2N");
            }
            Int y = detail::reflection_point(inst, p);
            if (!(x < Rat(y))) throw std::invalid_argument("deduction_check_T: x must lie below the reflection point");
            ProblemInstance same(inst.N(), cofactor(inst.P(), Int(static_cast<unsigned long>(p))));
            ProblemInstance flip = reduced_instance(inst, p);
            Int pb(static_cast<unsigned long>(p));
            return T(inst, x) == T(same, x) - T(flip, over(shifted(y, x, +1), pb)) +
                                     T(flip, over(shifted(y, x, -1), pb));
        }
        case TDeductionVariant::first_slice: {
            if (!p_opt || !d_opt) throw std::invalid_argument("deduction_check_T: first_slice requires p and d");
            uint64_t p = *p_opt;
            uint64_t d = *d_opt;
            if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
                throw std::invalid_argument("deduction_check_T: d does not divide P_6N");
            }
            if (!inst.P_6N().contains(p) || d % p == 0) {
                throw std::invalid_argument("deduction_check_T: p does not divide P_6dN");
            }
            Int y = detail::reflection_point(inst, p);
            if (!(x < Rat(y))) throw std::invalid_argument("deduction_check_T: x must lie below the reflection point");
            ProblemInstance same(inst.N(), cofactor(inst.P(), Int(static_cast<unsigned long>(p))));
            return T(inst, x, d) == T(same, x, d) - T(inst, x, d * p) -
                                        T(inst, shifted(y, x, +1), d * p) +
                                        T(inst, shifted(y, x, -1), d * p);
        }
        case TDeductionVariant::second:
        case TDeductionVariant::second_slice: {
            if (!p_opt) throw std::invalid_argument("deduction_check_T: second requires p");
            uint64_t p = *p_opt;
            if (!inst.N_P().contains(p)) {
                throw std::invalid_argument("deduction_check_T: p does not divide N_P");
            }
            std::optional<uint64_t> d;
            if (variant == TDeductionVariant::second_slice) {
                if (!d_opt) throw std::invalid_argument("deduction_check_T: second_slice requires d");
                d = *d_opt;
            }
            ProblemInstance same(inst.N(), cofactor(inst.P(), Int(static_cast<unsigned long>(p))));
            ProblemInstance flip = reduced_instance(inst, p);
            Int pb(static_cast<unsigned long>(p));
            return T(inst, x, d) == T(same, x, d) - T(flip, over(x, pb), d);
        }
        case TDeductionVariant::third: {
            uint64_t c = inst.c();
            ProblemInstance reduced = reduced_instance(inst, c);
            Int cb(static_cast<unsigned long>(c));
            return T(inst, x, d_opt) == T(reduced, over(x, cb), d_opt);
        }
    }
    throw std::logic_error("deduction_check_T: unreachable");
}

// ---- windowed counting ----

// Sorted offsets delta in (-halfwidth, halfwidth] with center + delta
// admissible in slice d, by per-prime residue striking over the multiples of
// d in the window. Requires 2*halfwidth < P so the window sees each residue
// at most once.
inline std::vector<int64_t> count_window(const ProblemInstance& inst, const Int& center,
                                         uint64_t halfwidth, uint64_t slice = 1) {
    uint64_t d = slice;
    if (d == 0 || !inst.P_6N().value().divisible_by_u64(d)) {
        throw std::invalid_argument("count_window: slice does not divide P_6N");
    }
    if (!(Int(2) * Int(halfwidth) < inst.P().value())) {
        throw std::invalid_argument("count_window: window spans a full period");
    }
    if (halfwidth == 0) return {};
    int64_t lo = 1 - static_cast<int64_t>(halfwidth);
    uint64_t r0 = (d - center.mod_u64(d)) % d;
    int64_t sd = static_cast<int64_t>(d);
    uint64_t off = (r0 + static_cast<uint64_t>(sd - (((lo % sd) + sd) % sd))) % d;
    int64_t dmin = lo + static_cast<int64_t>(off);
    if (dmin > static_cast<int64_t>(halfwidth)) return {};
    uint64_t ncand =
        static_cast<uint64_t>((static_cast<int64_t>(halfwidth) - dmin) / sd) + 1;
    if (ncand > (uint64_t{1} << 31)) throw std::invalid_argument("count_window: window too large");
    std::vector<uint8_t> alive(ncand, 1);
    for (uint64_t q : inst.P().factors()) {
        if (d % q == 0) continue;
        uint64_t dinv = detail::inv_mod_u64(d % q, q);
        uint64_t sq = q;
        uint64_t base =
            (center.mod_u64(q) + static_cast<uint64_t>(((dmin % static_cast<int64_t>(sq)) +
                                                        static_cast<int64_t>(sq)) %
                                                       static_cast<int64_t>(sq))) %
            q;
        uint64_t fs[3];
        int nf = detail::forbidden_residues(inst, q, std::optional<uint64_t>(d), fs);
        for (int i = 0; i < nf; ++i) {
            uint64_t j0 = ((fs[i] + q - base) % q) * dinv % q;
            for (uint64_t j = j0; j < ncand; j += q) alive[j] = 0;
        }
    }
    std::vector<int64_t> out;
    for (uint64_t j = 0; j < ncand; ++j) {
        if (alive[j]) out.push_back(dmin + static_cast<int64_t>(j) * sd);
    }
    return out;
}

// ---- periodwide extremum of T ----

struct PeriodExtremum {
    Rat max_abs;
    Rat argmax;
};

// max |T(x)| over the half-integer grid x = k + 1/2, k = 0..P-1 (one full
// period). Runs in O(P + |W|) by tracking the member prefix count.
inline PeriodExtremum max_abs_error_T_over_period(const ProblemInstance& inst,
                                                  std::optional<uint64_t> slice = std::nullopt,
                                                  uint64_t guard = kEnumerationGuard) {
    ResiduePattern pattern = enumerate_W(inst, guard);
    const std::vector<uint64_t>& members =
        slice ? detail::slice_members(pattern, *slice) : pattern.members;
    uint64_t P = inst.P().value_u64();
    std::vector<uint8_t> present(P + 1, 0);
    __int128 sum_w = 0;
    for (uint64_t w : members) {
        present[w] = 1;
        sum_w += w;
    }
    __int128 m = static_cast<__int128>(members.size());
    __int128 best = 0;
    uint64_t best_k = 0;
    uint64_t cnt_le = 0;
    // 2P * T(k + 1/2) = m(2k+1) - 2 sum_w + 2P(m - cnt_le(k)) - mP
    for (uint64_t k = 0; k < P; ++k) {
        cnt_le += present[k];
        __int128 num = m * (2 * static_cast<__int128>(k) + 1) - 2 * sum_w +
                       2 * static_cast<__int128>(P) * (m - static_cast<__int128>(cnt_le)) -
                       m * static_cast<__int128>(P);
        __int128 mag = num < 0 ? -num : num;
        if (mag > best) {
            best = mag;
            best_k = k;
        }
    }
    Int num_best(static_cast<unsigned long>(static_cast<unsigned __int128>(best) &
                                            0xffffffffffffffffULL));
    Int num_hi(static_cast<unsigned long>(static_cast<unsigned __int128>(best) >> 64));
    Int numerator = num_hi * Int::two_pow(64) + num_best;
    return PeriodExtremum{Rat(numerator, Int(2) * inst.P().value()),
                          Rat(Int(2) * Int(best_k) + Int(1), Int(2))};
}

}  // namespace goldbach
