#pragma once

// Squarefree-modulus arithmetic: primorials, cofactors P_n = P/gcd(P,n), the
// inverse families (overline(P_p), p-bar, d-bar), idempotents e_p, and CRT.
//
// Conventions used throughout the library:
//   gcd(0, m) = m, so n = N is never admissible unless P = 1.
//   P_n keeps exactly the primes of P not dividing n.
//   p-bar is the unique z mod P with z*p == 1 (mod P_p) and z == 1 (mod p);
//   d-bar is the product of p-bar over p | d, reduced mod P (coprime to P).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "goldbach/bigint.hpp"
#include "goldbach/primes.hpp"

namespace goldbach {

// ---- SquareFreeModulus ----

class SquareFreeModulus {
public:
    SquareFreeModulus() : value_(1) {}

    explicit SquareFreeModulus(std::vector<uint64_t> factors) : factors_(std::move(factors)) {
        std::sort(factors_.begin(), factors_.end());
        value_ = Int(1ul);
        uint64_t prev = 0;
        for (uint64_t p : factors_) {
            if (p == prev) throw std::invalid_argument("SquareFreeModulus: repeated prime factor");
            if (!is_prime_u64(p)) {
                throw std::invalid_argument("SquareFreeModulus: non-prime factor " + std::to_string(p));
            }
            prev = p;
            value_ *= static_cast<unsigned long>(p);
        }
    }

    // Factors a plain value; rejects non-squarefree input.
    static SquareFreeModulus from_value(uint64_t v) {
        if (v == 0) throw std::invalid_argument("SquareFreeModulus: zero value");
        std::vector<uint64_t> fs = distinct_prime_factors(v);
        uint64_t prod = 1;
        for (uint64_t p : fs) prod *= p;
        if (prod != v) throw std::invalid_argument("SquareFreeModulus: value not squarefree");
        return SquareFreeModulus(std::move(fs));
    }

    const Int& value() const { return value_; }
    const std::vector<uint64_t>& factors() const { return factors_; }
    size_t num_factors() const { return factors_.size(); }
    bool is_one() const { return factors_.empty(); }
    bool contains(uint64_t p) const {
        return std::binary_search(factors_.begin(), factors_.end(), p);
    }
    int mobius() const { return (factors_.size() % 2 == 0) ? 1 : -1; }

    uint64_t value_u64() const {
        if (!value_.fits_u64()) throw std::overflow_error("SquareFreeModulus: value exceeds u64");
        return value_.to_u64();
    }

    // Sub-modulus on the factors satisfying keep(p).
    template <typename Pred>
    SquareFreeModulus filter(Pred keep) const {
        std::vector<uint64_t> fs;
        for (uint64_t p : factors_) {
            if (keep(p)) fs.push_back(p);
        }
        SquareFreeModulus out;
        out.factors_ = std::move(fs);
        out.value_ = Int(1ul);
        for (uint64_t p : out.factors_) out.value_ *= static_cast<unsigned long>(p);
        return out;
    }

    friend bool operator==(const SquareFreeModulus& a, const SquareFreeModulus& b) {
        return a.factors_ == b.factors_;
    }

private:
    Int value_;
    std::vector<uint64_t> factors_;
};

// Product of all primes <= z.
inline SquareFreeModulus primorial(double z) {
    if (z < 1.0) throw std::invalid_argument("primorial: z must be >= 1");
    if (z < 2.0) return SquareFreeModulus();
    auto limit = static_cast<uint64_t>(z);
    auto table = PrimeTable::get(limit);
    auto span = table->primes_up_to(limit);
    std::vector<uint64_t> fs(span.begin(), span.end());
    return SquareFreeModulus(std::move(fs));
}

// Product of all primes p with p*p <= two_n; the exact-integer form of
// primorial(sqrt(2N)) used by the scanners.
inline SquareFreeModulus primorial_under_sqrt(uint64_t two_n) {
    uint64_t r = 1;
    while ((r + 1) * (r + 1) <= two_n) ++r;
    return primorial(static_cast<double>(r));
}

// P_n = P with every prime dividing n removed; n = 0 removes everything.
inline SquareFreeModulus cofactor(const SquareFreeModulus& P, const Int& n) {
    if (n.is_zero()) return SquareFreeModulus();
    return P.filter([&](uint64_t p) { return !n.divisible_by_u64(p); });
}

inline SquareFreeModulus cofactor(const SquareFreeModulus& P, uint64_t n) {
    return cofactor(P, Int(static_cast<unsigned long>(n)));
}

// ---- modular inverses ----

namespace detail {

inline uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
    // Extended gcd; requires gcd(a, m) = 1, m >= 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod_u64: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<uint64_t>(t);
}

}  // namespace detail

// overline(P_p): the residue in [1, p] with P_p * result == 1 (mod p).
inline uint64_t inverse_of_cofactor(const SquareFreeModulus& P, uint64_t p) {
    if (!P.contains(p)) throw std::invalid_argument("inverse_of_cofactor: p does not divide P");
    if (p == 2) return 1;
    uint64_t pp_mod = 1;
    for (uint64_t q : P.factors()) {
        if (q != p) pp_mod = (pp_mod * (q % p)) % p;
    }
    return detail::inv_mod_u64(pp_mod, p);
}

// e_p in [0, P) with e_p == 1 (mod p), e_p == 0 (mod P_p); idempotent mod P.
inline Int idempotent_mod_P(const SquareFreeModulus& P, uint64_t p) {
    if (!P.contains(p)) throw std::invalid_argument("idempotent_mod_P: p does not divide P");
    Int pp = Int::divexact(P.value(), Int(static_cast<unsigned long>(p)));
    Int e = Int::mul_u64(pp, inverse_of_cofactor(P, p));
    return Int::fdiv_r(e, P.value());
}

// p-bar for a prime factor: z with z*p == 1 (mod P_p) and z == 1 (mod p).
inline Int prime_bar(const SquareFreeModulus& P, uint64_t p) {
    if (!P.contains(p)) throw std::invalid_argument("prime_bar: p does not divide P");
    Int pv(static_cast<unsigned long>(p));
    Int pp = Int::divexact(P.value(), pv);
    if (pp.is_one()) return Int(1ul);  // P = p: only z == 1 (mod p) constrains.
    auto inv = pv.invert_mod(pp);
    // p is coprime to its cofactor, so the inverse exists.
    Int a = Int::fdiv_r(*inv, pp);  // x == a (mod P_p)
    // Lift to x == 1 (mod p): x = a + P_p * t, t = (1 - a) * P_p^{-1} mod p.
    uint64_t pp_inv = detail::inv_mod_u64(pp.mod_u64(p), p);
    uint64_t delta = (1 + p - a.mod_u64(p)) % p;
    Int x = a + pp * Int(static_cast<unsigned long>((delta * pp_inv) % p));
    return Int::fdiv_r(x, P.value());
}

// d-bar = product of p-bar over p | d, reduced into [1, P]; coprime to P.
inline Int inverse_bar(const SquareFreeModulus& P, uint64_t d) {
    if (d == 0 || !P.value().divisible_by_u64(d)) {
        throw std::invalid_argument("inverse_bar: d does not divide P");
    }
    Int acc(1ul);
    for (uint64_t p : P.factors()) {
        if (d % p == 0) {
            acc *= prime_bar(P, p);
            acc = Int::fdiv_r(acc, P.value());
        }
    }
    if (acc.is_zero()) acc = P.value();  // only when P = 1
    return acc;
}

// ---- CRT ----

// Solves x == r_i (mod m_i) for pairwise coprime moduli; result in [1, prod m_i].
inline Int crt_solve(const std::vector<std::pair<Int, Int>>& residues) {
    Int modulus(1ul);
    Int x(0ul);
    for (const auto& [m, r] : residues) {
        if (m <= 0) throw std::invalid_argument("crt_solve: modulus must be positive");
        if (!Int::gcd(modulus, m).is_one()) {
            throw std::invalid_argument("crt_solve: moduli not pairwise coprime");
        }
        // x' = x + modulus * t with t == (r - x)/modulus (mod m).
        if (!m.is_one()) {
            Int diff = Int::fdiv_r(r - x, m);
            Int inv = Int::fdiv_r(*modulus.invert_mod(m), m);
            Int t = Int::fdiv_r(diff * inv, m);
            x = x + modulus * t;
        }
        modulus *= m;
        x = Int::fdiv_r(x, modulus);
    }
    if (x.is_zero()) x = modulus;
    return x;
}

// ---- ProblemInstance ----

// Bundles (N, P) with the derived structure used everywhere: N_P = gcd(N, P),
// the cofactors P_2N and P_6N, the index c and its 2-part c'.
class ProblemInstance {
public:
    ProblemInstance(Int N, SquareFreeModulus P) : n_(std::move(N)), p_(std::move(P)) {
        if (n_ <= 0) throw std::invalid_argument("ProblemInstance: N must be positive");
        n_mod_.reserve(p_.num_factors());
        for (uint64_t q : p_.factors()) n_mod_.push_back(n_.mod_u64(q));

        np_ = p_.filter([&](uint64_t q) { return n_mod(q) == 0; });
        p2n_ = p_.filter([&](uint64_t q) { return q != 2 && n_mod(q) != 0; });
        p6n_ = p_.filter([&](uint64_t q) { return q != 2 && q != 3 && n_mod(q) != 0; });

        c_ = 1;
        if (p_.contains(2) && n_.odd()) c_ *= 2;
        if (p_.contains(3) && n_.mod_u64(3) != 0) c_ *= 3;
        c_prime_ = (p_.contains(2) && n_.odd()) ? 2 : 1;
    }

    const Int& N() const { return n_; }
    const SquareFreeModulus& P() const { return p_; }
    const SquareFreeModulus& N_P() const { return np_; }
    const SquareFreeModulus& P_2N() const { return p2n_; }
    const SquareFreeModulus& P_6N() const { return p6n_; }
    uint64_t c() const { return c_; }
    uint64_t c_prime() const { return c_prime_; }

    // N mod q for a prime factor q of P.
    uint64_t n_mod(uint64_t q) const {
        const auto& fs = p_.factors();
        auto it = std::lower_bound(fs.begin(), fs.end(), q);
        if (it == fs.end() || *it != q) throw std::invalid_argument("n_mod: q does not divide P");
        return n_mod_[static_cast<size_t>(it - fs.begin())];
    }

private:
    Int n_;
    SquareFreeModulus p_;
    SquareFreeModulus np_;
    SquareFreeModulus p2n_;
    SquareFreeModulus p6n_;
    uint64_t c_;
    uint64_t c_prime_;
    std::vector<uint64_t> n_mod_;
};

// ---- divisor enumeration ----

// All divisors of a squarefree modulus, ascending. Guarded: meant for the
// desk-scale slice loops, not for scan-scale P.
inline std::vector<uint64_t> divisors_of(const SquareFreeModulus& m, size_t max_factors = 24) {
    if (m.num_factors() > max_factors) {
        throw std::invalid_argument("divisors_of: too many prime factors");
    }
    std::vector<uint64_t> divs{1};
    for (uint64_t p : m.factors()) {
        size_t n = divs.size();
        for (size_t i = 0; i < n; ++i) divs.push_back(divs[i] * p);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace goldbach
