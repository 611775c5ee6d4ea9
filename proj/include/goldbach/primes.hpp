#pragma once

// Prime tables and primality testing.
//
// PrimeTable is built once per process by a segmented sieve and shared
// read-only; callers take a snapshot via PrimeTable::get(limit) and slice the
// primes they need with primes_up_to(). Deterministic Miller-Rabin covers the
// full 64-bit range for witness checks.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace goldbach {

using std::size_t;
using std::uint32_t;
using std::uint64_t;

// ---- segmented sieve ----

// All primes p <= limit, ascending.
inline std::vector<uint32_t> sieve_primes(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    if (limit > 0xFFFFFFFFull) throw std::invalid_argument("sieve_primes: limit too large");

    uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;

    // Base sieve up to sqrt(limit).
    std::vector<uint8_t> base(root + 1, 1);
    base[0] = 0;
    if (root >= 1) base[1] = 0;
    for (uint64_t i = 2; i * i <= root; ++i) {
        if (!base[i]) continue;
        for (uint64_t j = i * i; j <= root; j += i) base[j] = 0;
    }
    std::vector<uint32_t> small;
    for (uint64_t i = 2; i <= root; ++i) {
        if (base[i]) small.push_back(static_cast<uint32_t>(i));
    }
    primes = small;

    constexpr uint64_t kSegment = 1u << 18;
    std::vector<uint8_t> seg(kSegment);
    for (uint64_t low = root + 1; low <= limit; low += kSegment) {
        uint64_t high = std::min(limit, low + kSegment - 1);
        std::fill(seg.begin(), seg.begin() + (high - low + 1), 1);
        for (uint32_t p : small) {
            uint64_t start = ((low + p - 1) / p) * p;
            for (uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
        }
        for (uint64_t j = low; j <= high; ++j) {
            if (seg[j - low]) primes.push_back(static_cast<uint32_t>(j));
        }
    }
    return primes;
}

// Primality bitmap for [0, limit]; byte per value.
inline std::vector<uint8_t> sieve_is_prime(uint64_t limit) {
    std::vector<uint8_t> flags(limit + 1, 0);
    for (uint32_t p : sieve_primes(limit)) flags[p] = 1;
    return flags;
}

// ---- PrimeTable ----

class PrimeTable {
public:
    explicit PrimeTable(uint64_t limit) : limit_(limit), primes_(sieve_primes(limit)) {}

    uint64_t limit() const { return limit_; }
    const std::vector<uint32_t>& primes() const { return primes_; }

    // Primes p <= z, requires z <= limit().
    std::span<const uint32_t> primes_up_to(uint64_t z) const {
        if (z > limit_) throw std::out_of_range("PrimeTable: bound exceeds table limit");
        auto end = std::upper_bound(primes_.begin(), primes_.end(), z);
        return {primes_.data(), static_cast<size_t>(end - primes_.begin())};
    }

    bool contains(uint64_t n) const {
        if (n > limit_) throw std::out_of_range("PrimeTable: value exceeds table limit");
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

    // Shared process-wide table, grown monotonically and handed out as an
    // immutable snapshot.
    static std::shared_ptr<const PrimeTable> get(uint64_t limit) {
        static std::mutex mu;
        static std::shared_ptr<const PrimeTable> cached;
        std::lock_guard<std::mutex> lock(mu);
        if (!cached || cached->limit() < limit) {
            uint64_t target = std::max<uint64_t>(limit, cached ? cached->limit() * 2 : 1 << 10);
            cached = std::make_shared<const PrimeTable>(target);
        }
        return cached;
    }

private:
    uint64_t limit_;
    std::vector<uint32_t> primes_;
};

// ---- deterministic 64-bit primality ----

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace detail

// Deterministic over the whole 64-bit range with the 12 smallest prime bases.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Distinct prime factors of n, ascending. Trial division; fine for n with no
// two prime factors both above 2^21 (covers every call site in this library).
inline std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    if (n <= 1) return out;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace goldbach
