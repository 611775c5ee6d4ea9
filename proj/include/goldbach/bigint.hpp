#pragma once

// Value-type wrappers over GMP: Int (mpz) and Rat (mpq).
// Division helpers use floor semantics (fdiv) throughout; operator/ is
// deliberately absent on Int so call sites must pick fdiv_q or divexact.

#include <gmp.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace goldbach {

class Int {
public:
    Int() { mpz_init(z_); }
    Int(long v) { mpz_init_set_si(z_, v); }               // NOLINT(runtime/explicit)
    Int(int v) : Int(static_cast<long>(v)) {}             // NOLINT(runtime/explicit)
    Int(unsigned long v) { mpz_init_set_ui(z_, v); }      // NOLINT(runtime/explicit)
    Int(unsigned int v) : Int(static_cast<unsigned long>(v)) {}  // NOLINT
    explicit Int(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("Int: bad integer literal: " + s);
        }
    }
    Int(const Int& o) { mpz_init_set(z_, o.z_); }
    Int(Int&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Int() { mpz_clear(z_); }

    // ---- observers ----
    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }
    bool fits_u64() const { return mpz_sgn(z_) >= 0 && mpz_sizeinbase(z_, 2) <= 64; }
    bool fits_i64() const {
        if (mpz_sizeinbase(z_, 2) <= 63) return true;
        return mpz_cmp_si(z_, INT64_MIN) == 0;
    }
    std::uint64_t to_u64() const {
        if (!fits_u64()) throw std::overflow_error("Int: does not fit u64");
        std::uint64_t lo = mpz_getlimbn(z_, 0);
        return lo;
    }
    std::int64_t to_i64() const {
        if (!fits_i64()) throw std::overflow_error("Int: does not fit i64");
        std::uint64_t mag = mpz_getlimbn(z_, 0);
        return mpz_sgn(z_) < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
    }
    double to_double() const { return mpz_get_d(z_); }
    std::string str() const {
        char* raw = mpz_get_str(nullptr, 10, z_);
        std::string out(raw);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(raw, out.size() + 1);
        return out;
    }
    size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

    // ---- arithmetic ----
    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a) { Int r; mpz_neg(r.z_, a.z_); return r; }
    Int& operator+=(const Int& o) { mpz_add(z_, z_, o.z_); return *this; }
    Int& operator-=(const Int& o) { mpz_sub(z_, z_, o.z_); return *this; }
    Int& operator*=(const Int& o) { mpz_mul(z_, z_, o.z_); return *this; }
    Int& operator*=(unsigned long v) { mpz_mul_ui(z_, z_, v); return *this; }

    static Int mul_u64(const Int& a, std::uint64_t b) {
        Int r;
        mpz_mul_ui(r.z_, a.z_, b);
        return r;
    }

    Int abs() const { Int r; mpz_abs(r.z_, z_); return r; }

    // Floor division: q = floor(a/b), r = a - q*b (r has b's sign direction, 0 <= r < |b| for b > 0).
    static Int fdiv_q(const Int& a, const Int& b) { Int r; mpz_fdiv_q(r.z_, a.z_, b.z_); return r; }
    static Int fdiv_r(const Int& a, const Int& b) { Int r; mpz_fdiv_r(r.z_, a.z_, b.z_); return r; }
    static Int divexact(const Int& a, const Int& b) { Int r; mpz_divexact(r.z_, a.z_, b.z_); return r; }

    std::uint64_t mod_u64(std::uint64_t m) const {
        // Nonnegative residue even for negative *this.
        return mpz_fdiv_ui(z_, m);
    }
    bool divisible_by(const Int& d) const { return mpz_divisible_p(z_, d.z_) != 0; }
    bool divisible_by_u64(std::uint64_t d) const { return mpz_divisible_ui_p(z_, d) != 0; }

    static Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
    static Int lcm(const Int& a, const Int& b) { Int r; mpz_lcm(r.z_, a.z_, b.z_); return r; }
    static Int pow_u64(const Int& base, std::uint64_t e) {
        Int r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }
    static Int two_pow(std::uint64_t e) { Int r; mpz_ui_pow_ui(r.z_, 2, e); return r; }
    Int isqrt() const {
        if (sign() < 0) throw std::domain_error("Int: isqrt of negative");
        Int r;
        mpz_sqrt(r.z_, z_);
        return r;
    }
    std::optional<Int> invert_mod(const Int& m) const {
        Int r;
        if (mpz_invert(r.z_, z_, m.z_) == 0) return std::nullopt;
        return r;
    }

    // ---- comparison ----
    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) != 0; }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }
    friend bool operator==(const Int& a, long b) { return mpz_cmp_si(a.z_, b) == 0; }
    friend bool operator!=(const Int& a, long b) { return mpz_cmp_si(a.z_, b) != 0; }
    friend bool operator<(const Int& a, long b) { return mpz_cmp_si(a.z_, b) < 0; }
    friend bool operator>(const Int& a, long b) { return mpz_cmp_si(a.z_, b) > 0; }
    friend bool operator<=(const Int& a, long b) { return mpz_cmp_si(a.z_, b) <= 0; }
    friend bool operator>=(const Int& a, long b) { return mpz_cmp_si(a.z_, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

class Rat {
public:
    Rat() { mpq_init(q_); }
    Rat(long v) {                                          // NOLINT(runtime/explicit)
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rat(int v) : Rat(static_cast<long>(v)) {}              // NOLINT(runtime/explicit)
    Rat(const Int& num, const Int& den) {
        if (den.is_zero()) throw std::domain_error("Rat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    Rat(long num, long den) : Rat(Int(num), Int(den)) {}
    explicit Rat(const Int& v) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), v.raw());
    }
    Rat(const Rat& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rat(Rat&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    // Parses "n", "n/d", or a plain decimal like "7.5".
    static Rat parse(const std::string& s) {
        auto dot = s.find('.');
        if (dot != std::string::npos && s.find('/') == std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac_len = s.size() - dot - 1;
            if (digits.empty() || frac_len == 0) throw std::invalid_argument("Rat: bad literal: " + s);
            return Rat(Int(digits), Int::pow_u64(Int(10), frac_len));
        }
        Rat r;
        if (mpq_set_str(r.q_, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(r.q_)) == 0) {
            throw std::invalid_argument("Rat: bad rational literal: " + s);
        }
        mpq_canonicalize(r.q_);
        return r;
    }

    Int num() const { Int r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
    Int den() const { Int r; mpz_set(r.raw(), mpq_denref(q_)); return r; }
    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    double to_double() const { return mpq_get_d(q_); }
    std::string str() const { return num().str() + "/" + den().str(); }

    Int floor() const {
        Int r;
        mpz_fdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }
    Rat frac() const { return *this - Rat(floor()); }
    Rat abs() const { Rat r; mpq_abs(r.q_, q_); return r; }

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        Rat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator-(const Rat& a) { Rat r; mpq_neg(r.q_, a.q_); return r; }
    Rat& operator+=(const Rat& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rat& operator-=(const Rat& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rat& operator*=(const Rat& o) { mpq_mul(q_, q_, o.q_); return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) == 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& v) { return os << v.str(); }

private:
    mpq_t q_;
};

}  // namespace goldbach
