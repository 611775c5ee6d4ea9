#pragma once

// Named property suites over seeded random instances, shared by the CLI
// verify subcommand and the test binaries. Every suite is deterministic for a
// fixed (max_p, samples, seed) and reports one line per named check.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/counting.hpp"
#include "goldbach/density.hpp"
#include "goldbach/modulo_set.hpp"
#include "goldbach/modulus.hpp"
#include "goldbach/primes.hpp"
#include "goldbach/spectra.hpp"

namespace goldbach {

struct SuiteParams {
    uint64_t max_p = 2310;
    uint32_t samples = 24;
    uint64_t seed = 42;
};

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;  // empty when passing
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> checks;
    bool all_pass() const {
        for (const CheckLine& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

namespace detail {

class SuiteContext {
  public:
    explicit SuiteContext(const SuiteParams& params) : params_(params), rng_(params.seed) {}

    uint64_t below(uint64_t n) { return n == 0 ? 0 : rng_() % n; }
    int64_t in_range(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Squarefree moduli in [2, cap]; cached.
    const std::vector<uint64_t>& squarefree_pool(uint64_t cap) {
        auto it = pools_.find(cap);
        if (it != pools_.end()) return it->second;
        std::vector<uint64_t> pool;
        for (uint64_t v = 2; v <= cap; ++v) {
            std::vector<uint64_t> fs = distinct_prime_factors(v);
            uint64_t prod = 1;
            for (uint64_t p : fs) prod *= p;
            if (prod == v) pool.push_back(v);
        }
        return pools_.emplace(cap, std::move(pool)).first->second;
    }

    ProblemInstance sample_instance(uint64_t cap, size_t max_factors = 64) {
        const std::vector<uint64_t>& pool = squarefree_pool(cap);
        for (;;) {
            uint64_t p = pool[below(pool.size())];
            SquareFreeModulus mod = SquareFreeModulus::from_value(p);
            if (mod.num_factors() > max_factors) continue;
            uint64_t n = 1 + below(3 * p);
            return ProblemInstance(Int(n), mod);
        }
    }

    const SuiteParams& params() const { return params_; }

  private:
    SuiteParams params_;
    std::mt19937_64 rng_;
    std::map<uint64_t, std::vector<uint64_t>> pools_;
};

class SuiteBuilder {
  public:
    explicit SuiteBuilder(std::string name) { result_.suite = std::move(name); }

    // Runs body over the numbered repetitions, recording the first failure.
    void check(const std::string& name, uint32_t reps,
               const std::function<bool(uint32_t, std::string&)>& body) {
        CheckLine line{name, true, ""};
        for (uint32_t i = 0; i < reps && line.pass; ++i) {
            std::string detail;
            bool ok = false;
            try {
                ok = body(i, detail);
            } catch (const std::exception& e) {
                detail = std::string("exception: ") + e.what();
            }
            if (!ok) {
                line.pass = false;
                line.detail = detail.empty() ? ("failed on repetition " + std::to_string(i)) : detail;
            }
        }
        result_.checks.push_back(std::move(line));
    }

    SuiteResult take() { return std::move(result_); }

  private:
    SuiteResult result_;
};

inline std::string mismatch(const std::string& what, const std::string& lhs,
                            const std::string& rhs) {
    return what + ": " + lhs + " != " + rhs;
}

}  // namespace detail

// ---- sets ----

inline SuiteResult run_sets_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("sets");
    uint32_t reps = params.samples;

    b.check("size formula matches enumeration", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        Int formula = size_W(inst);
        if (formula != Int(static_cast<unsigned long>(pat.members.size()))) {
            why = detail::mismatch("|W|", formula.str(), std::to_string(pat.members.size()));
            return false;
        }
        return true;
    });

    b.check("every slice populated with formula size", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        for (uint64_t d : divisors_of(inst.P_6N())) {
            size_t got = pat.slices.count(d) ? pat.slices.at(d).size() : 0;
            Int formula = size_W_d(inst, d);
            if (formula < Int(1) || formula != Int(static_cast<unsigned long>(got))) {
                why = detail::mismatch("|W^" + std::to_string(d) + "|", formula.str(),
                                       std::to_string(got));
                return false;
            }
        }
        return true;
    });

    b.check("slices partition the set", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        size_t total = 0;
        uint64_t p6n = inst.P_6N().value_u64();
        for (const auto& [d, members] : pat.slices) {
            total += members.size();
            for (uint64_t n : members) {
                if (std::gcd(p6n, n) != d) {
                    why = "member " + std::to_string(n) + " in wrong slice " + std::to_string(d);
                    return false;
                }
            }
        }
        if (total != pat.members.size()) {
            why = detail::mismatch("partition total", std::to_string(total),
                                   std::to_string(pat.members.size()));
            return false;
        }
        return true;
    });

    b.check("membership test agrees with enumeration", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(std::min<uint64_t>(params.max_p, 400));
        ResiduePattern pat = enumerate_W(inst);
        uint64_t p = inst.P().value_u64();
        for (uint64_t n = 1; n <= p; ++n) {
            bool direct = is_admissible(inst, Int(n));
            bool listed = std::binary_search(pat.members.begin(), pat.members.end(), n);
            if (direct != listed) {
                why = "membership disagreement at n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });

    b.check("core sets scale slices by c*d", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        for (const auto& [d, members] : pat.slices) {
            std::vector<uint64_t> core = core_set(pat, d);
            if (core.size() != members.size()) {
                why = "core size mismatch at d=" + std::to_string(d);
                return false;
            }
        }
        return true;
    });

    b.check("factor-sum identity", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p, 8);
        std::map<uint64_t, Rat> h;
        for (uint64_t p : inst.P().factors()) {
            h[p] = Rat(ctx.in_range(-6, 6), ctx.in_range(1, 4));
        }
        IdentityCheck chk = factor_sum_identity_check(inst.P(), h);
        if (!chk.ok()) {
            why = detail::mismatch("factor-sum", chk.lhs.str(), chk.rhs.str());
            return false;
        }
        return true;
    });

    b.check("momentum identity", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        std::map<uint64_t, Rat> f;
        for (uint64_t p : inst.P().factors()) {
            f[p] = Rat(ctx.in_range(-6, 6), ctx.in_range(1, 4));
        }
        IdentityCheck chk = momentum_check(inst, f);
        if (!chk.ok()) {
            why = detail::mismatch("momentum", chk.lhs.str(), chk.rhs.str());
            return false;
        }
        return true;
    });

    return b.take();
}

// ---- modset ----

inline SuiteResult run_modset_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("modset");
    uint32_t reps = params.samples;
    uint64_t cap = std::min<uint64_t>(params.max_p, 210);

    auto sample_small = [&]() { return ctx.sample_instance(cap, 4); };

    b.check("least offsets satisfy their congruences", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        for (const ModPair& pr : build_modulo_set(inst).pairs) {
            bool ok = pr.m < pr.lcm &&
                      (inst.N() - Int(pr.m)).divisible_by_u64(pr.a) &&
                      (inst.N() + Int(pr.m)).divisible_by_u64(pr.b);
            if (!ok) {
                why = "offset fails at (a,b)=(" + std::to_string(pr.a) + "," +
                      std::to_string(pr.b) + ")";
                return false;
            }
        }
        return true;
    });

    b.check("offset reflection", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        ModuloSet q = build_modulo_set(inst);
        const ModPair& pr = q.pairs[ctx.below(q.pairs.size())];
        ReflectionCheck chk = offset_reflection_check(inst, pr.a, pr.b);
        if (!chk.ok()) {
            why = "m_ab + m_ba = " + std::to_string(chk.m_ab + chk.m_ba) + ", expected " +
                  std::to_string(chk.expected);
            return false;
        }
        return true;
    });

    b.check("canonical offset equals least offset", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        ModuloSet q = build_modulo_set(inst);
        const ModPair& pr = q.pairs[ctx.below(q.pairs.size())];
        uint64_t canon = canonical_offset(inst, pr.a, pr.b);
        if (canon != pr.m) {
            why = detail::mismatch("offset (a,b)=(" + std::to_string(pr.a) + "," +
                                       std::to_string(pr.b) + ")",
                                   std::to_string(canon), std::to_string(pr.m));
            return false;
        }
        return true;
    });

    b.check("unit value is the admissibility indicator", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        ModuloSet q = build_modulo_set(inst);
        uint64_t p = inst.P().value_u64();
        uint64_t n = 1 + ctx.below(2 * p);
        int sum = 0;
        for (const ModPair& pr : unit_set(q, Int(n))) sum += pr.mu;
        int want = is_admissible(inst, Int(n)) ? 1 : 0;
        if (sum != want) {
            why = detail::mismatch("u_" + std::to_string(n), std::to_string(sum),
                                   std::to_string(want));
            return false;
        }
        return true;
    });

    b.check("sum-sieve equation matches direct sum", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        ModuloSet q = build_modulo_set(inst);
        double x = 1.0 + static_cast<double>(ctx.below(3 * inst.P().value_u64())) + 0.5;
        double s = 0.0;
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            s = 0.05 + static_cast<double>(ctx.below(10000)) * 1e-4 * 3.0;
            found = true;
            for (const ModPair& pr : q.pairs) {
                if (std::abs(std::sin(static_cast<double>(pr.lcm) * s)) < 0.05) {
                    found = false;
                    break;
                }
            }
        }
        if (!found) return true;  // no usable s drawn; skip this repetition
        std::complex<double> lhs = sum_sieve_eval(inst, x, s);
        std::complex<double> rhs = direct_unit_expsum(inst, x, s);
        if (std::abs(lhs - rhs) > 1e-8) {
            std::ostringstream os;
            os << "E mismatch " << std::abs(lhs - rhs) << " at x=" << x << " s=" << s;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("collapse over the Q_d partition", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        std::map<std::pair<uint64_t, uint64_t>, long> memo;
        auto f = [&](uint64_t m, uint64_t l) {
            auto [it, fresh] = memo.try_emplace({m, l}, 0);
            if (fresh) it->second = ctx.in_range(-10, 10);
            return it->second;
        };
        IdentityCheck chk = qd_collapse_check(inst, f);
        if (!chk.ok()) {
            why = detail::mismatch("collapse", chk.lhs.str(), chk.rhs.str());
            return false;
        }
        return true;
    });

    b.check("cosine product over Q_d", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = sample_small();
        std::vector<uint64_t> divs = divisors_of(inst.P());
        uint64_t d = divs[ctx.below(divs.size())];
        Int k = Int(d) * Int(1 + ctx.below(12));
        CosineProductCheck chk = qd_cosine_product_check(inst, d, k);
        if (std::abs(chk.lhs - chk.rhs) > 1e-8 * std::max(1.0, std::abs(chk.rhs))) {
            std::ostringstream os;
            os << "cosine product mismatch " << chk.lhs << " vs " << chk.rhs;
            why = os.str();
            return false;
        }
        return true;
    });

    return b.take();
}

// ---- spectra ----

inline SuiteResult run_spectra_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("spectra");
    uint32_t reps = params.samples;

    auto tol = [](const ProblemInstance& inst) {
        return 1e-9 * std::max(1.0, size_W(inst).to_double());
    };

    b.check("product form matches direct sum", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        Int k(static_cast<long>(ctx.in_range(1, 3 * static_cast<int64_t>(inst.P().value_u64()))));
        double direct = spectrum_direct(pat, k);
        double product = spectrum_product(inst, k);
        if (std::abs(direct - product) > tol(inst)) {
            std::ostringstream os;
            os << "C(" << k.str() << ") " << product << " vs direct " << direct;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("slice product form matches direct sum", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        std::vector<uint64_t> divs = divisors_of(inst.P_6N());
        uint64_t d = divs[ctx.below(divs.size())];
        Int k(static_cast<long>(ctx.in_range(1, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        double direct = slice_spectrum_direct(pat, d, k);
        double product = slice_spectrum_product(inst, d, k);
        if (std::abs(direct - product) > tol(inst)) {
            std::ostringstream os;
            os << "C^" << d << "(" << k.str() << ") " << product << " vs direct " << direct;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("slice spectra sum to the full spectrum", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Int k(static_cast<long>(ctx.in_range(1, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        double total = 0.0;
        for (uint64_t d : divisors_of(inst.P_6N())) total += slice_spectrum_product(inst, d, k);
        double full = spectrum_product(inst, k);
        if (std::abs(total - full) > tol(inst)) {
            std::ostringstream os;
            os << "slice sum " << total << " vs " << full;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("zero mode equals the set size", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        double w = size_W(inst).to_double();
        double product = spectrum_product(inst, Int(0));
        double direct = spectrum_direct(inst, Int(0));
        if (std::abs(product - w) > tol(inst) || std::abs(direct - w) > tol(inst)) {
            why = "C(0) does not count the set";
            return false;
        }
        return true;
    });

    b.check("spectrum is even in k", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        long k = ctx.in_range(1, 3 * static_cast<int64_t>(inst.P().value_u64()));
        double pos = spectrum_direct(pat, Int(k));
        double neg = spectrum_direct(pat, Int(-k));
        if (std::abs(pos - neg) > tol(inst)) {
            why = "C(k) != C(-k) at k=" + std::to_string(k);
            return false;
        }
        return true;
    });

    b.check("prime reduction across the spectrum", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.P_2N().factors().empty()) return true;
        const auto& ps = inst.P_2N().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        Int k(static_cast<long>(ctx.in_range(0, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        SpectrumCheck chk = spectrum_deduction_check(inst, p, k);
        if (std::abs(chk.lhs - chk.rhs) > tol(inst)) {
            std::ostringstream os;
            os << "reduction at p=" << p << ": " << chk.lhs << " vs " << chk.rhs;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("prime reduction across slice spectra", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.P_6N().factors().empty()) return true;
        const auto& ps = inst.P_6N().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        std::vector<uint64_t> divs;
        for (uint64_t d : divisors_of(inst.P_6N())) {
            if (d % p != 0) divs.push_back(d);
        }
        uint64_t d = divs[ctx.below(divs.size())];
        Int k(static_cast<long>(ctx.in_range(0, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        SpectrumCheck cross = spectrum_deduction_check_slice(inst, d, p, k);
        if (std::abs(cross.lhs - cross.rhs) > tol(inst)) {
            why = "cross-modulus slice reduction fails";
            return false;
        }
        SpectrumCheck ext = spectrum_slice_extension_check(inst, d, p, k);
        if (std::abs(ext.lhs - ext.rhs) > tol(inst)) {
            why = "same-modulus slice extension fails";
            return false;
        }
        return true;
    });

    b.check("shared-prime reduction", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.N_P().factors().empty()) return true;
        const auto& ps = inst.N_P().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        Int k(static_cast<long>(ctx.in_range(0, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        SpectrumCheck chk = spectrum_second_deduction_check(inst, p, k);
        if (std::abs(chk.lhs - chk.rhs) > tol(inst)) {
            std::ostringstream os;
            os << "shared-prime reduction at p=" << p << ": " << chk.lhs << " vs " << chk.rhs;
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("index reduction", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Int k(static_cast<long>(ctx.in_range(0, 2 * static_cast<int64_t>(inst.P().value_u64()))));
        ProblemInstance reduced = reduced_instance(inst, inst.c());
        double lhs = spectrum_product(inst, k);
        double rhs = spectrum_product(reduced, k);
        if (std::abs(lhs - rhs) > tol(inst)) {
            std::ostringstream os;
            os << "index reduction c=" << inst.c() << ": " << lhs << " vs " << rhs;
            why = os.str();
            return false;
        }
        return true;
    });

    return b.take();
}

// ---- counting ----

inline SuiteResult run_counting_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("counting");
    uint32_t reps = params.samples;

    auto half_x = [&](const ProblemInstance& inst) {
        int64_t span = 3 * static_cast<int64_t>(inst.P().value_u64());
        return half_integer(ctx.in_range(0, span - 1));
    };

    b.check("count decomposition S = |W|x/P - t - T", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        Rat x = half_x(inst);
        CountBundle bundle = count_bundle(pat, x);
        if (!bundle.consistent()) {
            why = "bundle inconsistent at x=" + x.str();
            return false;
        }
        for (uint64_t d : divisors_of(inst.P_6N())) {
            CountBundle sliced = count_bundle(pat, x, d);
            if (!sliced.consistent()) {
                why = "slice bundle inconsistent at d=" + std::to_string(d);
                return false;
            }
        }
        return true;
    });

    b.check("slice counts sum to the full count", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        Rat x = half_x(inst);
        Int total(0);
        for (uint64_t d : divisors_of(inst.P_6N())) total += count_S(pat, x, d);
        Int full = count_S(pat, x);
        if (total != full) {
            why = detail::mismatch("slice sum at x=" + x.str(), total.str(), full.str());
            return false;
        }
        return true;
    });

    b.check("fractional-part sum equals count-derived error", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Rat x = half_x(inst);
        std::vector<std::optional<uint64_t>> slices{std::nullopt};
        for (uint64_t d : divisors_of(inst.P_6N())) slices.push_back(d);
        for (auto d : slices) {
            Rat direct = error_T_fracsum(inst, x, d);
            Rat derived = error_T_from_counts(inst, x, d);
            if (direct != derived) {
                why = detail::mismatch("T at x=" + x.str(), direct.str(), derived.str());
                return false;
            }
        }
        return true;
    });

    b.check("sieve count matches enumerated count", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        ResiduePattern pat = enumerate_W(inst);
        Rat x = half_x(inst);
        Int from_pattern = count_S(pat, x);
        Int from_sieve = detail::sieve_count_slice(inst, std::nullopt, x.floor().to_u64());
        if (from_pattern != from_sieve) {
            why = detail::mismatch("S at x=" + x.str(), from_sieve.str(), from_pattern.str());
            return false;
        }
        return true;
    });

    b.check("window offsets match direct membership", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(std::min<uint64_t>(params.max_p, 600));
        uint64_t p = inst.P().value_u64();
        uint64_t halfwidth = 1 + ctx.below(std::max<uint64_t>(1, (p - 1) / 2));
        Int center = Int(p + 1 + ctx.below(3 * p));
        std::vector<uint64_t> divs = divisors_of(inst.P_6N());
        uint64_t d = divs[ctx.below(divs.size())];
        std::vector<int64_t> fast = count_window(inst, center, halfwidth, d);
        std::vector<int64_t> slow;
        for (int64_t delta = 1 - static_cast<int64_t>(halfwidth);
             delta <= static_cast<int64_t>(halfwidth); ++delta) {
            if (is_admissible(inst, center + Int(delta), d)) slow.push_back(delta);
        }
        if (fast != slow) {
            why = "window offsets disagree (d=" + std::to_string(d) + ")";
            return false;
        }
        return true;
    });

    b.check("Fourier partial sums approach the exact error", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(std::min<uint64_t>(params.max_p, 1000));
        Rat x = half_x(inst);
        double exact = error_T_fracsum(inst, x).to_double();
        uint64_t p = inst.P().value_u64();
        double coarse = error_T_fourier(inst, x, 2 * p);
        double fine = error_T_fourier(inst, x, 40 * p);
        double err_fine = std::abs(fine - exact);
        double err_coarse = std::abs(coarse - exact);
        double budget = std::max(0.05, 0.02 * size_W(inst).to_double());
        if (err_fine > budget || err_fine > err_coarse + budget) {
            std::ostringstream os;
            os << "partial sum error " << err_fine << " (coarse " << err_coarse << ") at x="
               << x.str();
            why = os.str();
            return false;
        }
        return true;
    });

    b.check("periodwide extremum matches grid scan", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(160);
        PeriodExtremum ext = max_abs_error_T_over_period(inst);
        Rat best(0);
        uint64_t p = inst.P().value_u64();
        for (uint64_t k = 0; k < p; ++k) {
            Rat t = error_T_fracsum(inst, half_integer(static_cast<long>(k))).abs();
            if (best < t) best = t;
        }
        if (ext.max_abs != best) {
            why = detail::mismatch("period max", ext.max_abs.str(), best.str());
            return false;
        }
        return true;
    });

    b.check("linear term vanishes unless the moduli are coprime", reps,
            [&](uint32_t, std::string& why) {
                ProblemInstance inst = ctx.sample_instance(params.max_p);
                Rat t = t_term(inst);
                Rat want = inst.N_P().is_one() ? Rat(1, 2) : Rat(0);
                if (t != want) {
                    why = detail::mismatch("t", t.str(), want.str());
                    return false;
                }
                return true;
            });

    return b.take();
}

// ---- deduction ----

inline SuiteResult run_deduction_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("deduction");
    uint32_t reps = params.samples;

    auto half_below = [&](const Int& y, const ProblemInstance& inst) {
        // Half-integer in (0, min(y, 4P)).
        Int cap = Int(4) * inst.P().value();
        if (y < cap) cap = y;
        int64_t lim = static_cast<int64_t>(cap.to_u64());
        return half_integer(ctx.in_range(0, std::max<int64_t>(0, lim - 1)));
    };

    b.check("first deduction for S", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.P_2N().factors().empty()) return true;
        const auto& ps = inst.P_2N().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        Rat x = half_below(detail::reflection_point(inst, p), inst);
        if (!deduction_check_S_first(inst, p, x)) {
            why = "S first deduction fails at p=" + std::to_string(p) + ", x=" + x.str();
            return false;
        }
        return true;
    });

    b.check("first deduction for T", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.P_2N().factors().empty()) return true;
        const auto& ps = inst.P_2N().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        Rat x = half_below(detail::reflection_point(inst, p), inst);
        if (!deduction_check_T(inst, TDeductionVariant::first, x, p)) {
            why = "T first deduction fails at p=" + std::to_string(p) + ", x=" + x.str();
            return false;
        }
        return true;
    });

    b.check("first deduction for slice T", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.P_6N().factors().empty()) return true;
        const auto& ps = inst.P_6N().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        std::vector<uint64_t> divs;
        for (uint64_t d : divisors_of(inst.P_6N())) {
            if (d % p != 0) divs.push_back(d);
        }
        uint64_t d = divs[ctx.below(divs.size())];
        Rat x = half_below(detail::reflection_point(inst, p), inst);
        if (!deduction_check_T(inst, TDeductionVariant::first_slice, x, p, d)) {
            why = "slice first deduction fails at p=" + std::to_string(p) +
                  ", d=" + std::to_string(d) + ", x=" + x.str();
            return false;
        }
        return true;
    });

    b.check("second deduction", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        if (inst.N_P().factors().empty()) return true;
        const auto& ps = inst.N_P().factors();
        uint64_t p = ps[ctx.below(ps.size())];
        Rat x = half_integer(ctx.in_range(0, 4 * static_cast<int64_t>(inst.P().value_u64())));
        if (!deduction_check_T(inst, TDeductionVariant::second, x, p)) {
            why = "second deduction fails at p=" + std::to_string(p) + ", x=" + x.str();
            return false;
        }
        std::vector<uint64_t> divs = divisors_of(inst.P_6N());
        uint64_t d = divs[ctx.below(divs.size())];
        if (!deduction_check_T(inst, TDeductionVariant::second_slice, x, p, d)) {
            why = "second slice deduction fails at p=" + std::to_string(p) +
                  ", d=" + std::to_string(d);
            return false;
        }
        return true;
    });

    b.check("index reduction for T", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Rat x = half_integer(ctx.in_range(0, 4 * static_cast<int64_t>(inst.P().value_u64())));
        if (!deduction_check_T(inst, TDeductionVariant::third, x)) {
            why = "index reduction fails at x=" + x.str();
            return false;
        }
        std::vector<uint64_t> divs = divisors_of(inst.P_6N());
        uint64_t d = divs[ctx.below(divs.size())];
        if (!deduction_check_T(inst, TDeductionVariant::third, x, std::nullopt, d)) {
            why = "slice index reduction fails at d=" + std::to_string(d);
            return false;
        }
        return true;
    });

    return b.take();
}

// ---- density ----

inline SuiteResult run_density_suite(const SuiteParams& params) {
    detail::SuiteContext ctx(params);
    detail::SuiteBuilder b("density");
    uint32_t reps = params.samples;

    b.check("density equals size over period", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Rat full = omega(inst).exact;
        Rat expected = Rat(size_W(inst), inst.P().value());
        if (full != expected) {
            why = detail::mismatch("omega", full.str(), expected.str());
            return false;
        }
        for (uint64_t d : divisors_of(inst.P_6N())) {
            Rat sliced = omega(inst, d).exact;
            Rat want = Rat(size_W_d(inst, d), inst.P().value());
            if (sliced != want) {
                why = detail::mismatch("omega^" + std::to_string(d), sliced.str(), want.str());
                return false;
            }
        }
        return true;
    });

    b.check("slice densities sum to the full density", reps, [&](uint32_t, std::string& why) {
        ProblemInstance inst = ctx.sample_instance(params.max_p);
        Rat total(0);
        for (uint64_t d : divisors_of(inst.P_6N())) total += omega(inst, d).exact;
        Rat full = omega(inst).exact;
        if (total != full) {
            why = detail::mismatch("slice density sum", total.str(), full.str());
            return false;
        }
        return true;
    });

    b.check("Mertens-style product rewrites", reps, [&](uint32_t, std::string& why) {
        uint64_t z = 5 + ctx.below(60);
        uint64_t n = 1 + ctx.below(1000);
        IdentityCheck full = density_product_check(Int(n), z, false);
        if (!full.ok()) {
            why = detail::mismatch("full density at z=" + std::to_string(z), full.lhs.str(),
                                   full.rhs.str());
            return false;
        }
        IdentityCheck core = density_product_check(Int(n), z, true);
        if (!core.ok()) {
            why = detail::mismatch("core density at z=" + std::to_string(z), core.lhs.str(),
                                   core.rhs.str());
            return false;
        }
        return true;
    });

    b.check("constants near their limits", 1, [&](uint32_t, std::string& why) {
        AsymptoticConstants c = constants(200000);
        if (std::abs(c.C1 - 1.781072418) > 1e-9) {
            why = "C1 off";
            return false;
        }
        if (std::abs(c.C2 - 0.66016) > 1e-3 || std::abs(c.C3 - 0.635166) > 1e-3) {
            why = "C2/C3 out of range";
            return false;
        }
        if (std::abs(c.hl_ratio - 0.260947) > 1e-6) {
            why = "ratio constant off";
            return false;
        }
        return true;
    });

    b.check("Mertens product approaches e^-gamma", 1, [&](uint32_t, std::string& why) {
        double limit = std::exp(-kEulerGamma);
        double far = std::abs(mertens_partial(100) - limit);
        double near = std::abs(mertens_partial(200000) - limit);
        if (!(near < far) || near > 0.01) {
            why = "no convergence toward the limit";
            return false;
        }
        return true;
    });

    b.check("threshold inequalities at and above the cutoff", reps,
            [&](uint32_t, std::string& why) {
                uint64_t n = 312 + ctx.below(5000);
                auto [first, second] = threshold_check(n);
                if (!first || !second) {
                    why = "threshold fails at N=" + std::to_string(n);
                    return false;
                }
                return true;
            });

    b.check("threshold inequalities can fail below the cutoff", 1, [&](uint32_t, std::string& why) {
        auto [first, second] = threshold_check(4);
        if (first && second) {
            why = "N=4 unexpectedly passes both thresholds";
            return false;
        }
        return true;
    });

    return b.take();
}

// ---- dispatch ----

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"sets",     "modset",    "spectra",
                                               "counting", "deduction", "density"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, const SuiteParams& params) {
    if (name == "sets") return run_sets_suite(params);
    if (name == "modset") return run_modset_suite(params);
    if (name == "spectra") return run_spectra_suite(params);
    if (name == "counting") return run_counting_suite(params);
    if (name == "deduction") return run_deduction_suite(params);
    if (name == "density") return run_density_suite(params);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace goldbach
