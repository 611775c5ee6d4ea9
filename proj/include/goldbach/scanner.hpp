#pragma once

// Exact-arithmetic scanners for the windowed upper-bound hypotheses.
//
// For each prime p | P_6N the slice-p count in the moving window
// (y-x, y+x], y = N inv(P_p) P_p, must stay at or below 3x|W^p|/P (plus an
// optional slack term). The left side is a step function jumping where
// y +- delta hits a slice member and the right side grows linearly, so
// checking at x = N/2 and at every jump abscissa with the post-entry count
// decides the inequality for every real x in the range: a strict excess at
// abscissa a is equivalent to a violation on (a, a+epsilon). All verdicts are
// big-integer comparisons over the common denominator 2P; no verdict ever
// involves floating point.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/counting.hpp"
#include "goldbach/modulus.hpp"
#include "goldbach/primes.hpp"

namespace goldbach {

enum class UbhStatus { holds, violated, vacuous };

inline const char* to_string(UbhStatus s) {
    switch (s) {
        case UbhStatus::holds: return "holds";
        case UbhStatus::violated: return "violated";
        case UbhStatus::vacuous: return "vacuous";
    }
    return "unknown";
}

inline UbhStatus parse_ubh_status(const std::string& s) {
    if (s == "holds") return UbhStatus::holds;
    if (s == "violated") return UbhStatus::violated;
    if (s == "vacuous") return UbhStatus::vacuous;
    throw std::invalid_argument("unknown verdict status: " + s);
}

struct UbhVerdict {
    uint64_t n = 0;
    uint64_t p = 0;
    UbhStatus status = UbhStatus::vacuous;
    Rat worst_x;
    Int lhs;      // window count at worst_x
    Int rhs_num;  // 3 worst_x |W^p| (+ slack), over rhs_den
    Int rhs_den;  // 2P
    Rat margin;   // (rhs_num - lhs rhs_den) / rhs_den; negative iff violated
};

struct UbhOptions {
    bool theta = false;  // add theta(N) = sqrt(N) omega^1(N) to the right side
};

namespace detail {

// Member offsets delta in (-halfwidth, halfwidth] with y + delta in slice p
// and y + delta >= 1, where y = N inv(P_p) P_p. Narrow windows go through
// the residue sieve; windows covering a full period enumerate directly.
inline std::vector<int64_t> slice_window_offsets(const ProblemInstance& inst, uint64_t p,
                                                 uint64_t halfwidth) {
    Int pp = Int::divexact(inst.P().value(), Int(p));
    Int y = inst.N() * Int(static_cast<unsigned long>(inverse_of_cofactor(inst.P(), p))) * pp;
    std::vector<int64_t> out;
    if (Int(2) * Int(halfwidth) < inst.P().value()) {
        uint64_t inv = inv_mod_u64(pp.mod_u64(p), p);
        uint64_t mult = (inst.n_mod(p) * inv) % p;
        Int center = pp * Int(mult);
        out = count_window(inst, center, halfwidth, p);
    } else {
        if (!(inst.P().value() <= Int(static_cast<unsigned long>(kEnumerationGuard)))) {
            throw std::logic_error("slice_window_offsets: wide window over huge modulus");
        }
        int64_t h = static_cast<int64_t>(halfwidth);
        for (int64_t delta = 1 - h; delta <= h; ++delta) {
            Int cand = y + Int(delta);
            if (cand.sign() <= 0) continue;
            if (is_admissible(inst, cand, p)) out.push_back(delta);
        }
        return out;
    }
    if (!(y > Int(halfwidth))) {
        std::vector<int64_t> kept;
        for (int64_t delta : out) {
            if (y + Int(delta) > Int(0)) kept.push_back(delta);
        }
        out.swap(kept);
    }
    return out;
}

// One inequality sweep for a fixed (instance, p). Abscissae are x = lo2/2
// and every |delta| in (lo2/2, max_abs]; each is checked with the count of
// all offsets of magnitude <= x. slack2 is the extra right-side numerator
// over denominator 2P (already doubled).
inline UbhVerdict sweep_slice(const ProblemInstance& inst, uint64_t p,
                              const std::vector<int64_t>& offsets, int64_t lo2,
                              int64_t max_abs, const Int& slack2) {
    Int w = size_W_d(inst, p);
    Int P = inst.P().value();
    Int two_p = Int(2) * P;

    std::vector<int64_t> mags;
    mags.reserve(offsets.size());
    for (int64_t d : offsets) mags.push_back(d < 0 ? -d : d);
    std::sort(mags.begin(), mags.end());

    uint64_t count = 0;
    while (count < mags.size() && 2 * mags[count] <= lo2) ++count;

    bool have_best = false;
    Int best_margin2p;
    int64_t best_num2 = lo2;
    uint64_t best_count = 0;

    auto consider = [&](int64_t num2, uint64_t c) {
        Int margin = Int(num2) * Int(3) * w + slack2 - Int(static_cast<unsigned long>(c)) * two_p;
        if (!have_best || margin < best_margin2p) {
            have_best = true;
            best_margin2p = margin;
            best_num2 = num2;
            best_count = c;
        }
    };

    consider(lo2, count);
    size_t i = count;
    while (i < mags.size()) {
        int64_t a = mags[i];
        if (a > max_abs) break;
        while (i < mags.size() && mags[i] == a) ++i;
        consider(2 * a, static_cast<uint64_t>(i));
    }

    UbhVerdict v;
    v.n = inst.N().to_u64();
    v.p = p;
    v.worst_x = Rat(best_num2, 2);
    v.lhs = Int(static_cast<unsigned long>(best_count));
    v.rhs_num = Int(best_num2) * Int(3) * w + slack2;
    v.rhs_den = two_p;
    v.margin = Rat(best_margin2p, two_p);
    v.status = best_margin2p.sign() < 0 ? UbhStatus::violated : UbhStatus::holds;
    return v;
}

struct CheckOutcome {
    std::vector<UbhVerdict> verdicts;
    uint64_t cells = 0;
};

inline UbhVerdict vacuous_verdict(uint64_t n) {
    UbhVerdict v;
    v.n = n;
    v.status = UbhStatus::vacuous;
    v.worst_x = Rat(0);
    v.lhs = Int(0);
    v.rhs_num = Int(0);
    v.rhs_den = Int(1);
    v.margin = Rat(0);
    return v;
}

inline CheckOutcome check_ubh_impl(uint64_t n, const UbhOptions& opts) {
    if (n < 2) throw std::invalid_argument("check_ubh: N must be at least 2");
    SquareFreeModulus p_mod = primorial_under_sqrt(2 * n);
    ProblemInstance inst(Int(n), p_mod);
    CheckOutcome out;
    if (inst.P_6N().factors().empty()) {
        out.verdicts.push_back(vacuous_verdict(n));
        return out;
    }
    Int slack2(0);
    if (opts.theta) {
        Int w1 = size_W_d(inst, 1);
        slack2 = (Int(4 * n) * w1 * w1).isqrt();  // floor(2 sqrt(N) |W^1|)
    }
    uint64_t halfwidth = n - 1;
    for (uint64_t p : inst.P_6N().factors()) {
        std::vector<int64_t> offsets = slice_window_offsets(inst, p, halfwidth);
        out.cells += 2 * halfwidth / p + 1;
        out.verdicts.push_back(sweep_slice(inst, p, offsets, static_cast<int64_t>(n),
                                           static_cast<int64_t>(n) - 2, slack2));
    }
    return out;
}

}  // namespace detail

// Per-prime verdicts for the windowed upper bound at N, P = primorial(sqrt(2N)),
// sweeping N/2 <= x < N-1.
inline std::vector<UbhVerdict> check_ubh(uint64_t n, const UbhOptions& opts = {}) {
    return detail::check_ubh_impl(n, opts).verdicts;
}

// Same inequality with P = primorial(M), M >= 2N+1, swept over
// M^2 - 7N <= x < M^2 - N.
inline std::vector<UbhVerdict> check_ubh_prime(uint64_t n, uint64_t m) {
    if (n < 1) throw std::invalid_argument("check_ubh_prime: N must be at least 1");
    if (m < 2 * n + 1) throw std::invalid_argument("check_ubh_prime: M must be at least 2N+1");
    SquareFreeModulus p_mod = primorial(static_cast<double>(m));
    ProblemInstance inst(Int(n), p_mod);
    if (inst.P_6N().factors().empty()) {
        return {detail::vacuous_verdict(n)};
    }
    std::vector<UbhVerdict> verdicts;
    uint64_t m2 = m * m;
    int64_t lo2 = 2 * static_cast<int64_t>(m2 - 7 * n);
    int64_t max_abs = static_cast<int64_t>(m2 - n) - 1;
    for (uint64_t p : inst.P_6N().factors()) {
        std::vector<int64_t> offsets = detail::slice_window_offsets(inst, p, m2 - n);
        verdicts.push_back(detail::sweep_slice(inst, p, offsets, lo2, max_abs, Int(0)));
    }
    return verdicts;
}

// ---- witnesses ----

struct WitnessRecord {
    bool found = false;
    uint64_t n_param = 0;  // the N of the search
    uint64_t m_param = 0;  // twin searches only
    uint64_t n = 0;        // the witness position
    uint64_t p_small = 0;
    uint64_t p_large = 0;
};

// Smallest n in [1, N-2] with N-n and N+n both prime.
inline WitnessRecord goldbach_witness(uint64_t n_target) {
    if (n_target < 4) throw std::invalid_argument("goldbach_witness: N must be at least 4");
    WitnessRecord rec;
    rec.n_param = n_target;
    for (uint64_t n = 1; n + 2 <= n_target; ++n) {
        if (is_prime_u64(n_target - n) && is_prime_u64(n_target + n)) {
            rec.found = true;
            rec.n = n;
            rec.p_small = n_target - n;
            rec.p_large = n_target + n;
            return rec;
        }
    }
    return rec;
}

// Smallest n <= M^2 - N with n-N and n+N both prime and n-N > M.
inline WitnessRecord twin_witness(uint64_t n_target, uint64_t m) {
    if (m < 2 * n_target + 1) throw std::invalid_argument("twin_witness: M must be at least 2N+1");
    WitnessRecord rec;
    rec.n_param = n_target;
    rec.m_param = m;
    for (uint64_t n = m + n_target + 1; n <= m * m - n_target; ++n) {
        if (is_prime_u64(n - n_target) && is_prime_u64(n + n_target)) {
            rec.found = true;
            rec.n = n;
            rec.p_small = n - n_target;
            rec.p_large = n + n_target;
            return rec;
        }
    }
    return rec;
}

// ---- range scanning ----

struct ScanConfig {
    uint64_t from = 0;
    uint64_t to = 0;
    bool theta = false;
    unsigned workers = 1;
    std::string checkpoint_path;   // empty disables checkpointing
    uint64_t checkpoint_stride = 16;
};

struct NSummary {
    uint64_t n = 0;
    UbhStatus status = UbhStatus::vacuous;
    Rat worst_margin;
    bool resumed = false;
};

struct ScanReport {
    ScanConfig config;
    uint64_t checked = 0;
    uint64_t holds = 0;
    uint64_t violated = 0;
    uint64_t vacuous = 0;
    uint64_t resumed = 0;
    uint64_t cells_sieved = 0;
    uint64_t wall_ms = 0;  // advisory only; every other field is deterministic
    std::vector<NSummary> per_n;
    std::vector<UbhVerdict> violations;  // all verdicts of every violated N
};

namespace detail {

struct NOutcome {
    uint64_t n = 0;
    UbhStatus status = UbhStatus::vacuous;
    Rat worst_margin;
    bool resumed = false;
    uint64_t cells = 0;
    std::vector<UbhVerdict> verdicts;
};

inline NOutcome summarize_check(uint64_t n, const UbhOptions& opts) {
    CheckOutcome chk = check_ubh_impl(n, opts);
    NOutcome out;
    out.n = n;
    out.cells = chk.cells;
    out.verdicts = std::move(chk.verdicts);
    bool any_violated = false;
    bool any_real = false;
    bool have_margin = false;
    Rat worst;
    for (const UbhVerdict& v : out.verdicts) {
        if (v.status == UbhStatus::vacuous) continue;
        any_real = true;
        if (v.status == UbhStatus::violated) any_violated = true;
        if (!have_margin || v.margin < worst) {
            have_margin = true;
            worst = v.margin;
        }
    }
    out.status = !any_real ? UbhStatus::vacuous
                           : (any_violated ? UbhStatus::violated : UbhStatus::holds);
    out.worst_margin = have_margin ? worst : Rat(0);
    return out;
}

}  // namespace detail

// Checkpoint file: one "N<TAB>status<TAB>margin_num/margin_den" line per
// completed N, sorted by N.
using CheckpointMap = std::map<uint64_t, std::pair<UbhStatus, Rat>>;

inline CheckpointMap load_checkpoint(const std::string& path) {
    CheckpointMap entries;
    std::ifstream in(path);
    if (!in) return entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string n_str, status_str, margin_str;
        if (!std::getline(row, n_str, '\t') || !std::getline(row, status_str, '\t') ||
            !std::getline(row, margin_str, '\t')) {
            throw std::runtime_error("malformed checkpoint line: " + line);
        }
        uint64_t n = std::stoull(n_str);
        entries[n] = {parse_ubh_status(status_str), Rat::parse(margin_str)};
    }
    return entries;
}

namespace detail {

inline void write_checkpoint_line(std::ostream& out, uint64_t n, UbhStatus s, const Rat& margin) {
    out << n << '\t' << to_string(s) << '\t' << margin.str() << '\n';
}

// Streams completed entries to disk in N order. Completions above everything
// already on disk are appended; anything else forces one sorted rewrite.
class CheckpointSink {
  public:
    CheckpointSink(std::string path, const CheckpointMap& loaded) : path_(std::move(path)) {
        if (!loaded.empty()) last_on_disk_ = loaded.rbegin()->first;
    }

    void record(uint64_t n, UbhStatus s, const Rat& margin) { pending_.push_back({n, s, margin}); }

    size_t pending() const { return pending_.size(); }

    void flush(const CheckpointMap& all) {
        if (pending_.empty()) return;
        if (last_on_disk_ == 0 || pending_.front().n > last_on_disk_) {
            std::ofstream out(path_, std::ios::app);
            if (!out) throw std::runtime_error("cannot open checkpoint file: " + path_);
            for (const Entry& e : pending_) write_checkpoint_line(out, e.n, e.status, e.margin);
        } else {
            std::string tmp = path_ + ".tmp";
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open checkpoint file: " + tmp);
            for (const auto& [n, sm] : all) write_checkpoint_line(out, n, sm.first, sm.second);
            out.close();
            std::filesystem::rename(tmp, path_);
        }
        last_on_disk_ = std::max(last_on_disk_, pending_.back().n);
        pending_.clear();
    }

  private:
    struct Entry {
        uint64_t n;
        UbhStatus status;
        Rat margin;
    };
    std::string path_;
    uint64_t last_on_disk_ = 0;
    std::vector<Entry> pending_;
};

}  // namespace detail

// Deterministic range scan: contiguous N claimed by a worker pool, results
// merged in N order, checkpoint flushed every config.checkpoint_stride
// completions. Resuming skips checkpointed N except violated ones, which are
// recomputed so their full verdicts reappear in the report.
inline ScanReport scan_ubh_range(const ScanConfig& config) {
    if (config.from > config.to || config.from < 2) {
        throw std::invalid_argument("scan_ubh_range: invalid range");
    }
    auto t0 = std::chrono::steady_clock::now();
    ScanReport report;
    report.config = config;

    const bool checkpointing = !config.checkpoint_path.empty();
    const CheckpointMap resume = checkpointing ? load_checkpoint(config.checkpoint_path)
                                               : CheckpointMap{};
    CheckpointMap all_entries = resume;
    detail::CheckpointSink sink(config.checkpoint_path, resume);

    UbhOptions opts;
    opts.theta = config.theta;

    std::atomic<uint64_t> next{config.from};
    std::mutex mtx;
    std::condition_variable cv;
    std::map<uint64_t, detail::NOutcome> ready;

    auto work = [&]() {
        for (;;) {
            uint64_t n = next.fetch_add(1);
            if (n > config.to) break;
            detail::NOutcome out;
            auto it = resume.find(n);
            if (it != resume.end() && it->second.first != UbhStatus::violated) {
                out.n = n;
                out.status = it->second.first;
                out.worst_margin = it->second.second;
                out.resumed = true;
            } else {
                out = detail::summarize_check(n, opts);
                out.resumed = it != resume.end();
            }
            {
                std::lock_guard<std::mutex> lock(mtx);
                ready.emplace(n, std::move(out));
            }
            cv.notify_one();
        }
    };

    unsigned nworkers = std::max(1u, config.workers);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(work);

    for (uint64_t n = config.from; n <= config.to; ++n) {
        detail::NOutcome out;
        {
            std::unique_lock<std::mutex> lock(mtx);
            cv.wait(lock, [&] { return ready.count(n) > 0; });
            out = std::move(ready.at(n));
            ready.erase(n);
        }
        report.checked += 1;
        report.cells_sieved += out.cells;
        switch (out.status) {
            case UbhStatus::holds: report.holds += 1; break;
            case UbhStatus::violated: report.violated += 1; break;
            case UbhStatus::vacuous: report.vacuous += 1; break;
        }
        if (out.resumed) report.resumed += 1;
        report.per_n.push_back(NSummary{out.n, out.status, out.worst_margin, out.resumed});
        if (out.status == UbhStatus::violated) {
            for (const UbhVerdict& v : out.verdicts) report.violations.push_back(v);
        }
        if (checkpointing) {
            all_entries[out.n] = {out.status, out.worst_margin};
            if (!out.resumed) sink.record(out.n, out.status, out.worst_margin);
            if (sink.pending() >= std::max<uint64_t>(1, config.checkpoint_stride)) {
                sink.flush(all_entries);
            }
        }
    }
    for (std::thread& t : pool) t.join();
    if (checkpointing) sink.flush(all_entries);
    auto t1 = std::chrono::steady_clock::now();
    report.wall_ms =
        static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return report;
}

}  // namespace goldbach
