// Command-line surface: identity suites, spectrum and count evaluation,
// density values, hypothesis scans, witness extraction. Exit codes: 0 success
// or no violation, 1 violations or failed checks, 2 usage, 3 internal.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goldbach/report.hpp"
#include "goldbach/scanner.hpp"
#include "goldbach/suites.hpp"

namespace {

using goldbach::Int;
using goldbach::Rat;

constexpr uint64_t kSlowScanThreshold = 10'000'000;
constexpr uint64_t kSlowTwinThreshold = 100'000;

std::string sig12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string witness_line(const goldbach::WitnessRecord& w) {
    if (!w.found) return "no witness";
    return "n=" + std::to_string(w.n) + " " + std::to_string(w.p_small) + "+" +
           std::to_string(w.p_large);
}

std::string verdict_line(const goldbach::UbhVerdict& v) {
    std::string out = "N=" + std::to_string(v.n);
    if (v.status == goldbach::UbhStatus::vacuous) return out + " vacuous";
    out += " p=" + std::to_string(v.p);
    out += std::string(" ") + goldbach::to_string(v.status);
    out += " worst_x=" + v.worst_x.str();
    out += " lhs=" + v.lhs.str();
    out += " rhs=" + v.rhs_num.str() + "/" + v.rhs_den.str();
    out += " margin=" + v.margin.str();
    return out;
}

struct VerifyArgs {
    std::string suite;
    uint64_t max_p = 2310;
    uint32_t samples = 24;
    uint64_t seed = 42;
    bool json = false;
};

int run_verify(const VerifyArgs& a) {
    goldbach::SuiteParams params{a.max_p, a.samples, a.seed};
    goldbach::SuiteResult result = goldbach::run_suite(a.suite, params);
    if (a.json) {
        goldbach::Json checks = goldbach::Json::array();
        for (const goldbach::CheckLine& c : result.checks) {
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        goldbach::Json doc{{"kind", "verify"},     {"suite", result.suite},
                           {"max_p", a.max_p},     {"samples", a.samples},
                           {"seed", a.seed},       {"checks", checks},
                           {"all_pass", result.all_pass()}};
        std::cout << doc.dump(2) << "\n";
    } else {
        size_t passed = 0;
        for (const goldbach::CheckLine& c : result.checks) {
            if (c.pass) {
                ++passed;
                std::cout << "PASS " << c.name << "\n";
            } else {
                std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
            }
        }
        std::cout << "suite " << result.suite << ": " << passed << "/" << result.checks.size()
                  << " checks passed\n";
    }
    return result.all_pass() ? 0 : 1;
}

struct ScanArgs {
    std::string kind;
    std::optional<uint64_t> at;
    std::optional<uint64_t> from;
    std::optional<uint64_t> to;
    std::optional<uint64_t> n;
    std::optional<uint64_t> m;
    unsigned workers = 1;
    std::string checkpoint;
    uint64_t stride = 16;
    bool json = false;
    bool csv = false;
    bool slow_ok = false;
};

int emit_verdicts(const std::string& kind_label, const std::vector<goldbach::UbhVerdict>& verdicts,
                  const goldbach::WitnessRecord* witness, const ScanArgs& a) {
    size_t bad = 0;
    for (const goldbach::UbhVerdict& v : verdicts) {
        if (v.status == goldbach::UbhStatus::violated) ++bad;
    }
    if (a.json) {
        goldbach::Json list = goldbach::Json::array();
        for (const goldbach::UbhVerdict& v : verdicts) list.push_back(goldbach::json_of(v));
        goldbach::Json doc{{"kind", kind_label}, {"verdicts", list}, {"violated", bad}};
        if (a.at) doc["n"] = *a.at;
        if (a.n) doc["n"] = *a.n;
        if (a.m) doc["m"] = *a.m;
        if (witness) doc["witness"] = goldbach::json_of(*witness);
        std::cout << doc.dump(2) << "\n";
    } else if (a.csv) {
        std::cout << goldbach::csv_of(verdicts);
    } else {
        for (const goldbach::UbhVerdict& v : verdicts) std::cout << verdict_line(v) << "\n";
        if (witness) std::cout << "witness " << witness_line(*witness) << "\n";
        std::cout << "violations: " << bad << "/" << verdicts.size() << "\n";
    }
    return bad > 0 ? 1 : 0;
}

int run_scan(const ScanArgs& a) {
    bool theta = a.kind == "ubh-theta";
    if (a.kind == "twin") {
        if (!a.n || !a.m) throw UsageError("scan twin requires --n and --m");
        if (a.at || a.from || a.to) throw UsageError("scan twin takes --n/--m, not a range");
        if (*a.m < 2 * *a.n + 1) throw UsageError("twin scan requires M >= 2N+1");
        if (*a.m > 3'000'000'000ull) throw UsageError("M too large");
        if (*a.m >= kSlowTwinThreshold && !a.slow_ok) {
            throw UsageError("large M; pass --slow-ok to proceed");
        }
        std::vector<goldbach::UbhVerdict> verdicts = goldbach::check_ubh_prime(*a.n, *a.m);
        goldbach::WitnessRecord w = goldbach::twin_witness(*a.n, *a.m);
        return emit_verdicts("twin_scan", verdicts, &w, a);
    }
    if (a.n || a.m) throw UsageError("--n/--m apply to scan twin only");
    if (a.at) {
        if (a.from || a.to) throw UsageError("--at excludes --from/--to");
        if (!a.checkpoint.empty()) throw UsageError("--checkpoint requires --from/--to");
        if (*a.at >= kSlowScanThreshold && !a.slow_ok) {
            throw UsageError("large N; pass --slow-ok to proceed");
        }
        std::vector<goldbach::UbhVerdict> verdicts =
            goldbach::check_ubh(*a.at, goldbach::UbhOptions{theta});
        return emit_verdicts(theta ? "ubh_theta_check" : "ubh_check", verdicts, nullptr, a);
    }
    if (!a.from || !a.to) throw UsageError("scan requires --at or both --from and --to");
    if (*a.from > *a.to) throw UsageError("empty range: --from exceeds --to");
    if (*a.to >= kSlowScanThreshold && !a.slow_ok) {
        throw UsageError("large range; pass --slow-ok to proceed");
    }
    goldbach::ScanConfig config;
    config.from = *a.from;
    config.to = *a.to;
    config.theta = theta;
    config.workers = a.workers;
    config.checkpoint_path = a.checkpoint;
    config.checkpoint_stride = a.stride;
    goldbach::ScanReport report = goldbach::scan_ubh_range(config);
    if (a.json) {
        std::cout << goldbach::json_of(report).dump(2) << "\n";
    } else if (a.csv) {
        std::cout << goldbach::csv_of(report.violations);
    } else {
        std::cout << "scan " << a.kind << " from=" << config.from << " to=" << config.to << "\n";
        for (const goldbach::UbhVerdict& v : report.violations) {
            std::cout << verdict_line(v) << "\n";
        }
        std::cout << "checked=" << report.checked << " holds=" << report.holds
                  << " violated=" << report.violated << " vacuous=" << report.vacuous
                  << " resumed=" << report.resumed << "\n";
    }
    return report.violated > 0 ? 1 : 0;
}

struct EvalArgs {
    std::string what;
    std::string n;
    std::optional<uint64_t> modulus;  // squarefree P by value
    std::optional<std::string> k;
    std::optional<std::string> x;
    std::optional<double> z;
    std::optional<uint64_t> slice;
    std::optional<uint64_t> m;
    bool json = false;
};

void emit_eval(const EvalArgs& a, const std::string& text, const std::string& exact,
               std::optional<double> approx) {
    if (a.json) {
        goldbach::Json doc{{"kind", "eval"}, {"what", a.what}, {"value", text}};
        if (!exact.empty()) doc["exact"] = exact;
        if (approx) doc["approx"] = sig12(*approx);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

int run_eval(const EvalArgs& a) {
    Int n;
    try {
        n = Int(a.n);
    } catch (const std::invalid_argument&) {
        throw UsageError("bad --n: " + a.n);
    }
    if (n.sign() <= 0) throw UsageError("--n must be positive");

    auto instance = [&]() {
        if (!a.modulus) throw UsageError("eval " + a.what + " requires --p-limit-product");
        return goldbach::ProblemInstance(n, goldbach::SquareFreeModulus::from_value(*a.modulus));
    };

    if (a.what == "spectrum") {
        if (!a.k) throw UsageError("eval spectrum requires --k");
        Int k(*a.k);
        goldbach::ProblemInstance inst = instance();
        double value = a.slice ? goldbach::slice_spectrum_product(inst, *a.slice, k)
                               : goldbach::spectrum_product(inst, k);
        emit_eval(a, sig12(value), "", value);
        return 0;
    }
    if (a.what == "count") {
        if (!a.x) throw UsageError("eval count requires --x");
        Rat x = Rat::parse(*a.x);
        Int s = goldbach::count_S(instance(), x, a.slice);
        emit_eval(a, s.str(), s.str(), std::nullopt);
        return 0;
    }
    if (a.what == "error") {
        if (!a.x) throw UsageError("eval error requires --x");
        Rat x = Rat::parse(*a.x);
        if (x.is_integer()) throw UsageError("eval error requires a non-integer --x");
        Rat t = goldbach::error_T_fracsum(instance(), x, a.slice);
        emit_eval(a, t.str(), t.str(), t.to_double());
        return 0;
    }
    if (a.what == "density") {
        if (!a.z) throw UsageError("eval density requires --z");
        if (a.modulus) throw UsageError("eval density takes --z, not --p-limit-product");
        goldbach::ProblemInstance inst(n, goldbach::primorial(*a.z));
        goldbach::DensityValue d = goldbach::omega(inst, a.slice);
        emit_eval(a, d.exact.str(), d.exact.str(), d.approx);
        return 0;
    }
    if (a.what == "witness") {
        if (!n.fits_u64()) throw UsageError("--n too large for witness search");
        goldbach::WitnessRecord w;
        if (a.m) {
            w = goldbach::twin_witness(n.to_u64(), *a.m);
        } else {
            if (n.to_u64() < 4) throw UsageError("witness search requires --n >= 4");
            w = goldbach::goldbach_witness(n.to_u64());
        }
        if (a.json) {
            std::cout << goldbach::json_of(w).dump(2) << "\n";
        } else {
            std::cout << witness_line(w) << "\n";
        }
        return w.found ? 0 : 1;
    }
    throw UsageError("unknown eval target: " + a.what);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Admissible-set toolkit: identity suites, exact counting, hypothesis scans"};
    app.require_subcommand(1);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("--suite", va.suite, "suite name")
        ->required()
        ->check(CLI::IsMember(goldbach::suite_names()));
    verify->add_option("--max-p", va.max_p, "largest modulus sampled")->check(CLI::Range(2ull, 100'000'000ull));
    verify->add_option("--samples", va.samples, "repetitions per check")->check(CLI::Range(1u, 100'000u));
    verify->add_option("--seed", va.seed, "PRNG seed");
    verify->add_flag("--json", va.json, "JSON output");

    ScanArgs sa;
    CLI::App* scan = app.add_subcommand("scan", "scan a hypothesis over N");
    scan->add_option("kind", sa.kind, "ubh, ubh-theta, or twin")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"ubh", "ubh-theta", "twin"}));
    scan->add_option("--at", sa.at, "single N");
    scan->add_option("--from", sa.from, "range start");
    scan->add_option("--to", sa.to, "range end");
    scan->add_option("--n", sa.n, "twin scan N");
    scan->add_option("--m", sa.m, "twin scan M");
    scan->add_option("--workers", sa.workers, "worker threads")->check(CLI::Range(1u, 256u));
    scan->add_option("--checkpoint", sa.checkpoint, "checkpoint file path");
    scan->add_option("--checkpoint-stride", sa.stride, "flush every K results")
        ->check(CLI::Range(1ull, 1'000'000ull));
    CLI::Option* scan_json = scan->add_flag("--json", sa.json, "JSON output");
    scan->add_flag("--csv", sa.csv, "CSV output")->excludes(scan_json);
    scan->add_flag("--slow-ok", sa.slow_ok, "allow long-running scans");

    EvalArgs ea;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->add_option("what", ea.what, "spectrum, count, error, density, or witness")
        ->required()
        ->check(CLI::IsMember(
            std::vector<std::string>{"spectrum", "count", "error", "density", "witness"}));
    eval->add_option("--n", ea.n, "shift N")->required();
    eval->add_option("--p-limit-product", ea.modulus, "squarefree modulus value");
    eval->add_option("--k", ea.k, "spectral index");
    eval->add_option("--x", ea.x, "count abscissa (integer, decimal, or a/b)");
    eval->add_option("--z", ea.z, "prime cutoff; modulus is the product of primes <= z");
    eval->add_option("--slice", ea.slice, "slice divisor d");
    eval->add_option("--m", ea.m, "twin witness M");
    eval->add_flag("--json", ea.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(va);
        if (scan->parsed()) return run_scan(sa);
        return run_eval(ea);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
