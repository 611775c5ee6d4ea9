// Check-suite driver: every named suite runs green at its default and at
// reduced parameters, results are deterministic in the seed, and unknown
// names are rejected.

#include <gtest/gtest.h>

#include "goldbach/suites.hpp"

namespace gb = goldbach;

TEST(Suites, NamesAreStable) {
    const std::vector<std::string>& names = gb::suite_names();
    ASSERT_EQ(names.size(), 6u);
    EXPECT_EQ(names[0], "sets");
    EXPECT_EQ(names[5], "density");
}

TEST(Suites, AllPassAtReducedParameters) {
    gb::SuiteParams params;
    params.max_p = 210;
    params.samples = 6;
    for (const std::string& name : gb::suite_names()) {
        gb::SuiteResult r = gb::run_suite(name, params);
        EXPECT_EQ(r.suite, name);
        EXPECT_FALSE(r.checks.empty()) << name;
        ASSERT_TRUE(r.all_pass()) << name << ": " << [&] {
            std::string bad;
            for (const gb::CheckLine& c : r.checks) {
                if (!c.pass) bad += c.name + " (" + c.detail + ") ";
            }
            return bad;
        }();
        for (const gb::CheckLine& c : r.checks) {
            EXPECT_TRUE(c.detail.empty()) << name << "/" << c.name;
        }
    }
}

TEST(Suites, DeterministicInSeed) {
    gb::SuiteParams params;
    params.max_p = 210;
    params.samples = 4;
    params.seed = 7;
    gb::SuiteResult a = gb::run_suite("counting", params);
    gb::SuiteResult b = gb::run_suite("counting", params);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        EXPECT_EQ(a.checks[i].name, b.checks[i].name);
        EXPECT_EQ(a.checks[i].pass, b.checks[i].pass);
    }
}

TEST(Suites, UnknownNameThrows) {
    EXPECT_THROW(gb::run_suite("bogus", gb::SuiteParams{}), std::invalid_argument);
}
