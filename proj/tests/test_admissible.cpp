// Admissible sets: enumeration vs an independent gcd brute force, the exact
// product-formula sizes, slice partitioning, membership, core sets, and the
// factor-sum / momentum identities.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "goldbach/admissible.hpp"
#include "goldbach/bigint.hpp"
#include "goldbach/modulus.hpp"

namespace gb = goldbach;

namespace {

// Membership by direct gcd, no residue logic shared with the library.
std::vector<uint64_t> brute_members(uint64_t n, uint64_t p_val) {
    std::vector<uint64_t> out;
    for (uint64_t m = 1; m <= p_val; ++m) {
        int64_t a = static_cast<int64_t>(n) - static_cast<int64_t>(m);
        int64_t b = static_cast<int64_t>(n) + static_cast<int64_t>(m);
        if (std::gcd(std::abs(a), static_cast<int64_t>(p_val)) == 1 &&
            std::gcd(b, static_cast<int64_t>(p_val)) == 1) {
            out.push_back(m);
        }
    }
    return out;
}

uint64_t brute_p6n(uint64_t n, uint64_t p_val) {
    return p_val / std::gcd(p_val, 6 * n);
}

}  // namespace

TEST(EnumerateW, WorkedInstance) {
    gb::ProblemInstance inst(gb::Int(4), gb::SquareFreeModulus::from_value(15));
    gb::ResiduePattern pat = gb::enumerate_W(inst);
    EXPECT_EQ(pat.members, (std::vector<uint64_t>{3, 12, 15}));
    ASSERT_EQ(pat.slices.size(), 2u);
    EXPECT_EQ(pat.slices.at(1), (std::vector<uint64_t>{3, 12}));
    EXPECT_EQ(pat.slices.at(5), (std::vector<uint64_t>{15}));
    EXPECT_EQ(gb::size_W(inst), gb::Int(3));
    EXPECT_EQ(gb::size_W_d(inst, 1), gb::Int(2));
    EXPECT_EQ(gb::size_W_d(inst, 5), gb::Int(1));
}

TEST(EnumerateW, MatchesGcdBruteForce) {
    const std::vector<uint64_t> moduli = {1,  2,  3,  5,  6,  7,  10, 15,  21,  30,
                                          35, 42, 66, 70, 105, 110, 210, 330, 462, 2310};
    for (uint64_t p_val : moduli) {
        for (uint64_t n = 1; n <= 50; ++n) {
            gb::ProblemInstance inst(gb::Int(n),
                                     gb::SquareFreeModulus::from_value(p_val));
            gb::ResiduePattern pat = gb::enumerate_W(inst);
            std::vector<uint64_t> expect = brute_members(n, p_val);
            ASSERT_EQ(pat.members, expect) << "N=" << n << " P=" << p_val;
            ASSERT_EQ(gb::Int(expect.size()), gb::size_W(inst)) << "N=" << n << " P=" << p_val;

            uint64_t p6n = brute_p6n(n, p_val);
            std::map<uint64_t, std::vector<uint64_t>> slices;
            for (uint64_t m : expect) slices[std::gcd(p6n, m)].push_back(m);
            ASSERT_EQ(pat.slices, slices) << "N=" << n << " P=" << p_val;
        }
    }
}

TEST(EnumerateW, GuardRejectsHugeModulus) {
    gb::ProblemInstance inst(gb::Int(4), gb::SquareFreeModulus::from_value(2310));
    EXPECT_THROW(gb::enumerate_W(inst, 100), std::length_error);
}

TEST(SliceSizes, FormulaOnDivisorGrid) {
    const std::vector<uint64_t> moduli = {30, 105, 210, 1155, 2310};
    for (uint64_t p_val : moduli) {
        for (uint64_t n : {1ul, 2ul, 4ul, 9ul, 15ul, 77ul, 100ul}) {
            gb::ProblemInstance inst(gb::Int(n),
                                     gb::SquareFreeModulus::from_value(p_val));
            gb::ResiduePattern pat = gb::enumerate_W(inst);
            gb::Int total(0ul);
            for (uint64_t d : gb::divisors_of(inst.P_6N())) {
                gb::Int formula = gb::size_W_d(inst, d);
                auto it = pat.slices.find(d);
                gb::Int actual(it == pat.slices.end() ? 0ul : it->second.size());
                ASSERT_EQ(formula, actual) << "N=" << n << " P=" << p_val << " d=" << d;
                ASSERT_GE(formula, gb::Int(1)) << "N=" << n << " P=" << p_val << " d=" << d;
                total += actual;
            }
            ASSERT_EQ(total, gb::size_W(inst));
        }
    }
}

TEST(SliceSizes, RejectsNonDivisor) {
    gb::ProblemInstance inst(gb::Int(4), gb::SquareFreeModulus::from_value(15));
    EXPECT_THROW(gb::size_W_d(inst, 0), std::invalid_argument);
    EXPECT_THROW(gb::size_W_d(inst, 3), std::invalid_argument);  // P_6N = 5
    EXPECT_THROW(gb::size_W_d(inst, 7), std::invalid_argument);
}

TEST(IsAdmissible, AgreesWithEnumeration) {
    std::mt19937_64 rng(7);
    const std::vector<uint64_t> moduli = {15, 30, 105, 210, 2310};
    for (uint64_t p_val : moduli) {
        std::uniform_int_distribution<uint64_t> pick_n(1, 3 * p_val);
        uint64_t n = pick_n(rng);
        gb::ProblemInstance inst(gb::Int(n), gb::SquareFreeModulus::from_value(p_val));
        gb::ResiduePattern pat = gb::enumerate_W(inst);
        std::set<uint64_t> member_set(pat.members.begin(), pat.members.end());
        for (uint64_t m = 1; m <= p_val; ++m) {
            ASSERT_EQ(gb::is_admissible(inst, gb::Int(m)), member_set.count(m) > 0)
                << "N=" << n << " P=" << p_val << " n=" << m;
        }
        for (const auto& [d, slice] : pat.slices) {
            std::set<uint64_t> slice_set(slice.begin(), slice.end());
            for (uint64_t m = 1; m <= p_val; ++m) {
                ASSERT_EQ(gb::is_admissible(inst, gb::Int(m), d), slice_set.count(m) > 0);
            }
        }
        // Periodicity: membership is invariant under shifts by P.
        for (uint64_t m = 1; m <= std::min<uint64_t>(p_val, 40); ++m) {
            ASSERT_EQ(gb::is_admissible(inst, gb::Int(m) + inst.P().value()),
                      member_set.count(m) > 0);
        }
    }
}

TEST(IsAdmissible, RejectsBadArguments) {
    gb::ProblemInstance inst(gb::Int(4), gb::SquareFreeModulus::from_value(15));
    EXPECT_THROW(gb::is_admissible(inst, gb::Int(0)), std::invalid_argument);
    EXPECT_THROW(gb::is_admissible(inst, gb::Int(-3)), std::invalid_argument);
    EXPECT_THROW(gb::is_admissible(inst, gb::Int(3), 7), std::invalid_argument);
}

TEST(CoreSet, SliceMembersDivisibleByCd) {
    for (uint64_t p_val : {15ul, 30ul, 105ul, 210ul}) {
        for (uint64_t n : {1ul, 4ul, 5ul, 10ul, 21ul}) {
            gb::ProblemInstance inst(gb::Int(n),
                                     gb::SquareFreeModulus::from_value(p_val));
            gb::ResiduePattern pat = gb::enumerate_W(inst);
            for (const auto& [d, slice] : pat.slices) {
                std::vector<uint64_t> core = gb::core_set(pat, d);
                ASSERT_EQ(core.size(), slice.size());
                uint64_t cd = inst.c() * d;
                for (size_t i = 0; i < core.size(); ++i) {
                    ASSERT_EQ(core[i] * cd, slice[i]);
                }
            }
            EXPECT_TRUE(gb::core_set(pat, 999).empty());
        }
    }
}

TEST(FactorSum, ExactForRandomAssignments) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-12, 12);
    for (uint64_t k_val : {2ul, 6ul, 30ul, 210ul, 2310ul}) {
        gb::SquareFreeModulus k = gb::SquareFreeModulus::from_value(k_val);
        for (int rep = 0; rep < 25; ++rep) {
            std::map<uint64_t, gb::Rat> h;
            for (uint64_t p : k.factors()) h[p] = gb::Rat(num(rng), 3);
            gb::IdentityCheck chk = gb::factor_sum_identity_check(k, h);
            ASSERT_TRUE(chk.ok()) << "K=" << k_val;
        }
    }
    gb::SquareFreeModulus k = gb::SquareFreeModulus::from_value(6);
    std::map<uint64_t, gb::Rat> partial{{2, gb::Rat(1)}};
    EXPECT_THROW(gb::factor_sum_identity_check(k, partial), std::invalid_argument);
}

TEST(Momentum, ExactForRandomAssignments) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(-10, 10);
    for (uint64_t p_val : {15ul, 30ul, 105ul, 210ul}) {
        for (uint64_t n : {1ul, 4ul, 8ul, 15ul, 33ul}) {
            gb::ProblemInstance inst(gb::Int(n),
                                     gb::SquareFreeModulus::from_value(p_val));
            for (int rep = 0; rep < 10; ++rep) {
                std::map<uint64_t, gb::Rat> f;
                for (uint64_t p : inst.P().factors()) f[p] = gb::Rat(num(rng), 2);
                gb::IdentityCheck chk = gb::momentum_check(inst, f);
                ASSERT_TRUE(chk.ok()) << "N=" << n << " P=" << p_val;
            }
        }
    }
    gb::ProblemInstance inst(gb::Int(4), gb::SquareFreeModulus::from_value(15));
    std::map<uint64_t, gb::Rat> partial{{3, gb::Rat(1)}};
    EXPECT_THROW(gb::momentum_check(inst, partial), std::invalid_argument);
}
