// Densities as exact rationals, the asymptotic constants with truncation
// tails, the Mertens partial product, the threshold inequalities, and the
// empirical error ratio.

#include <cstdint>
#include <numeric>
#include <optional>

#include <gtest/gtest.h>

#include "goldbach/admissible.hpp"
#include "goldbach/counting.hpp"
#include "goldbach/density.hpp"

namespace gb = goldbach;

namespace {

gb::ProblemInstance make(uint64_t n, uint64_t p) {
    return gb::ProblemInstance(gb::Int(n), gb::SquareFreeModulus::from_value(p));
}

}  // namespace

TEST(Omega, WorkedValuesAndSizeRatio) {
    gb::ProblemInstance inst = make(4, 15);
    EXPECT_EQ(gb::omega(inst).exact, gb::Rat(1, 5));
    EXPECT_EQ(gb::omega(inst, 1).exact, gb::Rat(2, 15));
    EXPECT_THROW(gb::omega(inst, 3), std::invalid_argument);
    for (auto [n, p] : {std::pair<uint64_t, uint64_t>{4, 15}, {7, 30}, {10, 105},
                        {9, 210}, {1, 2310}, {100, 2310}}) {
        gb::ProblemInstance it = make(n, p);
        ASSERT_EQ(gb::omega(it).exact, gb::Rat(gb::size_W(it), it.P().value()))
            << "N=" << n << " P=" << p;
        for (uint64_t d : gb::divisors_of(it.P_6N())) {
            ASSERT_EQ(gb::omega(it, d).exact, gb::Rat(gb::size_W_d(it, d), it.P().value()))
                << "N=" << n << " P=" << p << " d=" << d;
        }
    }
}

TEST(Constants, PartialProductsAndDerivedFields) {
    gb::AsymptoticConstants c = gb::constants(200000, gb::Int(15));
    EXPECT_NEAR(c.C1, 1.7810724179901979, 1e-12);
    EXPECT_NEAR(c.C2, 0.6601618158, 5e-5);
    EXPECT_NEAR(c.C3, 0.6351663546, 5e-5);
    EXPECT_DOUBLE_EQ(c.d_N, (2.0 / 1.0) * (4.0 / 3.0));
    EXPECT_DOUBLE_EQ(c.d_N_prime, 2.0 * (4.0 / 2.0));
    EXPECT_DOUBLE_EQ(c.hl_ratio, (8.0 / (c.C1 * c.C1) - 2.0) / 2.0);
    EXPECT_DOUBLE_EQ(c.tail_bound, 3.0 / (200000.0 * std::log(200000.0)));
    EXPECT_EQ(gb::constants(5000).d_N, 1.0);
    EXPECT_THROW(gb::constants(4), std::invalid_argument);
}

TEST(DensityProduct, MertensRewriteIsExact) {
    for (uint64_t n : {4ul, 9ul, 15ul, 77ul, 100ul}) {
        for (uint64_t z : {3ul, 5ul, 13ul, 29ul}) {
            for (bool core : {false, true}) {
                gb::IdentityCheck chk = gb::density_product_check(gb::Int(n), z, core);
                ASSERT_TRUE(chk.ok())
                    << "n=" << n << " z=" << z << " core=" << core
                    << " lhs=" << chk.lhs.str() << " rhs=" << chk.rhs.str();
            }
        }
    }
    EXPECT_THROW(gb::density_product_check(gb::Int(4), 2, false), std::invalid_argument);
}

TEST(Mertens, PartialProductConverges) {
    EXPECT_NEAR(gb::mertens_partial(2), 0.34657359027997264, 1e-12);
    EXPECT_NEAR(gb::mertens_partial(1000), 0.5592882264035711, 1e-10);
    EXPECT_NEAR(gb::mertens_partial(200000), 0.5614594835668851, 2e-4);
    EXPECT_THROW(gb::mertens_partial(1), std::invalid_argument);
}

TEST(Threshold, InequalitiesFlipAtSmallN) {
    EXPECT_EQ(gb::threshold_check(312), (std::pair<bool, bool>{true, true}));
    EXPECT_EQ(gb::threshold_check(4), (std::pair<bool, bool>{false, false}));
    for (uint64_t n = 312; n <= 2000; ++n) {
        auto [first, second] = gb::threshold_check(n);
        ASSERT_TRUE(first && second) << "N=" << n;
    }
    EXPECT_THROW(gb::threshold_check(1), std::invalid_argument);
}

TEST(HlRatio, MatchesDirectComputation) {
    for (uint64_t n : {100ul, 640ul, 2001ul}) {
        gb::SquareFreeModulus p = gb::primorial_under_sqrt(2 * n);
        gb::ProblemInstance inst(gb::Int(n), p);
        uint64_t s = 0;
        for (uint64_t k = 1; k <= n; ++k) {
            if (gb::is_admissible(inst, gb::Int(k))) ++s;
        }
        ASSERT_GT(s, 0u) << "N=" << n;
        gb::Rat expect = (gb::omega(inst).exact * gb::Rat(gb::Int(n), gb::Int(1)) -
                          gb::t_term(inst) - gb::Rat(gb::Int(s), gb::Int(1))) /
                         gb::Rat(gb::Int(s), gb::Int(1));
        ASSERT_EQ(gb::hl_ratio_empirical(n).exact, expect) << "N=" << n;
    }
    EXPECT_THROW(gb::hl_ratio_empirical(3), std::invalid_argument);
}
