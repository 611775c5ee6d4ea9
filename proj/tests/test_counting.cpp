// Counting: prefix counts S and slices, the t term, the exact error term T
// in its three computations, windowed counts, the periodwide extremum of T,
// and the deduction identities.

#include <cstdint>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "goldbach/admissible.hpp"
#include "goldbach/counting.hpp"

namespace gb = goldbach;

namespace {

gb::ProblemInstance make(uint64_t n, uint64_t p) {
    return gb::ProblemInstance(gb::Int(n), gb::SquareFreeModulus::from_value(p));
}

}  // namespace

TEST(CountS, WorkedInstance) {
    gb::ProblemInstance inst = make(4, 15);
    gb::ResiduePattern pat = gb::enumerate_W(inst);
    EXPECT_EQ(gb::count_S(pat, gb::Rat(15, 2)), gb::Int(1));   // members 3, 12, 15
    EXPECT_EQ(gb::count_S(pat, gb::Rat(3)), gb::Int(1));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(15)), gb::Int(3));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(45)), gb::Int(9));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(1, 3)), gb::Int(0));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(29, 2), 5), gb::Int(0));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(15), 5), gb::Int(1));
    EXPECT_EQ(gb::count_S(pat, gb::Rat(13), 1), gb::Int(2));
    EXPECT_THROW(gb::count_S(pat, gb::Rat(-1, 2)), std::invalid_argument);
}

TEST(CountS, SieveModeMatchesMembershipScan) {
    // P above the enumeration guard forces the segmented striking path.
    gb::SquareFreeModulus p = gb::primorial(23.0);
    ASSERT_GT(p.value(), gb::Int(gb::kEnumerationGuard));
    gb::ProblemInstance inst(gb::Int(400), p);
    for (std::optional<uint64_t> slice : {std::optional<uint64_t>{}, {7}, {77}}) {
        long limit = 20000;
        uint64_t direct = 0;
        for (uint64_t n = 1; n <= static_cast<uint64_t>(limit); ++n) {
            bool in_slice = true;
            if (slice) {
                for (uint64_t q : inst.P_6N().factors()) {
                    bool want = (*slice % q == 0);
                    if (want != (n % q == 0)) { in_slice = false; break; }
                }
            }
            if (in_slice && gb::is_admissible(inst, gb::Int(n))) ++direct;
        }
        EXPECT_EQ(gb::count_S(inst, gb::Rat(limit), slice), gb::Int(direct))
            << "slice=" << slice.value_or(0);
    }
}

TEST(TTerm, HalfExactlyWhenCoprime) {
    EXPECT_EQ(gb::t_term(make(4, 15)), gb::Rat(1, 2));    // N_P = 1
    EXPECT_EQ(gb::t_term(make(10, 30)), gb::Rat(0));      // N_P = 10
    gb::ProblemInstance inst = make(4, 15);
    EXPECT_EQ(gb::t_term(inst, 5), gb::Rat(1, 2));        // P_5 = 3 divides 6
    EXPECT_EQ(gb::t_term(inst, 1), gb::Rat(0));           // P_1 = 15 does not
    EXPECT_THROW(gb::t_term(inst, 3), std::invalid_argument);
}

TEST(ErrorT, FracsumWorkedValuesAndPeriodicity) {
    gb::ProblemInstance inst = make(4, 15);
    EXPECT_EQ(gb::error_T_fracsum(inst, gb::Rat(1, 2)), gb::Rat(-2, 5));
    EXPECT_EQ(gb::error_T_fracsum(inst, gb::Rat(41, 2)), gb::Rat(-2, 5));
    for (long k = 0; k < 30; ++k) {
        gb::Rat x = gb::half_integer(k);
        gb::Rat shifted(x.num() + 15 * x.den(), x.den());
        ASSERT_EQ(gb::error_T_fracsum(inst, x), gb::error_T_fracsum(inst, shifted)) << k;
    }
    EXPECT_THROW(gb::error_T_fracsum(inst, gb::Rat(7)), std::invalid_argument);
}

TEST(ErrorT, FracsumAgreesWithCountForm) {
    for (auto [n, p] : {std::pair<uint64_t, uint64_t>{4, 15}, {7, 30}, {10, 105}, {9, 210}}) {
        gb::ProblemInstance inst = make(n, p);
        gb::ResiduePattern pat = gb::enumerate_W(inst);
        for (long k = 0; k < static_cast<long>(2 * p); k += 3) {
            gb::Rat x = gb::half_integer(k);
            ASSERT_EQ(gb::error_T_fracsum(pat, x), gb::error_T_from_counts(inst, x))
                << "N=" << n << " P=" << p << " x=" << x.str();
            for (const auto& [d, slice] : pat.slices) {
                ASSERT_EQ(gb::error_T_fracsum(pat, x, d), gb::error_T_from_counts(inst, x, d))
                    << "N=" << n << " P=" << p << " d=" << d << " x=" << x.str();
            }
        }
    }
}

TEST(ErrorT, FourierApproachesExact) {
    gb::ProblemInstance inst = make(4, 15);
    for (long k : {0L, 4L, 11L}) {
        gb::Rat x = gb::half_integer(k);
        double exact = gb::error_T_fracsum(inst, x).to_double();
        double coarse = gb::error_T_fourier(inst, x, 40 * 15);
        ASSERT_NEAR(coarse, exact, 0.05) << "x=" << x.str();
    }
    EXPECT_THROW(gb::error_T_fourier(inst, gb::Rat(15), 100), std::invalid_argument);
    EXPECT_THROW(gb::error_T_fourier(inst, gb::Rat(1, 2), 0), std::invalid_argument);
}

TEST(CountBundle, ConsistentAndSliceDecomposition) {
    for (auto [n, p] : {std::pair<uint64_t, uint64_t>{4, 15}, {7, 30}, {10, 105}, {1, 210}}) {
        gb::ProblemInstance inst = make(n, p);
        gb::ResiduePattern pat = gb::enumerate_W(inst);
        for (long k = 0; k < static_cast<long>(3 * p); k += 5) {
            gb::Rat x = gb::half_integer(k);
            gb::CountBundle whole = gb::count_bundle(pat, x);
            ASSERT_TRUE(whole.consistent()) << "N=" << n << " P=" << p << " x=" << x.str();
            gb::Int slice_sum(0ul);
            for (const auto& [d, slice] : pat.slices) {
                gb::CountBundle part = gb::count_bundle(pat, x, d);
                ASSERT_TRUE(part.consistent())
                    << "N=" << n << " P=" << p << " d=" << d << " x=" << x.str();
                slice_sum += part.S;
            }
            ASSERT_EQ(slice_sum, whole.S) << "N=" << n << " P=" << p << " x=" << x.str();
        }
    }
}

TEST(CountWindow, WorkedOffsets) {
    gb::ProblemInstance inst = make(4, 15);
    EXPECT_EQ(gb::count_window(inst, gb::Int(0), 7, 1), (std::vector<int64_t>{-3, 3}));
    EXPECT_EQ(gb::count_window(inst, gb::Int(9), 3, 5), (std::vector<int64_t>{}));
    EXPECT_EQ(gb::count_window(inst, gb::Int(0), 0, 1), (std::vector<int64_t>{}));
    EXPECT_THROW(gb::count_window(inst, gb::Int(0), 8, 1), std::invalid_argument);
    EXPECT_THROW(gb::count_window(inst, gb::Int(0), 3, 3), std::invalid_argument);
}

TEST(CountWindow, MatchesDirectMembership) {
    for (auto [n, p] : {std::pair<uint64_t, uint64_t>{4, 105}, {7, 210}, {10, 2310}}) {
        gb::ProblemInstance inst = make(n, p);
        for (uint64_t d : gb::divisors_of(inst.P_6N())) {
            uint64_t h = (p - 1) / 2;
            gb::Int center(p + 1 + (n % 9));
            std::vector<int64_t> got = gb::count_window(inst, center, h, d);
            std::vector<int64_t> expect;
            for (int64_t delta = 1 - static_cast<int64_t>(h);
                 delta <= static_cast<int64_t>(h); ++delta) {
                if (gb::is_admissible(inst, center + gb::Int(delta), d)) expect.push_back(delta);
            }
            ASSERT_EQ(got, expect) << "N=" << n << " P=" << p << " d=" << d;
        }
    }
}

TEST(PeriodExtremum, MatchesGridBrute) {
    for (auto [n, p] : {std::pair<uint64_t, uint64_t>{4, 15}, {7, 30}, {10, 105}}) {
        gb::ProblemInstance inst = make(n, p);
        gb::ResiduePattern pat = gb::enumerate_W(inst);
        for (std::optional<uint64_t> slice : {std::optional<uint64_t>{}, {1}}) {
            gb::PeriodExtremum ext = gb::max_abs_error_T_over_period(inst, slice);
            gb::Rat best(0);
            gb::Rat best_x(1, 2);
            for (long k = 0; k < static_cast<long>(p); ++k) {
                gb::Rat x = gb::half_integer(k);
                gb::Rat t = gb::error_T_fracsum(pat, x, slice);
                if (t.sign() < 0) t = gb::Rat(0) - t;
                if (best < t) { best = t; best_x = x; }
            }
            ASSERT_EQ(ext.max_abs, best) << "N=" << n << " P=" << p;
            ASSERT_EQ(ext.argmax, best_x) << "N=" << n << " P=" << p;
        }
    }
}

TEST(Deduction, SFirstHoldsAndValidates) {
    gb::ProblemInstance inst = make(4, 15);  // P_2N = 15, reflection y(3) = 40
    for (long k : {0L, 3L, 10L, 19L}) {
        ASSERT_TRUE(gb::deduction_check_S_first(inst, 3, gb::half_integer(k)));
        ASSERT_TRUE(gb::deduction_check_S_first(inst, 5, gb::half_integer(k)));
    }
    EXPECT_THROW(gb::deduction_check_S_first(inst, 2, gb::Rat(7, 2)), std::invalid_argument);
    EXPECT_THROW(gb::deduction_check_S_first(inst, 3, gb::Rat(7)), std::invalid_argument);
    EXPECT_THROW(gb::deduction_check_S_first(inst, 3, gb::Rat(81, 2)), std::invalid_argument);
}

TEST(Deduction, TVariantsHold) {
    gb::ProblemInstance a = make(4, 15);
    for (long k : {0L, 5L, 16L}) {
        gb::Rat x = gb::half_integer(k);
        ASSERT_TRUE(gb::deduction_check_T(a, gb::TDeductionVariant::first, x, 3));
        ASSERT_TRUE(gb::deduction_check_T(a, gb::TDeductionVariant::first_slice, x, 5, 1));
        ASSERT_TRUE(gb::deduction_check_T(a, gb::TDeductionVariant::third, x));
        ASSERT_TRUE(gb::deduction_check_T(a, gb::TDeductionVariant::third, x, std::nullopt, 1));
    }
    gb::ProblemInstance b = make(10, 30);  // N_P = 10
    for (long k : {0L, 7L}) {
        gb::Rat x = gb::half_integer(k);
        ASSERT_TRUE(gb::deduction_check_T(b, gb::TDeductionVariant::second, x, 5));
        ASSERT_TRUE(gb::deduction_check_T(b, gb::TDeductionVariant::second_slice, x, 5, 1));
    }
    EXPECT_THROW(gb::deduction_check_T(a, gb::TDeductionVariant::first, gb::Rat(3), 3),
                 std::invalid_argument);
    EXPECT_THROW(gb::deduction_check_T(a, gb::TDeductionVariant::second, gb::Rat(7, 2), 3),
                 std::invalid_argument);
    EXPECT_THROW(gb::deduction_check_T(a, gb::TDeductionVariant::first_slice, gb::Rat(7, 2), 5, 5),
                 std::invalid_argument);
}
