#include "goldbach/bigint.hpp"

#include <gtest/gtest.h>

namespace goldbach {
namespace {

TEST(Int, LiteralRoundTrip) {
    EXPECT_EQ(Int("123456789012345678901234567890").str(), "123456789012345678901234567890");
    EXPECT_EQ(Int(-42).str(), "-42");
    EXPECT_THROW(Int("12x"), std::invalid_argument);
}

TEST(Int, Arithmetic) {
    Int a(1000000007);
    Int b(998244353);
    EXPECT_EQ((a * b).str(), "998244359987710471");
    EXPECT_EQ((a - b), Int(1755654));
    EXPECT_EQ(Int::fdiv_q(Int(-7), Int(2)), Int(-4));
    EXPECT_EQ(Int::fdiv_r(Int(-7), Int(2)), Int(1));
    EXPECT_EQ(Int::divexact(Int(30030), Int(13)), Int(2310));
}

TEST(Int, Gcd) {
    EXPECT_EQ(Int::gcd(Int(0), Int(15)), Int(15));
    EXPECT_EQ(Int::gcd(Int(12), Int(18)), Int(6));
    EXPECT_EQ(Int::gcd(Int(-12), Int(18)), Int(6));
}

TEST(Int, Isqrt) {
    EXPECT_EQ(Int(99).isqrt(), Int(9));
    EXPECT_EQ(Int(100).isqrt(), Int(10));
    EXPECT_EQ(Int("152415787532388367501905199875019052100").isqrt().str(),
              "12345678901234567890");
}

TEST(Int, PowAndFit) {
    EXPECT_EQ(Int::pow_u64(Int(10), 3), Int(1000));
    EXPECT_EQ(Int::two_pow(10), Int(1024));
    EXPECT_TRUE(Int("18446744073709551615").fits_u64());
    EXPECT_FALSE(Int("18446744073709551616").fits_u64());
    EXPECT_EQ(Int("18446744073709551615").to_u64(), 18446744073709551615ull);
}

TEST(Int, Mod) {
    EXPECT_EQ(Int(103).mod_u64(5), 3ull);
    EXPECT_EQ(Int(-7).mod_u64(5), 3ull);
    EXPECT_TRUE(Int(30).divisible_by_u64(15));
    EXPECT_FALSE(Int(30).divisible_by_u64(7));
}

TEST(Rat, ParseForms) {
    EXPECT_EQ(Rat::parse("7/2").str(), "7/2");
    EXPECT_EQ(Rat::parse("3.5").str(), "7/2");
    EXPECT_EQ(Rat::parse("5").str(), "5/1");
    EXPECT_EQ(Rat::parse("-0.25").str(), "-1/4");
    EXPECT_EQ(Rat::parse("6/4").str(), "3/2");
    EXPECT_THROW(Rat::parse("a/b"), std::invalid_argument);
}

TEST(Rat, Arithmetic) {
    Rat a(1, 3);
    Rat b(1, 6);
    EXPECT_EQ((a + b).str(), "1/2");
    EXPECT_EQ((a - b).str(), "1/6");
    EXPECT_EQ((a * b).str(), "1/18");
    EXPECT_TRUE(Rat(4, 2).is_integer());
    EXPECT_FALSE(Rat(1, 2).is_integer());
}

TEST(Rat, FloorFrac) {
    EXPECT_EQ(Rat(7, 2).floor(), Int(3));
    EXPECT_EQ(Rat(-7, 2).floor(), Int(-4));
    EXPECT_EQ(Rat(7, 2).frac().str(), "1/2");
    EXPECT_EQ(Rat(-7, 2).frac().str(), "1/2");
}

TEST(Rat, Compare) {
    EXPECT_LT(Rat(1, 3), Rat(1, 2));
    EXPECT_EQ(Rat(2, 4), Rat(1, 2));
    EXPECT_EQ(Rat(Int(6), Int(-4)).str(), "-3/2");
}

}  // namespace
}  // namespace goldbach
