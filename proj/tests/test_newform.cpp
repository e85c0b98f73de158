#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "taulehmer/errors.hpp"
#include "taulehmer/newform.hpp"

using namespace tl;

namespace {

const std::vector<mpz_class>& tau_ref() {
  static const auto v = oracle::tau_by_product(1200);
  return v;
}

Int tau_oracle(unsigned long n) { return tau_ref().at(n - 1); }

}  // namespace

TEST(DeltaExpansion, FirstCoefficients) {
  QSeries q = delta_expansion(5);
  std::vector<Int> want{1, -24, 252, -1472, 4830};
  EXPECT_EQ(q.coeffs, want);
  EXPECT_EQ(q.bound, 5u);
  EXPECT_EQ(delta_expansion(6).at(6), -6048);
  EXPECT_THROW(q.at(6), DomainError);
}

TEST(DeltaExpansion, MatchesNaiveProduct) {
  QSeries q = delta_expansion(1200);
  for (unsigned long n = 1; n <= 1200; ++n) ASSERT_EQ(q.at(n), tau_oracle(n)) << n;
}

TEST(DeltaExpansion, LargeBoundSanity) {
  QSeries q = delta_expansion(10000);
  EXPECT_EQ(q.at(1), 1);
  EXPECT_EQ(q.at(6), -6048);
  EXPECT_EQ(q.at(4096), coeff_prime_power(delta_spec(), 2, 12));
}

TEST(CoeffPrimePower, Examples) {
  const auto& d = delta_spec();
  // Exact recursion gives the negative value; the printed display is unsigned.
  EXPECT_EQ(coeff_prime_power(d, 251, 2), Int("-80561663527802406257321747"));
  EXPECT_EQ(coeff_prime_power(d, 7, 0), 1);
  EXPECT_EQ(coeff_prime_power(d, 2, 2), -1472);
  EXPECT_EQ(coeff(d, 12), -370944);
  EXPECT_EQ(coeff(d, 1), 1);
  EXPECT_EQ(coeff(d, Int(251 * 251)), Int("-80561663527802406257321747"));
  EXPECT_EQ(d.ap.at(251), Int("12983053545252"));
}

TEST(CoeffPrimePower, RecursionMatchesEtaProduct) {
  const auto& d = delta_spec();
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul}) {
    unsigned long pm = 1;
    for (unsigned long m = 0; m <= 6; ++m, pm *= p) {
      if (pm > 1200) break;
      EXPECT_EQ(coeff_prime_power(d, p, m), pm == 1 ? Int(1) : tau_oracle(pm)) << p << "^" << m;
    }
  }
}

TEST(CoeffPrimePower, BadPrimesAndMissingData) {
  NewformSpec s;
  s.name = "test";
  s.weight = 4;
  s.level = 5 * 9;
  s.ap = {{2, 1}, {7, -6}};
  s.bad_signs = {{5, -1}};
  validate(s);
  EXPECT_EQ(coeff_prime_power(s, 5, 3), -125);  // (-1)^3 5^(1*3)
  EXPECT_EQ(coeff_prime_power(s, 5, 2), 25);
  EXPECT_EQ(coeff_prime_power(s, 3, 1), 0);
  EXPECT_EQ(coeff_prime_power(s, 3, 0), 1);
  EXPECT_EQ(coeff_prime_power(s, 2, 2), 1 - 8);
  EXPECT_THROW(coeff_prime_power(s, 11, 1), InsufficientData);
  EXPECT_THROW(coeff(s, 22), InsufficientData);
  NewformSpec t = s;
  t.bad_signs.clear();
  EXPECT_THROW(coeff_prime_power(t, 5, 1), InsufficientData);
}

TEST(Multiplicativity, RandomCoprimePairs) {
  const auto& d = delta_spec();
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    unsigned long a = rng() % 2000 + 1, b = rng() % 2000 + 1;
    if (gcd(Int(a), Int(b)) != 1) continue;
    EXPECT_EQ(coeff(d, Int(a) * b), coeff(d, a) * coeff(d, b));
  }
}

TEST(Congruences, RamanujanUpTo1200) {
  const auto& d = delta_spec();
  for (unsigned long n = 1; n <= 1200; ++n) {
    Int t = tau_oracle(n), N(n);
    ASSERT_EQ(coeff(d, N), t);
    EXPECT_EQ((t - oracle::sigma_naive(11, n)) % 691, 0) << n;
    EXPECT_EQ((t - N * N * oracle::sigma_naive(1, n)) % 9, 0) << n;
    EXPECT_EQ((t - N * oracle::sigma_naive(1, n)) % 5, 0) << n;
    EXPECT_EQ((t - N * oracle::sigma_naive(3, n)) % 7, 0) << n;
  }
}

TEST(Deligne, HoldsForTabulatedPrimes) {
  const auto& d = delta_spec();
  for (const auto& [p, a] : d.ap) EXPECT_TRUE(deligne_ok(a, p, 12)) << p;
}

TEST(Parity, DeltaOddIndices) {
  ParityReport r = parity_check(delta_spec(), 100);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.odd_square_checked);
  EXPECT_EQ(r.odd_indices, (std::vector<unsigned long>{1, 9, 25, 49, 81}));
}

TEST(Parity, OddEigenvalueFlagged) {
  NewformSpec s;
  s.name = "odd";
  s.weight = 4;
  s.level = 7;
  s.ap = {{3, 5}};
  s.bad_signs = {{7, 1}};
  validate(s);
  ParityReport r = parity_check(s);
  EXPECT_EQ(r.odd_eigenvalue_primes, (std::vector<unsigned long>{3}));
  s.trivial_mod2 = true;
  EXPECT_THROW(validate(s), DomainError);
}

TEST(SpecJson, ParseAndValidate) {
  auto s = parse_newform_spec(R"({"name":"f","weight":4,"level":5,"ap":{"2":-4,"3":2},"bad_signs":{"5":1},"trivial_mod2":true})");
  EXPECT_EQ(s.weight, 4u);
  EXPECT_EQ(s.ap.at(2), -4);
  EXPECT_EQ(coeff_prime_power(s, 5, 2), 25);
  EXPECT_THROW(parse_newform_spec(R"({"weight":4,"level":1,"ap":{"2":6}})"), DomainError);  // 36 > 4*8
  EXPECT_THROW(parse_newform_spec(R"({"weight":3,"level":1})"), DomainError);
  EXPECT_THROW(parse_newform_spec(R"({"weight":4,"level":1,"ap":{"4":1}})"), DomainError);
  EXPECT_THROW(parse_newform_spec("not json"), DomainError);
}
