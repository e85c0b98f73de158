#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "taulehmer/errors.hpp"
#include "taulehmer/lucas.hpp"

using namespace tl;

namespace {

// First n >= 2 with ell | u_n by scanning exact terms.
unsigned long rank_oracle(long A, long B, unsigned long ell) {
  auto u = oracle::lucas_naive(A, B, 4 * ell + 4);
  for (unsigned long n = 2; n < u.size(); ++n)
    if (u[n] % ell == 0) return n;
  return 0;
}

// Primitive divisor via full factorization of every term.
bool primitive_oracle(long A, long B, unsigned long n) {
  auto u = oracle::lucas_naive(A, B, n);
  mpz_class disc = mpz_class(A) * A - 4 * B;
  for (const auto& [l, e] : oracle::trial_factor(u[n])) {
    bool old = disc % l == 0;
    for (unsigned long k = 1; k < n && !old; ++k)
      if (u[k] % l == 0) old = true;
    if (!old) return true;
  }
  return false;
}

LucasPair random_modular_pair(std::mt19937_64& rng) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  for (;;) {
    long p = primes[rng() % 9];
    unsigned e = 2 * (rng() % 3) + 3;
    Int B;
    mpz_ui_pow_ui(B.get_mpz_t(), p, e);
    Int lim;
    mpz_sqrt(lim.get_mpz_t(), Int(4 * B).get_mpz_t());
    long L = mpz_get_si(lim.get_mpz_t());
    long A = static_cast<long>(rng() % (2 * L + 1)) - L;
    if (A == 0 || gcd(Int(A), B) != 1 || is_degenerate(A, B)) continue;
    return make_pair(A, B);
  }
}

}  // namespace

TEST(LucasTerms, Examples) {
  auto pr = make_pair(1, 2);
  EXPECT_EQ(lucas_terms(pr, 7), (std::vector<Int>{1, 1, -1, -3, -1, 5, 7}));
  EXPECT_EQ(lucas_terms(pr, 8).back(), -3);
  EXPECT_EQ(lucas_terms(make_pair(7, 9), 1), (std::vector<Int>{1}));
}

TEST(LucasPair, Invariants) {
  EXPECT_THROW(make_pair(0, 3), DomainError);
  EXPECT_THROW(make_pair(2, 4), DomainError);
  EXPECT_THROW(make_pair(2, 1), DomainError);  // A^2 = 4B
  EXPECT_THROW(make_pair(1, 1), DomainError);  // A^2 = B
  auto p = make_pair(3, 8);
  EXPECT_TRUE(p.modularity());
  ASSERT_TRUE(p.b_power.has_value());
  EXPECT_EQ(p.b_power->prime, 2);
  EXPECT_EQ(p.b_power->exponent, 3u);
  EXPECT_FALSE(make_pair(7, 8).modularity());  // 49 > 32
  EXPECT_FALSE(make_pair(1, 4).modularity());  // even exponent
}

TEST(RankOfApparition, Examples) {
  EXPECT_EQ(rank_of_apparition(make_pair(1, 2), 7), 7u);
  EXPECT_EQ(rank_of_apparition(make_pair(5, 2), 5), 2u);
  EXPECT_FALSE(rank_of_apparition(make_pair(1, 3), 3).has_value());
  unsigned long frozen = rank_oracle(2, 3, 5);
  EXPECT_EQ(frozen, 6u);  // u = 1, 2, 1, -4, -11, -10
  EXPECT_EQ(rank_of_apparition(make_pair(2, 3), 5), frozen);
}

TEST(RankOfApparition, MatchesScanOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    long A = static_cast<long>(rng() % 61) - 30, B = static_cast<long>(rng() % 60) + 1;
    if (A == 0 || gcd(Int(A), Int(B)) != 1 || is_degenerate(A, B)) continue;
    auto pr = make_pair(A, B);
    for (unsigned long ell : {3ul, 5ul, 7ul, 11ul, 13ul, 29ul, 47ul}) {
      auto r = rank_of_apparition(pr, ell);
      if (B % ell == 0)
        EXPECT_FALSE(r.has_value());
      else
        EXPECT_EQ(r.value(), rank_oracle(A, B, ell));
    }
  }
}

TEST(PropB, Example) {
  auto rec = check_prop_b(make_pair(1, 2), 3);
  EXPECT_EQ(rec.rank, 4u);
  EXPECT_FALSE(rec.ell_divides_disc);
  EXPECT_TRUE(rec.holds);
  EXPECT_THROW(check_prop_b(make_pair(3, 2), 3), DomainError);
}

TEST(PropB, RandomModularPairs) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto pr = random_modular_pair(rng);
    for (unsigned long ell : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul, 43ul, 47ul}) {
      if (pr.B % ell == 0 || pr.A % ell == 0) continue;
      auto rec = check_prop_b(pr, ell);
      EXPECT_TRUE(rec.holds) << pr.A << "," << pr.B << " ell=" << ell;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(PrimitiveDivisor, Examples) {
  auto pr = make_pair(1, 2);
  EXPECT_FALSE(has_primitive_prime_divisor(pr, 5));
  EXPECT_FALSE(has_primitive_prime_divisor(pr, 7));  // 7 divides A^2 - 4B = -7
  EXPECT_FALSE(primitive_oracle(1, 2, 7));
  EXPECT_TRUE(has_primitive_prime_divisor(pr, 6));
}

TEST(PrimitiveDivisor, MatchesFactorizationOracle) {
  for (long A = -12; A <= 12; ++A)
    for (long B = 1; B <= 40; ++B) {
      if (A == 0 || gcd(Int(A), Int(B)) != 1 || is_degenerate(A, B)) continue;
      auto pr = make_pair(A, B);
      for (unsigned long n = 2; n <= 16; ++n) ASSERT_EQ(has_primitive_prime_divisor(pr, n), primitive_oracle(A, B, n)) << A << "," << B << "," << n;
    }
}

TEST(PrimitiveDivisor, BeyondThirtyAlwaysPresent) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    auto pr = random_modular_pair(rng);
    auto u = lucas_terms(pr, 40);
    for (unsigned long n = 31; n <= 40; ++n) EXPECT_TRUE(has_primitive_prime_divisor(u, pr.disc(), n)) << pr.A << "," << pr.B;
  }
}

TEST(Divisibility, DividesAlongDivisors) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    auto pr = random_modular_pair(rng);
    auto u = lucas_terms(pr, 40);
    for (unsigned long n = 1; n <= 40; ++n)
      for (unsigned long d = 1; d <= n; ++d)
        if (n % d == 0) EXPECT_EQ(u[n - 1] % u[d - 1], 0);
  }
}

TEST(Parity, EvenAOddB) {
  for (long A : {-6, -2, 2, 4, 10})
    for (long B : {3, 5, 27, 125, 343}) {
      if (gcd(Int(A), Int(B)) != 1 || is_degenerate(A, B)) continue;
      auto u = lucas_terms(make_pair(A, B), 30);
      for (unsigned long n = 1; n <= 30; ++n) EXPECT_EQ(mpz_odd_p(u[n - 1].get_mpz_t()) != 0, n % 2 == 1);
    }
}

TEST(Classify, Examples) {
  for (long A : {3, -3}) {
    auto d = classify_defects(make_pair(A, 8));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].n, 3u);
    EXPECT_EQ(d[0].value, 1);
    EXPECT_EQ(d[0].source, "sporadic");
  }
  auto d = classify_defects(make_pair(2, 5));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].n, 3u);
  EXPECT_EQ(d[0].value, -1);
  EXPECT_EQ(d[0].source, "family");
  auto none = make_pair(11, 125);
  EXPECT_TRUE(classify_defects(none).empty());
  auto u = lucas_terms(none, 30);
  for (unsigned long n = 3; n <= 30; ++n) EXPECT_TRUE(has_primitive_prime_divisor(u, none.disc(), n));
}

TEST(Classify, StoredValuesRecompute) {
  // Table rows and family representatives found by the defect scan.
  const std::vector<std::pair<long, long>> pairs = {
      {1, 2}, {-1, 2}, {1, 3}, {-1, 3}, {1, 5}, {-1, 5}, {2, 3}, {-2, 3}, {2, 7}, {-2, 7}, {2, 11}, {-2, 11},
      {4, 5}, {-4, 5}, {5, 7}, {-5, 7}, {3, 8}, {-3, 8}, {5, 8}, {-5, 8}, {7, 27}, {-7, 27}, {22, 243}, {-22, 243},
      {10, 343}, {-10, 343}, {59, 1331}, {63, 1331}, {-69, 1331}, {46, 2197}, {143, 6859}, {156, 12167}, {-156, 12167}};
  for (auto [A, B] : pairs) {
    auto pr = make_pair(A, B);
    auto recs = classify_defects(pr);
    ASSERT_FALSE(recs.empty()) << A << "," << B;
    auto u = lucas_terms(pr, 30);
    for (const auto& r : recs) {
      EXPECT_EQ(u[r.n - 1], r.value) << A << "," << B << " n=" << r.n;
      EXPECT_FALSE(has_primitive_prime_divisor(u, pr.disc(), r.n)) << A << "," << B << " n=" << r.n;
    }
  }
}

TEST(SigmaHat, Examples) {
  EXPECT_EQ(sigma_hat(7, 19 * 19 * 19, 2), 1);
  EXPECT_EQ(sigma_hat(3, 8, 2), 0);
  EXPECT_EQ(sigma_hat(-3, 8, 2), 0);
  EXPECT_EQ(sigma_hat(3, 8, 3), 2);  // sigma0(4) - 1
  EXPECT_EQ(sigma_hat(5, 8, 5), 2);  // sigma0(6) - 2
  EXPECT_EQ(sigma_hat(5, 8, 2), 1);
  EXPECT_EQ(sigma_hat(7, 19 * 19 * 19, 1), 1);
  EXPECT_EQ(sigma_hat(10, 343, 5), 0);  // B1 point: sigma0(6) - 4
}
