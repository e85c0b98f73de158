#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "taulehmer/errors.hpp"
#include "taulehmer/fixtures.hpp"
#include "taulehmer/thue.hpp"

using namespace tl;

namespace {

Poly P(std::initializer_list<long> xs) {
  Poly p;
  for (long v : xs) p.push_back(v);
  return p;
}

// F(1, t) = R(1, t - 2) as polynomials in t, via Taylor shift.
Poly shift_by_minus2(const Poly& r) {
  Poly out(r.size(), 0), pw{1};
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < pw.size(); ++j) out[j] += r[i] * pw[j];
    Poly next(pw.size() + 1, 0);
    for (std::size_t j = 0; j < pw.size(); ++j) {
      next[j + 1] += pw[j];
      next[j] -= 2 * pw[j];
    }
    pw = next;
  }
  return out;
}

nlohmann::json load(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return nlohmann::json::parse(in);
}

std::vector<ThuePoint> pts(const nlohmann::json& arr, int flip) {
  std::vector<ThuePoint> out;
  for (const auto& p : arr) out.emplace_back(Int(flip * p[0].get<long>()), Int(flip * p[1].get<long>()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(BuildForm, DisplayedForms) {
  EXPECT_EQ(build_form(1).coeffs, P({-1, 1}));
  EXPECT_EQ(build_form(2).coeffs, P({1, -3, 1}));
  EXPECT_EQ(build_form(3).coeffs, P({-1, 6, -5, 1}));
  EXPECT_EQ(build_form(4).coeffs, P({1, -10, 15, -7, 1}));
  EXPECT_EQ(build_form(5).coeffs, P({-1, 15, -35, 28, -9, 1}));
  EXPECT_THROW(build_form(0), DomainError);
}

TEST(BuildForm, MatchesGeneratingFunction) {
  for (unsigned long m = 1; m <= 10; ++m) {
    auto terms = oracle::genfunction_term(static_cast<int>(2 * m));
    Poly want(m + 1, 0);
    for (const auto& [e, c] : terms) {
      ASSERT_EQ(e.first % 2, 0);
      ASSERT_EQ(e.first / 2 + e.second, static_cast<int>(m));
      want[e.first / 2] = c;  // Y power i, X power m - i
    }
    EXPECT_EQ(build_form(m).coeffs, want) << m;
  }
}

TEST(BuildForm, ProductIdentityAtSamples) {
  std::mt19937 rng(3);
  for (unsigned long m : {2ul, 3ul, 6ul, 11ul}) {
    ThueForm f = build_form(m);
    ASSERT_EQ(f.roots.size(), m);
    for (int s = 0; s < 5; ++s) {
      long x = static_cast<long>(rng() % 9) - 4, y = static_cast<long>(rng() % 9) - 4;
      long double prod = 1;
      for (unsigned long k = 1; k <= m; ++k) {
        long double c = std::cos(M_PIl * k / (2 * m + 1));
        prod *= y - 4 * x * c * c;
      }
      EXPECT_NEAR(static_cast<double>(prod), evaluate(f, x, y).get_d(), 1e-6 * (1 + std::fabs(static_cast<double>(prod))));
    }
  }
}

TEST(BuildForm, RootsCertified) {
  ThueForm f8 = build_form(4);  // 4cos^2(pi/3) = 1 is an integer root
  int rational = 0;
  for (const auto& r : f8.roots) rational += r.rational;
  EXPECT_EQ(rational, 1);
  for (const auto& r : f8.roots) {
    EXPECT_LE(r.enclosure.lo(), r.enclosure.hi());
    if (!r.rational)
      EXPECT_NE(poly_sign_dyadic(r.enclosure.poly, r.enclosure.lo_num, r.enclosure.k),
                poly_sign_dyadic(r.enclosure.poly, r.enclosure.hi_num, r.enclosure.k));
  }
}

TEST(ReducedForm, Small) {
  EXPECT_EQ(build_reduced_form(3).coeffs, P({1, 1}));
  EXPECT_EQ(build_reduced_form(5).coeffs, P({-1, 1, 1}));
  EXPECT_THROW(build_reduced_form(9), DomainError);
  EXPECT_THROW(build_reduced_form(2), DomainError);
}

TEST(ReducedForm, ReductionIdentity) {
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 23ul, 29ul, 31ul, 37ul}) {
    ThueForm r = build_reduced_form(p);
    EXPECT_EQ(shift_by_minus2(r.coeffs), build_form((p - 1) / 2).coeffs) << p;
    EXPECT_EQ(evaluate(build_form((p - 1) / 2), 1, 1), evaluate(r, 1, -1));
  }
}

TEST(Evaluate, Examples) {
  ThueForm f6 = build_form(3);
  EXPECT_EQ(evaluate(f6, 2, 1), 7);
  EXPECT_EQ(evaluate(f6, 1, 4), 7);
  for (unsigned long m = 1; m <= 12; ++m) EXPECT_EQ(evaluate(build_form(m), 0, 1), 1);
}

TEST(Evaluate, Homogeneity) {
  std::mt19937 rng(5);
  for (unsigned long m = 1; m <= 8; ++m) {
    ThueForm f = build_form(m);
    for (int s = 0; s < 20; ++s) {
      long l = static_cast<long>(rng() % 11) - 5, x = static_cast<long>(rng() % 41) - 20,
           y = static_cast<long>(rng() % 41) - 20;
      Int lm;
      mpz_pow_ui(lm.get_mpz_t(), Int(l).get_mpz_t(), m);
      EXPECT_EQ(evaluate(f, l * x, l * y), lm * evaluate(f, x, y));
    }
  }
}

TEST(Solve, F6SevenExample) {
  ThueResult r = solve_bounded(build_form(3), 7, 50, 50);
  std::vector<ThuePoint> want{{-3, -5}, {1, 4}, {2, 1}};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(r.solutions, want);
  ThueResult neg = solve_bounded(build_form(3), -7, 50, 50);
  EXPECT_EQ(neg.solutions, (std::vector<ThuePoint>{{-2, -1}, {-1, -4}, {3, 5}}));
}

TEST(Solve, F12MinusThirteenEmpty) {
  EXPECT_TRUE(solve_bounded(build_form(6), -13, 100, 100).solutions.empty());
  EXPECT_THROW(solve_bounded(build_form(6), 0, 100, 100), DomainError);
  EXPECT_THROW(solve_bounded(build_form(6), 1, 100, 10), DomainError);
}

TEST(Solve, LinearForm) {
  ThueResult r = solve_bounded(build_form(1), 5, 3, 3);
  std::vector<ThuePoint> want;
  for (long x = -3; x <= 3; ++x) want.emplace_back(Int(x), Int(x + 5));
  EXPECT_EQ(r.solutions, want);
  EXPECT_FALSE(r.certificate.gap_threshold.has_value());
}

TEST(Solve, WorkerCountDoesNotMatter) {
  ThueForm f = build_form(3);
  auto one = solve_bounded(f, 13, 300, 300, 1);
  auto four = solve_bounded(f, 13, 300, 300, 4);
  EXPECT_EQ(one.solutions, four.solutions);
  EXPECT_EQ(one.certificate.candidates_tested, four.certificate.candidates_tested);
}

// Pruned midsize search against a brute force over every y; F6 stays in 64 bits here.
TEST(Solve, PruningMatchesExhaustiveF6) {
  ThueForm f = build_form(3);
  for (long D : {7L, -7L, 13L, -13L, 29L, -29L}) {
    std::vector<ThuePoint> brute;
    for (long x = -1000; x <= 1000; ++x)
      for (long y = -std::abs(4 * x) - 10; y <= std::abs(4 * x) + 10; ++y)
        if (y * y * y - 5 * x * y * y + 6 * x * x * y - x * x * x == D) brute.emplace_back(Int(x), Int(y));
    std::sort(brute.begin(), brute.end());
    ThueResult r = solve_bounded(f, D, 10, 1000);
    ASSERT_TRUE(r.certificate.midsize_by_convergents) << D;
    EXPECT_LT(r.certificate.exhaustive_bound, 1000u);
    EXPECT_EQ(r.solutions, brute) << D;
    for (auto n : r.certificate.convergents_per_root) EXPECT_GT(n, 0u);
  }
}

TEST(Solve, ReducedSmallSearch691) {
  ThueForm r = build_reduced_form(691);
  ASSERT_EQ(r.m, 345u);
  ThueResult plus = solve_bounded(r, 691, kReducedSmall, kReducedSmall);
  EXPECT_EQ(plus.solutions, (std::vector<ThuePoint>{{1, 2}}));
  ThueResult minus = solve_bounded(r, -691, kReducedSmall, kReducedSmall);
  EXPECT_EQ(minus.solutions, (std::vector<ThuePoint>{{-1, -2}}));
  EXPECT_EQ(lift_reduced(plus.solutions[0]), ThuePoint(1, 4));
  EXPECT_EQ(evaluate(build_form(345), 1, 4), 691);
}

namespace {

void check_table(const std::string& file, unsigned long bound) {
  auto t = load(file);
  for (const auto& row : t.at("rows")) {
    const unsigned long d = row.at("d").get<unsigned long>();
    const long ell = row.at("ell").get<long>();
    const std::string sign = row.at("sign").get<std::string>();
    ThueForm f = build_form((d - 1) / 2);
    std::vector<std::pair<long, int>> cases;
    if (sign == "pm")
      cases = {{ell, 1}, {-ell, -1}};
    else
      cases = {{sign == "+" ? ell : -ell, 1}};
    for (auto [D, flip] : cases) {
      auto want = pts(row.at("solutions"), flip);
      for (const auto& [x, y] : want) EXPECT_EQ(evaluate(f, x, y), D) << d << " " << D;
      ThueResult r = solve_bounded(f, D, bound, bound);
      EXPECT_EQ(r.solutions, want) << "d=" << d << " D=" << D;
    }
  }
}

}  // namespace

TEST(Tables, Table4WithinBound) { check_table("thue_table4.json", 100); }
TEST(Tables, Table5WithinBound) { check_table("thue_table5.json", 100); }
