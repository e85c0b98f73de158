#include <gtest/gtest.h>

#include <map>

#include "taulehmer/curves.hpp"
#include "taulehmer/errors.hpp"

using namespace tl;

namespace {

std::vector<CurvePoint> V(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<CurvePoint> out;
  for (auto [x, y] : xs) out.emplace_back(Int(x), Int(y));
  return out;
}

// y^2 = a x^e + c by walking y upward; independent of the square test.
std::vector<CurvePoint> naive(const CurveSpec& s, long x_max) {
  std::vector<CurvePoint> out;
  for (long x = -x_max; x <= x_max; ++x) {
    Int v = 1;
    for (unsigned long i = 0; i < s.e; ++i) v *= x;
    v = s.a * v + s.c;
    for (Int y = 0; y * y <= v; ++y)
      if (y * y == v) out.emplace_back(Int(x), y);
  }
  return out;
}

const TableCell* find(const TableReport& r, const std::string& table, const std::string& name) {
  for (const auto& c : r.cells)
    if (c.table == table && c.curve.name() == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Curves, Equations) {
  CurveSpec c = curve_C(2, 17, 1);
  EXPECT_EQ(c.rhs(5234), Int(378661) * 378661);
  EXPECT_EQ(c.name(), "C+_{2,17}");
  CurveSpec h = curve_H(3, 11, 1);
  EXPECT_EQ(h.rhs(7), 767 * 767);
  EXPECT_EQ(curve_B("B4", 2, 5, 1).rhs(3), 49);   // (A, B) = (7, 27)
  EXPECT_EQ(curve_B("B1", 2, 5, -1).rhs(7), 100);  // (A, B) = (10, 343)
  EXPECT_THROW(curve_B("B7", 2, 1, 1), DomainError);
  EXPECT_THROW(curve_C(2, 3, 0), DomainError);
}

TEST(Curves, SearchExamples) {
  EXPECT_EQ(search_points(curve_C(2, 3, 1), 100).points, V({{1, 2}}));
  EXPECT_EQ(search_points(curve_C(4, 7, -1), 100).points, V({{2, 11}}));
  EXPECT_EQ(search_points(curve_H(3, 11, 1), 100).points, V({{-7, 767}, {-1, 7}, {1, 7}, {7, 767}}));
  EXPECT_THROW(search_points(curve_C(2, 3, 1), 0), DomainError);
}

TEST(Curves, SearchMatchesNaive) {
  for (const CurveSpec& s : {curve_C(2, 17, 1), curve_C(2, 7, -1), curve_C(3, 37, 1), curve_H(3, 41, -1),
                             curve_B("B3", 2, 0, 1), curve_B("B6", 2, 3, -1), curve_C(1, 5, 1)}) {
    EXPECT_EQ(search_points(s, 60).points, naive(s, 60)) << s.name();
  }
}

TEST(Curves, SubstitutionClosure) {
  for (const CurveSpec& s : {curve_C(2, 73, 1), curve_C(3, 19, -1), curve_H(7, 31, -1)}) {
    for (const auto& [x, y] : search_points(s, 20000).points) {
      Int v;
      mpz_pow_ui(v.get_mpz_t(), x.get_mpz_t(), s.e);
      EXPECT_EQ(y * y, s.a * v + s.c);
      EXPECT_GE(y, 0);
    }
  }
}

TEST(Curves, WorkersDeterministic) {
  CurveSpec s = curve_C(2, 17, 1);
  auto a = search_points(s, 6000, 1), b = search_points(s, 6000, 3);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.tested, b.tested);
}

TEST(Tables, SubstitutionOnly) {
  TableReport r = verify_tables(0);
  EXPECT_TRUE(r.ok());
  for (const auto& c : r.cells) EXPECT_TRUE(c.found.empty());
  EXPECT_EQ(r.cells.size(), 24u * 5 * 2 + 10 * 8);
  EXPECT_EQ(r.count(CellStatus::Unknown), 2u);
}

TEST(Tables, BoundedSearch) {
  TableReport r = verify_tables(6000, 2);
  // Three genuine points are absent from the printed C+ table.
  std::map<std::string, CurvePoint> extra{
      {"C+_{3,17}", {2, 7}}, {"C+_{7,89}", {2, 91}}, {"C+_{2,97}", {18, 77}}};
  for (const auto& c : r.cells) {
    EXPECT_TRUE(c.bad_listed.empty() && c.missed.empty()) << c.curve.name();
    auto it = extra.find(c.curve.name());
    if (c.table == "6" && it != extra.end())
      EXPECT_EQ(c.unlisted, std::vector<CurvePoint>{it->second});
    else
      EXPECT_FALSE(c.discrepancy()) << c.table << " " << c.curve.name();
  }
  EXPECT_FALSE(r.ok());
  const TableCell* c17 = find(r, "6", "C+_{2,17}");
  ASSERT_NE(c17, nullptr);
  EXPECT_EQ(c17->found.size(), 8u);
  EXPECT_EQ(c17->found.back(), CurvePoint(5234, 378661));
  for (unsigned long d : {2ul, 3ul, 4ul, 6ul, 7ul}) {
    const TableCell* c = find(r, "7", "C-_{" + std::to_string(d) + ",3}");
    ASSERT_NE(c, nullptr);
    EXPECT_TRUE(c->found.empty());
  }
  const TableCell* open1 = find(r, "8", "H+_{7,71}");
  const TableCell* open2 = find(r, "8", "H-_{13,89}");
  ASSERT_TRUE(open1 && open2);
  EXPECT_EQ(open1->status, CellStatus::Unknown);
  EXPECT_EQ(open2->status, CellStatus::Unknown);
  EXPECT_EQ(find(r, "8", "H+_{5,89}")->status, CellStatus::Conditional);
}

TEST(LucasPell, Streams) {
  auto V1 = [](std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  EXPECT_EQ(lucas_pell_points(1, 80), V1({1, 4, 11, 29, 76}));
  EXPECT_EQ(lucas_pell_points(-1, 50), V1({2, 3, 7, 18, 47}));
  EXPECT_EQ(lucas_pell_points(1, 1), V1({1}));
  EXPECT_TRUE(lucas_pell_points(-1, 1).empty());
}

TEST(LucasPell, UnionIsLucasSequence) {
  const unsigned long bound = 1000000;
  std::vector<Int> lucas{2, 1};
  while (lucas.back() + lucas[lucas.size() - 2] <= bound) lucas.push_back(lucas.back() + lucas[lucas.size() - 2]);
  std::sort(lucas.begin(), lucas.end());
  auto a = lucas_pell_points(1, bound), b = lucas_pell_points(-1, bound);
  std::vector<Int> u(a);
  u.insert(u.end(), b.begin(), b.end());
  std::sort(u.begin(), u.end());
  EXPECT_EQ(u, lucas);
  // only perfect powers: 1 and 4
  std::vector<Int> powers;
  for (const auto& L : u)
    for (unsigned long e = 2; e <= 20; ++e) {
      Int r = iroot_floor(L, e);
      Int p;
      mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), e);
      if (p == L) {
        powers.push_back(L);
        break;
      }
    }
  EXPECT_EQ(powers, (std::vector<Int>{1, 4}));
}
