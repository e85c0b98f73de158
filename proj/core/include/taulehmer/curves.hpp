#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taulehmer/arith.hpp"

namespace tl {

// Y^2 = a X^e + c
struct CurveSpec {
  std::string family;  // C, H, B1..B6
  unsigned long d = 0;  // d for C and H, k for the B families
  int eps = 1;
  Int ell;              // C and H
  unsigned long r = 0;  // B1, B4, B6
  Int a;
  unsigned long e = 0;
  Int c;

  std::string name() const;
  Int rhs(const Int& x) const;
};

CurveSpec curve_C(unsigned long d, const Int& ell, int eps);  // Y^2 = X^(2d-1) + eps ell
CurveSpec curve_H(unsigned long d, const Int& ell, int eps);  // Y^2 = 5 X^(2d) + 4 eps ell
// B families with exponent 2k-1. B4 uses the constant (-2)^r, the reading under
// which the u6 values and constraints of its table row hold.
CurveSpec curve_B(const std::string& family, unsigned long k, unsigned long r, int eps);

using CurvePoint = std::pair<Int, Int>;  // (x, y) with y >= 0

struct CurveSearch {
  std::vector<CurvePoint> points;  // sorted
  unsigned long x_max = 0;
  unsigned long tested = 0;
};

// Every integer point with |x| <= x_max.
CurveSearch search_points(const CurveSpec& spec, unsigned long x_max, unsigned workers = 1);

inline constexpr unsigned long kCurveXMax = 100000;

enum class CellStatus { Verified, Conditional, Unknown };
const char* to_string(CellStatus s);

struct TableCell {
  std::string table;  // "6", "7", "8"
  CurveSpec curve;
  CellStatus status = CellStatus::Verified;
  std::vector<CurvePoint> listed;    // as printed; table 8 lists (|x|, |y|)
  std::vector<CurvePoint> found;     // search result in the same normalisation
  std::vector<CurvePoint> bad_listed;  // listed points that fail the equation
  std::vector<CurvePoint> unlisted;  // found within the bound, absent from the table
  std::vector<CurvePoint> missed;    // listed, |x| <= x_max, not found
  bool discrepancy() const;
};

struct TableReport {
  unsigned long x_max = 0;
  std::vector<TableCell> cells;
  bool ok() const;
  std::size_t count(CellStatus s) const;
};

// x_max = 0 performs only the substitution checks.
TableReport verify_tables(unsigned long x_max = kCurveXMax, unsigned workers = 1);

// Positive X <= x_max with X^2 + 4 sign = 5 Y^2 solvable: L_1, L_3, ... for
// sign = +1 and L_0, L_2, ... for sign = -1.
std::vector<Int> lucas_pell_points(int sign, unsigned long x_max);

}  // namespace tl
