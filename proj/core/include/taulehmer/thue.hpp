#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taulehmer/arith.hpp"

namespace tl {

// A real root of F(1, t) with a certified isolating interval. Integer roots
// (t = 1 divides F_{2m} when 3 | 2m+1) are held as a point interval.
struct ThueRoot {
  RealAlgebraic enclosure;
  bool rational = false;
};

enum class ThueKind { F, Reduced };

// Homogeneous form of degree m, monic in Y.
// coeffs[i] multiplies X^(m-i) Y^i, so coeffs is also F(1, t) low to high.
struct ThueForm {
  ThueKind kind = ThueKind::F;
  unsigned long index = 0;  // 2m for F_{2m}, p for the reduced form at p
  unsigned long m = 0;
  Poly coeffs;
  std::vector<ThueRoot> roots;

  std::string name() const;
};

// F_{2m}; roots 4cos^2(pi k/(2m+1)).
ThueForm build_form(unsigned long m);
// Reduced form at the odd prime p; roots 2cos(2 pi k/p).
// F_{p-1}(X, Y) = R_p(X, Y - 2X).
ThueForm build_reduced_form(unsigned long p);

Int evaluate(const ThueForm& form, const Int& x, const Int& y);

using ThuePoint = std::pair<Int, Int>;

struct ThueCertificate {
  unsigned long x_small = 0;
  unsigned long x_mid = 0;
  // Every |x| <= exhaustive_bound was scanned in full.
  unsigned long exhaustive_bound = 0;
  // Beyond gap_threshold every solution has y/x a convergent of a root.
  // Absent when no finite threshold exists (m <= 2 and the gap test fails).
  std::optional<Int> gap_threshold;
  bool midsize_by_convergents = false;
  std::vector<std::size_t> convergents_per_root;  // zero for rational roots
  unsigned long candidates_tested = 0;
};

struct ThueResult {
  std::vector<ThuePoint> solutions;  // sorted by (x, y)
  ThueCertificate certificate;
};

// All solutions of F(x, y) = rhs with |x| <= x_mid, complete within that
// range. workers > 1 splits the x range; the output does not depend on it.
ThueResult solve_bounded(const ThueForm& form, const Int& rhs, unsigned long x_small, unsigned long x_mid,
                         unsigned workers = 1);

// Default search bounds.
inline constexpr unsigned long kThueSmall = 1000;
inline constexpr unsigned long kThueMid = 10000;

// Beyond |X| > e^8 the reduced equations R_p = +-p have no solutions for
// 31 <= p <= 787 (Bilu, Hanrot, Voutier); floor(e^8) = 2980.
inline constexpr unsigned long kReducedExternalBound = 2980;
inline constexpr unsigned long kReducedSmall = 4;

// (x, y) on R_p = D maps to (x, y + 2x) on F_{p-1} = D.
ThuePoint lift_reduced(const ThuePoint& pt);

}  // namespace tl
