#pragma once

#include <string>
#include <vector>

#include "taulehmer/arith.hpp"

namespace tl {

// Closed rational interval [lo, hi].
struct Enclosure {
  Rat lo, hi;
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  double approx() const;  // midpoint
};

// value = a*m + b*sqrt(m) + c with b >= 0
struct EffectiveBound {
  std::string family;  // "T", "U", "M"
  unsigned long ell = 0;
  unsigned long m = 0;
  int eps = 1;
  Rat a, b, c;
  std::string display;  // the case formula in m
  std::string source;   // "case table" or "footnote"

  Enclosure value(unsigned long bits = 128) const;
  bool exceeded_by(const Int& n) const;  // n > value, exact
};

// Sign of x - y, exact; both must share m.
int compare(const EffectiveBound& x, const EffectiveBound& y);

// C(r, d) = 18 (r+1)! r^(r+1) (32d)^(r+2) log(2rd)
struct BWConstant {
  unsigned long r = 0, d = 0;
  Int integer_part;
  Int log_argument;  // 2rd
  Enclosure log_factor;
  Enclosure value;
};
BWConstant bw_constant(unsigned long r, unsigned long d, unsigned long bits = 128);

// X^2 + eps ell^m = Y^n, ell in {3, 5}
EffectiveBound threshold_T(int eps, unsigned long ell, unsigned long m);
// X^2 + eps 4 5^m = Y^n
EffectiveBound threshold_U(int eps, unsigned long m);
// sign ell^m is no coefficient of weight 2k above this, ell in {3, 5}
EffectiveBound weight_bound_M(int sign, unsigned long ell, unsigned long m);
// M^-(3, m) before rounding: 1.6m + (9.4 sqrt(m) + 1.4) 10^31
EffectiveBound weight_bound_M_footnote(unsigned long m);

// Other ell need Thue bounds for d >= 7, which are not computed here.
struct GeneralWeightBound {
  unsigned long ell = 0, m = 0;
  int sign = 1;
  bool computed = false;
  std::string note;
};
GeneralWeightBound weight_bound_general(int sign, unsigned long ell, unsigned long m);

enum class LambdaCase { T, U };

struct LambdaCheck {
  LambdaCase kind = LambdaCase::T;
  Rat constant;      // 2.78 or 5.56
  Enclosure bound;   // constant * sqrt(ell^m) / |Y|^(n/2)
  Enclosure pi;
  bool below_pi = false;
};

// Throws PreconditionError unless |Y| >= 2 and |Y|^n > 16 ell^m (T) or 64 5^m (U).
LambdaCheck lambda_bound_check(unsigned long ell, unsigned long m, unsigned long n, const Int& Y,
                               LambdaCase kind = LambdaCase::T);

struct PowerPoint {
  Int x, y;
  unsigned long n = 0;
  bool operator==(const PowerPoint&) const = default;
};

struct ScanLimits {
  unsigned long x_max = 1000;
  unsigned long y_max = 1000;
  unsigned long n_max = 20;
};

// X^2 + D = Y^n with 0 <= X <= x_max, 2 <= |Y| <= y_max, 3 <= n <= n_max.
std::vector<PowerPoint> power_scan(const Int& D, const ScanLimits& lim);

struct ExclusionStatement {
  std::string family;  // "T" or "U"
  Int D;               // X^2 + D = Y^n
  EffectiveBound threshold;
  std::string equation;
  std::string statement;
  ScanLimits limits;
  std::vector<PowerPoint> small_solutions;
};

struct ExcludedWeightRange {
  unsigned long ell = 0, m = 0;
  int eps = 1;
  std::vector<ExclusionStatement> equations;  // T, and U for ell = 5
  Int coefficient;                             // -eps ell^m
  EffectiveBound weight_bound;                 // M^(-eps)(ell, m)
  std::string weight_statement;
};

// eps is the sign in X^2 + eps ell^m = Y^n.
ExcludedWeightRange excluded_weight_range(unsigned long ell, unsigned long m, int eps, const ScanLimits& lim = {});

}  // namespace tl
