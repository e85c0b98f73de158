#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taulehmer/arith.hpp"
#include "taulehmer/curves.hpp"
#include "taulehmer/newform.hpp"
#include "taulehmer/thue.hpp"

namespace tl {

// n > 1 with |a_f(n)| = 1 lie in this set; contains 1 and possibly 4.
std::set<unsigned long> unit_set(const NewformSpec& spec);

enum class ConditionKind { CurveC, CurveH, Thue };
const char* to_string(ConditionKind k);

// a_f(p^(d-1)) = target forces an integer point on one curve or Thue equation.
struct DiophantineCondition {
  Int target;  // sign * ell^m
  unsigned long ell = 0;
  unsigned long m = 0;
  int sign = 1;
  unsigned long d = 0;
  ConditionKind kind = ConditionKind::CurveC;
  std::optional<CurveSpec> curve;  // C: Y^2 = X^(2k-1) + target, H: Y^2 = 5X^(2(2k-1)) + 4 target
  std::optional<ThueForm> reduced;  // F_{d-1}(X, Y) = R_d(X, Y - 2X)
  std::string equation;
};

std::vector<DiophantineCondition> enumerate_conditions(const NewformSpec& spec, unsigned long ell, unsigned long m,
                                                       int sign);

// m_ell(p) = min n >= 1 with ell | tau(p^n), from the closed-form congruences.
unsigned long ramanujan_filter(unsigned long ell, unsigned long p);
// Values m_ell(p) takes over all primes p.
std::set<unsigned long> ramanujan_rank_values(unsigned long ell);

struct SearchBounds {
  unsigned long curve_x_max = kCurveXMax;
  unsigned long thue_x_small = kThueSmall;
  unsigned long thue_x_mid = kThueMid;
  unsigned workers = 1;
};

// Reduced forms of degree above this start the exhaustive part at |X| <= 4;
// the convergent step covers the rest up to thue_x_mid.
inline constexpr unsigned long kLargeThueDegree = 100;

struct Hit {
  Int x, y;           // the point on the condition's equation
  Int p;
  Int coefficient;    // the a_f(p) the point encodes, up to sign
  std::vector<Int> n;  // m0 * p^(d-1) for m0 in the unit set
  std::optional<bool> realized;  // true when a_f(p) is known and matches
};

struct Rejected {
  Int x, y;
  std::string reason;
};

enum class VerdictStatus { NoHitWithinBounds, Hits, ExcludedByCongruence };
const char* to_string(VerdictStatus s);

struct ConditionVerdict {
  DiophantineCondition condition;
  VerdictStatus status = VerdictStatus::NoHitWithinBounds;
  std::vector<Hit> hits;
  std::vector<Rejected> rejected;
  std::vector<std::string> provenance;
  bool conditional = false;  // relies on a GRH-conditional fixture cell
  bool open_cell = false;    // the fixture cell is marked unknown
  std::optional<ThueCertificate> thue_certificate;
  unsigned long curve_x_max = 0;
  std::string congruence_note;
};

enum class AdmissibilityStatus { ExcludedWithinBounds, CandidatesFound };
const char* to_string(AdmissibilityStatus s);

struct AdmissibilityReport {
  Int target;
  unsigned long ell = 0;
  unsigned long m = 0;
  int sign = 1;
  SearchBounds bounds;
  std::set<unsigned long> units;
  std::vector<ConditionVerdict> conditions;
  AdmissibilityStatus status = AdmissibilityStatus::ExcludedWithinBounds;
  bool conditional = false;
};

AdmissibilityReport check_admissibility(const NewformSpec& spec, unsigned long ell, unsigned long m, int sign,
                                        const SearchBounds& bounds = {});

// a_f(n) = +-1 for n > 1: the unit set plus the defect curves Y^2 = X^(2k-1) +- 3.
AdmissibilityReport check_unit_target(const NewformSpec& spec, int sign, const SearchBounds& bounds = {});

unsigned long omega_lower_bound(const NewformSpec& spec, const Int& n);

struct SignedPrimePower {
  int sign = 1;
  Int ell;
  unsigned long m = 0;
  Int value() const;
  bool operator<(const SignedPrimePower& o) const;
  bool operator==(const SignedPrimePower& o) const;
};

// Each entry is one way to write alpha as a product of coefficients at
// distinct primes, every coefficient a signed odd prime power.
using SubProblem = std::vector<SignedPrimePower>;
std::vector<SubProblem> decompose_odd_target(const NewformSpec& spec, const Int& alpha);

// Exact checks of the three criterion identities at p for exponents up to max_m.
struct IdentityCheck {
  Int p;
  bool square_ok = false;   // a(p^2) = a(p)^2 - B
  bool fourth_ok = false;   // a(p^4) formula and 5B^2 + 4a(p^4) = (2a^2 - 3B)^2
  bool thue_ok = false;     // F_{2j}(B, a^2) = a(p^{2j}), j <= max_m
  bool ok() const { return square_ok && fourth_ok && thue_ok; }
};
IdentityCheck check_criterion_identities(const NewformSpec& spec, const Int& p, unsigned long max_m);

// Verdicts for tau(n), n > 1, over the targets +-1, +-3, +-5, +-7, +-13,
// +-17, -19, +-23, +-37, +-691.
std::vector<AdmissibilityReport> reproduce_tau_exclusions(const SearchBounds& bounds = {});

}  // namespace tl
