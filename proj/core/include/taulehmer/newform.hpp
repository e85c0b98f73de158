#pragma once

#include <map>
#include <string>
#include <vector>

#include "taulehmer/arith.hpp"

namespace tl {

// q-expansion truncated at `bound`; coefficient n sits at index n - 1.
struct QSeries {
  std::vector<Int> coeffs;
  unsigned long bound = 0;

  const Int& at(unsigned long n) const;
};

QSeries delta_expansion(unsigned long bound);

struct NewformSpec {
  std::string name;
  unsigned long weight = 0;  // 2k
  Int level = 1;
  std::map<unsigned long, Int> ap;         // a(p) for primes p not dividing N
  std::map<unsigned long, int> bad_signs;  // p exactly dividing N -> +1 / -1
  bool trivial_mod2 = false;

  unsigned long k() const { return weight / 2; }
  Int hecke_b(const Int& p) const;  // p^(2k-1)
  bool is_delta() const { return name == "delta"; }
};

// Checks weight, level, Deligne bound and (if flagged) parity of a(p).
void validate(const NewformSpec& spec);

// Delta with a(p) tabulated for p <= bound.
NewformSpec make_delta_spec(unsigned long ap_bound);
const NewformSpec& delta_spec();  // ap_bound = kDeltaApBound, built once
constexpr unsigned long kDeltaApBound = 10000;

NewformSpec parse_newform_spec(const std::string& json_text);
NewformSpec load_newform_spec(const std::string& path);

Int coeff_prime_power(const NewformSpec& spec, const Int& p, unsigned long m);
Int coeff(const NewformSpec& spec, const Int& n);

bool deligne_ok(const Int& a, const Int& p, unsigned long weight);

struct ParityReport {
  std::vector<unsigned long> odd_eigenvalue_primes;  // p not dividing 2N with a(p) odd
  bool odd_square_checked = false;
  unsigned long series_bound = 0;
  std::vector<unsigned long> odd_indices;
  std::vector<unsigned long> odd_square_mismatches;

  bool ok() const { return odd_eigenvalue_primes.empty() && odd_square_mismatches.empty(); }
};

ParityReport parity_check(const NewformSpec& spec, unsigned long series_bound = 100);

}  // namespace tl
