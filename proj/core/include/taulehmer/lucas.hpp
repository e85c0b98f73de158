#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taulehmer/arith.hpp"

namespace tl {

struct LucasPair {
  Int A;
  Int B;
  std::optional<PrimePower> b_power;  // B = p^e when B is a prime power

  Int disc() const { return A * A - 4 * B; }
  // B an odd power of a prime and A^2 <= 4B.
  bool modularity() const;
};

// Validates gcd(A,B) = 1, A != 0, B > 0 and non-degeneracy.
LucasPair make_pair(const Int& A, const Int& B);
bool is_degenerate(const Int& A, const Int& B);

// [u_1, ..., u_count]
std::vector<Int> lucas_terms(const LucasPair& pair, unsigned long count);

std::optional<unsigned long> rank_of_apparition(const LucasPair& pair, unsigned long ell);

struct PropBRecord {
  unsigned long ell = 0;
  unsigned long rank = 0;
  bool ell_divides_disc = false;
  bool holds = false;
};

PropBRecord check_prop_b(const LucasPair& pair, unsigned long ell);

// Computed without factoring: the part of u_n coprime to disc * u_1 ... u_{n-1}
// is stripped by repeated gcds; a primitive divisor exists iff something remains.
bool has_primitive_prime_divisor(const LucasPair& pair, unsigned long n);
bool has_primitive_prime_divisor(const std::vector<Int>& terms, const Int& disc, unsigned long n);

struct DefectRecord {
  unsigned long n = 0;
  Int value;
  std::string source;  // "sporadic" or "family"
  std::string family;  // e.g. "B1", empty for sporadic rows
  int epsilon = 0;     // family sign where applicable
  unsigned long r = 0; // family exponent where applicable
  std::string row;     // fixture row label
};

std::vector<DefectRecord> classify_defects(const LucasPair& pair);

// Points (p, +-m) on the curves making up the set S of the Omega bound table.
bool in_table3_set(const Int& A, const PrimePower& b);

long sigma_hat(const Int& A, const Int& B, unsigned long m);

}  // namespace tl
