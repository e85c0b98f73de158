#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tl {

using Int = mpz_class;
using Rat = mpq_class;

struct PrimePower {
  Int prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

// Sorted ascending by prime.
using Factorization = std::vector<PrimePower>;

// Proven primality: deterministic Miller-Rabin below 3.3e24, a Pocklington
// certificate built from a full factorization of n-1 above that.
bool is_prime(const Int& n);

Factorization factor(const Int& n);
Int unfactor(const Factorization& f);

unsigned long omega(const Factorization& f);      // distinct primes
unsigned long big_omega(const Factorization& f);  // with multiplicity
unsigned long ord(const Int& p, const Int& n);    // p-adic valuation, n != 0

Int sigma(unsigned long nu, const Int& n);
Int sigma(unsigned long nu, const Factorization& f);

std::optional<Int> is_perfect_square(const Int& n);
std::optional<Int> prime_power_root(const Int& n, unsigned long e);

// Integer polynomial, coefficient i multiplies t^i.
using Poly = std::vector<Int>;

Int poly_eval(const Poly& p, const Int& t);
// Sign of p at num / 2^k, evaluated exactly.
int poly_sign_dyadic(const Poly& p, const Int& num, unsigned long k);
int poly_sign(const Poly& p, const Rat& t);

// A real root of `poly`, the unique one in the closed interval [lo, hi].
// Endpoints are dyadic rationals lo = lo_num / 2^k, hi = hi_num / 2^k.
struct RealAlgebraic {
  Poly poly;
  Int lo_num;
  Int hi_num;
  unsigned long k = 0;

  Rat lo() const;
  Rat hi() const;
  void bisect();  // halves the interval, keeping the root inside
  double approx() const;
};

// Builds an isolating interval around an approximation, widening by powers
// of two until the sign check passes. Throws if no sign change is found.
RealAlgebraic isolate_near(const Poly& poly, double approx, double radius);

struct Convergent {
  Int p;
  Int q;
  bool operator==(const Convergent&) const = default;
};

std::vector<Convergent> continued_fraction_convergents(RealAlgebraic x,
                                                       const Int& qmax);

// Floor of the exact integer root, for n >= 0.
Int iroot_floor(const Int& n, unsigned long e);

}  // namespace tl
