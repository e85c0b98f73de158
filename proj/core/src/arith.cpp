#include "taulehmer/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "taulehmer/errors.hpp"

namespace tl {

namespace {

constexpr unsigned long kTrialLimit = 1000000;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Jaeschke / Sorenson-Webster: the first 13 prime bases are deterministic
// below this bound.
const Int& mr_bound() {
  static const Int b("3317044064679887385961981");
  return b;
}

bool strong_probable_prime(const Int& n, unsigned long base) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int a = base;
  a %= n;
  if (a == 0) return true;
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

const unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool pocklington(const Int& n) {
  Factorization f = factor(n - 1);
  Int nm1 = n - 1;
  for (const auto& pe : f) {
    Int e = nm1 / pe.prime;
    bool found = false;
    for (unsigned long a = 2; a < 2000 && !found; ++a) {
      Int base = a, t;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), nm1.get_mpz_t(), n.get_mpz_t());
      if (t != 1) return false;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
      Int g;
      t -= 1;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      if (g == 1) found = true;
    }
    if (!found) throw DomainError("primality certificate search exhausted");
  }
  return true;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 gcd64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's variant on machine words.
u64 rho64(u64 n, u64 c) {
  u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
  const u64 m = 128;
  u64 r = 1;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = gcd64(q, n);
      k += m;
    } while (k < r && g == 1);
    r <<= 1;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

Int rho_big(const Int& n, unsigned long c) {
  Int y = 2, x = 2, q = 1, g = 1, ys = 2, t;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](Int& v) {
    v = v * v + c;
    v %= n;
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        t = x - y;
        q = q * t % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    } while (k < r && g == 1);
    r <<= 1;
  } while (g == 1);
  if (g == n) {
    do {
      f(ys);
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

Int find_divisor(const Int& n) {
  for (unsigned long e = 2; mpz_sizeinbase(n.get_mpz_t(), 2) / e >= 20; ++e) {
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) != 0) return r;
  }
  for (unsigned long c = 1;; ++c) {
    Int d;
    if (mpz_fits_ulong_p(n.get_mpz_t()) && n < Int("9223372036854775807")) {
      d = static_cast<unsigned long>(rho64(mpz_get_ui(n.get_mpz_t()), c));
    } else {
      d = rho_big(n, c);
    }
    if (d != 1 && d != n) return d;
  }
}

void split(const Int& n, std::map<Int, unsigned long>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  Int d = find_divisor(n);
  split(d, acc);
  split(n / d, acc);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 1849) return true;
  for (unsigned long b : kBases)
    if (!strong_probable_prime(n, b)) return false;
  if (n < mr_bound()) return true;
  return pocklington(n);
}

Factorization factor(const Int& n_in) {
  if (n_in == 0) throw DomainError("factor: n must be nonzero");
  Int n = abs(n_in);
  Factorization out;
  for (unsigned long p : small_primes()) {
    if (Int(p) * p > n) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out.push_back({Int(p), e});
  }
  if (n == 1) return out;
  const unsigned long last = small_primes().back();
  if (n <= Int(last) * last) {
    out.push_back({n, 1});
    return out;
  }
  std::map<Int, unsigned long> acc;
  split(n, acc);
  for (auto& [p, e] : acc) out.push_back({p, e});
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

Int unfactor(const Factorization& f) {
  Int r = 1, t;
  for (const auto& pe : f) {
    mpz_pow_ui(t.get_mpz_t(), pe.prime.get_mpz_t(), pe.exponent);
    r *= t;
  }
  return r;
}

unsigned long omega(const Factorization& f) { return f.size(); }

unsigned long big_omega(const Factorization& f) {
  unsigned long s = 0;
  for (const auto& pe : f) s += pe.exponent;
  return s;
}

unsigned long ord(const Int& p, const Int& n) {
  if (n == 0) throw DomainError("ord: n must be nonzero");
  Int r;
  return mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Int sigma(unsigned long nu, const Factorization& f) {
  Int r = 1;
  for (const auto& pe : f) {
    Int pn, term = 1, s = 1;
    mpz_pow_ui(pn.get_mpz_t(), pe.prime.get_mpz_t(), nu);
    for (unsigned long j = 1; j <= pe.exponent; ++j) {
      term *= pn;
      s += term;
    }
    r *= s;
  }
  return r;
}

Int sigma(unsigned long nu, const Int& n) {
  if (n < 1) throw DomainError("sigma: n must be positive");
  return sigma(nu, factor(n));
}

std::optional<Int> is_perfect_square(const Int& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Int> prime_power_root(const Int& n, unsigned long e) {
  if (n < 2 || e == 0) return std::nullopt;
  Int r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) == 0) return std::nullopt;
  if (!is_prime(r)) return std::nullopt;
  return r;
}

Int iroot_floor(const Int& n, unsigned long e) {
  if (n < 0) throw DomainError("iroot_floor: n must be nonnegative");
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), e);
  return r;
}

Int poly_eval(const Poly& p, const Int& t) {
  Int acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int poly_sign_dyadic(const Poly& p, const Int& num, unsigned long k) {
  if (p.empty()) return 0;
  const std::size_t d = p.size() - 1;
  Int acc = p[d], t;
  for (std::size_t i = d; i-- > 0;) {
    acc *= num;
    mpz_mul_2exp(t.get_mpz_t(), p[i].get_mpz_t(), k * (d - i));
    acc += t;
  }
  return sgn(acc);
}

int poly_sign(const Poly& p, const Rat& t) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + Rat(*it);
  return sgn(acc);
}

Rat RealAlgebraic::lo() const {
  Rat r(lo_num);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
  return r;
}

Rat RealAlgebraic::hi() const {
  Rat r(hi_num);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
  return r;
}

double RealAlgebraic::approx() const { return Rat((lo() + hi()) / 2).get_d(); }

void RealAlgebraic::bisect() {
  Int mid = lo_num + hi_num;
  int sl = poly_sign_dyadic(poly, lo_num, k);
  int sm = poly_sign_dyadic(poly, mid, k + 1);
  if (sm == 0) throw DomainError("real algebraic number is rational");
  lo_num *= 2;
  hi_num *= 2;
  ++k;
  if (sl == sm)
    lo_num = mid;
  else
    hi_num = mid;
}

RealAlgebraic isolate_near(const Poly& poly, double approx, double radius) {
  for (int attempt = 0; attempt < 40; ++attempt, radius *= 2) {
    int k = std::max(0, static_cast<int>(std::ceil(-std::log2(radius))) + 2);
    RealAlgebraic r;
    r.poly = poly;
    r.k = static_cast<unsigned long>(k);
    mpz_set_d(r.lo_num.get_mpz_t(), std::floor(std::ldexp(approx - radius, k)));
    mpz_set_d(r.hi_num.get_mpz_t(), std::ceil(std::ldexp(approx + radius, k)));
    int sl = poly_sign_dyadic(poly, r.lo_num, r.k);
    int sh = poly_sign_dyadic(poly, r.hi_num, r.k);
    if (sl != 0 && sh != 0 && sl != sh) return r;
  }
  throw DomainError("isolate_near: no sign change near approximation");
}

namespace {

// Interval [lo, hi] with the root strictly inside; returns the common prefix
// of the continued fraction expansions of lo and hi.
std::vector<Int> certified_prefix(Rat lo, Rat hi) {
  std::vector<Int> out;
  for (;;) {
    Int a, b;
    mpz_fdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (a != b) return out;
    out.push_back(a);
    lo -= Rat(a);
    hi -= Rat(a);
    if (lo == 0 || hi == 0) return out;
    lo = 1 / lo;
    hi = 1 / hi;
  }
}

void reject_rational_root(RealAlgebraic& x) {
  const Int lc = abs(x.poly.back());
  while (Rat(lc) * (x.hi() - x.lo()) >= 1) x.bisect();
  std::vector<Int> dens{1};
  for (const auto& pe : factor(lc)) {
    std::vector<Int> next;
    Int pk = 1;
    for (unsigned long e = 0; e <= pe.exponent; ++e, pk *= pe.prime)
      for (const auto& d : dens) next.push_back(d * pk);
    dens = next;
  }
  for (const auto& q : dens) {
    Rat lo = x.lo() * Rat(q), hi = x.hi() * Rat(q);
    Int p0, p1;
    mpz_cdiv_q(p0.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(p1.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    for (Int p = p0; p <= p1; ++p)
      if (poly_sign(x.poly, Rat(p, q)) == 0) throw DomainError("real algebraic number is rational");
  }
}

}  // namespace

std::vector<Convergent> continued_fraction_convergents(RealAlgebraic x, const Int& qmax) {
  if (qmax < 1) throw DomainError("continued_fraction_convergents: qmax must be positive");
  int sl = poly_sign_dyadic(x.poly, x.lo_num, x.k);
  int sh = poly_sign_dyadic(x.poly, x.hi_num, x.k);
  if (sl == 0 || sh == 0) throw DomainError("real algebraic number is rational");
  if (sl == sh) throw DomainError("interval does not isolate a root");
  reject_rational_root(x);

  unsigned long step = 32;
  for (;;) {
    std::vector<Int> pq = certified_prefix(x.lo(), x.hi());
    std::vector<Convergent> out;
    Int p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    bool exceeded = false;
    for (const auto& a : pq) {
      Int pn = a * p1 + p2, qn = a * q1 + q2;
      if (qn > qmax) {
        exceeded = true;
        break;
      }
      out.push_back({pn, qn});
      p2 = p1;
      p1 = pn;
      q2 = q1;
      q1 = qn;
    }
    if (exceeded) return out;
    for (unsigned long i = 0; i < step; ++i) x.bisect();
    step *= 2;
  }
}

}  // namespace tl
