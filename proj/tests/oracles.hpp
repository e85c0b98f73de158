#pragma once

// Independent reference implementations used to freeze expected values.
// Deliberately naive: slow, obvious, and sharing no code with the library.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline std::map<mpz_class, unsigned long> trial_factor(mpz_class n) {
  std::map<mpz_class, unsigned long> out;
  if (n < 0) n = -n;
  for (mpz_class d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out[d] += 1;
      n /= d;
    }
  if (n > 1) out[n] += 1;
  return out;
}

// tau(1..bound) by multiplying out (1 - q^k) twenty-four times per factor.
inline std::vector<mpz_class> tau_by_product(unsigned long bound) {
  std::vector<mpz_class> s(bound, 0);
  s[0] = 1;  // series for prod (1-q^k)^24, index i <-> q^i
  for (unsigned long k = 1; k < bound; ++k)
    for (int rep = 0; rep < 24; ++rep)
      for (unsigned long i = bound - 1; i >= k; --i) s[i] -= s[i - k];
  return s;  // tau(n) = s[n-1]
}

inline mpz_class sigma_naive(unsigned long nu, unsigned long n) {
  mpz_class s = 0, t;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) {
      mpz_ui_pow_ui(t.get_mpz_t(), d, nu);
      s += t;
    }
  return s;
}

inline std::vector<mpz_class> lucas_naive(long A, long B, unsigned long count) {
  std::vector<mpz_class> u{0, 1};
  for (unsigned long n = 2; n <= count; ++n) u.push_back(A * u[n - 1] - B * u[n - 2]);
  return u;  // u[n] for n = 0..count
}

// Coefficients of F_n from 1/(1 - sqrt(Y) T + X T^2), tracked in s = sqrt(Y):
// F_n = s F_{n-1} - X F_{n-2}. Key (i, j) means s^i X^j.
inline std::map<std::pair<int, int>, mpz_class> genfunction_term(int n) {
  using P = std::map<std::pair<int, int>, mpz_class>;
  P prev{{{0, 0}, 1}}, cur{{{1, 0}, 1}};
  if (n == 0) return prev;
  for (int k = 2; k <= n; ++k) {
    P next;
    for (auto& [e, c] : cur) next[{e.first + 1, e.second}] += c;
    for (auto& [e, c] : prev) next[{e.first, e.second + 1}] -= c;
    prev = cur;
    cur = next;
  }
  P out;
  for (auto& [e, c] : cur)
    if (c != 0) out[e] = c;
  return out;
}

}  // namespace oracle
