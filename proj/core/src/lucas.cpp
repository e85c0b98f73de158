#include "taulehmer/lucas.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fixture_io.hpp"
#include "taulehmer/errors.hpp"

namespace tl {

namespace {

// Exponent r with |t| = b^r, r >= 1; absent otherwise.
std::optional<unsigned long> exact_power_of(const Int& t, unsigned long b) {
  if (t == 0) return std::nullopt;
  Int a = abs(t), rest;
  unsigned long r = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), Int(b).get_mpz_t());
  if (rest != 1 || r == 0) return std::nullopt;
  return r;
}

struct FamilyHit {
  int eps = 0;
  unsigned long r = 0;
};

std::optional<FamilyHit> family_member(const std::string& family, const Int& m, const PrimePower& b) {
  Int B;
  mpz_pow_ui(B.get_mpz_t(), b.prime.get_mpz_t(), b.exponent);
  const Int m2 = m * m;
  if (family == "P") {
    if (b.exponent == 1 && B == m2 + 1) return FamilyHit{-1, 0};
    return std::nullopt;
  }
  if (family == "B1") {
    Int t = m2 - B;
    if (auto r = exact_power_of(t, 3)) return FamilyHit{sgn(t), *r};
    return std::nullopt;
  }
  if (family == "B2") {
    if (m2 - 2 * B == -1) return FamilyHit{-1, 0};
    return std::nullopt;
  }
  if (family == "B3") {
    Int t = m2 - 2 * B;
    if (t == 2 || t == -2) return FamilyHit{sgn(t), 0};
    return std::nullopt;
  }
  if (family == "B4") {
    Int t = m2 - 3 * B;
    auto r = exact_power_of(t, 2);
    if (!r) return std::nullopt;
    int expected = (*r % 2 == 0) ? 1 : -1;
    if (sgn(t) != expected) return std::nullopt;
    return FamilyHit{expected, *r};
  }
  if (family == "B5") {
    Int t = m2 - 3 * B;
    if (t == 3 || t == -3) return FamilyHit{sgn(t), 0};
    return std::nullopt;
  }
  if (family == "B6") {
    Int t = m2 - 3 * B;
    if (t == 0 || t % 3 != 0) return std::nullopt;
    Int q = t / 3;
    if (auto r = exact_power_of(q, 2)) return FamilyHit{sgn(t), *r};
    return std::nullopt;
  }
  throw DomainError("unknown Lucas family " + family);
}

Int pow_int(long base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), Int(base).get_mpz_t(), e);
  return r;
}

bool constraint_holds(const std::string& c, const Int& m, const FamilyHit& h, const PrimePower& b) {
  const Int m2 = m * m;
  if (c == "b_is_prime") return b.exponent == 1;
  if (c == "m_gt_1") return m > 1;
  if (c == "m_gt_2") return m > 2;
  if (c == "m_gt_3") return m > 3;
  if (c == "m_odd") return mpz_odd_p(m.get_mpz_t()) != 0;
  if (c == "m_even") return mpz_even_p(m.get_mpz_t()) != 0;
  if (c == "three_not_div_m") return m % 3 != 0;
  if (c == "three_div_m") return m % 3 == 0;
  if (c == "gcd_m_6_eq_1") return gcd(m, Int(6)) == 1;
  if (c == "m_mod_6_eq_3") return m % 6 == 3;
  if (c == "not_eps_r_m=1,1,2") return !(h.eps == 1 && h.r == 1 && m == 2);
  if (c == "not_eps_m=1,2") return !(h.eps == 1 && m == 2);
  if (c == "not_r_m=1,1") return !(h.r == 1 && m == 1);
  // m^2 >= 4 eps 3^(r-1), compared as 3 m^2 >= 4 eps 3^r
  if (c == "m2_ge_4eps3^(r-1)") return 3 * m2 >= 4 * h.eps * pow_int(3, h.r);
  if (c == "m2_ge_(-2)^(r+2)") return m2 >= pow_int(-2, h.r + 2);
  if (c == "m2_ge_3eps2^(r+2)") return m2 >= 3 * h.eps * pow_int(2, h.r + 2);
  throw DomainError("unknown Lucas table constraint " + c);
}

// Stated u_n for A = +m.
Int family_value(const std::string& family, const Int& m, const FamilyHit& h) {
  const Int m2 = m * m;
  if (family == "P") return -1;
  if (family == "B1") return h.eps * pow_int(3, h.r);
  if (family == "B2") return -m;
  if (family == "B3") return 2 * h.eps * m;
  if (family == "B4") {
    Int c = pow_int(-2, h.r);
    return c * m * (2 * m2 + c) / 3;
  }
  if (family == "B5") return h.eps * m * (2 * m2 + 3 * h.eps);
  if (family == "B6") return pow_int(2, h.r + 1) * h.eps * m * (m2 + 3 * h.eps * pow_int(2, h.r - 1));
  throw DomainError("unknown Lucas family " + family);
}

}  // namespace

bool is_degenerate(const Int& A, const Int& B) {
  const Int a2 = A * A;
  for (int c = 0; c <= 4; ++c)
    if (a2 == c * B) return true;
  return false;
}

bool LucasPair::modularity() const {
  return b_power && b_power->exponent % 2 == 1 && A * A <= 4 * B;
}

LucasPair make_pair(const Int& A, const Int& B) {
  if (A == 0) throw DomainError("Lucas pair: A must be nonzero");
  if (B <= 0) throw DomainError("Lucas pair: B must be positive");
  if (gcd(A, B) != 1) throw DomainError("Lucas pair: gcd(A, B) must be 1");
  if (is_degenerate(A, B)) throw DomainError("Lucas pair: alpha/beta is a root of unity");
  LucasPair p{A, B, std::nullopt};
  if (B > 1) {
    Factorization f = factor(B);
    if (f.size() == 1) p.b_power = f.front();
  }
  return p;
}

std::vector<Int> lucas_terms(const LucasPair& pair, unsigned long count) {
  std::vector<Int> u;
  if (count == 0) return u;
  u.reserve(count);
  u.push_back(1);
  if (count >= 2) u.push_back(pair.A);
  for (unsigned long n = 3; n <= count; ++n) u.push_back(pair.A * u[n - 2] - pair.B * u[n - 3]);
  return u;
}

std::optional<unsigned long> rank_of_apparition(const LucasPair& pair, unsigned long ell) {
  if (ell < 3 || !is_prime(Int(ell))) throw DomainError("rank_of_apparition: ell must be an odd prime");
  if (pair.B % ell == 0) return std::nullopt;
  const Int L(ell);
  Int a = pair.A % L, b = pair.B % L;
  Int prev = 1, cur = a;
  const unsigned long cap = ell + 1;
  for (unsigned long n = 2; n <= cap; ++n) {
    if (cur % L == 0) return n;
    Int next = (a * cur - b * prev) % L;
    prev = cur;
    cur = next;
  }
  throw DomainError("rank_of_apparition: scan cap ell+1 exceeded");
}

PropBRecord check_prop_b(const LucasPair& pair, unsigned long ell) {
  auto m = rank_of_apparition(pair, ell);
  if (!m) throw DomainError("check_prop_b: ell divides B");
  if (*m <= 2) throw DomainError("check_prop_b: requires rank > 2");
  PropBRecord rec;
  rec.ell = ell;
  rec.rank = *m;
  rec.ell_divides_disc = pair.disc() % ell == 0;
  if (rec.ell_divides_disc)
    rec.holds = rec.rank == ell;
  else
    rec.holds = (ell - 1) % rec.rank == 0 || (ell + 1) % rec.rank == 0;
  return rec;
}

bool has_primitive_prime_divisor(const std::vector<Int>& u, const Int& disc, unsigned long n) {
  if (n < 2 || n > u.size()) throw DomainError("has_primitive_prime_divisor: index out of range");
  Int g = abs(u[n - 1]);
  if (g == 0) return false;
  Int M = abs(disc);
  for (unsigned long k = 1; k < n; ++k)
    if (u[k - 1] != 0) M *= abs(u[k - 1]);
  Int d;
  for (;;) {
    mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), M.get_mpz_t());
    if (d == 1) break;
    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  }
  return g > 1;
}

bool has_primitive_prime_divisor(const LucasPair& pair, unsigned long n) {
  return has_primitive_prime_divisor(lucas_terms(pair, n), pair.disc(), n);
}

std::vector<DefectRecord> classify_defects(const LucasPair& pair) {
  std::vector<DefectRecord> out;
  const Int m = abs(pair.A);
  const int a_sign = sgn(pair.A);

  const auto& t1 = detail::fixture("lucas_table1.json");
  for (const auto& row : t1.at("rows")) {
    if (Int(row.at("a").get<long>()) != m || detail::json_int(row.at("b")) != pair.B) continue;
    for (const auto& t : row.at("terms")) {
      DefectRecord d;
      d.n = t.at("n").get<unsigned long>();
      d.source = "sporadic";
      d.row = "(+-" + m.get_str() + ", " + pair.B.get_str() + ")";
      Int v(t.at("value").get<long>());
      const std::string s = t.at("sign").get<std::string>();
      if ((s == "pm" && a_sign < 0) || (s == "mp" && a_sign > 0)) v = -v;
      d.value = v;
      out.push_back(d);
    }
  }

  if (pair.b_power && pair.b_power->exponent % 2 == 1) {
    const auto& t2 = detail::fixture("lucas_table2.json");
    for (const auto& row : t2.at("rows")) {
      const std::string fam = row.at("family").get<std::string>();
      auto hit = family_member(fam, m, *pair.b_power);
      if (!hit) continue;
      bool ok = true;
      for (const auto& c : row.at("constraints"))
        if (!constraint_holds(c.get<std::string>(), m, *hit, *pair.b_power)) ok = false;
      if (!ok) continue;
      DefectRecord d;
      d.n = row.at("n").get<unsigned long>();
      d.source = "family";
      d.family = fam;
      d.epsilon = hit->eps;
      d.r = hit->r;
      d.row = row.at("label").get<std::string>();
      Int v = family_value(fam, m, *hit);
      if (a_sign < 0 && d.n % 2 == 0) v = -v;
      d.value = v;
      out.push_back(d);
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const DefectRecord& a, const DefectRecord& b) { return a.n < b.n; });
  return out;
}

bool in_table3_set(const Int& A, const PrimePower& b) {
  const Int m = abs(A);
  for (const char* fam : {"B1", "B2", "B3", "B4", "B5"})
    if (family_member(fam, m, b)) return true;
  return false;
}

long sigma_hat(const Int& A, const Int& B, unsigned long m) {
  if (m < 1) throw DomainError("sigma_hat: m must be positive");
  const Factorization f = factor(Int(m + 1));
  long s0 = 1;
  for (const auto& pe : f) s0 *= static_cast<long>(pe.exponent + 1);

  const auto& t3 = detail::fixture("lucas_table3.json");
  const long dflt = t3.at("default_offset").get<long>();
  std::optional<PrimePower> bp;
  if (B > 1) {
    Factorization fb = factor(B);
    if (fb.size() == 1) bp = fb.front();
  }
  for (const auto& row : t3.at("rows")) {
    if (row.contains("a")) {
      if (abs(A) != row.at("a").get<long>() || B != detail::json_int(row.at("b"))) continue;
      unsigned long d = row.at("when_divides_m_plus_1").get<unsigned long>();
      return s0 - ((m + 1) % d == 0 ? row.at("offset").get<long>() : dflt);
    }
    if (bp && bp->exponent % 2 == 1) {
      for (const auto& fam : row.at("families"))
        if (family_member(fam.get<std::string>(), abs(A), *bp)) return s0 - row.at("offset").get<long>();
    }
  }
  return s0 - dflt;
}

}  // namespace tl
