#include "taulehmer/newform.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "taulehmer/errors.hpp"

namespace tl {

namespace {

using i128 = __int128;

i128 to_i128(const Int& v) {
  // Values reaching this point are products of small series, always < 2^63.
  return static_cast<i128>(mpz_get_si(v.get_mpz_t()));
}

Int from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int hi = static_cast<unsigned long>(u >> 64);
  Int lo = static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

// Truncated product; returns false on overflow.
bool mul_i128(const std::vector<i128>& a, const std::vector<i128>& b, std::vector<i128>& out) {
  const std::size_t n = a.size();
  out.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      i128 t;
      if (__builtin_mul_overflow(a[i], b[j], &t)) return false;
      if (__builtin_add_overflow(out[i + j], t, &out[i + j])) return false;
    }
  }
  return true;
}

bool sqr_i128(const std::vector<i128>& a, std::vector<i128>& out) {
  const std::size_t n = a.size();
  out.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    i128 t;
    if (2 * i < n) {
      if (__builtin_mul_overflow(a[i], a[i], &t)) return false;
      if (__builtin_add_overflow(out[2 * i], t, &out[2 * i])) return false;
    }
    i128 twice;
    if (__builtin_mul_overflow(a[i], static_cast<i128>(2), &twice)) return false;
    for (std::size_t j = i + 1; i + j < n; ++j) {
      if (__builtin_mul_overflow(twice, a[j], &t)) return false;
      if (__builtin_add_overflow(out[i + j], t, &out[i + j])) return false;
    }
  }
  return true;
}

std::vector<Int> mul_big(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t n = a.size();
  std::vector<Int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

// prod_{n>=1} (1 - q^n) truncated to length len, via the pentagonal numbers.
std::vector<Int> euler_product(std::size_t len) {
  std::vector<Int> e(len, 0);
  for (std::size_t k = 0;; ++k) {
    std::size_t lo = k * (3 * k - 1) / 2, hi = k * (3 * k + 1) / 2;
    if (k == 0) lo = 0;
    if (lo >= len) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    e[lo] = sign;
    if (hi < len) e[hi] = sign;
  }
  return e;
}

std::vector<Int> power24_big(const std::vector<Int>& e) {
  auto e2 = mul_big(e, e);
  auto e4 = mul_big(e2, e2);
  auto e8 = mul_big(e4, e4);
  auto e16 = mul_big(e8, e8);
  return mul_big(e16, e8);
}

bool power24_i128(const std::vector<Int>& e, std::vector<Int>& out) {
  std::vector<i128> a(e.size()), e2, e4, e8, e16, e24;
  for (std::size_t i = 0; i < e.size(); ++i) a[i] = to_i128(e[i]);
  if (!sqr_i128(a, e2) || !sqr_i128(e2, e4) || !sqr_i128(e4, e8) || !sqr_i128(e8, e16) || !mul_i128(e16, e8, e24))
    return false;
  out.resize(e24.size());
  for (std::size_t i = 0; i < e24.size(); ++i) out[i] = from_i128(e24[i]);
  return true;
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

const Int& QSeries::at(unsigned long n) const {
  if (n < 1 || n > bound) throw DomainError("QSeries index outside truncation bound");
  return coeffs[n - 1];
}

QSeries delta_expansion(unsigned long bound) {
  if (bound < 1) throw DomainError("delta_expansion: bound must be positive");
  auto e = euler_product(bound);
  std::vector<Int> e24;
  if (!power24_i128(e, e24)) e24 = power24_big(e);
  QSeries s;
  s.bound = bound;
  s.coeffs = std::move(e24);
  return s;
}

Int NewformSpec::hecke_b(const Int& p) const { return ipow(p, weight - 1); }

bool deligne_ok(const Int& a, const Int& p, unsigned long weight) {
  return a * a <= 4 * ipow(p, weight - 1);
}

void validate(const NewformSpec& spec) {
  if (spec.weight < 4 || spec.weight % 2 != 0) throw DomainError("weight must be an even integer >= 4");
  if (spec.level < 1) throw DomainError("level must be positive");
  for (const auto& [p, a] : spec.ap) {
    Int P(p);
    if (!is_prime(P)) throw DomainError("ap key " + std::to_string(p) + " is not prime");
    if (spec.level % P == 0) throw DomainError("ap given for prime " + std::to_string(p) + " dividing the level");
    if (!deligne_ok(a, P, spec.weight)) throw DomainError("a(" + std::to_string(p) + ") violates the Deligne bound");
    if (spec.trivial_mod2 && p != 2 && mpz_odd_p(a.get_mpz_t()))
      throw DomainError("trivial_mod2 set but a(" + std::to_string(p) + ") is odd");
  }
  for (const auto& [p, s] : spec.bad_signs) {
    Int P(p);
    if (s != 1 && s != -1) throw DomainError("bad sign must be +1 or -1");
    if (!is_prime(P) || ord(P, spec.level) != 1)
      throw DomainError("bad sign given for " + std::to_string(p) + " which does not exactly divide the level");
  }
}

NewformSpec make_delta_spec(unsigned long ap_bound) {
  NewformSpec s;
  s.name = "delta";
  s.weight = 12;
  s.level = 1;
  s.trivial_mod2 = true;
  QSeries q = delta_expansion(ap_bound);
  for (unsigned long p = 2; p <= ap_bound; ++p)
    if (is_prime(Int(p))) s.ap[p] = q.at(p);
  validate(s);
  return s;
}

const NewformSpec& delta_spec() {
  static const NewformSpec s = make_delta_spec(kDeltaApBound);
  return s;
}

NewformSpec parse_newform_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("newform spec: ") + e.what());
  }
  auto as_int = [](const nlohmann::json& v) -> Int {
    if (v.is_string()) return Int(v.get<std::string>());
    if (v.is_number_integer()) return Int(std::to_string(v.get<long long>()));
    throw DomainError("newform spec: expected integer");
  };
  NewformSpec s;
  try {
    s.name = j.value("name", std::string("user"));
    s.weight = j.at("weight").get<unsigned long>();
    s.level = as_int(j.at("level"));
    if (j.contains("ap"))
      for (const auto& [key, v] : j.at("ap").items()) s.ap[std::stoul(key)] = as_int(v);
    if (j.contains("bad_signs"))
      for (const auto& [key, v] : j.at("bad_signs").items()) s.bad_signs[std::stoul(key)] = v.get<int>();
    s.trivial_mod2 = j.value("trivial_mod2", false);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("newform spec: ") + e.what());
  } catch (const std::logic_error& e) {
    throw DomainError(std::string("newform spec: bad key: ") + e.what());
  }
  if (s.name == "delta") throw DomainError("newform spec: name 'delta' is reserved for the built-in form");
  validate(s);
  return s;
}

NewformSpec load_newform_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open newform spec " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_newform_spec(ss.str());
}

Int coeff_prime_power(const NewformSpec& spec, const Int& p, unsigned long m) {
  if (!is_prime(p)) throw DomainError("coeff_prime_power: p must be prime");
  if (m == 0) return 1;
  unsigned long e = ord(p, spec.level);
  if (e >= 2) return 0;
  unsigned long pu = mpz_fits_ulong_p(p.get_mpz_t()) ? mpz_get_ui(p.get_mpz_t()) : 0;
  if (e == 1) {
    auto it = spec.bad_signs.find(pu);
    if (pu == 0 || it == spec.bad_signs.end())
      throw InsufficientData("no Atkin-Lehner sign for p = " + p.get_str());
    Int r = ipow(p, (spec.k() - 1) * m);
    return (it->second < 0 && m % 2 == 1) ? Int(-r) : r;
  }
  auto it = spec.ap.find(pu);
  if (pu == 0 || it == spec.ap.end()) throw InsufficientData("no a(p) for p = " + p.get_str());
  const Int b = spec.hecke_b(p);
  Int prev = 1, cur = it->second;
  for (unsigned long j = 2; j <= m; ++j) {
    Int next = it->second * cur - b * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Int coeff(const NewformSpec& spec, const Int& n) {
  if (n < 1) throw DomainError("coeff: n must be positive");
  Int r = 1;
  for (const auto& pe : factor(n)) r *= coeff_prime_power(spec, pe.prime, pe.exponent);
  return r;
}

ParityReport parity_check(const NewformSpec& spec, unsigned long series_bound) {
  ParityReport rep;
  for (const auto& [p, a] : spec.ap)
    if (p != 2 && spec.level % p != 0 && mpz_odd_p(a.get_mpz_t())) rep.odd_eigenvalue_primes.push_back(p);
  if (spec.is_delta()) {
    rep.odd_square_checked = true;
    rep.series_bound = series_bound;
    QSeries q = delta_expansion(series_bound);
    for (unsigned long n = 1; n <= series_bound; ++n) {
      bool odd = mpz_odd_p(q.at(n).get_mpz_t());
      bool odd_square = (n % 2 == 1) && is_perfect_square(Int(n)).has_value();
      if (odd) rep.odd_indices.push_back(n);
      if (odd != odd_square) rep.odd_square_mismatches.push_back(n);
    }
  }
  return rep;
}

}  // namespace tl
