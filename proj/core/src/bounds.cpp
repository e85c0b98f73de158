#include "taulehmer/bounds.hpp"

#include <mpfr.h>

#include <algorithm>

#include "taulehmer/errors.hpp"

namespace tl {

namespace {

struct Mp {
  mpfr_t v;
  explicit Mp(unsigned long bits) { mpfr_init2(v, static_cast<mpfr_prec_t>(bits)); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

Rat to_rat(const mpfr_t x) {
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  Rat r(z);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

Enclosure sqrt_enclosure(const Rat& q, unsigned long bits) {
  Mp lo(bits), hi(bits);
  mpfr_set_q(lo.v, q.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(lo.v, lo.v, MPFR_RNDD);
  mpfr_set_q(hi.v, q.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(hi.v, hi.v, MPFR_RNDU);
  return {to_rat(lo.v), to_rat(hi.v)};
}

Enclosure log_enclosure(const Int& x, unsigned long bits) {
  bits = std::max<unsigned long>(bits, mpz_sizeinbase(x.get_mpz_t(), 2) + 8);
  Mp lo(bits), hi(bits);
  mpfr_set_z(lo.v, x.get_mpz_t(), MPFR_RNDN);  // exact at this precision
  mpfr_set(hi.v, lo.v, MPFR_RNDN);
  mpfr_log(lo.v, lo.v, MPFR_RNDD);
  mpfr_log(hi.v, hi.v, MPFR_RNDU);
  return {to_rat(lo.v), to_rat(hi.v)};
}

Enclosure pi_enclosure(unsigned long bits) {
  Mp lo(bits), hi(bits);
  mpfr_const_pi(lo.v, MPFR_RNDD);
  mpfr_const_pi(hi.v, MPFR_RNDU);
  return {to_rat(lo.v), to_rat(hi.v)};
}

Int pow_ui(unsigned long b, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// sign of u + v sqrt(m)
int sign_with_root(const Rat& u, const Rat& v, unsigned long m) {
  const int su = sgn(u), sv = m == 0 ? 0 : sgn(v);
  if (su >= 0 && sv >= 0) return su > 0 || sv > 0 ? 1 : 0;
  if (su <= 0 && sv <= 0) return -1;
  const Rat uu = u * u, vv = v * v * m;
  if (uu == vv) return 0;
  return (uu > vv) == (su > 0) ? 1 : -1;
}

void check_m(unsigned long m) {
  if (m < 1) throw DomainError("m must be positive");
}

void check_sign(int s) {
  if (s != 1 && s != -1) throw DomainError("sign must be +1 or -1");
}

EffectiveBound linear(const std::string& family, unsigned long ell, unsigned long m, int eps, unsigned long a,
                      unsigned long ten_exp) {
  EffectiveBound b;
  b.family = family;
  b.ell = ell;
  b.m = m;
  b.eps = eps;
  b.a = a;
  b.b = Rat(pow_ui(10, ten_exp));
  b.c = 0;
  b.display = std::to_string(a) + "m + 10^" + std::to_string(ten_exp) + " sqrt(m)";
  b.source = "case table";
  return b;
}

std::string signed_power(int eps, const std::string& base) { return (eps > 0 ? "+ " : "- ") + base; }

}  // namespace

double Enclosure::approx() const { return Rat((lo + hi) / 2).get_d(); }

Enclosure EffectiveBound::value(unsigned long bits) const {
  const Rat base = a * m + c;
  if (auto r = is_perfect_square(Int(m))) {
    Rat v = base + b * *r;
    return {v, v};
  }
  Enclosure s = sqrt_enclosure(Rat(m), bits);
  return {base + b * s.lo, base + b * s.hi};
}

bool EffectiveBound::exceeded_by(const Int& n) const {
  // n - a m - c > b sqrt(m)
  return sign_with_root(Rat(n) - a * m - c, -b, m) > 0;
}

int compare(const EffectiveBound& x, const EffectiveBound& y) {
  if (x.m != y.m) throw DomainError("compare: bounds are evaluated at different m");
  return sign_with_root(Rat((x.a - y.a) * x.m + x.c - y.c), Rat(x.b - y.b), x.m);
}

BWConstant bw_constant(unsigned long r, unsigned long d, unsigned long bits) {
  if (r < 1 || d < 1) throw DomainError("bw_constant: r and d must be positive");
  BWConstant out;
  out.r = r;
  out.d = d;
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), r + 1);
  out.integer_part = 18 * fact * pow_ui(r, r + 1) * pow_ui(32 * d, r + 2);
  out.log_argument = Int(2 * r) * d;
  out.log_factor = log_enclosure(out.log_argument, bits);
  out.value = {out.integer_part * out.log_factor.lo, out.integer_part * out.log_factor.hi};
  return out;
}

EffectiveBound threshold_T(int eps, unsigned long ell, unsigned long m) {
  check_sign(eps);
  check_m(m);
  const bool odd = m % 2 == 1;
  if (ell == 3) {
    if (eps > 0) return linear("T", 3, m, eps, 2, 32);
    return linear("T", 3, m, eps, 2, odd ? 23 : 13);
  }
  if (ell == 5) {
    if (odd) return linear("T", 5, m, eps, 3, 24);
    return linear("T", 5, m, eps, 3, eps > 0 ? 30 : 13);
  }
  throw DomainError("threshold_T: ell must be 3 or 5");
}

EffectiveBound threshold_U(int eps, unsigned long m) {
  check_sign(eps);
  check_m(m);
  if (m % 2 == 1) return linear("U", 5, m, eps, 3, 24);
  return linear("U", 5, m, eps, 3, eps > 0 ? 30 : 13);
}

EffectiveBound weight_bound_M(int sign, unsigned long ell, unsigned long m) {
  check_sign(sign);
  check_m(m);
  const bool odd = m % 2 == 1;
  if (ell == 3) {
    if (sign < 0) return linear("M", 3, m, sign, 2, 32);
    return linear("M", 3, m, sign, 2, odd ? 23 : 13);
  }
  if (ell == 5) {
    if (odd) return linear("M", 5, m, sign, 3, 24);
    return linear("M", 5, m, sign, 3, sign > 0 ? 13 : 30);
  }
  throw DomainError("weight_bound_M: closed forms exist only for ell = 3 and 5");
}

EffectiveBound weight_bound_M_footnote(unsigned long m) {
  check_m(m);
  EffectiveBound b;
  b.family = "M";
  b.ell = 3;
  b.m = m;
  b.eps = -1;
  const Rat e30(pow_ui(10, 30));
  b.a = Rat(8, 5);
  b.b = 94 * e30;
  b.c = 14 * e30;
  b.display = "1.6m + (9.4 sqrt(m) + 1.4) 10^31";
  b.source = "footnote";
  return b;
}

GeneralWeightBound weight_bound_general(int sign, unsigned long ell, unsigned long m) {
  check_sign(sign);
  check_m(m);
  if (ell < 3 || !is_prime(Int(ell))) throw DomainError("weight_bound_general: ell must be an odd prime");
  GeneralWeightBound g;
  g.ell = ell;
  g.m = m;
  g.sign = sign;
  if (ell == 3 || ell == 5) {
    g.computed = true;
    g.note = "closed form: " + weight_bound_M(sign, ell, m).display;
  } else {
    g.note = "not computed: the bound is effective (O_ell(m)) but needs Tzanakis-de Weger bounds for the Thue "
             "conditions d >= 7";
  }
  return g;
}

LambdaCheck lambda_bound_check(unsigned long ell, unsigned long m, unsigned long n, const Int& Y, LambdaCase kind) {
  check_m(m);
  if (kind == LambdaCase::U && ell != 5) throw DomainError("lambda_bound_check: the U case has ell = 5");
  if (kind == LambdaCase::T && ell != 3 && ell != 5) throw DomainError("lambda_bound_check: ell must be 3 or 5");
  const Int ay = abs(Y);
  if (ay < 2) throw PreconditionError("lambda_bound_check: |Y| must be at least 2");
  const Int lm = pow_ui(ell, m);
  Int yn;
  mpz_pow_ui(yn.get_mpz_t(), ay.get_mpz_t(), n);
  // n > 2 log(4 sqrt(ell^m)) / log|Y|  <=>  |Y|^n > 16 ell^m; U uses 8 in place of 4
  const Int need = (kind == LambdaCase::T ? 16 : 64) * lm;
  if (yn <= need)
    throw PreconditionError("lambda_bound_check: n = " + std::to_string(n) + " is below the valid range");
  LambdaCheck out;
  out.kind = kind;
  out.constant = kind == LambdaCase::T ? Rat(278, 100) : Rat(556, 100);
  Rat q(lm, yn);
  q.canonicalize();
  for (unsigned long bits = 128;; bits *= 2) {
    Enclosure s = sqrt_enclosure(Rat(q), bits);
    out.bound = {out.constant * s.lo, out.constant * s.hi};
    out.pi = pi_enclosure(bits);
    if (out.bound.hi < out.pi.lo) {
      out.below_pi = true;
      break;
    }
    if (out.bound.lo > out.pi.hi || bits >= 1u << 16) {
      out.below_pi = false;
      break;
    }
  }
  return out;
}

std::vector<PowerPoint> power_scan(const Int& D, const ScanLimits& lim) {
  std::vector<PowerPoint> out;
  Int v, r, av;
  for (unsigned long x = 0; x <= lim.x_max; ++x) {
    v = Int(x) * x + D;
    if (v == 0) continue;
    av = abs(v);
    for (unsigned long n = 3; n <= lim.n_max; ++n) {
      if (sgn(v) < 0 && n % 2 == 0) continue;
      if (!mpz_root(r.get_mpz_t(), av.get_mpz_t(), n)) continue;
      if (r < 2 || r > lim.y_max) continue;
      if (sgn(v) < 0) {
        out.push_back({Int(x), Int(-r), n});
      } else {
        out.push_back({Int(x), r, n});
        if (n % 2 == 0) out.push_back({Int(x), Int(-r), n});
      }
    }
  }
  return out;
}

ExcludedWeightRange excluded_weight_range(unsigned long ell, unsigned long m, int eps, const ScanLimits& lim) {
  check_sign(eps);
  check_m(m);
  if (ell != 3 && ell != 5) throw DomainError("excluded_weight_range: ell must be 3 or 5");
  ExcludedWeightRange out;
  out.ell = ell;
  out.m = m;
  out.eps = eps;
  const std::string lm = std::to_string(ell) + "^" + std::to_string(m);

  ExclusionStatement t;
  t.family = "T";
  t.D = eps * pow_ui(ell, m);
  t.threshold = threshold_T(eps, ell, m);
  t.equation = "X^2 " + signed_power(eps, lm) + " = Y^n";
  t.statement = "for n > " + t.threshold.display + " there are no integer points with Y not in {0, 1, -1}";
  t.limits = lim;
  t.small_solutions = power_scan(t.D, lim);
  out.equations.push_back(std::move(t));

  if (ell == 5) {
    ExclusionStatement u;
    u.family = "U";
    u.D = eps * 4 * pow_ui(5, m);
    u.threshold = threshold_U(eps, m);
    u.equation = "X^2 " + signed_power(eps, "4*" + lm) + " = Y^n";
    u.statement = "for n > " + u.threshold.display + " there are no integer points with Y != 0";
    u.limits = lim;
    u.small_solutions = power_scan(u.D, lim);
    out.equations.push_back(std::move(u));
  }

  out.coefficient = -eps * pow_ui(ell, m);
  out.weight_bound = weight_bound_M(-eps, ell, m);
  out.weight_statement = out.coefficient.get_str() + " is not a coefficient of any newform with integer coefficients, "
                         "trivial mod 2 residual representation and even level coprime to " +
                         std::to_string(ell) + " of weight 2k > " + out.weight_bound.display;
  return out;
}

}  // namespace tl
