#include "taulehmer/thue.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "taulehmer/errors.hpp"

namespace tl {

namespace {

Poly poly_mul_linear(const Poly& f, const Int& c0) {
  // f * (t + c0)
  Poly out(f.size() + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i + 1] += f[i];
    out[i] += c0 * f[i];
  }
  return out;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

// f_j = (t + shift) f_{j-1} - f_{j-2}
Poly three_term(unsigned long m, const Poly& f1, long shift) {
  Poly prev{1}, cur = f1;
  if (m == 0) return prev;
  for (unsigned long j = 2; j <= m; ++j) {
    Poly next = poly_sub(poly_mul_linear(cur, Int(shift)), prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void attach_roots(ThueForm& f, std::vector<double> approx) {
  std::sort(approx.begin(), approx.end());
  const std::size_t n = approx.size();
  for (std::size_t i = 0; i < n; ++i) {
    double gap = 1.0;
    if (i > 0) gap = std::min(gap, approx[i] - approx[i - 1]);
    if (i + 1 < n) gap = std::min(gap, approx[i + 1] - approx[i]);
    ThueRoot r;
    double nearest = std::round(approx[i]);
    if (std::abs(approx[i] - nearest) < 1e-9 && poly_eval(f.coeffs, Int(static_cast<long>(nearest))) == 0) {
      r.rational = true;
      r.enclosure = RealAlgebraic{f.coeffs, Int(static_cast<long>(nearest)), Int(static_cast<long>(nearest)), 0};
    } else {
      r.enclosure = isolate_near(f.coeffs, approx[i], gap / 4);
    }
    f.roots.push_back(std::move(r));
  }
  // m disjoint intervals, each holding a root, certify that every root is simple and isolated.
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(f.roots[i].enclosure.hi() < f.roots[i + 1].enclosure.lo()))
      throw DomainError("root isolation failed for " + f.name());
}

Int pow_ui(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// xp[j] = x^j, j = 0..m
std::vector<Int> powers(const Int& x, unsigned long m) {
  std::vector<Int> xp(m + 1);
  xp[0] = 1;
  for (unsigned long j = 1; j <= m; ++j) xp[j] = xp[j - 1] * x;
  return xp;
}

void eval_with(const Poly& c, const std::vector<Int>& xp, const Int& y, Int& acc) {
  const std::size_t m = c.size() - 1;
  acc = c[m];
  for (std::size_t i = m; i-- > 0;) {
    acc *= y;
    mpz_addmul(acc.get_mpz_t(), c[i].get_mpz_t(), xp[m - i].get_mpz_t());
  }
}

// Lower bounds on P_j = prod_{i != j} |r_i - r_j| / 2 as pnum_j / 2^pexp.
struct GapData {
  std::vector<Int> pnum;
  unsigned long pexp = 0;
};

GapData gap_data(const std::vector<ThueRoot>& roots) {
  const std::size_t n = roots.size();
  unsigned long K = 0;
  for (const auto& r : roots) K = std::max(K, r.enclosure.k);
  std::vector<Int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = roots[i].enclosure;
    mpz_mul_2exp(lo[i].get_mpz_t(), e.lo_num.get_mpz_t(), K - e.k);
    mpz_mul_2exp(hi[i].get_mpz_t(), e.hi_num.get_mpz_t(), K - e.k);
  }
  GapData g;
  g.pexp = (K + 1) * (n - 1);
  g.pnum.assign(n, 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      // roots are sorted and their intervals disjoint
      g.pnum[j] *= (i > j) ? Int(lo[i] - hi[j]) : Int(lo[j] - hi[i]);
    }
  return g;
}

struct ScanOutput {
  std::vector<ThuePoint> sols;
  unsigned long tested = 0;
};

}  // namespace

std::string ThueForm::name() const {
  return (kind == ThueKind::F ? "F" : "R") + std::to_string(index);
}

ThueForm build_form(unsigned long m) {
  if (m < 1) throw DomainError("build_form: m must be positive");
  ThueForm f;
  f.kind = ThueKind::F;
  f.index = 2 * m;
  f.m = m;
  f.coeffs = three_term(m, Poly{-1, 1}, -2);
  std::vector<double> approx;
  for (unsigned long k = 1; k <= m; ++k) {
    double c = std::cos(M_PI * static_cast<double>(k) / static_cast<double>(2 * m + 1));
    approx.push_back(4 * c * c);
  }
  attach_roots(f, approx);
  return f;
}

ThueForm build_reduced_form(unsigned long p) {
  if (p < 3 || !is_prime(Int(p))) throw DomainError("build_reduced_form: p must be an odd prime");
  ThueForm f;
  f.kind = ThueKind::Reduced;
  f.index = p;
  f.m = (p - 1) / 2;
  f.coeffs = three_term(f.m, Poly{1, 1}, 0);
  std::vector<double> approx;
  for (unsigned long k = 1; k <= f.m; ++k)
    approx.push_back(2 * std::cos(2 * M_PI * static_cast<double>(k) / static_cast<double>(p)));
  attach_roots(f, approx);
  return f;
}

Int evaluate(const ThueForm& form, const Int& x, const Int& y) {
  Int acc;
  eval_with(form.coeffs, powers(x, form.m), y, acc);
  return acc;
}

ThuePoint lift_reduced(const ThuePoint& pt) { return {pt.first, pt.second + 2 * pt.first}; }

ThueResult solve_bounded(const ThueForm& form, const Int& rhs, unsigned long x_small, unsigned long x_mid,
                         unsigned workers) {
  if (rhs == 0) throw DomainError("solve_bounded: rhs must be nonzero");
  if (x_small < 1 || x_small > x_mid) throw DomainError("solve_bounded: need 1 <= x_small <= x_mid");
  const unsigned long m = form.m;
  const Int absD = abs(rhs);
  const Int mirror = (m % 2 == 0) ? rhs : Int(-rhs);  // F(x,y) = mirror  <=>  F(-x,-y) = rhs

  ThueResult res;
  ThueCertificate& cert = res.certificate;
  cert.x_small = x_small;
  cert.x_mid = x_mid;

  GapData gaps = gap_data(form.roots);
  // |x|^(m-2) P_j > 2|D| for every j puts y/x within 1/(2x^2) of its nearest root.
  const Int twoD_scaled = Int(2 * absD) << gaps.pexp;
  if (m >= 3) {
    Int x0 = 0;
    for (const auto& pn : gaps.pnum) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), twoD_scaled.get_mpz_t(), pn.get_mpz_t());
      x0 = std::max(x0, iroot_floor(q, m - 2));
    }
    cert.gap_threshold = x0;
  } else if (m == 2) {
    bool all = std::all_of(gaps.pnum.begin(), gaps.pnum.end(), [&](const Int& pn) { return pn > twoD_scaled; });
    if (all) cert.gap_threshold = Int(0);
  }

  unsigned long xe = x_mid;
  if (cert.gap_threshold && *cert.gap_threshold < x_mid)
    xe = std::max(x_small, static_cast<unsigned long>(mpz_get_ui(cert.gap_threshold->get_mpz_t())));
  cert.exhaustive_bound = xe;
  cert.midsize_by_convergents = xe < x_mid;

  // Narrow enclosures so each window spans about one integer at |x| = xe.
  std::vector<ThueRoot> roots = form.roots;
  for (auto& r : roots) {
    if (r.rational) continue;
    while (Int(r.enclosure.hi_num - r.enclosure.lo_num) * xe > (Int(1) << r.enclosure.k)) r.enclosure.bisect();
  }

  const Int R = iroot_floor(absD, m) + 1;  // the nearest factor satisfies |y - r x| <= |D|^(1/m)

  auto scan = [&](unsigned long x_lo, unsigned long x_hi, ScanOutput& out) {
    std::vector<Int> ys;
    Int val, rad, denom;
    for (unsigned long xu = x_lo; xu <= x_hi; ++xu) {
      const Int x(xu);
      const std::vector<Int> xp = powers(x, m);
      ys.clear();
      for (std::size_t j = 0; j < roots.size(); ++j) {
        // |y - r_j x| <= |D| / (x^(m-1) P_j) when r_j is the root nearest y/x
        denom = xp[m - 1] * gaps.pnum[j];
        Int num = absD << gaps.pexp;
        mpz_cdiv_q(rad.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
        if (rad > R) rad = R;
        const auto& e = roots[j].enclosure;
        Int lo = e.lo_num * x, hi = e.hi_num * x;
        mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), e.k);
        mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), e.k);
        for (Int y = lo - rad; y <= hi + rad; ++y) ys.push_back(y);
      }
      std::sort(ys.begin(), ys.end());
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      for (const auto& y : ys) {
        eval_with(form.coeffs, xp, y, val);
        ++out.tested;
        if (val == rhs) out.sols.emplace_back(x, y);
        if (val == mirror) out.sols.emplace_back(-x, Int(-y));
      }
    }
  };

  // x = 0: y^m = rhs
  {
    Int r = iroot_floor(absD, m);
    for (const Int& y : {r, Int(-r)}) {
      ++cert.candidates_tested;
      if (evaluate(form, 0, y) == rhs) res.solutions.emplace_back(Int(0), y);
    }
  }

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(xe)));
  std::vector<ScanOutput> parts(workers);
  if (workers == 1) {
    scan(1, xe, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const unsigned long chunk = (xe + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      unsigned long a = 1 + w * chunk, b = std::min(xe, (w + 1) * chunk);
      if (a > b) continue;
      pool.emplace_back([&, a, b, w] { scan(a, b, parts[w]); });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& p : parts) {
    res.solutions.insert(res.solutions.end(), p.sols.begin(), p.sols.end());
    cert.candidates_tested += p.tested;
  }

  cert.convergents_per_root.assign(roots.size(), 0);
  if (cert.midsize_by_convergents) {
    std::vector<unsigned long> lambdas;
    for (unsigned long l = 1; Int(l) <= R; ++l)
      if (absD % pow_ui(Int(l), m) == 0) lambdas.push_back(l);
    Int val;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      // Integer roots: y/x != r forces |y/x - r| >= 1/|x| > 1/(2x^2), so none lie past the threshold.
      if (roots[j].rational) continue;
      auto conv = continued_fraction_convergents(roots[j].enclosure, Int(x_mid));
      cert.convergents_per_root[j] = conv.size();
      for (const auto& c : conv)
        for (unsigned long l : lambdas) {
          Int x = c.q * l, y = c.p * l;
          if (x <= xe || x > x_mid) continue;
          eval_with(form.coeffs, powers(x, m), y, val);
          ++cert.candidates_tested;
          if (val == rhs) res.solutions.emplace_back(x, y);
          if (val == mirror) res.solutions.emplace_back(Int(-x), Int(-y));
        }
    }
  }

  std::sort(res.solutions.begin(), res.solutions.end());
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()), res.solutions.end());
  return res;
}

}  // namespace tl
