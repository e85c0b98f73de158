#include "taulehmer/lehmer.hpp"

#include <algorithm>
#include <map>

#include "fixture_io.hpp"
#include "taulehmer/errors.hpp"
#include "taulehmer/lucas.hpp"

namespace tl {

namespace {

Int pow_ui(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

std::optional<Int> known_ap(const NewformSpec& spec, const Int& p) {
  if (!mpz_fits_ulong_p(p.get_mpz_t())) return std::nullopt;
  auto it = spec.ap.find(mpz_get_ui(p.get_mpz_t()));
  if (it == spec.ap.end()) return std::nullopt;
  return it->second;
}

std::string signed_str(const Int& v) { return (v >= 0 ? "+ " : "- ") + Int(abs(v)).get_str(); }

struct FixtureCell {
  std::vector<std::pair<Int, Int>> points;
  std::string where;
  bool conditional = false;
  bool unknown = false;
};

std::vector<std::pair<Int, Int>> read_pts(const nlohmann::json& arr, int flip = 1) {
  std::vector<std::pair<Int, Int>> out;
  for (const auto& p : arr) out.emplace_back(flip * detail::json_int(p[0]), flip * detail::json_int(p[1]));
  return out;
}

std::optional<FixtureCell> curve_cell(ConditionKind kind, unsigned long key_d, unsigned long ell, int sign) {
  if (kind == ConditionKind::CurveC) {
    const std::string file = sign > 0 ? "curves_table6.json" : "curves_table7.json";
    for (const auto& row : detail::fixture(file).at("rows")) {
      if (row.at("ell").get<unsigned long>() != ell) continue;
      const auto& cells = row.at("cells");
      const std::string key = std::to_string(key_d);
      if (!cells.contains(key)) return std::nullopt;
      return FixtureCell{read_pts(cells.at(key)), file + " " + key, false, false};
    }
    return std::nullopt;
  }
  for (const auto& row : detail::fixture("curves_table8.json").at("rows")) {
    if (row.at("ell").get<unsigned long>() != ell) continue;
    const std::string key = std::to_string(key_d) + (sign > 0 ? "+" : "-");
    const auto& cells = row.at("cells");
    if (!cells.contains(key)) return std::nullopt;
    const auto& c = cells.at(key);
    const std::string st = c.at("status").get<std::string>();
    return FixtureCell{read_pts(c.at("points")), "curves_table8.json " + key, st == "conditional", st == "unknown"};
  }
  return std::nullopt;
}

std::optional<FixtureCell> thue_cell(unsigned long d, unsigned long ell, int sign) {
  for (const char* file : {"thue_table4.json", "thue_table5.json"}) {
    const auto& t = detail::fixture(file);
    for (const auto& row : t.at("rows")) {
      if (row.at("d").get<unsigned long>() != d || row.at("ell").get<unsigned long>() != ell) continue;
      const std::string s = row.at("sign").get<std::string>();
      int flip = 1;
      if (s == "pm")
        flip = sign;
      else if ((s == "+") != (sign > 0))
        continue;
      return FixtureCell{read_pts(row.at("solutions"), flip), std::string(file) + " (" + std::to_string(d) + ", " +
                                                                  (sign > 0 ? "+" : "-") + std::to_string(ell) + ")",
                         t.at("conditional").get<bool>(), false};
    }
  }
  return std::nullopt;
}

// Parity and known a(p) can refute a point that passes the equation filters.
void finish_hit(const NewformSpec& spec, const std::set<unsigned long>& units, unsigned long d, Hit h,
                ConditionVerdict& v) {
  if (spec.trivial_mod2 && h.p != 2 && mpz_odd_p(h.coefficient.get_mpz_t())) {
    v.rejected.push_back({h.x, h.y, "a(p) must be even for a trivial mod 2 representation"});
    return;
  }
  if (auto a = known_ap(spec, h.p)) {
    if (abs(*a) != h.coefficient) {
      v.rejected.push_back({h.x, h.y, "a(" + h.p.get_str() + ") = " + a->get_str() + " is known"});
      return;
    }
    h.realized = true;
  }
  const Int pd = pow_ui(h.p, d - 1);
  for (unsigned long m0 : units)
    if (gcd(Int(m0), h.p) == 1) h.n.push_back(m0 * pd);
  v.hits.push_back(std::move(h));
}

bool prime_not_dividing_level(const NewformSpec& spec, const Int& x, std::string& why) {
  if (x < 2 || !is_prime(x)) {
    why = "X is not a positive prime";
    return false;
  }
  if (spec.level % x == 0) {
    why = "p divides the level";
    return false;
  }
  return true;
}

void judge_curve_point(const NewformSpec& spec, const std::set<unsigned long>& units, const DiophantineCondition& c,
                       const Int& x, const Int& y, ConditionVerdict& v) {
  const unsigned long e = 2 * spec.k() - 1;
  std::string why;
  if (!prime_not_dividing_level(spec, x, why)) {
    v.rejected.push_back({x, y, why});
    return;
  }
  const Int B = pow_ui(x, e);
  Hit h{x, y, x, 0, {}, std::nullopt};
  if (c.kind == ConditionKind::CurveC) {
    if (y * y > 4 * B) {
      v.rejected.push_back({x, y, "non-modular solution: Deligne bound fails"});
      return;
    }
    h.coefficient = y;
  } else {
    // Y = +-(2a^2 - 3B)
    bool found = false, deligne_fail = false;
    for (int s : {1, -1}) {
      Int t = s * y + 3 * B;
      if (t < 0 || t % 2 != 0) continue;
      t /= 2;
      auto a = is_perfect_square(t);
      if (!a) continue;
      if (t > 4 * B) {
        deligne_fail = true;
        continue;
      }
      h.coefficient = *a;
      found = true;
      break;
    }
    if (!found) {
      v.rejected.push_back({x, y, deligne_fail ? "non-modular solution: Deligne bound fails"
                                               : "(Y + 3X^(2k-1))/2 is not a square for either sign of Y"});
      return;
    }
  }
  finish_hit(spec, units, c.d, std::move(h), v);
}

void judge_thue_point(const NewformSpec& spec, const std::set<unsigned long>& units, const DiophantineCondition& c,
                      const Int& x, const Int& y, ConditionVerdict& v) {
  const unsigned long e = 2 * spec.k() - 1;
  auto p = x > 0 ? prime_power_root(x, e) : std::nullopt;
  if (!p) {
    v.rejected.push_back({x, y, "X is not p^(2k-1) for a prime p"});
    return;
  }
  if (spec.level % *p == 0) {
    v.rejected.push_back({x, y, "p divides the level"});
    return;
  }
  auto a = is_perfect_square(y);
  if (!a) {
    v.rejected.push_back({x, y, "Y is not a perfect square"});
    return;
  }
  if (y > 4 * x) {
    v.rejected.push_back({x, y, "non-modular solution: Y > 4X violates the Deligne bound"});
    return;
  }
  Hit h{x, y, *p, *a, {}, std::nullopt};
  finish_hit(spec, units, c.d, std::move(h), v);
}

ConditionVerdict run_condition(const NewformSpec& spec, const std::set<unsigned long>& units,
                               const DiophantineCondition& c, const SearchBounds& bounds) {
  ConditionVerdict v;
  v.condition = c;

  if (spec.is_delta() && (c.ell == 3 || c.ell == 5 || c.ell == 7 || c.ell == 691)) {
    auto ranks = ramanujan_rank_values(c.ell);
    if (!ranks.count(c.d - 1)) {
      v.status = VerdictStatus::ExcludedByCongruence;
      v.congruence_note = "m_" + std::to_string(c.ell) + "(p) never equals " + std::to_string(c.d - 1);
      v.provenance.push_back("Ramanujan congruence mod " + std::to_string(c.ell == 3 ? 9 : c.ell));
      return v;
    }
    v.congruence_note = "m_" + std::to_string(c.ell) + "(p) = " + std::to_string(c.d - 1) + " occurs";
  }

  std::set<std::pair<Int, Int>> raw;
  std::optional<FixtureCell> cell;
  if (c.kind == ConditionKind::Thue) {
    const ThueForm& r = *c.reduced;
    unsigned long xs = r.m > kLargeThueDegree ? kReducedSmall : bounds.thue_x_small;
    xs = std::min(xs, bounds.thue_x_mid);
    ThueResult res = solve_bounded(r, c.target, xs, bounds.thue_x_mid, bounds.workers);
    for (const auto& pt : res.solutions) raw.insert(lift_reduced(pt));
    v.provenance.push_back("Thue search via " + r.name() + ": exhaustive |X| <= " +
                           std::to_string(res.certificate.exhaustive_bound) + ", convergents to |X| <= " +
                           std::to_string(res.certificate.x_mid));
    v.thue_certificate = res.certificate;
    if (c.m == 1) cell = thue_cell(c.d, c.ell, c.sign);
  } else {
    CurveSearch s = search_points(*c.curve, bounds.curve_x_max, bounds.workers);
    for (const auto& [x, y] : s.points)
      if (c.kind == ConditionKind::CurveC || x >= 0) raw.emplace(x, y);
    v.curve_x_max = bounds.curve_x_max;
    v.provenance.push_back("curve search " + c.curve->name() + ": |X| <= " + std::to_string(bounds.curve_x_max));
    if (c.m == 1) cell = curve_cell(c.kind, c.curve->family == "C" ? spec.k() : 2 * spec.k() - 1, c.ell, c.sign);
  }
  if (cell) {
    v.provenance.push_back("fixture " + cell->where);
    v.conditional = cell->conditional;
    v.open_cell = cell->unknown;
    for (const auto& [x, y] : cell->points) raw.emplace(x, y);
  }

  for (const auto& [x, y] : raw) {
    if (c.kind == ConditionKind::Thue)
      judge_thue_point(spec, units, c, x, y, v);
    else
      judge_curve_point(spec, units, c, x, y, v);
  }
  v.status = v.hits.empty() ? VerdictStatus::NoHitWithinBounds : VerdictStatus::Hits;
  return v;
}

void finalize(AdmissibilityReport& rep) {
  rep.status = AdmissibilityStatus::ExcludedWithinBounds;
  for (const auto& v : rep.conditions) {
    if (!v.hits.empty()) rep.status = AdmissibilityStatus::CandidatesFound;
    if (v.conditional || v.open_cell) rep.conditional = true;
  }
}

}  // namespace

const char* to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::CurveC: return "curve-C";
    case ConditionKind::CurveH: return "curve-H";
    case ConditionKind::Thue: return "thue";
  }
  return "?";
}

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::NoHitWithinBounds: return "no-hit-within-bounds";
    case VerdictStatus::Hits: return "hits";
    case VerdictStatus::ExcludedByCongruence: return "excluded-by-congruence";
  }
  return "?";
}

const char* to_string(AdmissibilityStatus s) {
  return s == AdmissibilityStatus::ExcludedWithinBounds ? "EXCLUDED_WITHIN_BOUNDS" : "CANDIDATES_FOUND";
}

std::set<unsigned long> unit_set(const NewformSpec& spec) {
  if (spec.weight < 4) throw DomainError("unit_set: weight must be at least 4");
  if (!spec.trivial_mod2) throw DomainError("unit_set: requires a trivial mod 2 residual representation");
  std::set<unsigned long> u{1};
  if (spec.weight == 4 && spec.level % 2 != 0) {
    auto a2 = known_ap(spec, 2);
    if (!a2) throw InsufficientData("unit_set: a(2) needed for weight 4 and odd level");
    if (abs(*a2) == 3) u.insert(4);
  }
  return u;
}

std::vector<DiophantineCondition> enumerate_conditions(const NewformSpec& spec, unsigned long ell, unsigned long m,
                                                       int sign) {
  if (ell < 3 || !is_prime(Int(ell))) throw DomainError("enumerate_conditions: ell must be an odd prime");
  if (m < 1) throw DomainError("enumerate_conditions: m must be positive");
  if (sign != 1 && sign != -1) throw DomainError("enumerate_conditions: sign must be +1 or -1");
  const Int L(ell);
  const Int lm = pow_ui(L, m);
  const Int target = sign * lm;
  const unsigned long e = 2 * spec.k() - 1;
  std::vector<DiophantineCondition> out;
  for (const auto& pe : factor(L * (L * L - 1))) {
    if (pe.prime == 2) continue;
    DiophantineCondition c;
    c.target = target;
    c.ell = ell;
    c.m = m;
    c.sign = sign;
    c.d = mpz_get_ui(pe.prime.get_mpz_t());
    if (c.d == 3) {
      c.kind = ConditionKind::CurveC;
      c.curve = curve_C(spec.k(), lm, sign);
      c.equation = "Y^2 = X^" + std::to_string(e) + " " + signed_str(target);
    } else if (c.d == 5) {
      c.kind = ConditionKind::CurveH;
      c.curve = curve_H(e, lm, sign);
      c.equation = "Y^2 = 5X^" + std::to_string(2 * e) + " " + signed_str(4 * target);
    } else {
      c.kind = ConditionKind::Thue;
      c.reduced = build_reduced_form(c.d);
      c.equation = "F_" + std::to_string(c.d - 1) + "(X,Y) = " + target.get_str();
    }
    out.push_back(std::move(c));
  }
  return out;
}

unsigned long ramanujan_filter(unsigned long ell, unsigned long p) {
  if (!is_prime(Int(p))) throw DomainError("ramanujan_filter: p must be prime");
  switch (ell) {
    case 3: return p % 3 == 1 ? 2 : 1;
    case 5: {
      unsigned long r = p % 5;
      if (r == 0 || r == 4) return 1;
      return r == 1 ? 4 : 3;
    }
    case 7: {
      unsigned long r = p % 7;
      return (r == 1 || r == 2 || r == 4) ? 6 : 1;
    }
    case 691: {
      if (p == 691) throw DomainError("ramanujan_filter: 691 never divides tau(691^n)");
      // sigma_11(p^n) = (q^(n+1) - 1)/(q - 1) with q = p^11
      unsigned long q = 1;
      for (int i = 0; i < 11; ++i) q = q * (p % 691) % 691;
      if (q == 1) return 690;
      unsigned long o = 1, t = q;
      while (t != 1) {
        t = t * q % 691;
        ++o;
      }
      return o - 1;
    }
    default: throw DomainError("ramanujan_filter: ell must be 3, 5, 7 or 691");
  }
}

std::set<unsigned long> ramanujan_rank_values(unsigned long ell) {
  if (ell != 3 && ell != 5 && ell != 7 && ell != 691)
    throw DomainError("ramanujan_rank_values: ell must be 3, 5, 7 or 691");
  // Each residue class mod ell holds primes; the formulas depend on p mod ell only.
  std::set<unsigned long> out;
  for (unsigned long r = 0; r < ell; ++r) {
    unsigned long p = r;
    if (ell == 691 && r == 0) continue;
    while (!is_prime(Int(p))) p += ell;
    out.insert(ramanujan_filter(ell, p));
  }
  return out;
}

AdmissibilityReport check_admissibility(const NewformSpec& spec, unsigned long ell, unsigned long m, int sign,
                                        const SearchBounds& bounds) {
  AdmissibilityReport rep;
  rep.units = unit_set(spec);
  rep.ell = ell;
  rep.m = m;
  rep.sign = sign;
  rep.bounds = bounds;
  auto conds = enumerate_conditions(spec, ell, m, sign);
  rep.target = conds.empty() ? Int(sign * pow_ui(Int(ell), m)) : conds.front().target;
  for (const auto& c : conds) rep.conditions.push_back(run_condition(spec, rep.units, c, bounds));
  finalize(rep);
  return rep;
}

AdmissibilityReport check_unit_target(const NewformSpec& spec, int sign, const SearchBounds& bounds) {
  if (sign != 1 && sign != -1) throw DomainError("check_unit_target: sign must be +1 or -1");
  AdmissibilityReport rep;
  rep.units = unit_set(spec);
  rep.target = sign;
  rep.sign = sign;
  rep.bounds = bounds;
  // Defective u_3 = +-3 are the only obstruction to a primitive divisor in every a(p^j).
  for (int s : {1, -1}) {
    DiophantineCondition c;
    c.target = 3 * s;
    c.ell = 3;
    c.m = 1;
    c.sign = s;
    c.d = 3;
    c.kind = ConditionKind::CurveC;
    c.curve = curve_C(spec.k(), 3, s);
    c.equation = "Y^2 = X^" + std::to_string(2 * spec.k() - 1) + " " + signed_str(Int(3 * s));
    ConditionVerdict v = run_condition(spec, rep.units, c, bounds);
    v.congruence_note.clear();
    if (v.status == VerdictStatus::ExcludedByCongruence) v.status = VerdictStatus::NoHitWithinBounds;
    rep.conditions.push_back(std::move(v));
  }
  finalize(rep);
  // a(4) = a(2)^2 - 8 = +1 when 4 is a unit index
  if (sign > 0 && rep.units.count(4)) rep.status = AdmissibilityStatus::CandidatesFound;
  return rep;
}

unsigned long omega_lower_bound(const NewformSpec& spec, const Int& n) {
  if (n <= 1) throw DomainError("omega_lower_bound: n must exceed 1");
  const unsigned long km1 = spec.k() - 1;
  unsigned long total = 0;
  for (const auto& pe : factor(n)) {
    const Int& p = pe.prime;
    if (spec.level % p == 0) {
      total += km1 * pe.exponent;
      continue;
    }
    if (pe.exponent >= 2) {
      auto a = known_ap(spec, p);
      if (!a) throw InsufficientData("omega_lower_bound: no a(p) for p = " + p.get_str());
      long s = sigma_hat(*a, spec.hecke_b(p), pe.exponent);
      if (s > 0) total += static_cast<unsigned long>(s);
      continue;
    }
    // exact divisor: a(p) even and nonzero contributes a factor 2
    if (!spec.trivial_mod2) continue;
    if (p == 2) {
      auto a = known_ap(spec, p);
      if (!a || *a == 0 || mpz_odd_p(a->get_mpz_t())) continue;
    } else if (auto a = known_ap(spec, p); a && *a == 0) {
      continue;
    }
    total += 1;
  }
  return total;
}

Int SignedPrimePower::value() const { return sign * pow_ui(ell, m); }

bool SignedPrimePower::operator<(const SignedPrimePower& o) const {
  if (ell != o.ell) return ell < o.ell;
  if (m != o.m) return m > o.m;
  return sign > o.sign;
}

bool SignedPrimePower::operator==(const SignedPrimePower& o) const {
  return sign == o.sign && ell == o.ell && m == o.m;
}

namespace {

void partitions(unsigned long n, unsigned long max_part, std::vector<unsigned long>& cur,
                std::vector<std::vector<unsigned long>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned long k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SubProblem> decompose_odd_target(const NewformSpec&, const Int& alpha) {
  if (alpha % 2 == 0) throw DomainError("decompose_odd_target: alpha must be odd");
  if (abs(alpha) <= 1) throw DomainError("decompose_odd_target: |alpha| must exceed 1");
  const int want = sgn(alpha);
  std::vector<std::vector<SignedPrimePower>> combos{{}};
  for (const auto& pe : factor(alpha)) {
    std::vector<std::vector<unsigned long>> parts;
    std::vector<unsigned long> cur;
    partitions(pe.exponent, pe.exponent, cur, parts);
    std::vector<std::vector<SignedPrimePower>> next;
    for (const auto& base : combos)
      for (const auto& ps : parts) {
        auto v = base;
        for (unsigned long m : ps) v.push_back({1, pe.prime, m});
        next.push_back(std::move(v));
      }
    combos = std::move(next);
  }
  std::set<SubProblem> uniq;
  for (const auto& c : combos) {
    const std::size_t k = c.size();
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
      if ((__builtin_popcountl(mask) % 2 == 1) != (want < 0)) continue;
      SubProblem sp = c;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) sp[i].sign = -1;
      std::sort(sp.begin(), sp.end());
      uniq.insert(sp);
    }
  }
  return {uniq.begin(), uniq.end()};
}

IdentityCheck check_criterion_identities(const NewformSpec& spec, const Int& p, unsigned long max_m) {
  IdentityCheck r;
  r.p = p;
  const Int a = coeff_prime_power(spec, p, 1);
  const Int B = spec.hecke_b(p);
  const Int a2 = a * a;
  r.square_ok = coeff_prime_power(spec, p, 2) == a2 - B;
  const Int a4 = coeff_prime_power(spec, p, 4);
  r.fourth_ok = a4 == a2 * a2 - 3 * a2 * B + B * B && 5 * B * B + 4 * a4 == (2 * a2 - 3 * B) * (2 * a2 - 3 * B);
  r.thue_ok = true;
  for (unsigned long j = 1; j <= max_m; ++j)
    if (evaluate(build_form(j), B, a2) != coeff_prime_power(spec, p, 2 * j)) r.thue_ok = false;
  return r;
}

std::vector<AdmissibilityReport> reproduce_tau_exclusions(const SearchBounds& bounds) {
  const NewformSpec& delta = delta_spec();
  std::vector<AdmissibilityReport> out;
  out.push_back(check_unit_target(delta, 1, bounds));
  out.push_back(check_unit_target(delta, -1, bounds));
  const std::vector<std::pair<unsigned long, std::vector<int>>> targets{
      {3, {1, -1}},  {5, {1, -1}},  {7, {1, -1}},  {13, {1, -1}}, {17, {1, -1}},
      {19, {-1}},    {23, {1, -1}}, {37, {1, -1}}, {691, {1, -1}}};
  for (const auto& [ell, signs] : targets)
    for (int s : signs) out.push_back(check_admissibility(delta, ell, 1, s, bounds));
  return out;
}

}  // namespace tl
