#include "taulehmer/curves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "fixture_io.hpp"
#include "taulehmer/errors.hpp"

namespace tl {

namespace {

Int pow_si(long b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), Int(b).get_mpz_t(), e);
  return r;
}

struct Batch {
  std::vector<std::vector<CurvePoint>> pts;  // one per constant
  unsigned long tested = 0;
};

void test_all(const Int& v, const std::vector<Int>& cs, const Int& x, Batch& out, bool mirror) {
  Int t, y;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    t = v + cs[i];
    ++out.tested;
    if (sgn(t) < 0 || !mpz_perfect_square_p(t.get_mpz_t())) continue;
    mpz_sqrt(y.get_mpz_t(), t.get_mpz_t());
    out.pts[i].emplace_back(x, y);
    if (mirror) out.pts[i].emplace_back(Int(-x), y);
  }
}

// Integer points of Y^2 = a X^e + c for each c, |x| <= x_max.
Batch batch_scan(const Int& a, unsigned long e, const std::vector<Int>& cs, unsigned long x_max, unsigned workers) {
  Batch res;
  res.pts.resize(cs.size());
  if (cs.empty()) return res;
  const bool even = e % 2 == 0;
  const Int cmax = *std::max_element(cs.begin(), cs.end());

  auto positive = [&](unsigned long lo, unsigned long hi, Batch& out) {
    Int v;
    for (unsigned long xu = lo; xu <= hi; ++xu) {
      mpz_ui_pow_ui(v.get_mpz_t(), xu, e);
      v *= a;
      test_all(v, cs, Int(xu), out, even && xu > 0);
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(x_max + 1)));
  std::vector<Batch> parts(workers);
  for (auto& p : parts) p.pts.resize(cs.size());
  if (workers == 1) {
    positive(0, x_max, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const unsigned long n = x_max + 1, chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      unsigned long lo = w * chunk, hi = std::min(x_max, (w + 1) * chunk - 1);
      if (lo > hi) continue;
      pool.emplace_back([&, lo, hi, w] { positive(lo, hi, parts[w]); });
    }
    for (auto& t : pool) t.join();
  }

  if (!even) {
    // Odd exponent: a x^e is monotone in x, so once a x^e + max c < 0 with a > 0
    // no further negative x can give a point.
    Int v;
    for (unsigned long xu = 1; xu <= x_max; ++xu) {
      mpz_ui_pow_ui(v.get_mpz_t(), xu, e);
      v = -(a * v);
      if (sgn(a) > 0 && v + cmax < 0) break;
      test_all(v, cs, Int(-static_cast<long>(xu)), parts[0], false);
    }
  }

  for (auto& p : parts) {
    res.tested += p.tested;
    for (std::size_t i = 0; i < cs.size(); ++i) res.pts[i].insert(res.pts[i].end(), p.pts[i].begin(), p.pts[i].end());
  }
  for (auto& v : res.pts) std::sort(v.begin(), v.end());
  return res;
}

std::string sign_char(int eps) { return eps > 0 ? "+" : "-"; }

int check_eps(int eps) {
  if (eps != 1 && eps != -1) throw DomainError("curve sign must be +1 or -1");
  return eps;
}

std::vector<CurvePoint> read_points(const nlohmann::json& arr) {
  std::vector<CurvePoint> out;
  for (const auto& p : arr) out.emplace_back(detail::json_int(p[0]), detail::json_int(p[1]));
  std::sort(out.begin(), out.end());
  return out;
}

CellStatus read_status(const std::string& s) {
  if (s == "verified") return CellStatus::Verified;
  if (s == "conditional") return CellStatus::Conditional;
  if (s == "unknown") return CellStatus::Unknown;
  throw DomainError("unknown cell status " + s);
}

// Table 8 prints (|x|, |y|).
std::vector<CurvePoint> fold_abs(const std::vector<CurvePoint>& pts) {
  std::set<CurvePoint> s;
  for (const auto& [x, y] : pts) s.emplace(abs(x), y);
  return {s.begin(), s.end()};
}

}  // namespace

std::string CurveSpec::name() const {
  if (family == "C" || family == "H")
    return family + sign_char(eps) + "_{" + std::to_string(d) + "," + ell.get_str() + "}";
  std::string s = family + "_{" + std::to_string(d) + "}";
  if (family == "B1" || family == "B4" || family == "B6") s += "^{r=" + std::to_string(r) + "}";
  if (family != "B2" && family != "B4") s += sign_char(eps);
  return s;
}

Int CurveSpec::rhs(const Int& x) const {
  Int v;
  mpz_pow_ui(v.get_mpz_t(), x.get_mpz_t(), e);
  return a * v + c;
}

CurveSpec curve_C(unsigned long d, const Int& ell, int eps) {
  if (d < 1) throw DomainError("curve_C: d must be positive");
  CurveSpec s;
  s.family = "C";
  s.d = d;
  s.eps = check_eps(eps);
  s.ell = ell;
  s.a = 1;
  s.e = 2 * d - 1;
  s.c = eps * ell;
  return s;
}

CurveSpec curve_H(unsigned long d, const Int& ell, int eps) {
  if (d < 1) throw DomainError("curve_H: d must be positive");
  CurveSpec s;
  s.family = "H";
  s.d = d;
  s.eps = check_eps(eps);
  s.ell = ell;
  s.a = 5;
  s.e = 2 * d;
  s.c = 4 * eps * ell;
  return s;
}

CurveSpec curve_B(const std::string& family, unsigned long k, unsigned long r, int eps) {
  if (k < 1) throw DomainError("curve_B: k must be positive");
  CurveSpec s;
  s.family = family;
  s.d = k;
  s.eps = check_eps(eps);
  s.r = r;
  s.e = 2 * k - 1;
  if (family == "B1") {
    s.a = 1;
    s.c = eps * pow_si(3, r);
  } else if (family == "B2") {
    s.a = 2;
    s.c = -1;
    s.eps = -1;
  } else if (family == "B3") {
    s.a = 2;
    s.c = 2 * eps;
  } else if (family == "B4") {
    s.a = 3;
    s.c = pow_si(-2, r);
    s.eps = r % 2 == 0 ? 1 : -1;
  } else if (family == "B5") {
    s.a = 3;
    s.c = 3 * eps;
  } else if (family == "B6") {
    s.a = 3;
    s.c = 3 * eps * pow_si(2, r);
  } else {
    throw DomainError("curve_B: unknown family " + family);
  }
  return s;
}

CurveSearch search_points(const CurveSpec& spec, unsigned long x_max, unsigned workers) {
  if (x_max < 1) throw DomainError("search_points: x_max must be positive");
  Batch b = batch_scan(spec.a, spec.e, {spec.c}, x_max, workers);
  CurveSearch out;
  out.points = std::move(b.pts[0]);
  out.x_max = x_max;
  out.tested = b.tested;
  return out;
}

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Verified: return "verified";
    case CellStatus::Conditional: return "conditional";
    case CellStatus::Unknown: return "unknown";
  }
  return "?";
}

bool TableCell::discrepancy() const {
  if (!bad_listed.empty()) return true;
  if (status == CellStatus::Unknown) return false;
  return !unlisted.empty() || !missed.empty();
}

bool TableReport::ok() const {
  return std::none_of(cells.begin(), cells.end(), [](const TableCell& c) { return c.discrepancy(); });
}

std::size_t TableReport::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [s](const TableCell& c) { return c.status == s; }));
}

TableReport verify_tables(unsigned long x_max, unsigned workers) {
  TableReport rep;
  rep.x_max = x_max;

  for (const char* t : {"6", "7"}) {
    const auto& j = detail::fixture(std::string("curves_table") + t + ".json");
    const int eps = j.at("sign").get<int>();
    for (const auto& row : j.at("rows")) {
      const Int ell(row.at("ell").get<long>());
      for (const auto& [dk, pts] : row.at("cells").items()) {
        TableCell c;
        c.table = t;
        c.curve = curve_C(std::stoul(dk), ell, eps);
        c.listed = read_points(pts);
        rep.cells.push_back(std::move(c));
      }
    }
  }
  {
    const auto& j = detail::fixture("curves_table8.json");
    for (const auto& row : j.at("rows")) {
      const Int ell(row.at("ell").get<long>());
      for (const auto& [key, cell] : row.at("cells").items()) {
        TableCell c;
        c.table = "8";
        c.curve = curve_H(std::stoul(key.substr(0, key.size() - 1)), ell, key.back() == '+' ? 1 : -1);
        c.listed = read_points(cell.at("points"));
        c.status = read_status(cell.at("status").get<std::string>());
        rep.cells.push_back(std::move(c));
      }
    }
  }

  for (auto& c : rep.cells)
    for (const auto& [x, y] : c.listed) {
      Int v = c.curve.rhs(x);
      if (v != y * y) c.bad_listed.emplace_back(x, y);
    }
  if (x_max == 0) return rep;

  // One scan per (a, e), testing every constant at once.
  std::map<std::pair<Int, unsigned long>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rep.cells.size(); ++i) groups[{rep.cells[i].curve.a, rep.cells[i].curve.e}].push_back(i);
  for (const auto& [key, idx] : groups) {
    std::vector<Int> cs;
    for (auto i : idx) cs.push_back(rep.cells[i].curve.c);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    Batch b = batch_scan(key.first, key.second, cs, x_max, workers);
    for (auto i : idx) {
      auto& c = rep.cells[i];
      auto pos = std::lower_bound(cs.begin(), cs.end(), c.curve.c) - cs.begin();
      c.found = c.table == "8" ? fold_abs(b.pts[pos]) : b.pts[pos];
      std::set<CurvePoint> listed(c.listed.begin(), c.listed.end()), found(c.found.begin(), c.found.end());
      for (const auto& p : c.found)
        if (!listed.count(p)) c.unlisted.push_back(p);
      for (const auto& p : c.listed)
        if (abs(p.first) <= x_max && !found.count(p)) c.missed.push_back(p);
    }
  }
  return rep;
}

std::vector<Int> lucas_pell_points(int sign, unsigned long x_max) {
  check_eps(sign);
  if (x_max < 1) throw DomainError("lucas_pell_points: x_max must be positive");
  std::vector<Int> out;
  Int t;
  for (unsigned long x = 1; x <= x_max; ++x) {
    t = Int(x) * x + 4 * sign;
    if (t % 5 != 0) continue;
    t /= 5;
    if (mpz_perfect_square_p(t.get_mpz_t())) out.emplace_back(x);
  }
  return out;
}

}  // namespace tl
