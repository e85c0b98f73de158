#include "report_json.hpp"

namespace tlcli {

using namespace tl;

Json num(const Int& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<long long>(v.get_si());
  return v.get_str();
}

Json rat(const tl::Rat& v) { return v.get_str(); }

namespace {

std::string fixed(const Rat& x, unsigned digits, bool up) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rat s = x * scale;
  Int q;
  if (up)
    mpz_cdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  else
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  const bool neg = q < 0;
  std::string d = Int(abs(q)).get_str();
  if (digits == 0) return (neg ? "-" : "") + d;
  if (d.size() <= digits) d = std::string(digits + 1 - d.size(), '0') + d;
  d.insert(d.size() - digits, ".");
  return (neg ? "-" : "") + d;
}

Json points(const std::vector<CurvePoint>& pts) {
  Json a = Json::array();
  for (const auto& [x, y] : pts) a.push_back(Json::array({num(x), num(y)}));
  return a;
}

}  // namespace

Json enclosure(const Enclosure& e, unsigned digits) {
  return Json{{"lo", fixed(e.lo, digits, false)}, {"hi", fixed(e.hi, digits, true)}};
}

Json to_json(const Factorization& f) {
  Json a = Json::array();
  for (const auto& pe : f) a.push_back(Json::array({num(pe.prime), pe.exponent}));
  return a;
}

Json to_json(const ThueForm& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(num(c));
  Json roots = Json::array();
  for (const auto& r : f.roots)
    roots.push_back(Json{{"lo", rat(r.enclosure.lo())}, {"hi", rat(r.enclosure.hi())}, {"rational", r.rational}});
  return Json{{"name", f.name()}, {"degree", f.m}, {"coefficients", coeffs}, {"roots", roots}};
}

Json to_json(const ThueCertificate& c) {
  Json j{{"x_small", c.x_small},
         {"x_mid", c.x_mid},
         {"exhaustive_bound", c.exhaustive_bound},
         {"gap_threshold", c.gap_threshold ? num(*c.gap_threshold) : Json(nullptr)},
         {"midsize_by_convergents", c.midsize_by_convergents},
         {"convergents_per_root", c.convergents_per_root},
         {"candidates_tested", c.candidates_tested}};
  return j;
}

Json to_json(const CurveSpec& s) {
  return Json{{"name", s.name()}, {"family", s.family}, {"a", num(s.a)}, {"e", s.e}, {"c", num(s.c)},
              {"equation", "Y^2 = " + (s.a == 1 ? std::string() : s.a.get_str()) + "X^" + std::to_string(s.e) +
                               (s.c < 0 ? " - " : " + ") + Int(abs(s.c)).get_str()}};
}

Json to_json(const TableCell& c) {
  std::string verdict;
  if (c.discrepancy())
    verdict = "discrepancy";
  else if (c.status == CellStatus::Conditional)
    verdict = "conditional (GRH per paper)";
  else if (c.status == CellStatus::Unknown)
    verdict = "unknown in table";
  else
    verdict = "matches paper table";
  return Json{{"table", c.table},       {"curve", c.curve.name()},       {"status", to_string(c.status)},
              {"verdict", verdict},     {"listed", points(c.listed)},    {"bad_listed", points(c.bad_listed)},
              {"unlisted", points(c.unlisted)}, {"missed", points(c.missed)}};
}

Json to_json(const DiophantineCondition& c) {
  Json j{{"d", c.d}, {"kind", to_string(c.kind)}, {"equation", c.equation}, {"target", num(c.target)}};
  if (c.curve) j["curve"] = to_json(*c.curve);
  if (c.reduced) j["thue_form"] = c.reduced->name();
  return j;
}

Json to_json(const ConditionVerdict& v) {
  Json hits = Json::array();
  for (const auto& h : v.hits) {
    Json n = Json::array();
    for (const auto& x : h.n) n.push_back(num(x));
    hits.push_back(Json{{"point", Json::array({num(h.x), num(h.y)})},
                        {"p", num(h.p)},
                        {"d", v.condition.d},
                        {"coefficient", num(h.coefficient)},
                        {"predicted_n", n},
                        {"realized", h.realized ? Json(*h.realized) : Json(nullptr)}});
  }
  Json rejected = Json::array();
  for (const auto& r : v.rejected)
    rejected.push_back(Json{{"point", Json::array({num(r.x), num(r.y)})}, {"reason", r.reason}});
  Json j{{"condition", to_json(v.condition)},
         {"verdict", to_string(v.status)},
         {"hits", hits},
         {"rejected", rejected},
         {"provenance", v.provenance},
         {"conditional", v.conditional},
         {"open_cell", v.open_cell}};
  if (!v.congruence_note.empty()) j["congruence"] = v.congruence_note;
  if (v.thue_certificate) j["thue_certificate"] = to_json(*v.thue_certificate);
  if (v.curve_x_max) j["curve_x_max"] = v.curve_x_max;
  return j;
}

std::string verdict_text(const AdmissibilityReport& r) {
  if (r.status == AdmissibilityStatus::CandidatesFound) return "candidates found";
  if (r.conditional) return "conditional (GRH per paper)";
  return "excluded within bounds";
}

Json to_json(const AdmissibilityReport& r) {
  Json conds = Json::array();
  for (const auto& v : r.conditions) conds.push_back(to_json(v));
  return Json{{"target", num(r.target)},
              {"status", to_string(r.status)},
              {"verdict", verdict_text(r)},
              {"conditional", r.conditional},
              {"units", r.units},
              {"bounds",
               Json{{"curve_x_max", r.bounds.curve_x_max},
                    {"thue_x_small", r.bounds.thue_x_small},
                    {"thue_x_mid", r.bounds.thue_x_mid}}},
              {"conditions", conds}};
}

Json to_json(const SubProblem& s) {
  Json a = Json::array();
  for (const auto& f : s)
    a.push_back(Json{{"sign", f.sign}, {"ell", num(f.ell)}, {"m", f.m}, {"value", num(f.value())}});
  return a;
}

Json to_json(const EffectiveBound& b) {
  return Json{{"family", b.family},
              {"ell", b.ell},
              {"m", b.m},
              {"sign", b.eps},
              {"a", rat(b.a)},
              {"sqrt_coefficient", rat(b.b)},
              {"constant", rat(b.c)},
              {"formula", b.display},
              {"source", b.source},
              {"value", enclosure(b.value(), 3)}};
}

Json to_json(const DefectRecord& d) {
  Json j{{"n", d.n}, {"value", num(d.value)}, {"source", d.source}, {"row", d.row}};
  if (!d.family.empty()) {
    j["family"] = d.family;
    j["epsilon"] = d.epsilon;
    j["r"] = d.r;
  }
  return j;
}

}  // namespace tlcli
