// taulehmer command-line frontend. Every verb prints one JSON document.
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "report_json.hpp"
#include "taulehmer/errors.hpp"
#include "taulehmer/newform.hpp"

using namespace tl;
using tlcli::Json;
using tlcli::num;
using tlcli::to_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormOpts {
  std::string form = "delta";
  std::string spec_path;

  void add(CLI::App* sub) {
    sub->add_option("--form", form, "builtin form")->check(CLI::IsMember({"delta"}));
    sub->add_option("--spec", spec_path, "NewformSpec JSON file")->check(CLI::ExistingFile);
  }
  NewformSpec load() const { return spec_path.empty() ? delta_spec() : load_newform_spec(spec_path); }
};

struct BoundOpts {
  unsigned long x_max = kCurveXMax;
  unsigned long x_small = kThueSmall;
  unsigned long x_mid = kThueMid;

  void add(CLI::App* sub, bool curve, bool thue) {
    if (curve) sub->add_option("--xmax", x_max, "curve search bound |X| <= xmax");
    if (thue) {
      sub->add_option("--x-small", x_small, "exhaustive Thue range");
      sub->add_option("--x-mid", x_mid, "convergent Thue range");
    }
  }
  void validate() const {
    if (x_max < 1 || x_small < 1 || x_mid < 1) throw UsageError("bounds must be positive");
    if (x_small > x_mid) throw UsageError("--x-small must not exceed --x-mid");
  }
};

Int parse_int(const std::string& s) {
  Int v;
  if (v.set_str(s, 10) != 0) throw UsageError("not an integer: " + s);
  return v;
}

int parse_sign(const std::string& s) {
  if (s == "plus" || s == "+" || s == "1" || s == "+1") return 1;
  if (s == "minus" || s == "-" || s == "-1") return -1;
  throw UsageError("sign must be plus or minus");
}

Json envelope(const std::string& command) { return Json{{"schema", tlcli::kSchema}, {"command", command}}; }

// |target| = ell^m for an odd prime ell
std::pair<unsigned long, unsigned long> prime_power_target(const Int& t) {
  auto f = factor(abs(t));
  if (f.size() != 1 || f[0].prime == 2 || !mpz_fits_ulong_p(f[0].prime.get_mpz_t()))
    throw DomainError("target must be +-1 or +- an odd prime power; use decompose for other odd targets");
  return {mpz_get_ui(f[0].prime.get_mpz_t()), f[0].exponent};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficients of newforms, Lucas defects, Thue equations and curve searches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "taulehmer 1.0");
  std::function<Json()> run;
  unsigned workers = 1;
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "worker threads (output does not depend on it)")
        ->check(CLI::Range(1u, 256u));
  };

  // tau
  unsigned long up_to = 10;
  auto* tau = app.add_subcommand("tau", "tau(1), ..., tau(N)");
  tau->add_option("--up-to", up_to, "N")->required()->check(CLI::Range(1ul, 1000000ul));
  tau->callback([&] {
    run = [&] {
      QSeries q = delta_expansion(up_to);
      Json vals = Json::array();
      for (unsigned long n = 1; n <= up_to; ++n) vals.push_back(num(q.at(n)));
      Json j = envelope("tau");
      j["up_to"] = up_to;
      j["values"] = vals;
      return j;
    };
  });

  // coeff
  FormOpts coeff_form;
  std::string coeff_n;
  bool coeff_factor = false;
  auto* coeff_cmd = app.add_subcommand("coeff", "a_f(n) by multiplicativity and the Hecke recursion");
  coeff_cmd->add_option("--n", coeff_n, "index n >= 1")->required();
  coeff_form.add(coeff_cmd);
  coeff_cmd->add_flag("--factor", coeff_factor, "also factor the value");
  coeff_cmd->callback([&] {
    run = [&] {
      const NewformSpec spec = coeff_form.load();
      const Int n = parse_int(coeff_n);
      const Int v = coeff(spec, n);
      Json j = envelope("coeff");
      j["form"] = spec.name;
      j["n"] = num(n);
      j["value"] = num(v);
      if (coeff_factor && v != 0) {
        auto f = factor(v);
        j["factorization"] = to_json(f);
        j["big_omega"] = big_omega(f);
      }
      return j;
    };
  });

  // lucas
  std::string lucas_a, lucas_b;
  unsigned long lucas_count = 30;
  auto* lucas = app.add_subcommand("lucas", "Lucas sequence of (A, B) and its defective terms");
  lucas->add_option("--A", lucas_a, "A = a_f(p)")->required();
  lucas->add_option("--B", lucas_b, "B = p^(2k-1)")->required();
  lucas->add_option("--count", lucas_count, "number of terms")->check(CLI::Range(1ul, 1000ul));
  lucas->callback([&] {
    run = [&] {
      LucasPair pair = make_pair(parse_int(lucas_a), parse_int(lucas_b));
      Json terms = Json::array();
      for (const auto& u : lucas_terms(pair, lucas_count)) terms.push_back(num(u));
      Json defects = Json::array();
      for (const auto& d : classify_defects(pair)) defects.push_back(to_json(d));
      Json j = envelope("lucas");
      j["A"] = num(pair.A);
      j["B"] = num(pair.B);
      j["modularity"] = pair.modularity();
      j["terms"] = terms;
      j["defects"] = defects;
      return j;
    };
  });

  // thue-gen
  unsigned long gen_m = 0, gen_p = 0;
  auto* thue_gen = app.add_subcommand("thue-gen", "the form F_{2m}, or the reduced form for a prime p");
  auto* gm = thue_gen->add_option("--m", gen_m, "F_{2m}")->check(CLI::Range(1ul, 2000ul));
  thue_gen->add_option("--reduced", gen_p, "odd prime p")->excludes(gm);
  thue_gen->callback([&] {
    run = [&] {
      if (!gen_m && !gen_p) throw UsageError("give --m or --reduced");
      Json j = envelope("thue-gen");
      j["form"] = to_json(gen_m ? build_form(gen_m) : build_reduced_form(gen_p));
      return j;
    };
  });

  // thue-solve
  unsigned long solve_m = 0, solve_p = 0;
  std::string solve_rhs;
  BoundOpts solve_bounds;
  auto* thue_solve = app.add_subcommand("thue-solve", "bounded search for F(x, y) = rhs");
  auto* sm = thue_solve->add_option("--m", solve_m, "F_{2m}")->check(CLI::Range(1ul, 2000ul));
  thue_solve->add_option("--reduced", solve_p, "reduced form for the odd prime p")->excludes(sm);
  thue_solve->add_option("--rhs", solve_rhs, "right-hand side")->required();
  solve_bounds.add(thue_solve, false, true);
  add_workers(thue_solve);
  thue_solve->callback([&] {
    run = [&] {
      if (!solve_m && !solve_p) throw UsageError("give --m or --reduced");
      solve_bounds.validate();
      ThueForm f = solve_m ? build_form(solve_m) : build_reduced_form(solve_p);
      ThueResult r = solve_bounded(f, parse_int(solve_rhs), solve_bounds.x_small, solve_bounds.x_mid, workers);
      Json sols = Json::array();
      for (const auto& [x, y] : r.solutions) sols.push_back(Json::array({num(x), num(y)}));
      Json j = envelope("thue-solve");
      j["form"] = f.name();
      j["rhs"] = num(parse_int(solve_rhs));
      j["solutions"] = sols;
      if (solve_p) {
        Json lifted = Json::array();
        for (const auto& pt : r.solutions) {
          auto [x, y] = lift_reduced(pt);
          lifted.push_back(Json::array({num(x), num(y)}));
        }
        j["solutions_F" + std::to_string(solve_p - 1)] = lifted;
      }
      j["certificate"] = to_json(r.certificate);
      j["verdict"] = "complete within bounds";
      return j;
    };
  });

  // curve-search
  std::string cs_family = "C", cs_ell = "1", cs_sign = "plus";
  unsigned long cs_d = 1, cs_r = 0;
  BoundOpts cs_bounds;
  auto* curve = app.add_subcommand("curve-search", "integer points of Y^2 = aX^e + c with |X| <= xmax");
  curve->add_option("--family", cs_family, "C, H or B1..B6")
      ->check(CLI::IsMember({"C", "H", "B1", "B2", "B3", "B4", "B5", "B6"}));
  curve->add_option("--d", cs_d, "d for C and H, k for the B families")->check(CLI::Range(1ul, 1000ul));
  curve->add_option("--ell", cs_ell, "constant ell for C and H");
  curve->add_option("--sign", cs_sign, "plus or minus");
  curve->add_option("--r", cs_r, "exponent r for B1, B4, B6");
  cs_bounds.add(curve, true, false);
  add_workers(curve);
  curve->callback([&] {
    run = [&] {
      cs_bounds.validate();
      const int s = parse_sign(cs_sign);
      CurveSpec spec = cs_family == "C"   ? curve_C(cs_d, parse_int(cs_ell), s)
                       : cs_family == "H" ? curve_H(cs_d, parse_int(cs_ell), s)
                                          : curve_B(cs_family, cs_d, cs_r, s);
      CurveSearch r = search_points(spec, cs_bounds.x_max, workers);
      Json pts = Json::array();
      for (const auto& [x, y] : r.points) pts.push_back(Json::array({num(x), num(y)}));
      Json j = envelope("curve-search");
      j["curve"] = to_json(spec);
      j["x_max"] = r.x_max;
      j["points"] = pts;
      j["verdict"] = "complete within bounds";
      return j;
    };
  });

  // verify-tables
  BoundOpts vt_bounds;
  bool vt_only_flagged = false;
  auto* verify = app.add_subcommand("verify-tables", "substitute and re-search the curve tables");
  vt_bounds.add(verify, true, false);
  verify->add_flag("--flagged-only", vt_only_flagged, "list only cells that are discrepant or not verified");
  add_workers(verify);
  verify->callback([&] {
    run = [&] {
      vt_bounds.validate();
      TableReport rep = verify_tables(vt_bounds.x_max, workers);
      Json cells = Json::array();
      std::size_t disc = 0;
      for (const auto& c : rep.cells) {
        if (c.discrepancy()) ++disc;
        if (!vt_only_flagged || c.discrepancy() || c.status != CellStatus::Verified) cells.push_back(to_json(c));
      }
      Json j = envelope("verify-tables");
      j["x_max"] = rep.x_max;
      j["ok"] = rep.ok();
      j["summary"] = Json{{"cells", rep.cells.size()},
                          {"verified", rep.count(CellStatus::Verified)},
                          {"conditional", rep.count(CellStatus::Conditional)},
                          {"unknown", rep.count(CellStatus::Unknown)},
                          {"discrepancies", disc}};
      j["cells"] = cells;
      return j;
    };
  });

  // admissible
  FormOpts adm_form;
  std::string adm_target;
  BoundOpts adm_bounds;
  auto* adm = app.add_subcommand("admissible", "can +-ell^m (or +-1) be a coefficient a_f(n), n > 1?");
  adm->add_option("--target", adm_target, "+-ell^m or +-1")->required();
  adm_form.add(adm);
  adm_bounds.add(adm, true, true);
  add_workers(adm);
  adm->callback([&] {
    run = [&] {
      adm_bounds.validate();
      const NewformSpec spec = adm_form.load();
      const Int t = parse_int(adm_target);
      if (t == 0) throw DomainError("target must be nonzero");
      SearchBounds b{adm_bounds.x_max, adm_bounds.x_small, adm_bounds.x_mid, workers};
      AdmissibilityReport r;
      if (abs(t) == 1) {
        r = check_unit_target(spec, sgn(t), b);
      } else {
        auto [ell, m] = prime_power_target(t);
        r = check_admissibility(spec, ell, m, sgn(t), b);
      }
      Json j = envelope("admissible");
      j["form"] = spec.name;
      j["report"] = to_json(r);
      return j;
    };
  });

  // omega-bound
  FormOpts om_form;
  std::string om_n;
  auto* omega = app.add_subcommand("omega-bound", "lower bound for Omega(a_f(n))");
  omega->add_option("--n", om_n, "n > 1")->required();
  om_form.add(omega);
  omega->callback([&] {
    run = [&] {
      const NewformSpec spec = om_form.load();
      const Int n = parse_int(om_n);
      Json j = envelope("omega-bound");
      j["form"] = spec.name;
      j["n"] = num(n);
      j["factorization"] = to_json(factor(n));
      j["lower_bound"] = omega_lower_bound(spec, n);
      return j;
    };
  });

  // decompose
  FormOpts dec_form;
  std::string dec_target;
  auto* dec = app.add_subcommand("decompose", "split an odd target into prime-power coefficient sub-problems");
  dec->add_option("--target", dec_target, "odd alpha, |alpha| > 1")->required();
  dec_form.add(dec);
  dec->callback([&] {
    run = [&] {
      const NewformSpec spec = dec_form.load();
      const Int a = parse_int(dec_target);
      Json subs = Json::array();
      for (const auto& s : decompose_odd_target(spec, a)) subs.push_back(to_json(s));
      Json j = envelope("decompose");
      j["target"] = num(a);
      j["subproblems"] = subs;
      return j;
    };
  });

  // weight-bound
  unsigned long wb_ell = 3, wb_m = 1;
  std::string wb_sign = "plus";
  bool wb_footnote = false;
  auto* wb = app.add_subcommand("weight-bound", "weight above which +-ell^m is not a coefficient");
  wb->add_option("--ell", wb_ell, "odd prime")->required();
  wb->add_option("--m", wb_m, "exponent")->required()->check(CLI::PositiveNumber);
  wb->add_option("--sign", wb_sign, "plus or minus")->required();
  wb->add_flag("--footnote", wb_footnote, "also give the unrounded M^-(3, m)");
  wb->callback([&] {
    run = [&] {
      const int s = parse_sign(wb_sign);
      Json j = envelope("weight-bound");
      j["ell"] = wb_ell;
      j["m"] = wb_m;
      j["sign"] = s;
      if (wb_ell == 3 || wb_ell == 5) {
        j["bound"] = to_json(weight_bound_M(s, wb_ell, wb_m));
        if (wb_footnote) {
          if (wb_ell != 3 || s != -1) throw DomainError("the unrounded value exists only for ell = 3, sign minus");
          j["footnote_bound"] = to_json(weight_bound_M_footnote(wb_m));
        }
      } else {
        GeneralWeightBound g = weight_bound_general(s, wb_ell, wb_m);
        j["bound"] = nullptr;
        j["computed"] = g.computed;
        j["note"] = g.note;
      }
      return j;
    };
  });

  // reproduce
  std::string claim;
  BoundOpts rep_bounds;
  auto* rep = app.add_subcommand("reproduce", "rerun a headline claim");
  rep->add_option("claim", claim, "thm1.2")->required()->check(CLI::IsMember({"thm1.2"}));
  rep_bounds.add(rep, true, true);
  add_workers(rep);
  rep->callback([&] {
    run = [&] {
      rep_bounds.validate();
      SearchBounds b{rep_bounds.x_max, rep_bounds.x_small, rep_bounds.x_mid, workers};
      Json targets = Json::array();
      bool all = true;
      for (const auto& r : reproduce_tau_exclusions(b)) {
        all = all && r.status == AdmissibilityStatus::ExcludedWithinBounds;
        targets.push_back(to_json(r));
      }
      Json j = envelope("reproduce");
      j["claim"] = claim;
      j["form"] = "delta";
      j["all_excluded_within_bounds"] = all;
      j["targets"] = targets;
      return j;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Json out = run();
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    Json err = envelope(app.get_subcommands().front()->get_name());
    err["error"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
}
