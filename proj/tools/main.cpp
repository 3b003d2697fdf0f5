#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "restnorm/errors.hpp"
#include "restnorm/exponent.hpp"
#include "restnorm/gamma_weight.hpp"
#include "restnorm/golden.hpp"
#include "restnorm/integrals.hpp"
#include "restnorm/params.hpp"
#include "restnorm/polytope.hpp"
#include "restnorm/second_moment.hpp"
#include "restnorm/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace restnorm;

constexpr const char* kSchema = "restnorm/v1";

// Accepts both a JSON array ("[2,0,-2]") and a bare comma-separated list
// ("2,0,-2").
std::vector<double> parse_reals(const std::string& text) {
  std::string s = text;
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  if (s.empty()) throw UsageError("empty vector argument");
  std::vector<double> out;
  if (s.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("vector argument is not valid JSON: ") +
                       e.what());
    }
    if (!j.is_array()) throw UsageError("vector argument must be an array");
    for (const auto& v : j) {
      if (!v.is_number()) throw UsageError("vector entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = s.find(',', pos);
      const std::string tok =
          s.substr(pos, comma == std::string::npos ? comma : comma - pos);
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw UsageError("cannot parse '" + tok + "' as a real number");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

ordered_json quad_json(const QuadratureResult& r) {
  ordered_json j{{"value", r.value},
                 {"absErrorEstimate", r.abs_error_estimate},
                 {"evaluations", r.evaluations}};
  if (r.truncated_at) {
    j["truncatedAt"] = {r.truncated_at->first, r.truncated_at->second};
  }
  return j;
}

ordered_json lattice_json(const LatticeSumResult& r) {
  return ordered_json{{"value", r.value},
                      {"points", r.points},
                      {"evaluations", r.evaluations}};
}

struct VectorOptions {
  std::string alpha_text;
  std::string beta_text;
  AlphaParams alpha() const { return make_alpha(parse_reals(alpha_text)); }
  BetaParams beta() const { return make_beta(parse_reals(beta_text)); }
};

int exit_code_for(const Error& e) {
  if (dynamic_cast<const BoundViolation*>(&e) ||
      dynamic_cast<const QuadratureFailure*>(&e) ||
      dynamic_cast<const AccuracyGuard*>(&e) ||
      dynamic_cast<const BudgetExceeded*>(&e)) {
    return 2;
  }
  return 3;
}

const char* error_kind(const Error& e) {
  return exit_code_for(e) == 2 ? "assertion" : "input";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral restriction-norm toolkit"};
  app.require_subcommand(1);

  // r-eval
  auto* cmd_r = app.add_subcommand("r-eval", "Evaluate the exponent r(t)");
  double opt_t = 0.0;
  VectorOptions rv;
  cmd_r->add_option("--t", opt_t, "Evaluation point")->required();
  cmd_r->add_option("--alpha", rv.alpha_text, "n+1 spectral values")->required();
  cmd_r->add_option("--beta", rv.beta_text, "n spectral values")->required();

  // median-interval
  auto* cmd_mi = app.add_subcommand("median-interval",
                                    "Minimizing interval of the exponent");
  VectorOptions mv;
  cmd_mi->add_option("--alpha", mv.alpha_text)->required();
  cmd_mi->add_option("--beta", mv.beta_text)->required();

  // admissible
  auto* cmd_adm = app.add_subcommand("admissible",
                                     "Does the exponent attain zero");
  VectorOptions av;
  cmd_adm->add_option("--alpha", av.alpha_text)->required();
  cmd_adm->add_option("--beta", av.beta_text)->required();

  // q-eval
  auto* cmd_q = app.add_subcommand("q-eval", "Log of the gamma-factor weight");
  double q_t = 0.0;
  VectorOptions qv;
  bool q_exact = false, q_stirling = false;
  cmd_q->add_option("--t", q_t)->required();
  cmd_q->add_option("--alpha", qv.alpha_text)->required();
  cmd_q->add_option("--beta", qv.beta_text)->required();
  auto* fe = cmd_q->add_flag("--exact", q_exact, "Gamma-factor evaluation (default)");
  cmd_q->add_flag("--stirling", q_stirling, "Decay-rate surrogate")->excludes(fe);

  // polytope
  auto* cmd_poly = app.add_subcommand("polytope", "Gap-polytope operations");
  cmd_poly->require_subcommand(1);
  std::string poly_y, poly_x, poly_format = "json";
  std::uint64_t poly_samples = 1'000'000;
  std::uint64_t poly_seed = 1;
  auto* poly_check = cmd_poly->add_subcommand("check", "Point membership");
  auto* poly_vol = cmd_poly->add_subcommand("volume", "Volume three ways");
  auto* poly_fac = cmd_poly->add_subcommand("facets", "Facet list");
  auto* poly_emit = cmd_poly->add_subcommand("emit", "Full geometry report");
  for (auto* c : {poly_check, poly_vol, poly_fac, poly_emit}) {
    c->add_option("--y", poly_y, "Positive side lengths")->required();
    c->add_option("--format", poly_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }
  poly_check->add_option("--x", poly_x, "Point to test")->required();
  poly_vol->add_option("--samples", poly_samples, "Hit-or-miss draws");
  poly_vol->add_option("--seed", poly_seed, "Sampling seed");

  // integrate
  auto* cmd_int = app.add_subcommand("integrate", "Kernel and lattice bounds");
  cmd_int->require_subcommand(1);
  double int_a = 0.0, int_b = 0.0, int_x = 0.0, int_k = 2.0, int_c = 0.0;
  double int_tol = 0.0;
  std::int64_t int_budget = 50'000'000;
  std::uint64_t int_samples = 2'000'000, int_seed = 1;
  std::string int_window = "im", int_golden;
  VectorOptions iv;
  bool int_exact = false, int_stirling = false;
  auto* int_kernel = cmd_int->add_subcommand("kernel", "Symmetric window");
  auto* int_hahb = cmd_int->add_subcommand("hahb", "Between two shifts");
  auto* int_box = cmd_int->add_subcommand("box", "Per-coordinate box factors");
  auto* int_qt = cmd_int->add_subcommand("qt", "Weight over a t-window");
  auto* int_local = cmd_int->add_subcommand("local-sum", "Shifted-window lattice sum");
  auto* int_lower = cmd_int->add_subcommand("lower-sum", "Shrunken-tile lattice sum");
  auto* int_calpha = cmd_int->add_subcommand("c-alpha", "Interlacing-box mass");
  for (auto* c : {int_kernel, int_hahb}) {
    c->add_option("--a", int_a)->required();
    c->add_option("--b", int_b)->required();
  }
  int_kernel->add_option("--X", int_x, "Half-width")->required();
  for (auto* c : {int_box, int_qt, int_local, int_lower, int_calpha}) {
    c->add_option("--alpha", iv.alpha_text)->required();
  }
  int_qt->add_option("--beta", iv.beta_text)->required();
  int_box->add_option("--K", int_k, "Widening radius");
  int_local->add_option("--K", int_k, "Window radius");
  int_qt->add_option("--C", int_c, "Widening constant for the widened window");
  int_qt->add_option("--window", int_window, "im, widened, or full")
      ->check(CLI::IsMember({"im", "widened", "full"}));
  for (auto* c : {int_qt, int_calpha}) {
    bool* ex = &int_exact;
    bool* st = &int_stirling;
    auto* f = c->add_flag("--exact", *ex, "Gamma-factor integrand");
    c->add_flag("--stirling", *st, "Surrogate integrand (default)")->excludes(f);
  }
  for (auto* c : {int_kernel, int_hahb, int_box, int_qt, int_local, int_lower,
                  int_calpha}) {
    c->add_option("--tol", int_tol, "Relative quadrature tolerance");
    c->add_option("--budget", int_budget, "Evaluation budget");
    c->add_option("--golden", int_golden, "Recorded-constant table path");
  }
  int_calpha->add_option("--samples", int_samples, "Sampling fallback draws");
  int_calpha->add_option("--seed", int_seed, "Sampling fallback seed");

  // second-moment
  auto* cmd_sm = app.add_subcommand("second-moment",
                                    "Mean square of zeta on a window");
  double sm_t0 = 0.0, sm_t = 0.0;
  bool sm_smoothed = false;
  cmd_sm->add_option("--t0", sm_t0, "Window center")->required();
  cmd_sm->add_option("--t", sm_t, "Window half-length")->required();
  cmd_sm->add_flag("--smoothed", sm_smoothed, "Smoothed lower bound");

  // verify-suite
  auto* cmd_vs = app.add_subcommand("verify-suite", "Run every invariant suite");
  VerifyConfig vcfg;
  std::string vs_format = "json";
  cmd_vs->add_option("--n", vcfg.n_max, "Largest rank exercised")
      ->check(CLI::Range(1, 6));
  cmd_vs->add_option("--seed", vcfg.seed, "Seed for the randomized scans");
  cmd_vs->add_option("--samples", vcfg.samples, "Per-rank sample budget");
  cmd_vs->add_option("--golden", vcfg.golden_path, "Recorded-constant table path");
  cmd_vs->add_flag("--update-golden", vcfg.update_golden,
                   "Rewrite the recorded constants from this run");
  cmd_vs->add_option("--format", vs_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json err{{"schema", kSchema},
                     {"error", "usage"},
                     {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 3;
  }

  try {
    if (*cmd_r) {
      const AlphaParams alpha = rv.alpha();
      const BetaParams beta = rv.beta();
      require_compatible(alpha, beta);
      emit({{"schema", kSchema},
            {"op", "r-eval"},
            {"t", opt_t},
            {"alpha", alpha.values},
            {"beta", beta.values},
            {"value", r_exponent(opt_t, alpha, beta)}});
      return 0;
    }
    if (*cmd_mi) {
      const AlphaParams alpha = mv.alpha();
      const BetaParams beta = mv.beta();
      require_compatible(alpha, beta);
      const Interval im = median_interval(alpha, beta);
      emit({{"schema", kSchema},
            {"op", "median-interval"},
            {"alpha", alpha.values},
            {"beta", beta.values},
            {"interval",
             {{"lo", im.lo}, {"hi", im.hi}, {"length", im.length()}}}});
      return 0;
    }
    if (*cmd_adm) {
      const AlphaParams alpha = av.alpha();
      const BetaParams beta = av.beta();
      require_compatible(alpha, beta);
      emit({{"schema", kSchema},
            {"op", "admissible"},
            {"alpha", alpha.values},
            {"beta", beta.values},
            {"admissible", is_admissible(alpha, beta)}});
      return 0;
    }
    if (*cmd_q) {
      const AlphaParams alpha = qv.alpha();
      const BetaParams beta = qv.beta();
      require_compatible(alpha, beta);
      ordered_json doc{{"schema", kSchema},
                       {"op", "q-eval"},
                       {"t", q_t},
                       {"alpha", alpha.values},
                       {"beta", beta.values},
                       {"mode", q_stirling ? "stirling" : "exact"}};
      if (q_stirling) {
        doc["logValue"] = log_q_stirling(q_t, alpha, beta);
        doc["underflow"] = false;
      } else {
        const LogWeight w = log_q_exact(q_t, alpha, beta);
        doc["logValue"] = w.log_value;
        doc["underflow"] = w.underflow_flag;
      }
      emit(doc);
      return 0;
    }
    if (*cmd_poly) {
      const YVector yv = make_y(parse_reals(poly_y));
      if (*poly_check) {
        const std::vector<double> x = parse_reals(poly_x);
        const bool in_sys = member_system(x, yv);
        const bool in_zon = member_zonotope(x, yv);
        const double sm = system_margin(x, yv);
        const double zm = zonotope_margin(x, yv);
        if (poly_format == "csv") {
          std::cout << "inSystem,inTiling,systemMargin,tilingMargin\n"
                    << (in_sys ? 1 : 0) << "," << (in_zon ? 1 : 0) << "," << sm
                    << "," << zm << "\n";
        } else {
          emit({{"schema", kSchema},
                {"op", "polytope-check"},
                {"y", yv.y},
                {"x", x},
                {"inSystem", in_sys},
                {"inTiling", in_zon},
                {"systemMargin", sm},
                {"tilingMargin", zm}});
        }
        return 0;
      }
      if (*poly_vol) {
        const double f = volume_formula(yv);
        double dsum = 0.0;
        for (int j = 1; j <= yv.n(); ++j) dsum += volume_parallelohedron(yv, j);
        const McVolume mc = monte_carlo_volume(yv, poly_samples, poly_seed);
        if (poly_format == "csv") {
          std::cout << "formula,detSum,monteCarlo,ci95,samples\n"
                    << f << "," << dsum << "," << mc.estimate << "," << mc.ci95
                    << "," << mc.samples << "\n";
        } else {
          emit({{"schema", kSchema},
                {"op", "polytope-volume"},
                {"y", yv.y},
                {"formula", f},
                {"detSum", dsum},
                {"monteCarlo", mc.estimate},
                {"ci95", mc.ci95},
                {"samples", mc.samples}});
        }
        return 0;
      }
      if (*poly_fac) {
        const auto fs = facets(yv);
        if (poly_format == "csv") {
          std::cout << "j0,k0,side,offsetValue\n";
          for (const auto& f : fs) {
            std::cout << f.j0 << "," << f.k0 << ","
                      << (f.side == FacetSide::lower ? "lower" : "upper") << ","
                      << f.offset_value << "\n";
          }
        } else {
          ordered_json fl = ordered_json::array();
          for (const auto& f : fs) {
            fl.push_back(
                {{"j0", f.j0},
                 {"k0", f.k0},
                 {"side", f.side == FacetSide::lower ? "lower" : "upper"},
                 {"normal", f.normal},
                 {"offsetValue", f.offset_value}});
          }
          emit({{"schema", kSchema},
                {"op", "polytope-facets"},
                {"n", yv.n()},
                {"y", yv.y},
                {"facets", fl}});
        }
        return 0;
      }
      // emit
      nlohmann::json geo = emit_geometry(yv);
      geo["schema"] = kSchema;
      std::cout << geo.dump(2) << "\n";
      return 0;
    }
    if (*cmd_int) {
      QuadratureOptions opt;
      if (int_tol > 0.0) opt.rel_tol = int_tol;
      const QWeightMode mode =
          int_exact ? QWeightMode::exact : QWeightMode::stirling;
      ordered_json doc{{"schema", kSchema}};
      if (*int_kernel) {
        doc["op"] = "integrate-kernel";
        doc.update(quad_json(kernel_integral(int_a, int_b, int_x, opt)));
      } else if (*int_hahb) {
        doc["op"] = "integrate-hahb";
        doc.update(quad_json(hahb_integral(int_a, int_b, opt)));
      } else if (*int_box) {
        const AlphaParams alpha = make_alpha(parse_reals(iv.alpha_text));
        doc["op"] = "integrate-box";
        doc["factors"] = box_bound_factors(alpha, int_k, opt);
        doc["value"] = box_bound(alpha, int_k, opt);
      } else if (*int_qt) {
        const AlphaParams alpha = make_alpha(parse_reals(iv.alpha_text));
        const BetaParams beta = make_beta(parse_reals(iv.beta_text));
        require_compatible(alpha, beta);
        const QWindow window = int_window == "im"       ? QWindow::im
                               : int_window == "widened" ? QWindow::im_widened
                                                         : QWindow::full_line;
        doc["op"] = "integrate-qt";
        doc["mode"] = int_exact ? "exact" : "stirling";
        doc["window"] = int_window;
        doc.update(quad_json(q_t_integral(alpha, beta, mode, window, int_c, opt)));
      } else if (*int_local) {
        const AlphaParams alpha = make_alpha(parse_reals(iv.alpha_text));
        doc["op"] = "integrate-local-sum";
        doc.update(lattice_json(local_sum(alpha, int_k, int_budget)));
      } else if (*int_lower) {
        const AlphaParams alpha = make_alpha(parse_reals(iv.alpha_text));
        doc["op"] = "integrate-lower-sum";
        doc.update(lattice_json(lower_bound_sum(alpha, int_budget)));
      } else {
        const AlphaParams alpha = make_alpha(parse_reals(iv.alpha_text));
        doc["op"] = "integrate-c-alpha";
        doc["mode"] = int_exact ? "exact" : "stirling";
        doc.update(
            quad_json(c_alpha_integral(alpha, mode, opt, int_samples, int_seed)));
      }
      emit(doc);
      return 0;
    }
    if (*cmd_sm) {
      const MomentWindow window = make_window(sm_t0, sm_t);
      ordered_json doc{{"schema", kSchema},
                       {"op", "second-moment"},
                       {"t0", sm_t0},
                       {"halfLength", sm_t}};
      if (sm_smoothed) {
        const SmoothedBound sb = smoothed_lower_bound(window);
        doc["value"] = sb.value;
        doc["fullMoment"] = sb.full_moment;
        doc["bound"] = sm_t;
        doc["pass"] = sb.full_moment >= sm_t &&
                      sb.value <= sb.full_moment * (1.0 + 1e-9) + 1e-12;
      } else {
        const MomentResult m = second_moment(window);
        doc["value"] = m.value;
        doc["mainTerm"] = m.main_term;
        doc["bound"] = sm_t;
        doc["pass"] = m.value >= sm_t;
      }
      emit(doc);
      return doc["pass"].get<bool>() ? 0 : 2;
    }
    if (*cmd_vs) {
      const auto results = run_verify_suite(vcfg);
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        std::cerr << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  ("
                  << r.seconds << "s)  " << r.detail << "\n";
      }
      if (vs_format == "csv") {
        std::cout << "name,pass,detail\n";
        for (const auto& r : results) {
          std::cout << r.name << "," << (r.pass ? 1 : 0) << ","
                    << csv_escape(r.detail) << "\n";
        }
      } else {
        ordered_json checks = ordered_json::array();
        for (const auto& r : results) {
          checks.push_back(
              {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        emit({{"schema", kSchema},
              {"op", "verify-suite"},
              {"seed", vcfg.seed},
              {"samples", vcfg.samples},
              {"nMax", vcfg.n_max},
              {"pass", all},
              {"checks", checks}});
      }
      return all ? 0 : 2;
    }
  } catch (const Error& e) {
    ordered_json err{{"schema", kSchema},
                     {"error", error_kind(e)},
                     {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    ordered_json err{{"schema", kSchema},
                     {"error", "internal"},
                     {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return 3;
}
