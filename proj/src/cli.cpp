#include <hardylab/cli.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <hardylab/classifier.hpp>
#include <hardylab/evolution.hpp>
#include <hardylab/inequality.hpp>
#include <hardylab/serialize.hpp>
#include <hardylab/sharpness.hpp>

namespace hardylab::cli {

namespace {

struct ProfileSpec {
  std::string kind = "gaussian";
  double a = 1.0;
  double s = 0.0;
  double b = 1.0;
  double delta = 0.1;
  double center = 1.0;
  double width = 1.0;
};

struct Options {
  std::string output = "json";
  std::string output_path;
  std::string params_file;
  std::string config;

  int N = 0;
  double p = 0, alpha = 0, c = 0, eta = 0, beta = 0;
  CLI::Option* N_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* beta_opt = nullptr;

  double tol = 1e-10;
  ProfileSpec profile;
  CLI::Option* profile_opt = nullptr;
  std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.025};
  std::vector<double> epsilons = {1.0, 0.1, 0.01};

  int M = 2000;
  double r_min = 1e-6, r_max = 50.0, dt = 1e-4, t_final = 0.1;
  std::string scheme = "implicit_euler";
};

struct Result {
  Json document;
  Json rows;                  // flat rows for CSV
  std::string csv_override;   // used instead of rows when set
  std::string pretty;
};

Params params_from_flags(const Options& o) {
  if (!o.N_opt->count() || !o.p_opt->count()) {
    throw ParamsError("parameters --N and --p are required (or --params-file)");
  }
  Params P;
  P.N = o.N;
  P.p = o.p;
  P.alpha = o.alpha;
  P.c = o.c;
  if (o.eta_opt->count()) P.eta = o.eta;
  if (o.beta_opt->count()) P.beta = o.beta;
  P.validate();
  return P;
}

std::vector<Params> params_list(const Options& o, bool& is_array) {
  is_array = false;
  if (o.params_file.empty()) return {params_from_flags(o)};
  std::ifstream in(o.params_file);
  if (!in) throw ParamsError("cannot open params file: " + o.params_file);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParamsError(std::string("params file is not valid JSON: ") + e.what());
  }
  if (doc.is_array()) {
    is_array = true;
    std::vector<Params> out;
    for (const auto& d : doc) out.push_back(params_from_json(d));
    return out;
  }
  return {params_from_json(doc)};
}

RadialProfile make_profile(const ProfileSpec& s, const Params& P) {
  if (s.kind == "gaussian") return RadialProfile::gaussian(s.a);
  if (s.kind == "power_exp") return RadialProfile::power_exp(s.s, s.b);
  if (s.kind == "family") {
    return RadialProfile::power_exp_family((s.delta + 2.0 * P.p - P.N) / P.p, P.p);
  }
  if (s.kind == "cutoff_linear") {
    return RadialProfile::cutoff_power(s.s, s.center, s.width, CutoffScale::linear);
  }
  if (s.kind == "cutoff_log") {
    return RadialProfile::cutoff_power(s.s, s.center, s.width, CutoffScale::logarithmic);
  }
  if (s.kind == "sign_change") return RadialProfile::poly_gaussian({1.0, -1.0}, 1.0);
  throw ParamsError("unknown profile: " + s.kind);
}

ProfileSpec profile_from_json(const Json& j) {
  ProfileSpec s;
  s.kind = j.value("profile", s.kind);
  s.a = j.value("a", s.a);
  s.s = j.value("s", s.s);
  s.b = j.value("b", s.b);
  s.delta = j.value("delta", s.delta);
  s.center = j.value("center", s.center);
  s.width = j.value("width", s.width);
  return s;
}

QuadratureOptions quad_options(const Options& o) {
  QuadratureOptions q;
  q.abs_tol = o.tol;
  q.rel_tol = o.tol;
  return q;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------

Result cmd_constants(const Params& P) {
  Result r;
  Json j;
  j["params"] = to_json(P);
  j["constants"] = to_json(constant_set(P));
  j["p_dual"] = P.dual_exponent();
  j["eta_threshold"] = eta_threshold(P);
  if (P.eta && P.beta && P.alpha > 2.0 && *P.beta > P.alpha - 2.0 && *P.eta > 0.0) {
    j["m_shift"] = m_shift(P);
  }
  if (P.eta && P.beta && P.alpha >= 2.0 && *P.beta > P.alpha - 2.0 && *P.eta > 0.0) {
    j["quasi_diss_bound_M"] = quasi_diss_bound_M(P, P.p - 1.0);
  }
  r.document = j;
  Json row = to_json(P);
  for (const auto& [k, v] : j["constants"].items()) row[k] = v;
  row["eta_threshold"] = j["eta_threshold"];
  r.rows = row;
  std::ostringstream os;
  for (const auto& [k, v] : j["constants"].items()) os << k << ": " << v.dump() << "\n";
  os << "p_dual: " << fmt(P.dual_exponent()) << "\n";
  os << "eta_threshold: " << fmt(eta_threshold(P)) << "\n";
  if (j.contains("m_shift")) os << "m_shift: " << j["m_shift"].dump() << "\n";
  if (j.contains("quasi_diss_bound_M")) {
    os << "quasi_diss_bound_M: " << j["quasi_diss_bound_M"].dump() << "\n";
  }
  r.pretty = os.str();
  return r;
}

Result cmd_classify(const Params& P) {
  const ClassificationReport rep = classify(P);
  Result r;
  r.document = to_json(rep);
  r.document["params"] = to_json(P);
  Json rows = Json::array();
  for (const auto& h : rep.hypothesis_trace) {
    Json row;
    row["theorem_tag"] = std::string(to_string(rep.theorem_tag));
    const Json check = to_json(h);
    for (const auto& [k, v] : check.items()) row[k] = v;
    rows.push_back(row);
  }
  r.rows = rows;
  std::ostringstream os;
  os << "theorem: " << to_string(rep.theorem_tag) << "\n";
  os << "base theorem: " << to_string(rep.base_theorem) << "\n";
  if (rep.closure_of) os << "closure of: " << to_string(*rep.closure_of) << "\n";
  os << "domain: " << (rep.domain_label.empty() ? "-" : rep.domain_label) << "\n";
  os << "properties:";
  for (auto p : rep.properties) os << " " << to_string(p);
  os << "\n" << rep.summary << "\nhypotheses:\n";
  for (const auto& h : rep.hypothesis_trace) {
    os << "  [" << (h.holds ? "x" : " ") << "] (" << h.rule << ") " << h.condition << "   "
       << fmt(h.lhs_value) << " vs " << fmt(h.rhs_value) << (h.required ? "  *" : "") << "\n";
  }
  r.pretty = os.str();
  return r;
}

Result form_rows(const Params& P, const std::vector<FormEvaluation>& forms,
                 const std::vector<Json>& extra) {
  Result r;
  Json arr = Json::array();
  std::ostringstream os;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Json j = to_json(forms[i]);
    for (const auto& [k, v] : extra[i].items()) j[k] = v;
    arr.push_back(j);
    os << forms[i].form;
    for (const auto& [k, v] : extra[i].items()) os << " " << k << "=" << v.dump();
    os << ": lhs " << fmt(forms[i].lhs) << ", rhs " << fmt(forms[i].rhs) << ", gap "
       << fmt(forms[i].gap);
    if (forms[i].ratio) os << ", ratio " << fmt(*forms[i].ratio);
    os << "  [" << forms[i].profile_descriptor << "]\n";
  }
  r.document["params"] = to_json(P);
  r.document["evaluations"] = arr;
  r.rows = arr;
  r.pretty = os.str();
  return r;
}

Result cmd_hardy(const Params& P, const Options& o) {
  const QuadratureOptions q = quad_options(o);
  std::vector<FormEvaluation> forms;
  std::vector<Json> extra;
  if (o.profile_opt && o.profile_opt->count()) {
    forms.push_back(hardy_ratio(make_profile(o.profile, P), P, q));
    extra.push_back(Json::object());
  } else {
    forms = hardy_infimum_search(P, o.eps_list, q);
    for (double e : o.eps_list) extra.push_back(Json{{"eps", e}});
  }
  for (auto& e : extra) e["gamma_alpha"] = gamma_alpha(P);
  return form_rows(P, forms, extra);
}

Result cmd_forms(const Params& P, const Options& o) {
  const QuadratureOptions q = quad_options(o);
  const RadialProfile u = make_profile(o.profile, P);
  std::vector<FormEvaluation> forms;
  std::vector<Json> extra;
  if (P.eta) {
    forms.push_back(tilde_dissipativity_form(u, P, std::nullopt, q));
    extra.push_back(Json::object());
  } else {
    forms.push_back(dissipativity_form(u, P, q));
    extra.push_back(Json::object());
    forms.push_back(dispersivity_form(u, P, q));
    extra.push_back(Json::object());
    for (double e : o.epsilons) {
      forms.push_back(yosida_form_gap(u, P, e, q));
      extra.push_back(Json{{"epsilon", e}});
    }
  }
  return form_rows(P, forms, extra);
}

Result cmd_sharpness(const Params& P) {
  if (P.alpha != std::floor(P.alpha) || P.alpha < 1.0) {
    throw ParamsError("sharpness requires integer alpha >= 1");
  }
  const int n = static_cast<int>(P.alpha);
  const SharpnessLimit lim = c_limit_table(P.N, P.p, n);
  Result r;
  Json table = Json::array();
  for (const auto& e : lim.table) table.push_back(to_json(e));
  const double b0 = beta_zero(P);
  r.document["params"] = to_json(P);
  r.document["table"] = table;
  r.document["c_limit"] = lim.limit;
  r.document["beta_zero"] = b0;
  r.document["relative_error"] = b0 != 0.0 ? std::abs(lim.limit - b0) / std::abs(b0) : 0.0;
  r.rows = table;
  std::ostringstream os;
  for (const auto& e : lim.table) {
    os << "delta " << fmt(e.delta) << "  c_bound " << fmt(e.c_bound) << "\n";
  }
  os << "c_limit: " << fmt(lim.limit) << "\nbeta_zero: " << fmt(b0) << "\n";
  r.pretty = os.str();
  return r;
}

Result cmd_evolve(const Options& o) {
  EvolutionConfig cfg;
  ProfileSpec initial;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ParamsError("cannot open config file: " + o.config);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ParamsError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("params")) throw ParamsError("config requires a params object");
    cfg.params = params_from_json(doc.at("params"));
    const Json grid = doc.value("grid", Json::object());
    const std::string layout = grid.value("layout", std::string("log_uniform"));
    if (layout != "log_uniform" && layout != "uniform") {
      throw ParamsError("unknown grid layout: " + layout);
    }
    cfg.grid = make_grid(grid.value("r_min", o.r_min), grid.value("r_max", o.r_max),
                         grid.value("M", o.M),
                         layout == "uniform" ? GridLayout::uniform : GridLayout::log_uniform);
    cfg.dt = doc.value("dt", o.dt);
    cfg.t_final = doc.value("t_final", o.t_final);
    const std::string scheme = doc.value("scheme", o.scheme);
    if (scheme != "implicit_euler" && scheme != "crank_nicolson") {
      throw ParamsError("unknown scheme: " + scheme);
    }
    cfg.scheme = scheme == "crank_nicolson" ? Scheme::crank_nicolson : Scheme::implicit_euler;
    if (doc.contains("initial")) initial = profile_from_json(doc.at("initial"));
  } else {
    cfg.params = params_from_flags(o);
    cfg.grid = make_grid(o.r_min, o.r_max, o.M, GridLayout::log_uniform);
    cfg.dt = o.dt;
    cfg.t_final = o.t_final;
    cfg.scheme = o.scheme == "crank_nicolson" ? Scheme::crank_nicolson : Scheme::implicit_euler;
    if (o.profile_opt && o.profile_opt->count()) initial = o.profile;
  }
  cfg.validate();
  const EvolutionTrace tr = evolve(cfg, make_profile(initial, cfg.params));
  Result r;
  r.document["params"] = to_json(cfg.params);
  r.document["trace"] = to_json(tr);
  r.csv_override = trace_csv(tr);
  std::ostringstream os;
  os << "steps: " << tr.times.size() - 1 << "\n";
  os << "final norm: " << fmt(tr.lp_norms.back()) << " (initial " << fmt(tr.lp_norms.front())
     << ")\n";
  os << "max relative growth per step: " << fmt(tr.max_relative_growth) << "\n";
  os << "growth factor: " << fmt(tr.growth_factor)
     << (tr.supercritical ? "  (supercritical)" : "") << "\n";
  r.pretty = os.str();
  return r;
}

void add_params(CLI::App* sub, Options& o) {
  o.N_opt = sub->add_option("--N", o.N, "dimension (>= 3)");
  o.p_opt = sub->add_option("--p", o.p, "Lebesgue exponent in (1, inf)");
  sub->add_option("--alpha", o.alpha, "growth exponent (>= 0)");
  sub->add_option("--c", o.c, "inverse-square coupling");
  o.eta_opt = sub->add_option("--eta", o.eta, "confining coupling");
  o.beta_opt = sub->add_option("--beta", o.beta, "confining exponent");
  sub->add_option("--params-file,--params_file", o.params_file,
                  "JSON params object or array of objects");
}

void add_profile(CLI::App* sub, Options& o) {
  o.profile_opt = sub->add_option("--profile", o.profile.kind,
                                  "gaussian|power_exp|family|cutoff_linear|cutoff_log|sign_change");
  sub->add_option("--a", o.profile.a, "Gaussian rate");
  sub->add_option("--s", o.profile.s, "power exponent");
  sub->add_option("--b", o.profile.b, "exponential rate");
  sub->add_option("--delta", o.profile.delta, "family parameter beta p + N - 2p");
  sub->add_option("--center", o.profile.center, "cutoff start");
  sub->add_option("--width", o.profile.width, "cutoff width");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Hardy / inverse-square operator laboratory", "hardylab"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--output", o.output, "json|csv|pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--output-path,--output_path", o.output_path, "write the document here");
  app.add_option("--tol", o.tol, "quadrature tolerance (absolute and relative)");

  auto* constants = app.add_subcommand("constants", "closed-form constants");
  auto* classify_cmd = app.add_subcommand("classify", "applicable generation theorem");
  auto* hardy = app.add_subcommand("hardy", "Hardy ratio or infimum search");
  auto* forms = app.add_subcommand("forms", "dissipativity, dispersivity and Yosida forms");
  auto* sharpness = app.add_subcommand("sharpness", "Gamma-function bound and its limit");
  auto* evolve_cmd = app.add_subcommand("evolve", "radial parabolic evolution");

  // Global output flags are accepted after the subcommand too.
  for (auto* sub : {constants, classify_cmd, hardy, forms, sharpness, evolve_cmd}) {
    sub->fallthrough();
  }
  Options per[6];
  // Each subcommand binds its own flag set; only the selected one is used.
  CLI::App* subs[6] = {constants, classify_cmd, hardy, forms, sharpness, evolve_cmd};
  for (int i = 0; i < 6; ++i) add_params(subs[i], per[i]);
  for (int i : {2, 3, 5}) add_profile(subs[i], per[i]);
  hardy->add_option("--eps", per[2].eps_list, "decreasing eps sequence");
  forms->add_option("--epsilon", per[3].epsilons, "Yosida parameters");
  evolve_cmd->add_option("--config", per[5].config, "JSON evolution config");
  evolve_cmd->add_option("--M", per[5].M, "grid nodes");
  evolve_cmd->add_option("--r-min,--r_min", per[5].r_min, "inner radius");
  evolve_cmd->add_option("--r-max,--r_max", per[5].r_max, "outer radius");
  evolve_cmd->add_option("--dt", per[5].dt, "time step");
  evolve_cmd->add_option("--t-final,--t_final", per[5].t_final, "final time");
  evolve_cmd->add_option("--scheme", per[5].scheme, "implicit_euler|crank_nicolson")
      ->check(CLI::IsMember({"implicit_euler", "crank_nicolson"}));

  std::vector<std::string> argv_store = {"hardylab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  int which = 0;
  for (int i = 0; i < 6; ++i) {
    if (subs[i]->parsed()) which = i;
  }
  Options& s = per[which];
  s.output = o.output;
  s.output_path = o.output_path;
  s.tol = o.tol;

  std::string text;
  try {
    std::vector<Result> results;
    bool is_array = false;
    if (which == 5) {
      results.push_back(cmd_evolve(s));
    } else {
      for (const Params& P : params_list(s, is_array)) {
        switch (which) {
          case 0: results.push_back(cmd_constants(P)); break;
          case 1: results.push_back(cmd_classify(P)); break;
          case 2: results.push_back(cmd_hardy(P, s)); break;
          case 3: results.push_back(cmd_forms(P, s)); break;
          default: results.push_back(cmd_sharpness(P)); break;
        }
      }
    }

    if (s.output == "json") {
      Json doc;
      if (is_array) {
        doc = Json::array();
        for (const auto& r : results) doc.push_back(r.document);
      } else {
        doc = results.front().document;
      }
      text = doc.dump(2) + "\n";
    } else if (s.output == "csv") {
      if (!results.front().csv_override.empty()) {
        text = results.front().csv_override;
      } else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
          const Json list =
              results[i].rows.is_array() ? results[i].rows : Json::array({results[i].rows});
          for (Json row : list) {
            if (is_array) {
              Json indexed;
              indexed["index"] = i;
              for (const auto& [k, v] : row.items()) indexed[k] = v;
              row = indexed;
            }
            rows.push_back(row);
          }
        }
        text = to_csv(rows);
      }
    } else {
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (is_array) text += "# entry " + std::to_string(i) + "\n";
        text += results[i].pretty;
      }
    }
  } catch (const ParamsError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const QuadratureError& e) {
    err << "numerical failure: " << e.what() << " (partial value " << e.partial().value
        << ")\n";
    return kNumericalFailure;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ExtrapolationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DegenerateProfile& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  }

  if (!s.output_path.empty()) {
    std::ofstream f(s.output_path);
    if (!f) {
      err << "validation error: cannot write " << s.output_path << "\n";
      return kValidationError;
    }
    f << text;
  } else {
    out << text;
  }
  return kSuccess;
}

}  // namespace hardylab::cli
