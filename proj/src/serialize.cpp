#include <hardylab/serialize.hpp>

#include <algorithm>
#include <sstream>

namespace hardylab {

namespace {

std::string csv_field(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return s;
}

}  // namespace

Json to_json(const Params& params) {
  Json j;
  j["N"] = params.N;
  j["p"] = params.p;
  j["alpha"] = params.alpha;
  j["c"] = params.c;
  if (params.eta) j["eta"] = *params.eta;
  if (params.beta) j["beta"] = *params.beta;
  return j;
}

Params params_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParamsError("params document must be a JSON object");
  Params P;
  for (const auto& [key, value] : doc.items()) {
    if (key != "N" && key != "p" && key != "alpha" && key != "c" && key != "eta" &&
        key != "beta") {
      throw ParamsError("unknown params field: " + key);
    }
    if (!value.is_number()) throw ParamsError("params field " + key + " must be a number");
  }
  if (!doc.contains("N") || !doc.contains("p")) {
    throw ParamsError("params document requires N and p");
  }
  const Json& n = doc.at("N");
  if (!n.is_number_integer()) throw ParamsError("params field N must be an integer");
  P.N = n.get<int>();
  P.p = doc.at("p").get<double>();
  P.alpha = doc.value("alpha", 0.0);
  P.c = doc.value("c", 0.0);
  if (doc.contains("eta")) P.eta = doc.at("eta").get<double>();
  if (doc.contains("beta")) P.beta = doc.at("beta").get<double>();
  P.validate();
  return P;
}

Json to_json(const ConstantSet& k) {
  Json j;
  j["gamma_alpha"] = k.gamma_alpha;
  j["gamma_zero"] = k.gamma_zero;
  j["beta_zero"] = k.beta_zero;
  j["beta_alpha"] = k.beta_alpha;
  j["delta_alpha"] = k.delta_alpha;
  j["k"] = k.k;
  j["k0"] = k.k0;
  j["k1"] = k.k1;
  j["mu"] = k.mu;
  j["c0"] = k.c0;
  j["baras_goldstein"] = k.baras_goldstein;
  return j;
}

Json to_json(const HypothesisCheck& h) {
  Json j;
  j["rule"] = h.rule;
  j["condition"] = h.condition;
  j["lhs_value"] = h.lhs_value;
  j["rhs_value"] = h.rhs_value;
  j["holds"] = h.holds;
  j["required"] = h.required;
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["theorem_tag"] = std::string(to_string(r.theorem_tag));
  Json props = Json::array();
  for (auto p : r.properties) props.push_back(std::string(to_string(p)));
  j["properties"] = props;
  j["domain_label"] = r.domain_label;
  j["constants_used"] = to_json(r.constants_used);
  Json trace = Json::array();
  for (const auto& h : r.hypothesis_trace) trace.push_back(to_json(h));
  j["hypothesis_trace"] = trace;
  j["base_theorem"] = std::string(to_string(r.base_theorem));
  j["closure_of"] = r.closure_of ? Json(std::string(to_string(*r.closure_of))) : Json(nullptr);
  j["summary"] = r.summary;
  return j;
}

Json to_json(const FormEvaluation& f) {
  Json j;
  j["form"] = f.form;
  j["lhs"] = f.lhs;
  j["rhs"] = f.rhs;
  j["gap"] = f.gap;
  j["normalized_gap"] = f.normalized_gap();
  j["quadrature_error"] = f.quadrature_error;
  j["ratio"] = f.ratio ? Json(*f.ratio) : Json(nullptr);
  j["profile_descriptor"] = f.profile_descriptor;
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

Json to_json(const SharpnessEvaluation& e) {
  Json j;
  j["delta"] = e.delta;
  j["beta_param"] = e.beta_param;
  j["alpha_n"] = e.alpha_n;
  j["c_bound"] = e.c_bound;
  j["first_term"] = e.first_term;
  j["second_term"] = e.second_term;
  j["rising_direct"] = e.rising_direct;
  j["rising_log_gamma"] = e.rising_log_gamma;
  return j;
}

Json to_json(const EvolutionTrace& t) {
  Json j;
  j["times"] = t.times;
  j["lp_norms"] = t.lp_norms;
  j["minima"] = t.minima;
  j["residuals"] = t.residuals;
  j["max_relative_growth"] = t.max_relative_growth;
  j["growth_factor"] = t.growth_factor;
  j["supercritical"] = t.supercritical;
  return j;
}

Json to_json(const ContractivityRow& r) {
  Json j;
  j["c"] = r.c;
  j["r_min"] = r.r_min;
  j["max_relative_growth"] = r.max_relative_growth;
  j["growth_factor"] = r.growth_factor;
  j["supercritical"] = r.supercritical;
  return j;
}

std::string to_csv(const Json& rows) {
  const Json list = rows.is_array() ? rows : Json::array({rows});
  std::vector<std::string> header;
  for (const auto& row : list) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : list) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ",";
      if (row.contains(header[i])) os << csv_field(row.at(header[i]));
    }
    os << "\n";
  }
  return os.str();
}

std::string trace_csv(const EvolutionTrace& t) {
  std::ostringstream os;
  os.precision(17);
  os << "t,lp_norm,min_u,residual\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << t.times[i] << "," << t.lp_norms[i] << "," << t.minima[i] << "," << t.residuals[i]
       << "\n";
  }
  return os.str();
}

}  // namespace hardylab
