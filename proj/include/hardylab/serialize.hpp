#pragma once

#include <string>

#include <json.hpp>

#include <hardylab/classifier.hpp>
#include <hardylab/evolution.hpp>
#include <hardylab/inequality.hpp>
#include <hardylab/params.hpp>
#include <hardylab/sharpness.hpp>

namespace hardylab {

// Key order is insertion order, so documents are byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Params& params);
/// Reads N, p, alpha, c and optional eta, beta; unknown keys are rejected.
/// Throws ParamsError on missing or mistyped fields.
Params params_from_json(const Json& doc);

Json to_json(const ConstantSet& constants);
Json to_json(const HypothesisCheck& check);
Json to_json(const ClassificationReport& report);
Json to_json(const FormEvaluation& form);
Json to_json(const SharpnessEvaluation& evaluation);
Json to_json(const EvolutionTrace& trace);
Json to_json(const ContractivityRow& row);

/// CSV with a header row from an object (one row) or an array of objects.
/// Header is the union of keys in first-seen order; nested values are
/// written as compact JSON.
std::string to_csv(const Json& rows);

/// Columns t, lp_norm, min_u, residual.
std::string trace_csv(const EvolutionTrace& trace);

}  // namespace hardylab
