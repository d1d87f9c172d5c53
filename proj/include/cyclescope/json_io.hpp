#pragma once

// JSON and CSV encodings of cycles, reports and rule-out evidence. Integers
// that fit in 64 bits are written as JSON numbers, larger ones as decimal
// strings; readers accept either.

#include <string>
#include <vector>

#include <json.hpp>

#include "cyclescope/cycles.hpp"
#include "cyclescope/families.hpp"
#include "cyclescope/ruleout.hpp"

namespace cyclescope {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json int_to_json(i128 v);
i128 int_from_json(const Json& j, const char* what);

/// Strings unquoted, null empty, anything else as JSON text.
std::string scalar_text(const Json& v);

Json curve_to_json(const WeierstrassCurve& curve, bool with_points);

/// {"entries": [{"q","n","t","k_nominal","k_actual","D"}...], "valid", "trace_sum"},
/// followed by per-entry check flags under "checks".
Json cycle_report_to_json(const CycleReport& report, bool with_points = false);

/// The same schema for an already validated cycle.
Json cycle_to_json(const Cycle& cycle);

Json cofactor_report_to_json(const CofactorReport& report);
Json cofactor_cycle_to_json(const CofactorCycle& cycle);

/// True when any entry carries "h", i.e. the document is a cofactor cycle.
bool is_cofactor_document(const Json& doc);

/// Entries of a cycle document; t is optional when n is given. Throws SchemaError.
std::vector<CurveParams> cycle_entries_from_json(const Json& doc);
std::vector<CofactorEntry> cofactor_entries_from_json(const Json& doc);

Json ruleout_report_to_json(const RuleoutReport& report);
Json same_discriminant_to_json(const SameDiscriminantReport& report);
Json structure_report_to_json(const StructureReport& report);
Json freeman_bn_to_json(const FreemanBnReport& report);
Json combo_cycle_to_json(const ComboCycle& combo);
Json dual_primes_to_json(const DualPrimePair& pair);

/// One row per entry: cycle_id,index,q,n,t,k_nominal,k_actual,D,h,valid.
std::string cycles_to_csv(const std::vector<Json>& cycles);

}  // namespace cyclescope
