#pragma once

// JSON and CSV renderings. Exact scalars are written as strings ("p/q" for
// rationals, "m*2^e" for dyadics) so nothing is rounded on the way out; a
// "_display" float is added where a human would want one.

#include <ostream>
#include <string>

#include <json.hpp>

#include "hypodense/ctype.hpp"
#include "hypodense/densities.hpp"
#include "hypodense/dynlab.hpp"
#include "hypodense/index_set.hpp"
#include "hypodense/schedule.hpp"
#include "hypodense/weight_seq.hpp"
#include "hypodense/weightforge.hpp"

namespace hypodense {

using json = nlohmann::ordered_json;

// Sets: "evens" | "odds" | "all" | "empty" or an object with "kind" in
// explicit, periodic, blocks, geometric, complement. Throws ConfigError.
IndexSet index_set_from_json(const json& j);
json to_json(const IndexSet& set);

// Weights: "unit" | "harmonic" or {"kind": "block_constant", ...} /
// {"kind": "table", "prefix": [...], "tail": ...}.
WeightSeq weight_from_json(const json& j);
json to_json(const WeightSeq& weight);

SparseVec sparse_vec_from_json(const json& j);  // {"index": "dyadic or integer", ...}
json to_json(const SparseVec& x);

json to_json(const DensityReport& r);
json to_json(const BlockPlan& plan);
json to_json(const Schedule& s);
json to_json(const std::vector<ScheduleCheck>& checks);
json summary_json(const CTypeParams& params);
json to_json(const ShadowingCertificate& c);
json to_json(const Prop51Result& r);
json to_json(const HittingReport& h);
json to_json(const IdentityReport& r);

// N,Q_numerator,Q_denominator,Q_float_display
void write_density_csv(std::ostream& out, const DensityReport& r);
// step,index,mantissa,exponent — one row per nonzero coordinate
void write_orbit_csv(std::ostream& out, const CTypeParams& params, const SparseVec& x, std::uint64_t steps);

// Fixed-precision display of a rational for reports (not used in decisions).
std::string display(const Rational& q);

}  // namespace hypodense
