#pragma once

// CSV and JSON serialization. CSV numbers use 17 significant digits; JSON
// numbers use the shortest text that parses back to the same double.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lerc/certify.hpp"
#include "lerc/core.hpp"
#include "lerc/riccati.hpp"
#include "lerc/verify/oracle.hpp"

namespace lerc::io {

using nlohmann::json;

inline constexpr std::string_view kSweepHeader =
    "a,gamma_star,lower_bound,upper_bound,P,p_feasible,curvature_ok,negativity_ok";
inline constexpr std::string_view kQuadfunsHeader = "y,l1_next,lm1_next,threshold";
inline constexpr std::string_view kTraceHeader =
    "t,x,u,y,w,v,xhat_1,xhat_m1,l_1,l_m1,alpha";

/// "{:.17g}"; NaN prints as "nan".
std::string format_number(double value);

/// Throws ContractError on anything strtod does not consume entirely.
double parse_number(std::string_view text);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

void write_quadfuns_csv(std::ostream& out, std::span<const QuadfunRow> rows);
std::vector<QuadfunRow> read_quadfuns_csv(std::istream& in);

/// Rows t = 0..T+1. u, w and alpha are empty on the last row.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

/// Fills the signal and observer columns; model, gamma, P and prng live in
/// the metadata document.
SimulationTrace read_trace_csv(std::istream& in);

json trace_meta(const SimulationTrace& trace);
void apply_trace_meta(const json& meta, SimulationTrace& trace);

json to_json(const SolvedModel& solved);
json to_json(const CertificationReport& report);
json to_json(const GammaStarSearch& search);
json to_json(const verify::OracleReport& report);
verify::OracleReport oracle_report_from_json(const json& doc);

/// {"models": [{"a": .., "b": .., "c": ..}, ...]}
json to_json(const ModelSet& models);
ModelSet model_set_from_json(const json& doc);

}  // namespace lerc::io
