// JSON schemas shared by the CLI and the file formats.
//
//   matrix    : array of rows, each entry a 2-array [re, im]
//               (a bare number is accepted on input as a real entry)
//   state set : { "dA": n, "dB": n, "states": [ { "label": s, "rho": matrix,
//               "tau": matrix?, "sigma": matrix? } ] }; kets (d x 1 matrices)
//               are expanded to projectors at load
//   params    : { "thetaA": r, "gammaA": r, "phiA": r,
//                 "thetaB": r, "gammaB": r, "phiB": r }
//   protocol  : nested { "party": "A"|"B", "projectors": [matrix],
//               "children": [...] } with leaves { "verdict": label } or
//               { "fail": { "labels": [...], "space_dims": [a, b] } }
//
// Malformed structure raises ParseError; structurally sound input that
// violates a contract raises ValidationError or DimensionError.

#pragma once

#include <string>

#include <json.hpp>

#include "locc/nondisturb.hpp"
#include "locc/protocol.hpp"
#include "locc/states.hpp"
#include "locc/upb.hpp"

namespace locc {

using Json = nlohmann::json;

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json state_set_to_json(const StateSet& s);
StateSet state_set_from_json(const Json& j);
StateSet load_state_set(const std::string& path);

Json upb_params_to_json(const UpbParams& p);
UpbParams upb_params_from_json(const Json& j);
UpbParams load_upb_params(const std::string& path);

Json protocol_to_json(const Protocol& p);
Protocol protocol_from_json(const Json& j);
Protocol load_protocol(const std::string& path);

Json space_to_json(const NondisturbingSpace& space);
Json thm1_report_to_json(const Thm1Report& rep);
Json case_result_to_json(const CaseResult& res);
Json theorem4_report_to_json(const Theorem4Report& rep);

// Parse a whole file (ParseError on I/O or syntax failure).
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& what);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace locc
