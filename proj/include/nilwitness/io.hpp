#pragma once

#include <string>

#include "json.hpp"

#include "nilwitness/algebraic.hpp"
#include "nilwitness/extension.hpp"
#include "nilwitness/typei.hpp"

namespace nilwitness {

// JSON forms (field names frozen):
//   sequence   {"p":2, "prefix":[1,0,1], "period":[0]}
//   character  {"p":2, "coeffs":{"-7":1, "-13":1}}
//   group      {"p":2, "basis":[0,2], "pairing":[[0,1],[1,0]], "provenance":...}
//   bi-additive table {"q":3, "dimA":2, "dimN":1, "table":{"0,1":[1]}}

nlohmann::json sigma_to_json(const SigmaSeq& s);
SigmaSeq sigma_from_json(const nlohmann::json& j);

nlohmann::json character_to_json(const CharacterSpec& chi);
CharacterSpec character_from_json(const nlohmann::json& j);

nlohmann::json window_group_to_json(const FiniteWindowGroup& q);
FiniteWindowGroup window_group_from_json(const nlohmann::json& j);

// Structure constants over F_q on the F_q-basis, extended bilinearly to
// the stored F_p-table.
nlohmann::json biadd_to_json(const BiAddMapSpec& gamma);
BiAddMapSpec biadd_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const TypeIVerdict& v);

nlohmann::json gram_rows_to_json(const std::vector<GramRow>& rows, SweepVerdict verdict);
std::string gram_rows_to_csv(const std::vector<GramRow>& rows, SweepVerdict verdict);

}  // namespace nilwitness
