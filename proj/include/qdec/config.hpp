#pragma once

#include <string>
#include <vector>

#include "qdec/css.hpp"
#include "qdec/model.hpp"
#include "qdec/sim.hpp"

namespace qdec::config {

/// Parses the compact bivariate polynomial form "x3+y+y2" (terms joined by
/// '+', each a product of optional x^e and y^e factors; "1" is the constant
/// term). Throws config_error on malformed input.
std::vector<Monomial> parse_monomials(const std::string& text);

/// Builds a CSS code from a build-config JSON fragment:
///   {"bicycle": {"l":6,"m":6,"a":"x3+y+y2","b":"y3+x+x2","d":6}}  or
///   {"file": "code.json"}
CSSCode code_from_json(const std::string& json_text);

/// Builds one sector model from a full build config:
///   {"code": {...}, "noise": {"phenomenological": {"p_data":..,"p_meas":..,"rounds":..}}
///                 | {"code_capacity": {"p":..}},
///    "sector": "x"|"z", "merge": "sum"|"exact"}
/// A fault-list source bypasses the code entirely:
///   {"noise": {"fault_list": {"path": "faults.txt"}}}
DecodingModel model_from_build_json(const std::string& json_text);

DecoderSpec decoder_spec_from_json(const std::string& json_text);
std::string decoder_spec_to_json(const DecoderSpec& spec);

struct RunOptions {
  DecoderSpec decoder;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// {"decoder": {...}, "shots": N, "seed": S, "workers": W}
RunOptions run_options_from_json(const std::string& json_text);

std::string run_stats_to_json(const RunStats& stats);
RunStats run_stats_from_json(const std::string& json_text);
std::string comparison_to_json(const MatchedComparison& cmp);

}  // namespace qdec::config
