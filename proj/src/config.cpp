#include "qdec/config.hpp"

#include <charconv>

#include <nlohmann/json.hpp>

#include "qdec/errors.hpp"
#include "qdec/io.hpp"

namespace qdec::config {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void bad(const std::string& message) { throw config_error(message); }

}  // namespace

std::vector<Monomial> parse_monomials(const std::string& text) {
  std::vector<Monomial> terms;
  std::size_t start = 0;
  if (text.empty()) bad("empty polynomial");
  while (start <= text.size()) {
    auto plus = text.find('+', start);
    if (plus == std::string::npos) plus = text.size();
    std::string term = text.substr(start, plus - start);
    // strip spaces
    std::erase(term, ' ');
    if (term.empty()) bad("empty term in polynomial '" + text + "'");
    Monomial m;
    if (term != "1") {
      std::size_t pos = 0;
      while (pos < term.size()) {
        const char var = term[pos];
        if (var != 'x' && var != 'y')
          bad("unexpected character '" + std::string(1, var) + "' in polynomial term '" + term + "'");
        ++pos;
        if (pos < term.size() && term[pos] == '^') ++pos;
        std::size_t exp = 1;
        if (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
          std::size_t end = pos;
          while (end < term.size() && std::isdigit(static_cast<unsigned char>(term[end]))) ++end;
          const auto [p, ec] = std::from_chars(term.data() + pos, term.data() + end, exp);
          (void)p;
          if (ec != std::errc{}) bad("bad exponent in term '" + term + "'");
          pos = end;
        }
        if (var == 'x')
          m.x_exp += exp;
        else
          m.y_exp += exp;
      }
    }
    terms.push_back(m);
    start = plus + 1;
  }
  return terms;
}

namespace {

CSSCode code_from(const json& j) {
  const bool has_bicycle = j.contains("bicycle");
  const bool has_file = j.contains("file");
  if (has_bicycle == has_file) bad("code: exactly one of 'bicycle' or 'file' required");
  if (has_file) return io::load_code(j.at("file").get<std::string>());
  const json& b = j.at("bicycle");
  for (const char* key : {"l", "m", "a", "b"})
    if (!b.contains(key)) bad(std::string("bicycle: missing '") + key + "'");
  return build_bicycle(b.at("l").get<std::size_t>(), b.at("m").get<std::size_t>(),
                       parse_monomials(b.at("a").get<std::string>()),
                       parse_monomials(b.at("b").get<std::string>()),
                       b.value("d", std::size_t{0}));
}

MergePolicy merge_policy_from(const json& j) {
  const std::string policy = j.value("merge", "sum");
  if (policy == "sum") return MergePolicy::Sum;
  if (policy == "exact") return MergePolicy::Exact;
  bad("merge: expected 'sum' or 'exact', got '" + policy + "'");
}

Sector sector_from(const json& j) {
  const std::string sector = j.value("sector", "x");
  if (sector == "x") return Sector::X;
  if (sector == "z") return Sector::Z;
  bad("sector: expected 'x' or 'z', got '" + sector + "'");
}

}  // namespace

CSSCode code_from_json(const std::string& json_text) {
  return code_from(parse(json_text, "code config"));
}

DecodingModel model_from_build_json(const std::string& json_text) {
  const json j = parse(json_text, "build config");
  if (!j.contains("noise")) bad("build config: missing 'noise'");
  const json& noise = j.at("noise");
  const int sources = noise.contains("code_capacity") + noise.contains("phenomenological") +
                      noise.contains("fault_list");
  if (sources != 1)
    bad("noise: exactly one of code_capacity / phenomenological / fault_list required");

  const MergePolicy policy = merge_policy_from(j);
  if (noise.contains("fault_list")) {
    if (j.contains("code")) bad("build config: fault_list and code sources are exclusive");
    return io::load_fault_list(noise.at("fault_list").at("path").get<std::string>(), policy);
  }

  if (!j.contains("code")) bad("build config: missing 'code'");
  const CSSCode code = code_from(j.at("code"));
  const Sector sector = sector_from(j);

  if (noise.contains("code_capacity")) {
    const double p = noise.at("code_capacity").at("p").get<double>();
    return build_code_capacity(code, sector, p, policy);
  }
  const json& ph = noise.at("phenomenological");
  std::size_t rounds = 0;
  if (ph.contains("rounds"))
    rounds = ph.at("rounds").get<std::size_t>();
  else if (code.d > 0)
    rounds = code.d;  // rounds default to the claimed distance
  else
    bad("phenomenological: 'rounds' required when the code has no distance metadata");
  return build_phenomenological(code, sector, ph.at("p_data").get<double>(),
                                ph.at("p_meas").get<double>(), rounds, policy);
}

DecoderSpec decoder_spec_from_json(const std::string& json_text) {
  const json j = parse(json_text, "decoder config");
  DecoderSpec spec;
  if (j.contains("bp")) {
    const json& bp = j.at("bp");
    spec.bp.iterations = bp.value("iterations", spec.bp.iterations);
    const std::string schedule = bp.value("schedule", "serial");
    if (schedule == "serial")
      spec.bp.schedule = BpSchedule::Serial;
    else if (schedule == "flooding")
      spec.bp.schedule = BpSchedule::Flooding;
    else
      bad("bp.schedule: expected 'serial' or 'flooding'");
    spec.bp.llr_max = bp.value("llr_max", spec.bp.llr_max);
    spec.bp.early_exit = bp.value("early_exit", false);
    if (spec.bp.llr_max <= 0) bad("bp.llr_max must be positive");
  }
  const std::string variant = j.value("variant", "bfosd");
  if (variant == "osd0")
    spec.variant = DecoderVariant::Osd0;
  else if (variant == "osdw")
    spec.variant = DecoderVariant::OsdW;
  else if (variant == "osdcs")
    spec.variant = DecoderVariant::OsdCs;
  else if (variant == "bfosd")
    spec.variant = DecoderVariant::BfOsd;
  else if (variant == "oracle")
    spec.variant = DecoderVariant::Oracle;
  else
    bad("variant: expected osd0/osdw/osdcs/bfosd/oracle, got '" + variant + "'");

  const std::string conv = j.value("convention", "confidence");
  if (conv == "confidence")
    spec.convention = OrderingConvention::ConfidenceAscendingWithPreflip;
  else if (conv == "llr")
    spec.convention = OrderingConvention::LlrAscending;
  else
    bad("convention: expected 'confidence' or 'llr'");

  const std::string selection = j.value("subset_selection", "llr");
  if (selection == "llr")
    spec.selection = SubsetSelection::FreeColumnLlr;
  else if (selection == "generator_weight")
    spec.selection = SubsetSelection::GeneratorWeight;
  else
    bad("subset_selection: expected 'llr' or 'generator_weight'");

  spec.w = j.value("w", spec.w);
  spec.lambda = j.value("lambda", spec.lambda);
  spec.budget = j.value("q", spec.budget);
  const std::string expansion = j.value("expansion", "eager");
  if (expansion == "eager")
    spec.expansion = Expansion::Eager;
  else if (expansion == "lazy")
    spec.expansion = Expansion::Lazy;
  else
    bad("expansion: expected 'eager' or 'lazy'");
  spec.fast_path = j.value("fast_path", false);
  spec.record_trace = j.value("trace", false);
  if (j.contains("checkpoints"))
    spec.checkpoints = j.at("checkpoints").get<std::vector<std::uint64_t>>();

  // Parameters inconsistent with the variant are rejected rather than ignored.
  if (j.contains("w") && spec.variant != DecoderVariant::OsdW)
    bad("decoder config: 'w' only applies to variant osdw");
  if (j.contains("q") && spec.variant != DecoderVariant::BfOsd)
    bad("decoder config: 'q' only applies to variant bfosd");
  if (j.contains("lambda") &&
      !(spec.variant == DecoderVariant::OsdCs || spec.variant == DecoderVariant::BfOsd))
    bad("decoder config: 'lambda' only applies to osdcs (search pairs) or bfosd (auto budget)");
  return spec;
}

std::string decoder_spec_to_json(const DecoderSpec& spec) {
  json j;
  switch (spec.variant) {
    case DecoderVariant::Osd0: j["variant"] = "osd0"; break;
    case DecoderVariant::OsdW:
      j["variant"] = "osdw";
      j["w"] = spec.w;
      break;
    case DecoderVariant::OsdCs:
      j["variant"] = "osdcs";
      j["lambda"] = spec.lambda;
      break;
    case DecoderVariant::BfOsd:
      j["variant"] = "bfosd";
      if (spec.budget) j["q"] = spec.budget;
      j["expansion"] = spec.expansion == Expansion::Eager ? "eager" : "lazy";
      break;
    case DecoderVariant::Oracle: j["variant"] = "oracle"; break;
  }
  j["convention"] =
      spec.convention == OrderingConvention::LlrAscending ? "llr" : "confidence";
  j["subset_selection"] =
      spec.selection == SubsetSelection::FreeColumnLlr ? "llr" : "generator_weight";
  j["bp"] = {{"iterations", spec.bp.iterations},
             {"schedule", spec.bp.schedule == BpSchedule::Serial ? "serial" : "flooding"},
             {"llr_max", spec.bp.llr_max},
             {"early_exit", spec.bp.early_exit}};
  if (spec.fast_path) j["fast_path"] = true;
  if (spec.record_trace) j["trace"] = true;
  if (!spec.checkpoints.empty()) j["checkpoints"] = spec.checkpoints;
  return j.dump();
}

RunOptions run_options_from_json(const std::string& json_text) {
  const json j = parse(json_text, "run config");
  RunOptions opt;
  if (j.contains("decoder")) opt.decoder = decoder_spec_from_json(j.at("decoder").dump());
  if (!j.contains("shots")) bad("run config: missing 'shots'");
  opt.shots = j.at("shots").get<std::uint64_t>();
  if (opt.shots == 0) bad("run config: shots must be >= 1");
  opt.seed = j.value("seed", std::uint64_t{0});
  opt.workers = j.value("workers", 0u);
  return opt;
}

std::string run_stats_to_json(const RunStats& s) {
  json j;
  j["shots"] = s.shots;
  j["failures"] = s.failures;
  j["p_shot"] = s.p_shot;
  j["p_round"] = s.p_round;
  j["ci_low"] = s.ci_low;
  j["ci_high"] = s.ci_high;
  j["rounds"] = s.rounds;
  j["mean_queries"] = s.mean_queries;
  j["bp_converged_shots"] = s.bp_converged_shots;
  j["wall_time_s"] = s.wall_time_s;
  j["seed"] = s.seed;
  j["config_digest"] = s.config_digest;
  j["code"] = s.model_name;
  j["model_digest"] = s.model_digest;
  j["decoder"] = s.decoder;
  j["params"] = s.params;
  return j.dump();
}

RunStats run_stats_from_json(const std::string& json_text) {
  const json j = parse(json_text, "run stats");
  RunStats s;
  s.shots = j.at("shots").get<std::uint64_t>();
  s.failures = j.at("failures").get<std::uint64_t>();
  s.p_shot = j.at("p_shot").get<double>();
  s.p_round = j.at("p_round").get<double>();
  s.ci_low = j.at("ci_low").get<double>();
  s.ci_high = j.at("ci_high").get<double>();
  s.rounds = j.at("rounds").get<std::size_t>();
  s.mean_queries = j.at("mean_queries").get<double>();
  s.bp_converged_shots = j.value("bp_converged_shots", std::uint64_t{0});
  s.wall_time_s = j.value("wall_time_s", 0.0);
  s.seed = j.at("seed").get<std::uint64_t>();
  s.config_digest = j.value("config_digest", std::string{});
  s.model_name = j.value("code", std::string{});
  s.model_digest = j.value("model_digest", std::string{});
  s.decoder = j.value("decoder", std::string{});
  s.params = j.value("params", std::string{});
  return s;
}

std::string comparison_to_json(const MatchedComparison& c) {
  json j;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["failures_a"] = c.failures_a;
  j["failures_b"] = c.failures_b;
  j["both_fail"] = c.both_fail;
  j["only_a"] = c.only_a;
  j["only_b"] = c.only_b;
  j["discordant"] = c.discordant();
  j["mean_queries_a"] = c.mean_queries_a;
  j["mean_queries_b"] = c.mean_queries_b;
  j["wall_time_s"] = c.wall_time_s;
  j["model_digest"] = c.model_digest;
  return j.dump();
}

}  // namespace qdec::config
