#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/bp.hpp"
#include "qdec/model.hpp"
#include "qdec/osd.hpp"
#include "qdec/rng.hpp"

namespace qdec {

enum class DecoderVariant { Osd0, OsdW, OsdCs, BfOsd, Oracle };

/// Full per-shot decoding recipe: BP warm-up settings plus the OSD stage.
struct DecoderSpec {
  BpConfig bp;
  DecoderVariant variant = DecoderVariant::BfOsd;
  OrderingConvention convention = OrderingConvention::ConfidenceAscendingWithPreflip;
  SubsetSelection selection = SubsetSelection::FreeColumnLlr;
  std::size_t w = 4;            // OSD-w
  std::size_t lambda = 7;       // OSD-CS
  std::uint64_t budget = 0;     // BF-OSD; 0 means k + lambda*(lambda-1)/2
  Expansion expansion = Expansion::Eager;
  bool fast_path = false;       // zero syndrome + all-positive LLRs returns zero directly
  bool record_trace = false;
  std::vector<std::uint64_t> checkpoints;  // BF-OSD anytime probes (pop counts)

  std::string describe() const;  // compact human/CSV form, e.g. "bfosd(q=121,...)"
};

struct DecodeResult {
  BitVector error;
  double cost = 0.0;
  std::uint64_t queries = 0;
  bool bp_converged = false;
  std::vector<double> checkpoint_costs;
  std::string trace;
};

/// One decoder instance per thread: owns the BP scratch and decodes one
/// syndrome at a time. The decoded error is verified against the syndrome
/// before being returned (contract_violation otherwise).
class DecoderPipeline {
 public:
  DecoderPipeline(const DecodingModel& model, DecoderSpec spec);

  DecodeResult decode(const BitVector& syndrome);

  const DecodingModel& model() const { return model_; }
  const DecoderSpec& spec() const { return spec_; }
  std::size_t free_set_size() const { return k_; }
  std::uint64_t effective_budget() const { return budget_; }

 private:
  const DecodingModel& model_;
  DecoderSpec spec_;
  BpDecoder bp_;
  std::size_t k_ = 0;          // columns - rank(h_dec), fixed per model
  std::uint64_t budget_ = 0;
};

struct SampledShot {
  BitVector error;
  BitVector syndrome;
  BitVector logical;
};

/// Independently sets each column with its prior probability; always draws
/// exactly one uniform per column so downstream consumption cannot shift
/// the stream.
SampledShot sample_shot(const DecodingModel& model, PhiloxRng& rng);

/// Failure iff the residual error e_true (+) e_hat flips any logical
/// observable. Throws contract_violation if e_hat does not reproduce the
/// syndrome of e_true.
bool is_logical_failure(const DecodingModel& model, const BitVector& e_true,
                        const BitVector& e_hat);

/// Per-round rate from the per-shot rate: 1 - (1 - p_shot)^(1/rounds).
double per_round_rate(double p_shot, std::size_t rounds);

/// Wilson score interval at 95% on a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct ShotOutcome {
  std::uint64_t shot_index = 0;
  bool failure = false;
  double cost = 0.0;
  std::uint64_t queries = 0;
  bool bp_converged = false;
};

struct RunStats {
  std::uint64_t shots = 0;
  std::uint64_t failures = 0;
  double p_shot = 0.0;
  double p_round = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t rounds = 1;
  double mean_queries = 0.0;
  std::uint64_t bp_converged_shots = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string model_name;
  std::string model_digest;
  std::string decoder;
  std::string params;
};

struct SimOptions {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::vector<ShotOutcome>* per_shot = nullptr;  // resized to `shots` when set
};

/// Deterministic Monte Carlo over one or two sector models: each sector is
/// sampled and decoded independently, a shot fails if any sector's logical
/// check fails. The result is a pure function of (models, spec, shots, seed).
RunStats run_monte_carlo(const std::vector<const DecodingModel*>& sectors,
                         const DecoderSpec& spec, const SimOptions& options);

struct MatchedComparison {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures_a = 0;
  std::uint64_t failures_b = 0;
  std::uint64_t both_fail = 0;
  std::uint64_t only_a = 0;
  std::uint64_t only_b = 0;
  double mean_queries_a = 0.0;
  double mean_queries_b = 0.0;
  double wall_time_s = 0.0;
  std::string model_digest;

  std::uint64_t discordant() const { return only_a + only_b; }
};

/// Runs both decoders on byte-identical sampled shots.
MatchedComparison compare_matched(const std::vector<const DecodingModel*>& sectors,
                                  const DecoderSpec& spec_a, const DecoderSpec& spec_b,
                                  std::uint64_t shots, std::uint64_t seed, unsigned workers = 0,
                                  std::vector<ShotOutcome>* per_shot_a = nullptr,
                                  std::vector<ShotOutcome>* per_shot_b = nullptr);

std::string stats_csv_header();
std::string stats_csv_row(const RunStats& stats);

}  // namespace qdec
