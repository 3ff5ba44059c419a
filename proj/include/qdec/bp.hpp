#pragma once

#include <cstdint>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/model.hpp"

namespace qdec {

enum class BpSchedule { Flooding, Serial };

struct BpConfig {
  std::size_t iterations = 20;
  BpSchedule schedule = BpSchedule::Serial;
  double llr_max = 30.0;  // clip on priors, messages and posteriors
  bool early_exit = false;
};

/// Posterior LLRs and hard decisions after a BP run. hard_decisions[i] = 1
/// iff llrs[i] < 0 (exact zero decides 0).
struct SoftOutput {
  std::vector<double> llrs;
  BitVector hard_decisions;
  std::size_t iterations_run = 0;
  bool converged = false;          // h_dec * hard_decisions == syndrome
  std::uint64_t message_updates = 0;  // edge messages computed, both directions
};

/// Prior LLR log((1-p)/p), clipped to [-llr_max, llr_max].
double prior_llr(double p, double llr_max = 30.0);
std::vector<double> prior_llrs(const DecodingModel& model, double llr_max = 30.0);

/// Sum-product decoder on the Tanner graph of a decoding matrix. A check
/// with syndrome bit 1 enforces odd parity (its outgoing messages carry a
/// sign flip). Instances hold per-run scratch and are single-threaded;
/// distinct instances share nothing mutable.
class BpDecoder {
 public:
  explicit BpDecoder(const DecodingModel& model, BpConfig config = {});

  SoftOutput decode(const BitVector& syndrome);

  std::size_t edge_count() const { return edge_var_.size(); }
  const BpConfig& config() const { return config_; }

 private:
  void check_update(std::size_t c, const BitVector& syndrome, std::vector<double>& to_var);
  BitVector hard_decisions() const;

  const DecodingModel& model_;
  BpConfig config_;

  // CSR layout per check: edges of check c are check_begin_[c]..check_begin_[c+1].
  std::vector<std::size_t> check_begin_;
  std::vector<uint32_t> edge_var_;
  // Per variable: the edge ids incident to it.
  std::vector<std::vector<uint32_t>> var_edges_;

  std::vector<double> prior_;
  std::vector<double> check_to_var_;  // per edge
  std::vector<double> var_to_check_;  // per edge
  std::vector<double> posterior_;
  std::vector<double> scratch_tanh_;
  std::uint64_t updates_ = 0;
};

}  // namespace qdec
