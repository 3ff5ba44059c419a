#include "qdec/bp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdec {

double prior_llr(double p, double llr_max) {
  const double llr = std::log((1.0 - p) / p);
  return std::clamp(llr, -llr_max, llr_max);
}

std::vector<double> prior_llrs(const DecodingModel& model, double llr_max) {
  std::vector<double> out(model.columns());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = prior_llr(model.priors[i], llr_max);
  return out;
}

BpDecoder::BpDecoder(const DecodingModel& model, BpConfig config)
    : model_(model), config_(config) {
  const std::size_t checks = model.detectors();
  check_begin_.assign(checks + 1, 0);
  var_edges_.assign(model.columns(), {});
  for (std::size_t c = 0; c < model.columns(); ++c)
    for (uint32_t r : model.column_support(c)) ++check_begin_[r + 1];
  for (std::size_t c = 0; c < checks; ++c) check_begin_[c + 1] += check_begin_[c];
  edge_var_.resize(check_begin_[checks]);
  std::vector<std::size_t> cursor(check_begin_.begin(), check_begin_.end() - 1);
  for (std::size_t v = 0; v < model.columns(); ++v)
    for (uint32_t r : model.column_support(v)) {
      const std::size_t e = cursor[r]++;
      edge_var_[e] = static_cast<uint32_t>(v);
      var_edges_[v].push_back(static_cast<uint32_t>(e));
    }
  prior_ = prior_llrs(model, config_.llr_max);
  check_to_var_.resize(edge_var_.size());
  var_to_check_.resize(edge_var_.size());
  posterior_.resize(model.columns());
  scratch_tanh_.reserve(64);
}

// Tanh-product rule for one check; to_var[e] receives the message for each
// edge e of the check. Arguments clamped so atanh stays finite; a degree-1
// check passes the syndrome sign at full confidence.
void BpDecoder::check_update(std::size_t c, const BitVector& syndrome, std::vector<double>& to_var) {
  const std::size_t begin = check_begin_[c], end = check_begin_[c + 1];
  const std::size_t deg = end - begin;
  const double pmax = std::tanh(0.5 * config_.llr_max);
  scratch_tanh_.resize(deg);
  for (std::size_t i = 0; i < deg; ++i) scratch_tanh_[i] = std::tanh(0.5 * to_var[begin + i]);

  // prefix[i] = product of tanh over edges < i, suffix accumulated on the fly
  double suffix = 1.0;
  std::vector<double>& pre = scratch_tanh_;  // reuse: pre[i] holds prefix product
  double run = 1.0;
  for (std::size_t i = 0; i < deg; ++i) {
    const double t = pre[i];
    pre[i] = run;
    run *= t;
  }
  const double sign = syndrome.get(c) ? -1.0 : 1.0;
  for (std::size_t i = deg; i-- > 0;) {
    const double t = std::tanh(0.5 * to_var[begin + i]);
    const double excl = std::clamp(pre[i] * suffix, -pmax, pmax);
    check_to_var_[begin + i] = sign * 2.0 * std::atanh(excl);
    suffix *= t;
    ++updates_;
  }
}

BitVector BpDecoder::hard_decisions() const {
  BitVector hard(posterior_.size());
  for (std::size_t i = 0; i < posterior_.size(); ++i)
    if (posterior_[i] < 0.0) hard.set(i, true);
  return hard;
}

SoftOutput BpDecoder::decode(const BitVector& syndrome) {
  if (syndrome.size() != model_.detectors())
    throw std::invalid_argument("bp: syndrome length != detector count");

  const double lmax = config_.llr_max;
  auto clip = [lmax](double x) { return std::clamp(x, -lmax, lmax); };

  posterior_ = prior_;
  std::fill(check_to_var_.begin(), check_to_var_.end(), 0.0);
  updates_ = 0;

  SoftOutput out;
  std::size_t iter = 0;
  const std::size_t checks = model_.detectors();

  if (config_.schedule == BpSchedule::Flooding) {
    for (std::size_t e = 0; e < edge_var_.size(); ++e) var_to_check_[e] = prior_[edge_var_[e]];
    for (; iter < config_.iterations; ++iter) {
      for (std::size_t c = 0; c < checks; ++c) check_update(c, syndrome, var_to_check_);
      for (std::size_t v = 0; v < var_edges_.size(); ++v) {
        double total = prior_[v];
        for (uint32_t e : var_edges_[v]) total += check_to_var_[e];
        posterior_[v] = clip(total);
        for (uint32_t e : var_edges_[v]) {
          var_to_check_[e] = clip(total - check_to_var_[e]);
          ++updates_;
        }
      }
      if (config_.early_exit && model_.syndrome_of(hard_decisions()) == syndrome) {
        ++iter;
        break;
      }
    }
  } else {
    // Serial: sweep checks in ascending row index, refreshing the incident
    // variable beliefs immediately after each check. The posterior is kept
    // as an exact accumulator (prior plus clipped check messages) and only
    // clipped on output; clipping it here would corrupt the extrinsic
    // subtraction once beliefs saturate.
    std::vector<double> old_msg;
    for (; iter < config_.iterations; ++iter) {
      for (std::size_t c = 0; c < checks; ++c) {
        const std::size_t begin = check_begin_[c], end = check_begin_[c + 1];
        old_msg.assign(check_to_var_.begin() + begin, check_to_var_.begin() + end);
        for (std::size_t e = begin; e < end; ++e) {
          var_to_check_[e] = clip(posterior_[edge_var_[e]] - check_to_var_[e]);
          ++updates_;
        }
        check_update(c, syndrome, var_to_check_);
        for (std::size_t e = begin; e < end; ++e)
          posterior_[edge_var_[e]] += check_to_var_[e] - old_msg[e - begin];
      }
      if (config_.early_exit && model_.syndrome_of(hard_decisions()) == syndrome) {
        ++iter;
        break;
      }
    }
    for (double& p : posterior_) p = clip(p);
  }

  out.llrs = posterior_;
  out.hard_decisions = hard_decisions();
  out.iterations_run = iter;
  out.converged = model_.syndrome_of(out.hard_decisions) == syndrome;
  out.message_updates = updates_;
  return out;
}

}  // namespace qdec
