#include "qdec/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "qdec/errors.hpp"
#include "qdec/oracle.hpp"

namespace qdec {

namespace {

const char* variant_name(DecoderVariant v) {
  switch (v) {
    case DecoderVariant::Osd0: return "osd0";
    case DecoderVariant::OsdW: return "osdw";
    case DecoderVariant::OsdCs: return "osdcs";
    case DecoderVariant::BfOsd: return "bfosd";
    case DecoderVariant::Oracle: return "oracle";
  }
  return "?";
}

std::uint64_t fnv1a_str(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string DecoderSpec::describe() const {
  std::string s = variant_name(variant);
  s += "(conv=";
  s += convention == OrderingConvention::LlrAscending ? "llr" : "confidence";
  switch (variant) {
    case DecoderVariant::OsdW: s += ";w=" + std::to_string(w); break;
    case DecoderVariant::OsdCs: s += ";lambda=" + std::to_string(lambda); break;
    case DecoderVariant::BfOsd:
      s += ";q=" + (budget ? std::to_string(budget) : std::string("auto"));
      s += expansion == Expansion::Eager ? ";eager" : ";lazy";
      break;
    default: break;
  }
  s += ";bp=" + std::to_string(bp.iterations);
  s += bp.schedule == BpSchedule::Serial ? "s" : "f";
  if (bp.early_exit) s += ";ee";
  s += ")";
  return s;
}

DecoderPipeline::DecoderPipeline(const DecodingModel& model, DecoderSpec spec)
    : model_(model), spec_(std::move(spec)), bp_(model, spec_.bp) {
  k_ = model.columns() - gf2::rank(model.h_dec);
  budget_ = spec_.budget ? spec_.budget
                         : static_cast<std::uint64_t>(k_) +
                               spec_.lambda * (spec_.lambda - 1) / 2;
  if (spec_.variant == DecoderVariant::Oracle && k_ > 24)
    throw std::invalid_argument("oracle decoder: free-set size " + std::to_string(k_) +
                                " exceeds the 2^24 enumeration guard");
  if (spec_.variant == DecoderVariant::OsdW && spec_.w > k_)
    throw std::invalid_argument("osd_w: w exceeds the free-set size");
  if (spec_.variant == DecoderVariant::OsdCs && spec_.lambda > k_)
    throw std::invalid_argument("osd_cs: lambda exceeds the free-set size");
}

DecodeResult DecoderPipeline::decode(const BitVector& syndrome) {
  DecodeResult out;
  const SoftOutput soft = bp_.decode(syndrome);
  out.bp_converged = soft.converged;

  if (spec_.fast_path && !syndrome.any()) {
    bool all_positive = true;
    for (double l : soft.llrs)
      if (l <= 0.0) {
        all_positive = false;
        break;
      }
    if (all_positive) {
      out.error = BitVector(model_.columns());
      out.cost = 0.0;
      out.queries = 0;
      return out;
    }
  }

  const BaseSolution base = osd0(model_, syndrome, soft.llrs, spec_.convention);

  OsdResult osd;
  switch (spec_.variant) {
    case DecoderVariant::Osd0:
      osd.candidate = base_candidate(base);
      osd.evaluated = 1;
      break;
    case DecoderVariant::OsdW:
      osd = osd_w(base, spec_.w, spec_.selection);
      break;
    case DecoderVariant::OsdCs:
      osd = osd_cs(base, spec_.lambda, spec_.selection);
      break;
    case DecoderVariant::BfOsd: {
      BfOptions options;
      options.budget = budget_;
      options.expansion = spec_.expansion;
      options.record_trace = spec_.record_trace;
      options.checkpoints = spec_.checkpoints;
      osd = bf_osd(base, options);
      break;
    }
    case DecoderVariant::Oracle: {
      const auto best =
          oracle::coset_min(model_.h_dec, base.preflip.adjusted_syndrome, base.llrs);
      osd.candidate.error = base.to_original(best.argmin);
      osd.candidate.cost = best.minimum_cost;
      osd.evaluated = best.enumerated;
      break;
    }
  }

  out.error = std::move(osd.candidate.error);
  out.cost = osd.candidate.cost;
  out.queries = osd.evaluated;
  out.checkpoint_costs = std::move(osd.checkpoint_costs);
  if (spec_.record_trace) out.trace = format_trace(osd.trace);

  if (model_.syndrome_of(out.error) != syndrome)
    throw contract_violation("decoder output does not satisfy the syndrome");
  return out;
}

SampledShot sample_shot(const DecodingModel& model, PhiloxRng& rng) {
  SampledShot shot;
  shot.error = BitVector(model.columns());
  for (std::size_t c = 0; c < model.columns(); ++c)
    if (rng.next_double() < model.priors[c]) shot.error.set(c, true);
  shot.syndrome = model.syndrome_of(shot.error);
  shot.logical = model.logical_of(shot.error);
  return shot;
}

bool is_logical_failure(const DecodingModel& model, const BitVector& e_true,
                        const BitVector& e_hat) {
  if (model.syndrome_of(e_true) != model.syndrome_of(e_hat))
    throw contract_violation("is_logical_failure: e_hat does not match the syndrome of e_true");
  BitVector residual = e_true;
  residual.xor_with(e_hat);
  return model.logical_of(residual).any();
}

double per_round_rate(double p_shot, std::size_t rounds) {
  if (!(p_shot >= 0.0 && p_shot <= 1.0))
    throw std::invalid_argument("per_round_rate: p_shot outside [0,1]");
  if (rounds < 1) throw std::invalid_argument("per_round_rate: rounds must be >= 1");
  if (p_shot >= 1.0) return 1.0;
  // 1 - (1-p)^(1/R) via expm1/log1p for precision at small p.
  return -std::expm1(std::log1p(-p_shot) / static_cast<double>(rounds));
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th percentile of the normal
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double lo = std::max(0.0, (centre - spread) / denom);
  double hi = std::min(1.0, (centre + spread) / denom);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

namespace {

struct Tally {
  std::uint64_t failures = 0;
  std::uint64_t queries = 0;
  std::uint64_t bp_converged = 0;
};

constexpr std::uint64_t kChunk = 256;  // fixed partition, independent of worker count

void validate_sectors(const std::vector<const DecodingModel*>& sectors) {
  if (sectors.empty()) throw std::invalid_argument("simulation: no sector models");
  for (const auto* m : sectors)
    if (!m) throw std::invalid_argument("simulation: null sector model");
  for (std::size_t i = 1; i < sectors.size(); ++i)
    if (sectors[i]->rounds != sectors[0]->rounds)
      throw std::invalid_argument("simulation: sector models disagree on rounds");
}

unsigned resolve_workers(unsigned workers) {
  if (workers) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::string combined_digest(const std::vector<const DecodingModel*>& sectors) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto* m : sectors) h = fnv1a_str(h, m->digest());
  return hex64(h);
}

std::string combined_name(const std::vector<const DecodingModel*>& sectors) {
  std::string name;
  for (const auto* m : sectors) {
    if (!name.empty()) name += "+";
    name += m->name.empty() ? std::string("model") : m->name;
  }
  return name;
}

}  // namespace

RunStats run_monte_carlo(const std::vector<const DecodingModel*>& sectors,
                         const DecoderSpec& spec, const SimOptions& options) {
  validate_sectors(sectors);
  if (options.shots == 0) throw std::invalid_argument("simulation: shots must be >= 1");
  // Fail fast on model/decoder mismatches before any shot runs.
  std::vector<std::unique_ptr<DecoderPipeline>> probe;
  for (const auto* m : sectors) probe.push_back(std::make_unique<DecoderPipeline>(*m, spec));

  const auto t0 = std::chrono::steady_clock::now();
  if (options.per_shot) options.per_shot->assign(options.shots, {});

  const std::uint64_t n_chunks = (options.shots + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(n_chunks);
  std::atomic<std::uint64_t> next_chunk{0};

  auto worker = [&]() {
    std::vector<std::unique_ptr<DecoderPipeline>> pipes;
    for (const auto* m : sectors) pipes.push_back(std::make_unique<DecoderPipeline>(*m, spec));
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= n_chunks) break;
      Tally t;
      const std::uint64_t begin = chunk * kChunk;
      const std::uint64_t end = std::min(begin + kChunk, options.shots);
      for (std::uint64_t shot = begin; shot < end; ++shot) {
        bool failure = false;
        bool converged = true;
        std::uint64_t queries = 0;
        double cost = 0.0;
        for (std::size_t sec = 0; sec < sectors.size(); ++sec) {
          PhiloxRng rng(options.seed, shot, static_cast<uint32_t>(sec));
          const SampledShot sample = sample_shot(*sectors[sec], rng);
          const DecodeResult dec = pipes[sec]->decode(sample.syndrome);
          failure |= is_logical_failure(*sectors[sec], sample.error, dec.error);
          converged &= dec.bp_converged;
          queries += dec.queries;
          cost += dec.cost;
        }
        t.failures += failure;
        t.queries += queries;
        t.bp_converged += converged;
        if (options.per_shot)
          (*options.per_shot)[shot] = ShotOutcome{shot, failure, cost, queries, converged};
      }
      tallies[chunk] = t;
    }
  };

  const unsigned n_workers = resolve_workers(options.workers);
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < n_workers; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  Tally total;
  for (const Tally& t : tallies) {
    total.failures += t.failures;
    total.queries += t.queries;
    total.bp_converged += t.bp_converged;
  }

  RunStats stats;
  stats.shots = options.shots;
  stats.failures = total.failures;
  stats.p_shot = static_cast<double>(total.failures) / static_cast<double>(options.shots);
  stats.rounds = sectors[0]->rounds;
  stats.p_round = per_round_rate(stats.p_shot, stats.rounds);
  std::tie(stats.ci_low, stats.ci_high) = wilson_interval(total.failures, options.shots);
  stats.mean_queries = static_cast<double>(total.queries) / static_cast<double>(options.shots);
  stats.bp_converged_shots = total.bp_converged;
  stats.seed = options.seed;
  stats.model_name = combined_name(sectors);
  stats.model_digest = combined_digest(sectors);
  stats.decoder = variant_name(spec.variant);
  stats.params = spec.describe();
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a_str(h, stats.model_digest);
  h = fnv1a_str(h, stats.params);
  h = fnv1a_str(h, std::to_string(options.shots));
  h = fnv1a_str(h, std::to_string(options.seed));
  stats.config_digest = hex64(h);
  stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return stats;
}

MatchedComparison compare_matched(const std::vector<const DecodingModel*>& sectors,
                                  const DecoderSpec& spec_a, const DecoderSpec& spec_b,
                                  std::uint64_t shots, std::uint64_t seed, unsigned workers,
                                  std::vector<ShotOutcome>* per_shot_a,
                                  std::vector<ShotOutcome>* per_shot_b) {
  validate_sectors(sectors);
  if (shots == 0) throw std::invalid_argument("compare: shots must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  if (per_shot_a) per_shot_a->assign(shots, {});
  if (per_shot_b) per_shot_b->assign(shots, {});

  struct PairTally {
    std::uint64_t fail_a = 0, fail_b = 0, both = 0, only_a = 0, only_b = 0;
    std::uint64_t queries_a = 0, queries_b = 0;
  };
  const std::uint64_t n_chunks = (shots + kChunk - 1) / kChunk;
  std::vector<PairTally> tallies(n_chunks);
  std::atomic<std::uint64_t> next_chunk{0};

  auto worker = [&]() {
    std::vector<std::unique_ptr<DecoderPipeline>> pipes_a, pipes_b;
    for (const auto* m : sectors) {
      pipes_a.push_back(std::make_unique<DecoderPipeline>(*m, spec_a));
      pipes_b.push_back(std::make_unique<DecoderPipeline>(*m, spec_b));
    }
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= n_chunks) break;
      PairTally t;
      const std::uint64_t begin = chunk * kChunk;
      const std::uint64_t end = std::min(begin + kChunk, shots);
      for (std::uint64_t shot = begin; shot < end; ++shot) {
        bool fail_a = false, fail_b = false;
        bool conv_a = true, conv_b = true;
        std::uint64_t q_a = 0, q_b = 0;
        double c_a = 0.0, c_b = 0.0;
        for (std::size_t sec = 0; sec < sectors.size(); ++sec) {
          PhiloxRng rng(seed, shot, static_cast<uint32_t>(sec));
          const SampledShot sample = sample_shot(*sectors[sec], rng);
          const DecodeResult da = pipes_a[sec]->decode(sample.syndrome);
          const DecodeResult db = pipes_b[sec]->decode(sample.syndrome);
          fail_a |= is_logical_failure(*sectors[sec], sample.error, da.error);
          fail_b |= is_logical_failure(*sectors[sec], sample.error, db.error);
          conv_a &= da.bp_converged;
          conv_b &= db.bp_converged;
          q_a += da.queries;
          q_b += db.queries;
          c_a += da.cost;
          c_b += db.cost;
        }
        t.fail_a += fail_a;
        t.fail_b += fail_b;
        t.both += fail_a && fail_b;
        t.only_a += fail_a && !fail_b;
        t.only_b += !fail_a && fail_b;
        t.queries_a += q_a;
        t.queries_b += q_b;
        if (per_shot_a) (*per_shot_a)[shot] = ShotOutcome{shot, fail_a, c_a, q_a, conv_a};
        if (per_shot_b) (*per_shot_b)[shot] = ShotOutcome{shot, fail_b, c_b, q_b, conv_b};
      }
      tallies[chunk] = t;
    }
  };

  const unsigned n_workers = resolve_workers(workers);
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < n_workers; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  MatchedComparison cmp;
  cmp.shots = shots;
  cmp.seed = seed;
  for (const PairTally& t : tallies) {
    cmp.failures_a += t.fail_a;
    cmp.failures_b += t.fail_b;
    cmp.both_fail += t.both;
    cmp.only_a += t.only_a;
    cmp.only_b += t.only_b;
    cmp.mean_queries_a += static_cast<double>(t.queries_a);
    cmp.mean_queries_b += static_cast<double>(t.queries_b);
  }
  cmp.mean_queries_a /= static_cast<double>(shots);
  cmp.mean_queries_b /= static_cast<double>(shots);
  cmp.model_digest = combined_digest(sectors);
  cmp.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cmp;
}

std::string stats_csv_header() {
  return "code,model_digest,decoder,params,shots,failures,p_shot,p_round,ci_low,ci_high,"
         "mean_queries,wall_time,config_digest,seed";
}

std::string stats_csv_row(const RunStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%llu,%llu,%.9e,%.9e,%.9e,%.9e,%.6f,%.3f",
                static_cast<unsigned long long>(s.shots),
                static_cast<unsigned long long>(s.failures), s.p_shot, s.p_round, s.ci_low,
                s.ci_high, s.mean_queries, s.wall_time_s);
  std::string row = s.model_name + "," + s.model_digest + "," + s.decoder + "," + s.params + ",";
  row += buf;
  row += "," + s.config_digest + "," + std::to_string(s.seed);
  return row;
}

}  // namespace qdec
