#include "qdec/osd.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "qdec/errors.hpp"

namespace qdec {

PreflipRecord preflip(const BitMatrix& h_dec, const BitVector& syndrome,
                      const std::vector<double>& llrs) {
  PreflipRecord rec;
  rec.flips = BitVector(llrs.size());
  rec.adjusted_llrs.resize(llrs.size());
  for (std::size_t i = 0; i < llrs.size(); ++i) {
    rec.adjusted_llrs[i] = std::abs(llrs[i]);
    if (llrs[i] < 0.0) rec.flips.set(i, true);
  }
  rec.adjusted_syndrome = syndrome;
  if (rec.flips.any()) rec.adjusted_syndrome.xor_with(h_dec.multiply(rec.flips));
  return rec;
}

std::vector<std::size_t> order_columns(const std::vector<double>& llrs, OrderingConvention conv) {
  if (conv == OrderingConvention::LlrAscending) return gf2::ascending_order(llrs);
  std::vector<double> magnitude(llrs.size());
  for (std::size_t i = 0; i < llrs.size(); ++i) magnitude[i] = std::abs(llrs[i]);
  return gf2::ascending_order(magnitude);
}

double candidate_cost(const BitVector& e, const std::vector<double>& llrs) {
  double cost = 0.0;
  const auto words = e.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    uint64_t x = words[w];
    while (x) {
      cost += llrs[w * 64 + std::countr_zero(x)];
      x &= x - 1;
    }
  }
  return cost;
}

double incremental_cost(double parent_cost, const BitVector& parent_e, const BitVector& g,
                        const std::vector<double>& llrs) {
  const auto gw = g.words();
  double delta = 0.0;
  for (std::size_t w = 0; w < gw.size(); ++w) {
    uint64_t x = gw[w];
    while (x) {
      const std::size_t i = w * 64 + std::countr_zero(x);
      delta += parent_e.get(i) ? -llrs[i] : llrs[i];
      x &= x - 1;
    }
  }
  return parent_cost + delta;
}

BitVector BaseSolution::to_original(const BitVector& transformed) const {
  BitVector out = transformed;
  if (preflip.flips.any()) out.xor_with(preflip.flips);
  return out;
}

BaseSolution osd0(const DecodingModel& model, const BitVector& syndrome,
                  const std::vector<double>& llrs, OrderingConvention conv) {
  if (llrs.size() != model.columns())
    throw std::invalid_argument("osd0: llr count != column count");
  if (syndrome.size() != model.detectors())
    throw std::invalid_argument("osd0: syndrome length != detector count");

  BaseSolution base;
  base.syndrome = syndrome;
  if (conv == OrderingConvention::ConfidenceAscendingWithPreflip) {
    base.preflip = qdec::preflip(model.h_dec, syndrome, llrs);
  } else {
    // No pre-flip; cost bookkeeping still uses |LLR|.
    base.preflip.flips = BitVector(llrs.size());
    base.preflip.adjusted_syndrome = syndrome;
    base.preflip.adjusted_llrs.resize(llrs.size());
    for (std::size_t i = 0; i < llrs.size(); ++i) base.preflip.adjusted_llrs[i] = std::abs(llrs[i]);
  }
  base.llrs = base.preflip.adjusted_llrs;

  const std::vector<std::size_t> order = order_columns(llrs, conv);
  base.elimination = gf2::eliminate_ordered(model.h_dec, order);
  base.e_base = gf2::solve_from_syndrome(base.elimination, base.preflip.adjusted_syndrome);
  base.base_cost = candidate_cost(base.e_base, base.llrs);

  base.generators = gf2::null_space_generators(base.elimination);
  base.supports.reserve(base.generators.size());
  base.generator_weights.reserve(base.generators.size());
  base.free_llrs.reserve(base.generators.size());
  for (std::size_t j = 0; j < base.generators.size(); ++j) {
    const auto support = base.generators[j].support();
    double w = 0.0;
    std::vector<uint32_t> s32;
    s32.reserve(support.size());
    for (std::size_t i : support) {
      w += base.llrs[i];
      s32.push_back(static_cast<uint32_t>(i));
    }
    base.supports.push_back(std::move(s32));
    base.generator_weights.push_back(w);
    base.free_llrs.push_back(base.llrs[base.elimination.free_cols[j]]);
  }
  return base;
}

Candidate base_candidate(const BaseSolution& base) {
  Candidate c;
  c.error = base.to_original(base.e_base);
  c.cost = base.base_cost;
  c.queries_used = 1;
  return c;
}

namespace {

// Indices of the n cheapest generators under the selection rule, ties by
// ascending generator index.
std::vector<uint32_t> select_generators(const BaseSolution& base, std::size_t n,
                                        SubsetSelection selection) {
  const std::vector<double>& key =
      selection == SubsetSelection::FreeColumnLlr ? base.free_llrs : base.generator_weights;
  const std::vector<std::size_t> order = gf2::ascending_order(key);
  std::vector<uint32_t> out(order.begin(), order.begin() + n);
  return out;
}

double xor_delta(const BaseSolution& base, const BitVector& state, std::size_t j) {
  double overlap = 0.0;
  const auto gw = base.generators[j].words();
  const auto sw = state.words();
  for (std::size_t w = 0; w < gw.size(); ++w) {
    uint64_t x = gw[w] & sw[w];
    while (x) {
      overlap += base.llrs[w * 64 + std::countr_zero(x)];
      x &= x - 1;
    }
  }
  return base.generator_weights[j] - 2.0 * overlap;
}

}  // namespace

OsdResult osd_w(const BaseSolution& base, std::size_t w, SubsetSelection selection) {
  if (w > base.k()) throw std::invalid_argument("osd_w: w exceeds the free-set size");
  if (w > 30) throw std::invalid_argument("osd_w: 2^w enumeration too large (w > 30)");

  const std::vector<uint32_t> chosen = select_generators(base, w, selection);

  OsdResult result;
  BitVector state = base.e_base;
  double cost = base.base_cost;
  std::vector<uint32_t> current;  // subset of `chosen` positions currently applied

  result.candidate.cost = cost;
  result.candidate.queries_used = 1;
  std::vector<uint32_t> best_subset;
  double best = cost;
  result.evaluated = 1;  // the empty pattern is e_base itself

  // Gray-code walk: one generator toggled per step.
  const std::uint64_t total = std::uint64_t{1} << w;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::uint64_t next = step ^ (step >> 1);
    const int bit = std::countr_zero(gray ^ next);
    gray = next;
    const uint32_t j = chosen[bit];
    cost += xor_delta(base, state, j);
    state.xor_with(base.generators[j]);
    ++result.evaluated;
    if (cost < best) {
      best = cost;
      best_subset.clear();
      for (int b = 0; b < static_cast<int>(w); ++b)
        if ((gray >> b) & 1u) best_subset.push_back(chosen[b]);
      result.candidate.queries_used = result.evaluated;
    }
  }

  std::sort(best_subset.begin(), best_subset.end());
  result.candidate.generator_set = best_subset;
  result.candidate.cost = best;
  BitVector e = base.e_base;
  for (uint32_t j : best_subset) e.xor_with(base.generators[j]);
  result.candidate.error = base.to_original(e);
  return result;
}

OsdResult osd_cs(const BaseSolution& base, std::size_t lambda, SubsetSelection selection) {
  if (lambda > base.k()) throw std::invalid_argument("osd_cs: lambda exceeds the free-set size");

  OsdResult result;
  double best = base.base_cost;
  std::vector<uint32_t> best_subset;
  std::uint64_t best_at = 0;  // 0 = the base itself
  std::uint64_t evaluated = 0;

  // Weight-1 phase: every generator.
  for (std::size_t j = 0; j < base.k(); ++j) {
    const double cost = base.base_cost + xor_delta(base, base.e_base, j);
    ++evaluated;
    if (cost < best) {
      best = cost;
      best_subset = {static_cast<uint32_t>(j)};
      best_at = evaluated;
    }
  }

  // Weight-2 phase: pairs among the lambda least reliable free columns.
  if (lambda >= 2) {
    const std::vector<uint32_t> chosen = select_generators(base, lambda, selection);
    BitVector state = base.e_base;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      state = base.e_base;
      const double cost_a = base.base_cost + xor_delta(base, state, chosen[a]);
      state.xor_with(base.generators[chosen[a]]);
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        const double cost = cost_a + xor_delta(base, state, chosen[b]);
        ++evaluated;
        if (cost < best) {
          best = cost;
          best_subset = {chosen[a], chosen[b]};
          std::sort(best_subset.begin(), best_subset.end());
          best_at = evaluated;
        }
      }
    }
  }

  result.evaluated = evaluated;
  result.candidate.cost = best;
  result.candidate.generator_set = best_subset;
  result.candidate.queries_used = best_at;
  BitVector e = base.e_base;
  for (uint32_t j : best_subset) e.xor_with(base.generators[j]);
  result.candidate.error = base.to_original(e);
  return result;
}

OsdResult bf_osd(const BaseSolution& base, const BfOptions& options) {
  if (options.budget < 1) throw std::invalid_argument("bf_osd: budget must be >= 1");

  // Re-rank generators by ascending soft weight (ties by original index) so
  // the j > max(T) rule expands cheap combinations first.
  const std::vector<std::size_t> rank = gf2::ascending_order(base.generator_weights);
  std::vector<const BitVector*> gens(rank.size());
  std::vector<double> weights(rank.size());
  for (std::size_t i = 0; i < rank.size(); ++i) {
    gens[i] = &base.generators[rank[i]];
    weights[i] = base.generator_weights[rank[i]];
  }

  detail::LlrCostModel model(base.e_base, base.base_cost, gens, weights, base.llrs);
  detail::BestFirstSearch<detail::LlrCostModel> engine;
  const detail::BestFirstResult search = engine.run(model, options);

  OsdResult result;
  result.evaluated = search.pops;
  result.trace = search.trace;
  result.checkpoint_costs = search.checkpoint_costs;
  result.local_property_held = search.local_property_held;

  Candidate& c = result.candidate;
  c.queries_used = search.best_found_at;
  c.generator_set.reserve(search.best_subset.size());
  BitVector e = base.e_base;
  for (uint32_t j : search.best_subset) {
    c.generator_set.push_back(static_cast<uint32_t>(rank[j]));
    e.xor_with(base.generators[rank[j]]);
  }
  std::sort(c.generator_set.begin(), c.generator_set.end());
  // Report the exact cost of the winner; the search tracked it incrementally.
  c.cost = candidate_cost(e, base.llrs);
  c.error = base.to_original(e);
  return result;
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::string out;
  char buf[64];
  for (std::size_t q = 0; q < trace.size(); ++q) {
    std::snprintf(buf, sizeof(buf), "q=%zu T={", q + 1);
    out += buf;
    for (std::size_t i = 0; i < trace[q].subset.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(trace[q].subset[i]);
    }
    std::snprintf(buf, sizeof(buf), "} cost=%.9g\n", trace[q].cost);
    out += buf;
  }
  return out;
}

}  // namespace qdec
