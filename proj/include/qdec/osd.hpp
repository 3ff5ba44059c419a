#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/gf2.hpp"
#include "qdec/model.hpp"

namespace qdec {

enum class OrderingConvention {
  LlrAscending,                    // sort by signed LLR, no pre-flip
  ConfidenceAscendingWithPreflip,  // absorb negative-LLR hard decisions, sort by |LLR|
};

enum class Expansion { Eager, Lazy };

/// Which key picks the "least reliable" free columns for OSD-w / OSD-CS.
enum class SubsetSelection { FreeColumnLlr, GeneratorWeight };

/// Result of absorbing BP hard decisions into the syndrome: flipped bits f,
/// s' = s (+) h*f, and all-nonnegative LLRs.
struct PreflipRecord {
  BitVector flips;
  BitVector adjusted_syndrome;
  std::vector<double> adjusted_llrs;
};

PreflipRecord preflip(const BitMatrix& h_dec, const BitVector& syndrome,
                      const std::vector<double>& llrs);

/// Column scan order for Gaussian elimination; ties broken by ascending index.
std::vector<std::size_t> order_columns(const std::vector<double>& llrs, OrderingConvention conv);

/// Sum of llrs over the support of e; llrs must be nonnegative.
double candidate_cost(const BitVector& e, const std::vector<double>& llrs);

/// Cost of parent_e (+) g from parent's cost, touching only the flipped bits.
double incremental_cost(double parent_cost, const BitVector& parent_e, const BitVector& g,
                        const std::vector<double>& llrs);

/// OSD-0 output plus everything the coset searches need: the base solution
/// in the transformed (post-pre-flip) domain, the null-space generators with
/// their soft weights, and the transform record to map candidates back.
struct BaseSolution {
  BitVector e_base;  // transformed domain; h_dec * e_base = adjusted syndrome
  double base_cost = 0.0;
  std::vector<double> llrs;  // adjusted, all >= 0
  PreflipRecord preflip;     // flips empty (all zero) under the LLR convention
  BitVector syndrome;        // original, pre-transform
  gf2::EliminationResult elimination;
  std::vector<BitVector> generators;             // one per free column
  std::vector<std::vector<uint32_t>> supports;   // set bits of each generator
  std::vector<double> generator_weights;         // w_j = sum of llrs over support
  std::vector<double> free_llrs;                 // llrs of the free columns

  std::size_t k() const { return generators.size(); }
  /// Transformed-domain vector mapped back to the original domain.
  BitVector to_original(const BitVector& transformed) const;
};

/// Runs ordering + elimination + back-substitution. Throws
/// inconsistent_syndrome when s is outside the column space of h_dec.
BaseSolution osd0(const DecodingModel& model, const BitVector& syndrome,
                  const std::vector<double>& llrs, OrderingConvention conv);

/// A syndrome-consistent candidate in the original domain. generator_set
/// holds indices into BaseSolution::generators; cost is evaluated in the
/// transformed domain per the soft-weight sum.
struct Candidate {
  BitVector error;
  double cost = 0.0;
  std::vector<uint32_t> generator_set;
  std::uint64_t queries_used = 0;  // query count when this candidate was found
};

struct TraceEntry {
  std::vector<uint32_t> subset;  // 1-based ids in weight-ranked generator order
  double cost = 0.0;
};

struct OsdResult {
  Candidate candidate;
  std::uint64_t evaluated = 0;  // total candidates scored
  std::vector<TraceEntry> trace;
  std::vector<double> checkpoint_costs;
  bool local_property_held = true;  // popped cost <= queue minimum, when verified
};

Candidate base_candidate(const BaseSolution& base);

/// Enumerates all 2^w flip patterns over the w least reliable free columns.
OsdResult osd_w(const BaseSolution& base, std::size_t w,
                SubsetSelection selection = SubsetSelection::FreeColumnLlr);

/// Weight-1 sweep over all k generators, then all pairs among the lambda
/// least reliable free columns: exactly k + lambda*(lambda-1)/2 candidates.
OsdResult osd_cs(const BaseSolution& base, std::size_t lambda,
                 SubsetSelection selection = SubsetSelection::FreeColumnLlr);

struct BfOptions {
  std::uint64_t budget = 1;
  Expansion expansion = Expansion::Eager;
  bool record_trace = false;
  std::vector<std::uint64_t> checkpoints;  // pop counts at which to record the running best
  bool verify_local_property = false;      // test hook, O(queue) per pop
};

/// Best-first coset search: generators re-ranked by ascending weight, nodes
/// are index subsets expanded with the j > max(T) rule, priority queue keyed
/// on exact incremental cost. Stops after min(budget, 2^k) pops and returns
/// the cheapest candidate seen.
OsdResult bf_osd(const BaseSolution& base, const BfOptions& options);

std::string format_trace(const std::vector<TraceEntry>& trace);

namespace detail {

/// Cost-model seam for the best-first engine. Production uses LlrCostModel;
/// tests may drive the engine with a synthetic cost table.
///
/// CostModel requirements:
///   std::size_t count() const            number of generators
///   double root_cost() const
///   void reset()                         state := base point
///   void toggle(std::size_t j)           state ^= generator j
///   double delta(std::size_t j) const    cost change of toggling j at the current state
struct BestFirstResult {
  std::vector<uint32_t> best_subset;
  double best_cost = 0.0;
  std::uint64_t best_found_at = 0;
  std::uint64_t pops = 0;
  std::vector<TraceEntry> trace;
  std::vector<double> checkpoint_costs;
  bool local_property_held = true;
};

template <class CostModel>
class BestFirstSearch {
 public:
  BestFirstResult run(CostModel& model, const BfOptions& opt) {
    const std::size_t k = model.count();
    nodes_.clear();
    heap_.clear();
    current_.clear();
    model.reset();

    BestFirstResult result;
    result.best_cost = std::numeric_limits<double>::infinity();
    nodes_.push_back(Node{-1, -1, model.root_cost()});
    heap_.push_back(0);

    auto cmp = [this](uint32_t a, uint32_t b) { return heap_less(b, a); };  // min-heap
    std::vector<uint32_t> subset;
    std::size_t next_checkpoint = 0;
    std::vector<std::uint64_t> checkpoints = opt.checkpoints;
    std::sort(checkpoints.begin(), checkpoints.end());

    while (result.pops < opt.budget && !heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      const uint32_t id = heap_.back();
      heap_.pop_back();
      const Node node = nodes_[id];

      if (opt.verify_local_property)
        for (uint32_t other : heap_)
          if (nodes_[other].cost < node.cost - 1e-12) result.local_property_held = false;

      path_of(id, subset);
      move_state(model, subset);
      ++result.pops;
      if (node.cost < result.best_cost) {
        result.best_cost = node.cost;
        result.best_subset = subset;
        result.best_found_at = result.pops;
      }
      if (opt.record_trace) {
        TraceEntry entry;
        entry.subset.reserve(subset.size());
        for (uint32_t j : subset) entry.subset.push_back(j + 1);
        entry.cost = node.cost;
        result.trace.push_back(std::move(entry));
      }
      while (next_checkpoint < checkpoints.size() && result.pops == checkpoints[next_checkpoint]) {
        result.checkpoint_costs.push_back(result.best_cost);
        ++next_checkpoint;
      }

      const int max_index = node.gen;  // -1 at the root
      if (opt.expansion == Expansion::Eager) {
        for (std::size_t j = static_cast<std::size_t>(max_index + 1); j < k; ++j)
          push_node(Node{static_cast<int32_t>(id), static_cast<int32_t>(j),
                         node.cost + model.delta(j)},
                    cmp);
      } else {
        // Lazy: first child, then the next sibling evaluated at the parent state.
        const std::size_t first = static_cast<std::size_t>(max_index + 1);
        if (first < k)
          push_node(Node{static_cast<int32_t>(id), static_cast<int32_t>(first),
                         node.cost + model.delta(first)},
                    cmp);
        if (node.parent >= 0 && first < k) {
          model.toggle(static_cast<std::size_t>(node.gen));  // state := parent
          const double parent_cost = node.cost - model.delta(static_cast<std::size_t>(node.gen));
          push_node(Node{node.parent, static_cast<int32_t>(first),
                         parent_cost + model.delta(first)},
                    cmp);
          model.toggle(static_cast<std::size_t>(node.gen));  // back to the popped state
        }
      }
    }
    // Budget outlived the tree: remaining checkpoints see the final best.
    while (next_checkpoint < checkpoints.size()) {
      result.checkpoint_costs.push_back(result.best_cost);
      ++next_checkpoint;
    }
    return result;
  }

 private:
  struct Node {
    int32_t parent;
    int32_t gen;  // index adjoined by this node, -1 for the root
    double cost;
  };

  void path_of(uint32_t id, std::vector<uint32_t>& out) const {
    out.clear();
    for (const Node* n = &nodes_[id]; n->gen >= 0; n = &nodes_[n->parent])
      out.push_back(static_cast<uint32_t>(n->gen));
    std::reverse(out.begin(), out.end());  // ascending: children adjoin growing indices
  }

  void move_state(CostModel& model, const std::vector<uint32_t>& target) {
    // Toggle the symmetric difference between the current and target subsets.
    std::size_t a = 0, b = 0;
    std::vector<uint32_t> toggles;
    while (a < current_.size() || b < target.size()) {
      if (b == target.size() || (a < current_.size() && current_[a] < target[b]))
        toggles.push_back(current_[a++]);
      else if (a == current_.size() || target[b] < current_[a])
        toggles.push_back(target[b++]);
      else {
        ++a;
        ++b;
      }
    }
    for (uint32_t j : toggles) model.toggle(j);
    current_ = target;
  }

  bool heap_less(uint32_t a, uint32_t b) const {
    if (nodes_[a].cost != nodes_[b].cost) return nodes_[a].cost < nodes_[b].cost;
    if (a == b) return false;
    // Cost tie: lexicographically smaller subset wins, for reproducible traces.
    std::vector<uint32_t> pa, pb;
    path_of(a, pa);
    path_of(b, pb);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  }

  template <class Cmp>
  void push_node(Node n, const Cmp& cmp) {
    nodes_.push_back(n);
    heap_.push_back(static_cast<uint32_t>(nodes_.size() - 1));
    std::push_heap(heap_.begin(), heap_.end(), cmp);
  }

  std::vector<Node> nodes_;
  std::vector<uint32_t> heap_;
  std::vector<uint32_t> current_;
};

/// Production cost model: state is a bit vector seeded from e_base, toggling
/// applies generator words, and delta(j) = w_j - 2 * sum of llrs over the
/// overlap of generator j with the current state.
class LlrCostModel {
 public:
  LlrCostModel(const BitVector& e_base, double base_cost, const std::vector<const BitVector*>& gens,
               const std::vector<double>& weights, const std::vector<double>& llrs)
      : base_(e_base), base_cost_(base_cost), gens_(gens), weights_(weights), llrs_(llrs),
        state_(e_base) {}

  std::size_t count() const { return gens_.size(); }
  double root_cost() const { return base_cost_; }
  void reset() { state_ = base_; }
  void toggle(std::size_t j) { state_.xor_with(*gens_[j]); }

  double delta(std::size_t j) const {
    const auto gw = gens_[j]->words();
    const auto sw = state_.words();
    double overlap = 0.0;
    for (std::size_t w = 0; w < gw.size(); ++w) {
      uint64_t x = gw[w] & sw[w];
      while (x) {
        overlap += llrs_[w * 64 + std::countr_zero(x)];
        x &= x - 1;
      }
    }
    return weights_[j] - 2.0 * overlap;
  }

  const BitVector& state() const { return state_; }

 private:
  BitVector base_;
  double base_cost_;
  std::vector<const BitVector*> gens_;
  std::vector<double> weights_;
  const std::vector<double>& llrs_;
  BitVector state_;
};

}  // namespace detail

}  // namespace qdec
