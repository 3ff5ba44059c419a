#include "qdec/oracle.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "qdec/gf2.hpp"
#include "qdec/osd.hpp"

namespace qdec::oracle {

OracleResult coset_min(const BitMatrix& h, const BitVector& syndrome,
                       const std::vector<double>& llrs) {
  if (llrs.size() != h.cols()) throw std::invalid_argument("coset_min: llr count != columns");
  std::vector<std::size_t> order(h.cols());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto elim = gf2::eliminate_ordered(h, order);
  const std::size_t k = elim.free_cols.size();
  if (k > 24)
    throw std::invalid_argument("coset_min: kernel dimension " + std::to_string(k) +
                                " exceeds the 2^24 enumeration guard");
  const auto generators = gf2::null_space_generators(elim);
  BitVector current = gf2::solve_from_syndrome(elim, syndrome);
  double cost = candidate_cost(current, llrs);

  OracleResult result;
  result.minimum_cost = cost;
  result.argmin = current;
  result.enumerated = 1;

  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int flip = std::countr_zero(step);  // Gray code: one generator per step
    cost = incremental_cost(cost, current, generators[flip], llrs);
    current.xor_with(generators[flip]);
    ++result.enumerated;
    const double diff = cost - result.minimum_cost;
    if (diff < -1e-12) {
      result.minimum_cost = cost;
      result.argmin = current;
    } else if (diff <= 1e-12 && current.lex_compare(result.argmin) < 0) {
      result.argmin = current;
    }
  }
  return result;
}

OracleResult min_cost_basis(const BitMatrix& m, const std::vector<double>& costs) {
  if (costs.size() != m.cols()) throw std::invalid_argument("min_cost_basis: cost count != columns");
  if (m.cols() > 20)
    throw std::invalid_argument("min_cost_basis: " + std::to_string(m.cols()) +
                                " columns exceeds the enumeration guard of 20");
  const std::size_t r = gf2::rank(m);
  const std::size_t n = m.cols();

  OracleResult result;
  result.minimum_cost = std::numeric_limits<double>::infinity();
  result.argmin = BitVector(n);

  if (r == 0) {
    result.minimum_cost = 0.0;
    result.enumerated = 1;
    return result;
  }

  // All size-r column subsets in lexicographic order; first minimum kept, so
  // ties resolve to the lexicographically smallest indicator.
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  const BitMatrix mt = m.transposed();  // column c of m = row c of mt

  while (true) {
    ++result.enumerated;
    BitMatrix sub(r, m.rows());
    for (std::size_t i = 0; i < r; ++i) sub.set_row(i, mt.row_vector(idx[i]));
    if (gf2::rank(sub) == r) {
      double cost = 0.0;
      for (std::size_t i : idx) cost += costs[i];
      if (cost < result.minimum_cost - 1e-15) {
        result.minimum_cost = cost;
        result.argmin = BitVector(n);
        for (std::size_t i : idx) result.argmin.set(i, true);
      }
    }
    // Advance the combination.
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == n - r + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  return result;
}

}  // namespace qdec::oracle
