#include "qdec/gf2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qdec/errors.hpp"

namespace qdec::gf2 {

namespace {

void check_permutation(std::size_t cols, const std::vector<std::size_t>& order) {
  if (order.size() != cols)
    throw std::invalid_argument("column order has " + std::to_string(order.size()) +
                                " entries, expected " + std::to_string(cols));
  std::vector<char> seen(cols, 0);
  for (std::size_t c : order) {
    if (c >= cols || seen[c])
      throw std::invalid_argument("column order is not a permutation of 0.." +
                                  std::to_string(cols ? cols - 1 : 0));
    seen[c] = 1;
  }
}

}  // namespace

std::size_t rank(const BitMatrix& m) {
  // Row echelon only; no transform bookkeeping.
  BitMatrix r = m;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < r.cols() && rk < r.rows(); ++c) {
    std::size_t pivot = rk;
    while (pivot < r.rows() && !r.get(pivot, c)) ++pivot;
    if (pivot == r.rows()) continue;
    r.swap_rows(rk, pivot);
    for (std::size_t j = pivot + 1; j < r.rows(); ++j)
      if (r.get(j, c)) r.row_xor(j, rk);
    ++rk;
  }
  return rk;
}

EliminationResult eliminate_ordered(const BitMatrix& m, const std::vector<std::size_t>& column_order) {
  check_permutation(m.cols(), column_order);

  EliminationResult er;
  er.rref = m;
  er.row_ops = BitMatrix::identity(m.rows());
  er.pivot_cols.reserve(std::min(m.rows(), m.cols()));
  er.free_cols.reserve(m.cols());

  BitMatrix& r = er.rref;
  BitMatrix& u = er.row_ops;
  std::size_t rk = 0;

  for (std::size_t c : column_order) {
    std::size_t pivot = rk;
    while (pivot < r.rows() && !r.get(pivot, c)) ++pivot;
    if (pivot == r.rows()) {
      er.free_cols.push_back(c);
      continue;
    }
    r.swap_rows(rk, pivot);
    u.swap_rows(rk, pivot);
    for (std::size_t j = 0; j < r.rows(); ++j) {
      if (j != rk && r.get(j, c)) {
        r.row_xor(j, rk);
        u.row_xor(j, rk);
      }
    }
    er.pivot_cols.push_back(c);
    ++rk;
  }
  return er;
}

std::vector<BitVector> null_space_generators(const EliminationResult& er) {
  std::vector<BitVector> gens;
  gens.reserve(er.free_cols.size());
  const std::size_t cols = er.rref.cols();
  for (std::size_t j : er.free_cols) {
    BitVector g(cols);
    g.set(j, true);
    for (std::size_t i = 0; i < er.pivot_cols.size(); ++i)
      if (er.rref.get(i, j)) g.set(er.pivot_cols[i], true);
    gens.push_back(std::move(g));
  }
  return gens;
}

BitVector solve_from_syndrome(const EliminationResult& er, const BitVector& s) {
  if (s.size() != er.row_ops.rows())
    throw std::invalid_argument("syndrome length does not match matrix rows");
  const BitVector reduced = er.row_ops.multiply(s);
  for (std::size_t i = er.rank(); i < reduced.size(); ++i)
    if (reduced.get(i)) throw inconsistent_syndrome("syndrome is outside the column space");
  BitVector e(er.rref.cols());
  for (std::size_t i = 0; i < er.pivot_cols.size(); ++i)
    if (reduced.get(i)) e.set(er.pivot_cols[i], true);
  return e;
}

bool syndrome_consistent(const EliminationResult& er, const BitVector& s) {
  const BitVector reduced = er.row_ops.multiply(s);
  for (std::size_t i = er.rank(); i < reduced.size(); ++i)
    if (reduced.get(i)) return false;
  return true;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

}  // namespace qdec::gf2
