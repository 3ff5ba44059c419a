#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qdec/bitmat.hpp"

namespace qdec::gf2 {

/// Outcome of an ordered Gaussian elimination. The input matrix keeps its
/// original column indexing throughout; ordering is purely a scan order.
///
/// Invariants:
///   - pivot_cols and free_cols partition 0..cols-1,
///   - |pivot_cols| = rank, pivot i sits in row i of rref,
///   - each pivot column of rref carries a single 1 (identity pattern),
///   - row_ops * input = rref, so any right-hand side s reduces as row_ops * s.
struct EliminationResult {
  BitMatrix rref;
  std::vector<std::size_t> pivot_cols;  // pivot i lives in rref row i
  std::vector<std::size_t> free_cols;   // scan order of the columns that stayed free
  BitMatrix row_ops;                    // rows x rows accumulated row transform

  std::size_t rank() const { return pivot_cols.size(); }
};

std::size_t rank(const BitMatrix& m);

/// Scans columns in the given order; a column becomes a pivot iff it is
/// linearly independent of the pivots chosen before it. Produces the full
/// reduced row-echelon form plus the accumulated row transform.
/// Throws std::invalid_argument if column_order is not a permutation of
/// 0..cols-1.
EliminationResult eliminate_ordered(const BitMatrix& m, const std::vector<std::size_t>& column_order);

/// Null-space basis read off the RREF, one generator per free column:
/// (g_j)_j = 1, (g_j)_{pivot_i} = rref[i][j], zero elsewhere.
std::vector<BitVector> null_space_generators(const EliminationResult& er);

/// Solves m * e = s with all free bits fixed to zero, via the accumulated
/// row transform. Throws inconsistent_syndrome (see errors.hpp) if s lies
/// outside the column space.
BitVector solve_from_syndrome(const EliminationResult& er, const BitVector& s);

/// True iff s is in the column space recorded by er.
bool syndrome_consistent(const EliminationResult& er, const BitVector& s);

/// Ascending-value permutation with ties broken by ascending index.
std::vector<std::size_t> ascending_order(const std::vector<double>& values);

}  // namespace qdec::gf2
