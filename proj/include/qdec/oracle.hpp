#pragma once

#include <cstdint>
#include <vector>

#include "qdec/bitmat.hpp"

namespace qdec::oracle {

/// Exhaustive-search reference result. argmin is the lexicographically
/// smallest minimizer; enumerated counts every candidate examined.
struct OracleResult {
  double minimum_cost = 0.0;
  BitVector argmin;
  std::uint64_t enumerated = 0;
};

/// Exhaustive minimum over the coset {e : h e = syndrome} of the soft cost
/// sum(llrs over support). Gray-code walk, one generator xored per step.
/// Refuses when the kernel dimension exceeds 24.
OracleResult coset_min(const BitMatrix& h, const BitVector& syndrome,
                       const std::vector<double>& llrs);

/// Exhaustive minimum-aggregate-cost column basis, enumerating all subsets
/// of size rank(m). argmin is the indicator vector of the basis. Refuses
/// beyond 20 columns.
OracleResult min_cost_basis(const BitMatrix& m, const std::vector<double>& costs);

}  // namespace qdec::oracle
