#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdec/bitmat.hpp"

namespace qdec {

/// A CSS code: two orthogonal parity-check matrices plus one logical
/// operator basis per type. The distance is caller-supplied metadata and
/// is never verified.
struct CSSCode {
  BitMatrix h_x;
  BitMatrix h_z;
  BitMatrix logicals_x;  // k rows; commute with h_z, independent of rowspace(h_x)
  BitMatrix logicals_z;  // k rows; commute with h_x, independent of rowspace(h_z)
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;  // claimed distance, 0 = unknown
  std::string name;
  std::vector<std::string> warnings;
};

/// Checks every CSS invariant (orthogonality, k from ranks, logical
/// commutation and independence) and returns the assembled code.
/// Throws std::invalid_argument naming the offending rows on failure.
CSSCode validate_css(const BitMatrix& h_x, const BitMatrix& h_z, const BitMatrix& logicals_x,
                     const BitMatrix& logicals_z, std::size_t d = 0, std::string name = {});

/// One (x_exponent, y_exponent) product term of a bivariate polynomial.
struct Monomial {
  std::size_t x_exp = 0;
  std::size_t y_exp = 0;
};

/// Builds the two-block circulant code h_x = [A|B], h_z = [B^T|A^T] from
/// polynomials A and B in the commuting shift operators x = S_l (x) I_m and
/// y = I_l (x) S_m. Logical operators are derived from the kernels. Duplicate
/// monomials cancel over GF(2) and are reported as a warning on the code.
CSSCode build_bicycle(std::size_t l, std::size_t m, std::vector<Monomial> a_monomials,
                      std::vector<Monomial> b_monomials, std::size_t d = 0);

/// A basis of X-type logical operators: vectors in ker(h_z) independent of
/// rowspace(h_x). Swap the arguments for Z-type logicals.
BitMatrix css_logicals(const BitMatrix& h_x, const BitMatrix& h_z);

}  // namespace qdec
