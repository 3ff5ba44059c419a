#include "qdec/css.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdec/gf2.hpp"

namespace qdec {

namespace {

// First row pair (i, j) with odd overlap between a row of lhs and a row of
// rhs, or (-1, -1) if all products vanish.
std::pair<long, long> first_anticommuting_pair(const BitMatrix& lhs, const BitMatrix& rhs) {
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    const BitVector row = lhs.row_vector(i);
    for (std::size_t j = 0; j < rhs.rows(); ++j)
      if (rhs.row_dot(j, row)) return {static_cast<long>(i), static_cast<long>(j)};
  }
  return {-1, -1};
}

BitMatrix stack(const BitMatrix& top, const BitVector& extra) {
  BitMatrix out(top.rows() + 1, top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) out.set_row(r, top.row_vector(r));
  out.set_row(top.rows(), extra);
  return out;
}

}  // namespace

CSSCode validate_css(const BitMatrix& h_x, const BitMatrix& h_z, const BitMatrix& logicals_x,
                     const BitMatrix& logicals_z, std::size_t d, std::string name) {
  if (h_x.cols() != h_z.cols())
    throw std::invalid_argument("css: h_x and h_z have different column counts");
  const std::size_t n = h_x.cols();

  if (auto [i, j] = first_anticommuting_pair(h_x, h_z); i >= 0)
    throw std::invalid_argument("css: h_x row " + std::to_string(i) +
                                " anticommutes with h_z row " + std::to_string(j));

  const std::size_t rx = gf2::rank(h_x);
  const std::size_t rz = gf2::rank(h_z);
  if (rx + rz > n) throw std::invalid_argument("css: rank(h_x) + rank(h_z) exceeds n");
  const std::size_t k = n - rx - rz;

  auto check_logicals = [&](const BitMatrix& logicals, const BitMatrix& opposite_checks,
                            const BitMatrix& same_checks, const char* which) {
    if (logicals.rows() == 0) return;
    if (logicals.cols() != n)
      throw std::invalid_argument(std::string("css: logicals_") + which + " column count != n");
    if (auto [i, j] = first_anticommuting_pair(logicals, opposite_checks); i >= 0)
      throw std::invalid_argument(std::string("css: logicals_") + which + " row " +
                                  std::to_string(i) + " anticommutes with a check");
    std::size_t base = gf2::rank(same_checks);
    BitMatrix augmented = same_checks;
    for (std::size_t r = 0; r < logicals.rows(); ++r) {
      augmented = stack(augmented, logicals.row_vector(r));
      const std::size_t grown = gf2::rank(augmented);
      if (grown != base + 1)
        throw std::invalid_argument(std::string("css: logicals_") + which + " row " +
                                    std::to_string(r) + " lies in the check rowspace");
      base = grown;
    }
  };
  check_logicals(logicals_x, h_z, h_x, "x");
  check_logicals(logicals_z, h_x, h_z, "z");

  CSSCode code;
  code.h_x = h_x;
  code.h_z = h_z;
  code.logicals_x = logicals_x;
  code.logicals_z = logicals_z;
  code.n = n;
  code.k = k;
  code.d = d;
  code.name = std::move(name);
  return code;
}

BitMatrix css_logicals(const BitMatrix& h_x, const BitMatrix& h_z) {
  const std::size_t n = h_x.cols();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const auto elim = gf2::eliminate_ordered(h_z, order);
  const auto kernel = gf2::null_space_generators(elim);

  // Greedily keep kernel vectors independent of rowspace(h_x).
  BitMatrix basis = h_x;
  std::size_t current = gf2::rank(basis);
  std::vector<BitVector> picked;
  for (const BitVector& g : kernel) {
    BitMatrix grown = stack(basis, g);
    const std::size_t r = gf2::rank(grown);
    if (r == current + 1) {
      picked.push_back(g);
      basis = std::move(grown);
      current = r;
    }
  }
  BitMatrix out(picked.size(), n);
  for (std::size_t r = 0; r < picked.size(); ++r) out.set_row(r, picked[r]);
  return out;
}

CSSCode build_bicycle(std::size_t l, std::size_t m, std::vector<Monomial> a_monomials,
                      std::vector<Monomial> b_monomials, std::size_t d) {
  if (l < 1 || m < 1) throw std::invalid_argument("bicycle: l and m must be >= 1");

  std::vector<std::string> warnings;
  auto reduce_terms = [&](std::vector<Monomial>& terms, const char* which) {
    for (auto& t : terms) {
      t.x_exp %= l;
      t.y_exp %= m;
    }
    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
      return std::pair(a.x_exp, a.y_exp) < std::pair(b.x_exp, b.y_exp);
    });
    // Pairs of identical monomials cancel over GF(2).
    std::vector<Monomial> kept;
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j].x_exp == terms[i].x_exp && terms[j].y_exp == terms[i].y_exp)
        ++j;
      if ((j - i) % 2 == 1) kept.push_back(terms[i]);
      if (j - i > 1)
        warnings.push_back(std::string("duplicate monomial in ") + which + ": x^" +
                           std::to_string(terms[i].x_exp) + " y^" + std::to_string(terms[i].y_exp));
      i = j;
    }
    terms = std::move(kept);
  };
  reduce_terms(a_monomials, "A");
  reduce_terms(b_monomials, "B");

  const std::size_t cells = l * m;
  auto circulant = [&](const std::vector<Monomial>& terms) {
    BitMatrix mat(cells, cells);
    for (const Monomial& t : terms)
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t src = i * m + j;
          const std::size_t dst = ((i + t.x_exp) % l) * m + (j + t.y_exp) % m;
          mat.set(dst, src, true);
        }
    return mat;
  };
  const BitMatrix a = circulant(a_monomials);
  const BitMatrix b = circulant(b_monomials);
  const BitMatrix at = a.transposed();
  const BitMatrix bt = b.transposed();

  const std::size_t n = 2 * cells;
  BitMatrix h_x(cells, n), h_z(cells, n);
  for (std::size_t r = 0; r < cells; ++r)
    for (std::size_t c = 0; c < cells; ++c) {
      if (a.get(r, c)) h_x.set(r, c, true);
      if (b.get(r, c)) h_x.set(r, cells + c, true);
      if (bt.get(r, c)) h_z.set(r, c, true);
      if (at.get(r, c)) h_z.set(r, cells + c, true);
    }

  const BitMatrix lx = css_logicals(h_x, h_z);
  const BitMatrix lz = css_logicals(h_z, h_x);

  std::string name = "bb_l" + std::to_string(l) + "_m" + std::to_string(m);
  CSSCode code = validate_css(h_x, h_z, lx, lz, d, std::move(name));
  code.warnings = std::move(warnings);
  return code;
}

}  // namespace qdec
