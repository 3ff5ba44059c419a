#pragma once

#include <random>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/gf2.hpp"
#include "qdec/model.hpp"

namespace qdec::test {

/// Wraps a parity-check matrix as a DecodingModel. Each column gets a
/// distinct unit logical effect so indistinguishable detector columns do
/// not merge away.
inline DecodingModel make_model(const BitMatrix& h, const std::vector<double>& priors) {
  std::vector<Fault> faults;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    Fault f;
    f.detectors = h.column(c);
    f.logical = BitVector(h.cols());
    f.logical.set(c, true);
    f.probability = priors[c];
    faults.push_back(std::move(f));
  }
  return merge_faults(faults);
}

inline BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               double density = 0.5) {
  BitMatrix m(rows, cols);
  std::bernoulli_distribution bit(density);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (bit(rng)) m.set(r, c, true);
  return m;
}

struct RandomInstance {
  DecodingModel model;
  BitVector e_true;
  BitVector syndrome;
  std::size_t k = 0;  // cols - rank
};

/// Random model + sampled error/syndrome with the kernel dimension capped.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_rows,
                                      std::size_t max_cols, std::size_t max_k,
                                      double p_low = 0.01, double p_high = 0.3) {
  std::uniform_real_distribution<double> prior(p_low, p_high);
  for (;;) {
    const std::size_t rows = 1 + rng() % max_rows;
    const std::size_t cols = 2 + rng() % (max_cols - 1);
    const BitMatrix h = random_matrix(rng, rows, cols);
    const std::size_t k = cols - gf2::rank(h);
    if (k > max_k) continue;
    std::vector<double> priors(cols);
    for (double& p : priors) p = prior(rng);
    RandomInstance inst;
    inst.model = make_model(h, priors);
    inst.k = k;
    inst.e_true = BitVector(cols);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t c = 0; c < cols; ++c)
      if (uniform(rng) < priors[c]) inst.e_true.set(c, true);
    inst.syndrome = inst.model.syndrome_of(inst.e_true);
    return inst;
  }
}

}  // namespace qdec::test
