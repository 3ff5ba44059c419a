#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/css.hpp"

namespace qdec {

/// An elementary fault mechanism: which detectors it fires, which logical
/// observables it flips, and how likely it is.
struct Fault {
  BitVector detectors;
  BitVector logical;
  double probability = 0.0;
  std::string label;
};

enum class MergePolicy {
  Sum,    // probabilities of indistinguishable faults are summed, clamped below 0.5
  Exact,  // odd-parity combination p1 + p2 - 2 p1 p2
};

/// The decoder's world-view: a decoding matrix whose columns index merged
/// fault mechanisms, per-column prior probabilities, and the logical effect
/// of each column. Immutable after construction.
struct DecodingModel {
  BitMatrix h_dec;            // detectors x columns
  std::vector<double> priors;  // in (0, 0.5]
  BitMatrix logical_effects;   // observables x columns
  std::size_t rounds = 1;
  std::vector<std::string> labels;    // per-column provenance, may be empty
  std::vector<std::string> warnings;  // clamping and other non-fatal notes
  std::string name;

  std::size_t detectors() const { return h_dec.rows(); }
  std::size_t columns() const { return h_dec.cols(); }
  std::size_t observables() const { return logical_effects.rows(); }

  /// Row indices of the ones in column c of h_dec (cached at construction).
  const std::vector<uint32_t>& column_support(std::size_t c) const { return column_supports_[c]; }
  const std::vector<uint32_t>& logical_column_support(std::size_t c) const {
    return logical_supports_[c];
  }

  /// h_dec * e computed through the column cache.
  BitVector syndrome_of(const BitVector& e) const;
  BitVector logical_of(const BitVector& e) const;

  /// Rebuilds the column caches; called by every constructor path.
  void finalize();

  /// The model's columns as a fault list (used for re-merging and saving).
  std::vector<Fault> to_faults() const;

  /// 64-bit content digest over h_dec, priors and logical_effects.
  std::string digest() const;

 private:
  std::vector<std::vector<uint32_t>> column_supports_;
  std::vector<std::vector<uint32_t>> logical_supports_;
};

/// Merges faults with identical (detectors, logical) tuples; the merged
/// probability follows the policy, and any prior reaching 0.5 is clamped
/// to 0.5 - 1e-9 with a warning on the model. Column order is order of
/// first appearance.
DecodingModel merge_faults(const std::vector<Fault>& faults, MergePolicy policy = MergePolicy::Sum);

enum class Sector { X, Z };

/// The sector's check matrix: h_x for Sector::X, h_z for Sector::Z.
const BitMatrix& sector_checks(const CSSCode& code, Sector s);
/// The logical operators whose flips this sector's decoder must track.
const BitMatrix& sector_logicals(const CSSCode& code, Sector s);

/// Phenomenological spatio-temporal model: `rounds` noisy syndrome
/// extraction rounds (final round perfect), detectors are round-to-round
/// syndrome differences. Columns are per-qubit-per-round data faults and
/// per-check-per-round measurement faults, merged.
DecodingModel build_phenomenological(const CSSCode& code, Sector sector, double p_data,
                                     double p_meas, std::size_t rounds,
                                     MergePolicy policy = MergePolicy::Sum);

/// Single perfect round with uniform prior p: h_dec is the sector's check
/// matrix itself.
DecodingModel build_code_capacity(const CSSCode& code, Sector sector, double p,
                                  MergePolicy policy = MergePolicy::Sum);

}  // namespace qdec
