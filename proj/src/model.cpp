#include "qdec/model.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

namespace qdec {

namespace {

constexpr double kPriorCeiling = 0.5 - 1e-9;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

BitVector DecodingModel::syndrome_of(const BitVector& e) const {
  BitVector s(detectors());
  for (std::size_t c : e.support())
    for (uint32_t r : column_supports_[c]) s.flip(r);
  return s;
}

BitVector DecodingModel::logical_of(const BitVector& e) const {
  BitVector s(observables());
  for (std::size_t c : e.support())
    for (uint32_t r : logical_supports_[c]) s.flip(r);
  return s;
}

void DecodingModel::finalize() {
  if (priors.size() != columns())
    throw std::invalid_argument("model: priors length != column count");
  if (logical_effects.cols() != columns())
    throw std::invalid_argument("model: logical_effects column count != h_dec column count");
  if (!labels.empty() && labels.size() != columns())
    throw std::invalid_argument("model: labels length != column count");
  for (double p : priors)
    if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("model: prior outside (0, 0.5]");

  column_supports_.assign(columns(), {});
  logical_supports_.assign(columns(), {});
  for (std::size_t r = 0; r < h_dec.rows(); ++r) {
    const auto row = h_dec.row(r);
    for (std::size_t w = 0; w < row.size(); ++w) {
      uint64_t x = row[w];
      while (x) {
        column_supports_[w * 64 + std::countr_zero(x)].push_back(static_cast<uint32_t>(r));
        x &= x - 1;
      }
    }
  }
  for (std::size_t r = 0; r < logical_effects.rows(); ++r) {
    const auto row = logical_effects.row(r);
    for (std::size_t w = 0; w < row.size(); ++w) {
      uint64_t x = row[w];
      while (x) {
        logical_supports_[w * 64 + std::countr_zero(x)].push_back(static_cast<uint32_t>(r));
        x &= x - 1;
      }
    }
  }
}

std::vector<Fault> DecodingModel::to_faults() const {
  std::vector<Fault> out;
  out.reserve(columns());
  for (std::size_t c = 0; c < columns(); ++c) {
    Fault f;
    f.detectors = h_dec.column(c);
    f.logical = logical_effects.column(c);
    f.probability = priors[c];
    if (!labels.empty()) f.label = labels[c];
    out.push_back(std::move(f));
  }
  return out;
}

std::string DecodingModel::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const std::uint64_t dims[4] = {h_dec.rows(), h_dec.cols(), logical_effects.rows(), rounds};
  h = fnv1a(h, dims, sizeof(dims));
  for (std::size_t r = 0; r < h_dec.rows(); ++r) {
    auto row = h_dec.row(r);
    h = fnv1a(h, row.data(), row.size() * sizeof(uint64_t));
  }
  for (std::size_t r = 0; r < logical_effects.rows(); ++r) {
    auto row = logical_effects.row(r);
    h = fnv1a(h, row.data(), row.size() * sizeof(uint64_t));
  }
  h = fnv1a(h, priors.data(), priors.size() * sizeof(double));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DecodingModel merge_faults(const std::vector<Fault>& faults, MergePolicy policy) {
  if (faults.empty()) throw std::invalid_argument("merge_faults: no faults");
  const std::size_t det = faults[0].detectors.size();
  const std::size_t obs = faults[0].logical.size();
  for (const Fault& f : faults) {
    if (f.detectors.size() != det || f.logical.size() != obs)
      throw std::invalid_argument("merge_faults: inconsistent detector/observable widths");
    if (!(f.probability > 0.0 && f.probability < 1.0))
      throw std::invalid_argument("merge_faults: fault probability outside (0,1)");
  }

  // Tuple -> merged column, in order of first appearance.
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<const Fault*> first;
  std::vector<double> merged;
  for (const Fault& f : faults) {
    auto key = std::make_pair(f.detectors.to_string(), f.logical.to_string());
    auto [it, inserted] = index.try_emplace(std::move(key), merged.size());
    if (inserted) {
      first.push_back(&f);
      merged.push_back(f.probability);
    } else if (policy == MergePolicy::Sum) {
      merged[it->second] += f.probability;
    } else {
      const double p = merged[it->second], q = f.probability;
      merged[it->second] = p + q - 2.0 * p * q;
    }
  }

  DecodingModel model;
  model.h_dec = BitMatrix(det, merged.size());
  model.logical_effects = BitMatrix(obs, merged.size());
  model.priors.resize(merged.size());
  bool any_label = false;
  for (const Fault* f : first) any_label |= !f->label.empty();
  if (any_label) model.labels.resize(merged.size());

  for (std::size_t c = 0; c < merged.size(); ++c) {
    const Fault& f = *first[c];
    for (std::size_t r : f.detectors.support()) model.h_dec.set(r, c, true);
    for (std::size_t r : f.logical.support()) model.logical_effects.set(r, c, true);
    double p = merged[c];
    if (p >= 0.5) {
      model.warnings.push_back("column " + std::to_string(c) + ": merged probability " +
                               std::to_string(p) + " clamped to 0.5-1e-9");
      p = kPriorCeiling;
    }
    model.priors[c] = p;
    if (any_label) model.labels[c] = f.label;
  }
  model.finalize();
  return model;
}

const BitMatrix& sector_checks(const CSSCode& code, Sector s) {
  return s == Sector::X ? code.h_x : code.h_z;
}

const BitMatrix& sector_logicals(const CSSCode& code, Sector s) {
  return s == Sector::X ? code.logicals_x : code.logicals_z;
}

DecodingModel build_phenomenological(const CSSCode& code, Sector sector, double p_data,
                                     double p_meas, std::size_t rounds, MergePolicy policy) {
  if (rounds < 1) throw std::invalid_argument("phenomenological: rounds must be >= 1");
  if (!(p_data > 0.0 && p_data < 0.5))
    throw std::invalid_argument("phenomenological: p_data outside (0, 0.5)");
  if (!(p_meas > 0.0 && p_meas < 0.5))
    throw std::invalid_argument("phenomenological: p_meas outside (0, 0.5)");

  const BitMatrix& h = sector_checks(code, sector);
  const BitMatrix& logicals = sector_logicals(code, sector);
  const std::size_t checks = h.rows();
  const std::size_t qubits = h.cols();
  const std::size_t obs = logicals.rows();

  std::vector<Fault> faults;
  faults.reserve(qubits * rounds + checks * (rounds - 1));

  // Data fault on qubit q between rounds t-1 and t: persists, so under the
  // round-difference convention it fires only layer t of the qubit's checks;
  // it reaches the end of the run, so it carries the qubit's logical column.
  for (std::size_t t = 0; t < rounds; ++t)
    for (std::size_t q = 0; q < qubits; ++q) {
      Fault f;
      f.detectors = BitVector(checks * rounds);
      for (std::size_t c = 0; c < checks; ++c)
        if (h.get(c, q)) f.detectors.set(t * checks + c, true);
      f.logical = BitVector(obs);
      for (std::size_t o = 0; o < obs; ++o)
        if (logicals.get(o, q)) f.logical.set(o, true);
      f.probability = p_data;
      f.label = "d q" + std::to_string(q) + " r" + std::to_string(t + 1);
      faults.push_back(std::move(f));
    }

  // Measurement fault on check c in round t (final round is perfect): flips
  // that one outcome, so it fires the difference detectors of rounds t and t+1.
  for (std::size_t t = 0; t + 1 < rounds; ++t)
    for (std::size_t c = 0; c < checks; ++c) {
      Fault f;
      f.detectors = BitVector(checks * rounds);
      f.detectors.set(t * checks + c, true);
      f.detectors.set((t + 1) * checks + c, true);
      f.logical = BitVector(obs);
      f.probability = p_meas;
      f.label = "m c" + std::to_string(c) + " r" + std::to_string(t + 1);
      faults.push_back(std::move(f));
    }

  DecodingModel model = merge_faults(faults, policy);
  model.rounds = rounds;
  model.name = code.name.empty() ? std::string("code") : code.name;
  model.name += sector == Sector::X ? ":x" : ":z";
  return model;
}

DecodingModel build_code_capacity(const CSSCode& code, Sector sector, double p,
                                  MergePolicy policy) {
  return build_phenomenological(code, sector, p, 0.25, 1, policy);
}

}  // namespace qdec
