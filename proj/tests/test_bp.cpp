#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qdec/bp.hpp"
#include "qdec/model.hpp"

using namespace qdec;

namespace {

// Distinct unit logical effects keep equal detector columns from merging.
DecodingModel model_from(const std::vector<std::string>& h_rows, std::vector<double> priors) {
  std::vector<Fault> faults;
  const BitMatrix h = BitMatrix::from_rows(h_rows);
  for (std::size_t c = 0; c < h.cols(); ++c) {
    Fault f;
    f.detectors = h.column(c);
    f.logical = BitVector(h.cols());
    f.logical.set(c, true);
    f.probability = priors[c];
    faults.push_back(std::move(f));
  }
  DecodingModel m = merge_faults(faults);
  REQUIRE(m.h_dec == h);
  return m;
}

// Exact conditional marginals by enumeration: LLR_i of P(e_i=0 | H e = s)
// under independent priors.
std::vector<double> exact_posteriors(const BitMatrix& h, const BitVector& syndrome,
                                     const std::vector<double>& priors) {
  const std::size_t n = h.cols();
  std::vector<double> p1(n, 0.0);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BitVector e(n);
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool bit = (mask >> i) & 1u;
      if (bit) e.set(i, true);
      w *= bit ? priors[i] : 1.0 - priors[i];
    }
    if (h.multiply(e) != syndrome) continue;
    total += w;
    for (std::size_t i = 0; i < n; ++i)
      if (e.get(i)) p1[i] += w;
  }
  REQUIRE(total > 0.0);
  // Forced bits have infinite true LLRs; the decoder contract clips to
  // +/- llr_max, so the oracle does the same.
  std::vector<double> llrs(n);
  for (std::size_t i = 0; i < n; ++i)
    llrs[i] = std::clamp(std::log((total - p1[i]) / p1[i]), -30.0, 30.0);
  return llrs;
}

}  // namespace

TEST_CASE("prior llr examples") {
  CHECK(prior_llr(0.5) == 0.0);
  const double e = std::exp(1.0);
  CHECK(prior_llr(e / (1.0 + e)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(prior_llr(0.001) == doctest::Approx(std::log(999.0)).epsilon(1e-12));
  CHECK(prior_llr(0.001) == doctest::Approx(6.9068).epsilon(1e-4));
  // Clipping.
  CHECK(prior_llr(1e-20) == 30.0);
  CHECK(prior_llr(1.0 - 1e-20) == -30.0);
}

TEST_CASE("single degree-2 check, one iteration") {
  const DecodingModel model = model_from({"11"}, {0.2, 0.3});
  const std::vector<double> prior = prior_llrs(model);

  for (const BpSchedule schedule : {BpSchedule::Flooding, BpSchedule::Serial}) {
    BpConfig config;
    config.iterations = 1;
    config.schedule = schedule;
    BpDecoder bp(model, config);

    SUBCASE("even parity adds the partner's llr") {
      const SoftOutput out = bp.decode(BitVector::from_string("0"));
      CHECK(out.llrs[0] == doctest::Approx(prior[0] + prior[1]).epsilon(1e-12));
      CHECK(out.llrs[1] == doctest::Approx(prior[1] + prior[0]).epsilon(1e-12));
      CHECK(out.converged);  // hard decisions 00 satisfy syndrome 0
    }
    SUBCASE("odd parity flips the sign") {
      const SoftOutput out = bp.decode(BitVector::from_string("1"));
      CHECK(out.llrs[0] == doctest::Approx(prior[0] - prior[1]).epsilon(1e-12));
      CHECK(out.llrs[1] == doctest::Approx(prior[1] - prior[0]).epsilon(1e-12));
      // Bit 1 is likelier (p=0.3): its posterior goes negative, bit 0 stays positive.
      CHECK(out.hard_decisions.to_string() == "01");
      CHECK(out.converged);
    }
  }
}

TEST_CASE("zero iterations return the priors untouched") {
  const DecodingModel model = model_from({"110", "011"}, {0.1, 0.2, 0.3});
  BpConfig config;
  config.iterations = 0;
  BpDecoder bp(model, config);
  const SoftOutput out = bp.decode(BitVector::from_string("10"));
  CHECK(out.llrs == prior_llrs(model));
  CHECK(out.iterations_run == 0);
  CHECK_FALSE(out.converged);  // syndrome 10 unsatisfied by the zero vector
}

TEST_CASE("posteriors are exact on cycle-free graphs") {
  struct Case {
    std::vector<std::string> h;
    std::vector<double> priors;
  };
  const std::vector<Case> cases = {
      {{"11"}, {0.2, 0.3}},
      {{"110", "011"}, {0.1, 0.2, 0.3}},
      {{"1100", "0110", "0011"}, {0.1, 0.25, 0.2, 0.3}},
      {{"1", "1"}, {0.3}},  // two degree-1 checks on one bit
  };
  for (const Case& c : cases) {
    const DecodingModel model = model_from(c.h, c.priors);
    for (std::uint64_t smask = 0; smask < (std::uint64_t{1} << model.detectors()); ++smask) {
      BitVector syndrome(model.detectors());
      for (std::size_t i = 0; i < model.detectors(); ++i)
        if ((smask >> i) & 1u) syndrome.set(i, true);
      // Skip unreachable syndromes (e.g. the two redundant checks disagreeing).
      bool reachable = false;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << model.columns()) && !reachable;
           ++mask) {
        BitVector e(model.columns());
        for (std::size_t i = 0; i < model.columns(); ++i)
          if ((mask >> i) & 1u) e.set(i, true);
        reachable = model.h_dec.multiply(e) == syndrome;
      }
      if (!reachable) continue;

      const std::vector<double> exact = exact_posteriors(model.h_dec, syndrome, c.priors);
      for (const BpSchedule schedule : {BpSchedule::Flooding, BpSchedule::Serial}) {
        BpConfig config;
        config.iterations = 5;
        config.schedule = schedule;
        BpDecoder bp(model, config);
        const SoftOutput out = bp.decode(syndrome);
        for (std::size_t i = 0; i < exact.size(); ++i)
          CHECK(out.llrs[i] == doctest::Approx(exact[i]).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("per-iteration work is proportional to the edge count") {
  // Same row structure duplicated: twice the edges, twice the updates.
  const DecodingModel small = model_from({"1100", "0111"}, {0.1, 0.2, 0.3, 0.1});
  const DecodingModel big =
      model_from({"11000000", "01110000", "00001100", "00000111"},
                 {0.1, 0.2, 0.3, 0.1, 0.12, 0.22, 0.32, 0.12});
  for (const BpSchedule schedule : {BpSchedule::Flooding, BpSchedule::Serial}) {
    BpConfig config;
    config.iterations = 7;
    config.schedule = schedule;
    BpDecoder bp_small(small, config);
    BpDecoder bp_big(big, config);
    const auto out_small = bp_small.decode(BitVector(2));
    const auto out_big = bp_big.decode(BitVector(4));
    CHECK(bp_big.edge_count() == 2 * bp_small.edge_count());
    CHECK(out_big.message_updates == 2 * out_small.message_updates);
    CHECK(out_small.message_updates == 2 * 7 * bp_small.edge_count());
  }
}

TEST_CASE("flooding and serial perform identical update counts") {
  const DecodingModel model = model_from({"1101", "0111"}, {0.1, 0.2, 0.3, 0.25});
  BpConfig flooding;
  flooding.iterations = 9;
  flooding.schedule = BpSchedule::Flooding;
  BpConfig serial = flooding;
  serial.schedule = BpSchedule::Serial;
  const auto a = BpDecoder(model, flooding).decode(BitVector::from_string("10"));
  const auto b = BpDecoder(model, serial).decode(BitVector::from_string("10"));
  CHECK(a.message_updates == b.message_updates);
}

TEST_CASE("outputs stay clipped and deterministic") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    // Random sparse model with short cycles and strong priors.
    const std::size_t rows = 3 + rng() % 3, cols = 5 + rng() % 4;
    BitMatrix h(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3 == 0) h.set(r, c, true);
    std::vector<Fault> faults;
    for (std::size_t c = 0; c < cols; ++c) {
      Fault f;
      f.detectors = h.column(c);
      f.logical = BitVector(cols);
      f.logical.set(c, true);
      f.probability = 0.0001 + 0.0001 * static_cast<double>(c);
      faults.push_back(std::move(f));
    }
    const DecodingModel model = merge_faults(faults);
    BitVector syndrome(model.detectors());
    for (std::size_t i = 0; i < model.detectors(); ++i)
      if (rng() & 1u) syndrome.set(i, true);

    for (const BpSchedule schedule : {BpSchedule::Flooding, BpSchedule::Serial}) {
      BpConfig config;
      config.iterations = 50;
      config.schedule = schedule;
      config.llr_max = 12.0;
      BpDecoder bp(model, config);
      const SoftOutput out = bp.decode(syndrome);
      for (double l : out.llrs) {
        CHECK(l <= 12.0);
        CHECK(l >= -12.0);
      }
      for (std::size_t i = 0; i < out.llrs.size(); ++i)
        CHECK(out.hard_decisions.get(i) == (out.llrs[i] < 0.0));
      const SoftOutput again = BpDecoder(model, config).decode(syndrome);
      CHECK(again.llrs == out.llrs);  // bit-identical
      CHECK(again.hard_decisions == out.hard_decisions);
    }
  }
}

TEST_CASE("early exit stops once the hard decisions satisfy the syndrome") {
  const DecodingModel model = model_from({"11"}, {0.2, 0.3});
  BpConfig config;
  config.iterations = 40;
  config.early_exit = true;
  BpDecoder bp(model, config);
  const SoftOutput out = bp.decode(BitVector::from_string("1"));
  CHECK(out.converged);
  CHECK(out.iterations_run < 40);
}

TEST_CASE("syndrome length mismatches are rejected") {
  const DecodingModel model = model_from({"11"}, {0.2, 0.3});
  BpDecoder bp(model, {});
  CHECK_THROWS_AS(bp.decode(BitVector::from_string("10")), std::invalid_argument);
}
