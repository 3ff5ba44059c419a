#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdec/gf2.hpp"
#include "qdec/model.hpp"

using namespace qdec;

namespace {

const std::vector<std::string> kHamming = {"0001111", "0110011", "1010101"};

CSSCode steane() {
  const BitMatrix h = BitMatrix::from_rows(kHamming);
  const BitMatrix logical = BitMatrix::from_rows({"1111111"});
  return validate_css(h, h, logical, logical, 3, "steane");
}

CSSCode repetition_check() {
  // One X check on two qubits; the Z sector is empty.
  const BitMatrix h_x = BitMatrix::from_rows({"11"});
  const BitMatrix h_z(0, 2);
  return validate_css(h_x, h_z, BitMatrix::from_rows({"10"}), BitMatrix::from_rows({"11"}), 0,
                      "rep2");
}

// Independent single-fault simulator: plays the fault through `rounds` noisy
// measurement rounds (final round perfect) and reports the round-difference
// detector pattern. Used as the oracle for build_phenomenological columns.
struct FaultSpec {
  bool is_measurement = false;
  std::size_t site = 0;   // qubit (data) or check (measurement)
  std::size_t round = 1;  // 1-based
};

BitVector resimulate_detectors(const BitMatrix& h, std::size_t rounds, const FaultSpec& f) {
  const std::size_t checks = h.rows();
  std::vector<std::vector<int>> outcome(rounds + 1, std::vector<int>(checks, 0));
  for (std::size_t t = 1; t <= rounds; ++t)
    for (std::size_t c = 0; c < checks; ++c) {
      if (!f.is_measurement && t >= f.round && h.get(c, f.site)) outcome[t][c] ^= 1;
      if (f.is_measurement && t == f.round && c == f.site) outcome[t][c] ^= 1;
    }
  BitVector det(checks * rounds);
  for (std::size_t t = 1; t <= rounds; ++t)
    for (std::size_t c = 0; c < checks; ++c)
      if (outcome[t][c] ^ outcome[t - 1][c]) det.set((t - 1) * checks + c, true);
  return det;
}

FaultSpec parse_label(const std::string& label) {
  FaultSpec f;
  REQUIRE(label.size() >= 5);
  f.is_measurement = label[0] == 'm';
  const auto space = label.find(' ', 2);
  f.site = std::stoul(label.substr(3, space - 3));
  f.round = std::stoul(label.substr(space + 2));
  return f;
}

Fault make_fault(std::size_t det, std::size_t obs, std::vector<std::size_t> d,
                 std::vector<std::size_t> l, double p) {
  Fault f;
  f.detectors = BitVector(det);
  for (std::size_t i : d) f.detectors.set(i, true);
  f.logical = BitVector(obs);
  for (std::size_t i : l) f.logical.set(i, true);
  f.probability = p;
  return f;
}

}  // namespace

TEST_CASE("steane code validates with k = 1") {
  const CSSCode code = steane();
  CHECK(code.n == 7);
  CHECK(code.k == 1);
}

TEST_CASE("css validation rejects a perturbed steane code") {
  const BitMatrix h_x = BitMatrix::from_rows(kHamming);
  BitMatrix h_z = h_x;
  h_z.set(0, 0, true);  // breaks orthogonality against h_x rows 1 and 2
  const BitMatrix logical = BitMatrix::from_rows({"1111111"});
  CHECK_THROWS_WITH_AS(validate_css(h_x, h_z, {}, {}), doctest::Contains("anticommutes"),
                       std::invalid_argument);
  CHECK_THROWS_AS(validate_css(h_x, h_z, logical, logical), std::invalid_argument);
}

TEST_CASE("css validation rejects dependent or anticommuting logicals") {
  const BitMatrix h = BitMatrix::from_rows(kHamming);
  // A stabilizer row is not a logical operator.
  CHECK_THROWS_WITH_AS(validate_css(h, h, BitMatrix::from_rows({"0001111"}), {}),
                       doctest::Contains("rowspace"), std::invalid_argument);
  // Odd overlap with a check.
  CHECK_THROWS_WITH_AS(validate_css(h, h, BitMatrix::from_rows({"1000000"}), {}),
                       doctest::Contains("anticommutes"), std::invalid_argument);
}

TEST_CASE("degenerate css cases") {
  SUBCASE("no checks at all: k = n") {
    const CSSCode code = validate_css(BitMatrix(0, 2), BitMatrix(0, 2), {}, {});
    CHECK(code.k == 2);
  }
  SUBCASE("two-qubit check pair: orthogonal since 1+1=0, k = 0") {
    const BitMatrix h = BitMatrix::from_rows({"11"});
    const CSSCode code = validate_css(h, h, {}, {});
    CHECK(code.k == 0);
  }
}

TEST_CASE("bicycle construction hits the target parameters") {
  // A = x^3 + y + y^2, B = y^3 + x + x^2 on a 6x6 torus.
  const CSSCode code = build_bicycle(6, 6, {{3, 0}, {0, 1}, {0, 2}}, {{0, 3}, {1, 0}, {2, 0}}, 6);
  CHECK(code.n == 72);
  CHECK(code.k == 12);
  CHECK(code.logicals_x.rows() == 12);
  CHECK(code.logicals_z.rows() == 12);
  CHECK(code.d == 6);
}

TEST_CASE("bicycle degenerate single cell") {
  const CSSCode code = build_bicycle(1, 1, {{0, 0}}, {{0, 0}});
  CHECK(code.n == 2);
  CHECK(code.k == 0);
  CHECK(code.h_x.to_strings() == std::vector<std::string>{"11"});
}

TEST_CASE("bicycle orthogonality holds for random monomials") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t l = 2 + rng() % 3, m = 2 + rng() % 3;
    auto poly = [&](std::size_t terms) {
      std::vector<Monomial> out;
      for (std::size_t i = 0; i < terms; ++i) out.push_back({rng() % l, rng() % m});
      return out;
    };
    const CSSCode code = build_bicycle(l, m, poly(1 + rng() % 3), poly(1 + rng() % 3));
    for (std::size_t i = 0; i < code.h_x.rows(); ++i) {
      const BitVector row = code.h_x.row_vector(i);
      for (std::size_t j = 0; j < code.h_z.rows(); ++j) CHECK_FALSE(code.h_z.row_dot(j, row));
    }
  }
}

TEST_CASE("duplicate monomials cancel with a warning") {
  const CSSCode code = build_bicycle(2, 2, {{0, 0}, {0, 0}, {1, 0}}, {{0, 1}});
  CHECK(code.warnings.size() == 1);
  // A collapsed to the single monomial x: every h_x row has weight 1 + |B| = 2.
  CHECK(code.h_x.row_vector(0).weight() == 2);
}

TEST_CASE("merge_faults follows the summed-probability rule") {
  SUBCASE("identical tuples merge, probabilities sum") {
    const auto faults = std::vector<Fault>{make_fault(3, 1, {0, 2}, {0}, 0.001),
                                           make_fault(3, 1, {0, 2}, {0}, 0.002)};
    const DecodingModel model = merge_faults(faults);
    CHECK(model.columns() == 1);
    CHECK(model.priors[0] == doctest::Approx(0.003).epsilon(1e-12));
  }
  SUBCASE("same detectors, different logical effect stay separate") {
    const auto faults = std::vector<Fault>{make_fault(3, 1, {0, 2}, {0}, 0.001),
                                           make_fault(3, 1, {0, 2}, {}, 0.002)};
    CHECK(merge_faults(faults).columns() == 2);
  }
  SUBCASE("single fault passes through unchanged") {
    const DecodingModel model = merge_faults({make_fault(2, 1, {1}, {0}, 0.01)});
    CHECK(model.columns() == 1);
    CHECK(model.priors[0] == 0.01);
    CHECK(model.h_dec.to_strings() == std::vector<std::string>{"0", "1"});
  }
}

TEST_CASE("merge_faults is idempotent and input-order independent") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Fault> faults;
    const std::size_t n = 2 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> d, l;
      for (std::size_t b = 0; b < 4; ++b)
        if (rng() & 1u) d.push_back(b);
      if (rng() & 1u) l.push_back(0);
      faults.push_back(make_fault(4, 1, d, l, 0.001 + 0.001 * static_cast<double>(rng() % 20)));
    }
    const DecodingModel merged = merge_faults(faults);

    // Idempotence: re-merging the merged columns changes nothing.
    const DecodingModel again = merge_faults(merged.to_faults());
    CHECK(again.h_dec == merged.h_dec);
    CHECK(again.logical_effects == merged.logical_effects);
    CHECK(again.priors == merged.priors);

    // The tuple -> probability map is independent of input order.
    auto key_of = [](const Fault& f) { return f.detectors.to_string() + "|" + f.logical.to_string(); };
    std::vector<Fault> shuffled = faults;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const DecodingModel remerged = merge_faults(shuffled);
    REQUIRE(remerged.columns() == merged.columns());
    const auto a = merged.to_faults();
    const auto b = remerged.to_faults();
    for (const Fault& fa : a) {
      bool found = false;
      for (const Fault& fb : b)
        if (key_of(fa) == key_of(fb)) {
          CHECK(fa.probability == doctest::Approx(fb.probability).epsilon(1e-12));
          found = true;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("merged probabilities reaching 0.5 clamp with a warning") {
  const auto faults = std::vector<Fault>{make_fault(1, 0, {0}, {}, 0.3),
                                         make_fault(1, 0, {0}, {}, 0.3)};
  const DecodingModel model = merge_faults(faults);
  CHECK(model.priors[0] == doctest::Approx(0.5 - 1e-9));
  REQUIRE(model.warnings.size() == 1);
  CHECK(model.warnings[0].find("clamped") != std::string::npos);

  // Exact mode combines by odd parity instead and needs no clamp here.
  const DecodingModel exact = merge_faults(faults, MergePolicy::Exact);
  CHECK(exact.priors[0] == doctest::Approx(0.3 + 0.3 - 2 * 0.3 * 0.3));
  CHECK(exact.warnings.empty());
}

TEST_CASE("phenomenological model with one round is the code-capacity model") {
  const CSSCode code = steane();
  const DecodingModel model = build_phenomenological(code, Sector::X, 0.01, 0.2, 1);
  CHECK(model.h_dec == code.h_x);
  CHECK(model.logical_effects == code.logicals_x);
  for (double p : model.priors) CHECK(p == 0.01);
  CHECK(model.rounds == 1);
}

TEST_CASE("phenomenological repetition example: 2 detectors, 5 columns") {
  const CSSCode code = repetition_check();
  const DecodingModel model = build_phenomenological(code, Sector::X, 0.01, 0.02, 2);
  CHECK(model.detectors() == 2);
  REQUIRE(model.columns() == 5);
  // 2 qubits x 2 rounds data faults plus one measurement fault.
  std::size_t data = 0, meas = 0;
  for (const std::string& label : model.labels) (label[0] == 'd' ? data : meas) += 1;
  CHECK(data == 4);
  CHECK(meas == 1);
  // The measurement fault fires both difference layers of its check.
  for (std::size_t c = 0; c < model.columns(); ++c)
    if (model.labels[c][0] == 'm') {
      CHECK(model.h_dec.column(c).to_string() == "11");
      CHECK_FALSE(model.logical_effects.column(c).any());
      CHECK(model.priors[c] == 0.02);
    }
}

TEST_CASE("phenomenological preconditions") {
  const CSSCode code = steane();
  CHECK_THROWS_AS(build_phenomenological(code, Sector::X, 0.5, 0.01, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_phenomenological(code, Sector::X, 0.01, 0.01, 0), std::invalid_argument);
}

TEST_CASE("every phenomenological column matches its re-simulated fault") {
  for (const CSSCode& code : {steane(), repetition_check()}) {
    for (const Sector sector : {Sector::X, Sector::Z}) {
      const BitMatrix& h = sector_checks(code, sector);
      const BitMatrix& logicals = sector_logicals(code, sector);
      if (h.rows() == 0) continue;
      for (std::size_t rounds : {1u, 2u, 3u}) {
        const DecodingModel model = build_phenomenological(code, sector, 0.01, 0.02, rounds);
        REQUIRE(model.labels.size() == model.columns());
        for (std::size_t c = 0; c < model.columns(); ++c) {
          const FaultSpec f = parse_label(model.labels[c]);
          CHECK(model.h_dec.column(c) == resimulate_detectors(h, rounds, f));
          // Data faults persist to the end: logical effect is the qubit's
          // logical column; measurement faults have none.
          BitVector expected(logicals.rows());
          if (!f.is_measurement)
            for (std::size_t o = 0; o < logicals.rows(); ++o)
              if (logicals.get(o, f.site)) expected.set(o, true);
          CHECK(model.logical_effects.column(c) == expected);
        }
      }
    }
  }
}

TEST_CASE("fault widths must be consistent") {
  const auto faults =
      std::vector<Fault>{make_fault(3, 1, {0}, {}, 0.1), make_fault(2, 1, {0}, {}, 0.1)};
  CHECK_THROWS_AS(merge_faults(faults), std::invalid_argument);
  CHECK_THROWS_AS(merge_faults({}), std::invalid_argument);
}
