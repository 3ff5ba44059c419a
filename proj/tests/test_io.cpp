#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "helpers.hpp"
#include "qdec/errors.hpp"
#include "qdec/io.hpp"

using namespace qdec;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("qdec_io_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix text round-trips through both encodings") {
  std::mt19937_64 rng(3);
  TempDir dir;
  for (int trial = 0; trial < 10; ++trial) {
    const BitMatrix m = qdec::test::random_matrix(rng, 1 + rng() % 7, 1 + rng() % 80, 0.3);
    io::write_matrix_dense(m, dir.file("dense.txt"));
    io::write_matrix_sparse(m, dir.file("sparse.txt"));
    CHECK(io::read_matrix(dir.file("dense.txt")) == m);
    CHECK(io::read_matrix(dir.file("sparse.txt")) == m);
  }
}

TEST_CASE("matrix parser reports malformed input with line numbers") {
  CHECK_THROWS_WITH_AS(io::parse_matrix("nonsense\n", "m.txt"), doctest::Contains("m.txt:1"),
                       parse_error);
  CHECK_THROWS_WITH_AS(io::parse_matrix("2 3\n111\n1x1\n", "m.txt"), doctest::Contains("m.txt:3"),
                       parse_error);
  CHECK_THROWS_AS(io::parse_matrix("2 3\n111\n", "m.txt"), parse_error);       // missing row
  CHECK_THROWS_AS(io::parse_matrix("1 3\n1111\n", "m.txt"), parse_error);      // wrong width
  CHECK_THROWS_AS(io::parse_matrix("1 3 sparse\n7\n", "m.txt"), parse_error);  // out of range
  // Comments and blank lines are fine.
  const BitMatrix m = io::parse_matrix("# header\n2 2\n\n10\n01 # trailing\n");
  CHECK(m == BitMatrix::identity(2));
}

TEST_CASE("fault list ingestion merges indistinguishable faults") {
  const std::string text =
      "detectors=3 observables=1\n"
      "p=0.001 d=0,2 l=0\n"
      "p=0.002 d=0,2 l=0\n";
  const DecodingModel model = merge_faults(io::parse_fault_list(text));
  CHECK(model.columns() == 1);
  CHECK(model.priors[0] == doctest::Approx(0.003));
}

TEST_CASE("fault list keeps distinct tuples in file order") {
  const std::string text =
      "detectors=2 observables=1\n"
      "# a comment line\n"
      "p=0.01 d=0 l=-\n"
      "p=0.02 d=1 l=0\n"
      "p=0.03 d=0,1 l=-\n";
  const auto faults = io::parse_fault_list(text);
  REQUIRE(faults.size() == 3);
  const DecodingModel model = merge_faults(faults);
  CHECK(model.columns() == 3);
  CHECK(model.h_dec.to_strings() == std::vector<std::string>{"101", "011"});
  CHECK(model.priors == std::vector<double>{0.01, 0.02, 0.03});
}

TEST_CASE("fault list errors carry line numbers") {
  CHECK_THROWS_WITH_AS(io::parse_fault_list("detectors=2\np=0.1 d=0 l=-\n", "f.txt"),
                       doctest::Contains("observables"), parse_error);
  CHECK_THROWS_WITH_AS(io::parse_fault_list("detectors=2 observables=0\np=x d=0 l=-\n", "f.txt"),
                       doctest::Contains("f.txt:2"), parse_error);
  CHECK_THROWS_WITH_AS(
      io::parse_fault_list("detectors=2 observables=0\np=0.1 d=5 l=-\n", "f.txt"),
      doctest::Contains("out of range"), parse_error);
  CHECK_THROWS_WITH_AS(io::parse_fault_list("detectors=2 observables=0\nd=0\n", "f.txt"),
                       doctest::Contains("missing p="), parse_error);
  CHECK_THROWS_WITH_AS(io::parse_fault_list("detectors=2 observables=0\n", "f.txt"),
                       doctest::Contains("no faults"), parse_error);
  CHECK_THROWS_AS(io::parse_fault_list("", "f.txt"), parse_error);
}

TEST_CASE("fault lists round-trip through write_fault_list") {
  TempDir dir;
  const std::string text =
      "detectors=3 observables=2\n"
      "p=0.25 d=1 l=0,1\n"
      "p=0.125 d=- l=1\n";
  const auto faults = io::parse_fault_list(text);
  io::write_fault_list(faults, 3, 2, dir.file("faults.txt"));
  const auto again = io::read_fault_list(dir.file("faults.txt"));
  REQUIRE(again.size() == faults.size());
  for (std::size_t i = 0; i < faults.size(); ++i) {
    CHECK(again[i].detectors == faults[i].detectors);
    CHECK(again[i].logical == faults[i].logical);
    CHECK(again[i].probability == faults[i].probability);
  }
  const DecodingModel model = io::load_fault_list(dir.file("faults.txt"));
  CHECK(model.columns() == 2);
}

TEST_CASE("model json round-trips sparse and dense") {
  std::mt19937_64 rng(11);
  TempDir dir;
  const auto inst = qdec::test::random_instance(rng, 6, 14, 10);
  const DecodingModel& model = inst.model;

  for (const bool dense : {false, true}) {
    const std::string json = io::model_to_json(model, dense);
    const DecodingModel back = io::model_from_json(json);
    CHECK(back.h_dec == model.h_dec);
    CHECK(back.logical_effects == model.logical_effects);
    CHECK(back.priors == model.priors);
    CHECK(back.rounds == model.rounds);
    CHECK(back.digest() == model.digest());
  }
  io::save_model(model, dir.file("model.json"));
  CHECK(io::load_model(dir.file("model.json")).digest() == model.digest());
  CHECK_THROWS_AS(io::model_from_json("{not json"), parse_error);
  CHECK_THROWS_AS(io::load_model(dir.file("missing.json")), io_error);
}

TEST_CASE("code files round-trip with logicals and metadata") {
  TempDir dir;
  const BitMatrix h = BitMatrix::from_rows({"0001111", "0110011", "1010101"});
  const BitMatrix logical = BitMatrix::from_rows({"1111111"});
  const CSSCode code = validate_css(h, h, logical, logical, 3, "steane");
  io::save_code(code, dir.file("steane"));
  const CSSCode back = io::load_code(dir.file("steane.json"));
  CHECK(back.h_x == code.h_x);
  CHECK(back.h_z == code.h_z);
  CHECK(back.logicals_x == code.logicals_x);
  CHECK(back.n == 7);
  CHECK(back.k == 1);
  CHECK(back.d == 3);
  CHECK(back.name == "steane");
}

TEST_CASE("syndrome files accept dense and sparse forms") {
  TempDir dir;
  io::write_file(dir.file("dense.txt"), "01011\n");
  CHECK(io::read_syndrome(dir.file("dense.txt"), 5).to_string() == "01011");
  io::write_file(dir.file("sparse.txt"), "sparse\n1 3\n4\n");
  CHECK(io::read_syndrome(dir.file("sparse.txt"), 5).to_string() == "01011");
  io::write_file(dir.file("bad.txt"), "0101\n");
  CHECK_THROWS_AS(io::read_syndrome(dir.file("bad.txt"), 5), parse_error);
}
