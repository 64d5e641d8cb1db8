#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/torus_file.hpp"

using namespace ttlab;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TTLAB_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TorusSpec random_spec(std::mt19937_64& rng, const support::Instance& inst) {
  std::vector<Rational> twists;
  for (int i = 0; i < inst.cfg.num_curves(); ++i) twists.push_back(ratio(support::uniform(rng, 7), 5));
  return make_spec(inst.cfg, inst.sa, inst.heights, twists);
}

int error_line(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    std::string what = e.what();
    auto pos = what.find("line ");
    REQUIRE(pos != std::string::npos);
    return std::stoi(what.substr(pos + 5));
  }
  FAIL("no parse error");
  return -1;
}

std::string replace_first(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("canonical writer round-trips") {
  std::mt19937_64 rng(61);
  for (const auto& inst : support::random_instances(62, 60)) {
    auto spec = random_spec(rng, inst);
    const std::string text = write_torus(spec);
    auto back = parse_torus(text);
    CHECK(write_torus(back) == text);
    CHECK(back.config == spec.config);
    CHECK(back.spines == spec.spines);
    CHECK(back.heights == spec.heights);
    CHECK(back.twists == spec.twists);
  }
}

TEST_CASE("numeric specs round-trip through twelve digits") {
  std::mt19937_64 rng(63);
  for (const auto& inst : support::random_instances(64, 30)) {
    auto spec = random_spec(rng, inst);
    auto q = geodesic_flow(to_numeric_surface(spec), 0.731);
    const std::string text = write_torus(from_surface(q, spec));
    CHECK(text.find("mode = numeric") != std::string::npos);
    CHECK(text.find("scale = ") != std::string::npos);
    CHECK(write_torus(parse_torus(text)) == text);
    auto again = to_numeric_surface(parse_torus(text));
    CHECK(area(again) == doctest::Approx(area(q)).epsilon(1e-9));
  }
}

TEST_CASE("exact and numeric surfaces agree") {
  std::mt19937_64 rng(65);
  for (const auto& inst : support::random_instances(66, 20)) {
    auto spec = random_spec(rng, inst);
    spec.normalize = true;
    auto exact = to_exact_surface(spec);
    auto numeric = to_numeric_surface(spec);
    CHECK(area(exact) == 1);
    CHECK(area(numeric) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < exact.num_cylinders(); ++i)
      CHECK(to_double(exact.twists[i]) == doctest::Approx(numeric.twists[i]).epsilon(1e-12));
  }
}

TEST_CASE("exact flow folds the scale into the lengths") {
  auto spec = parse_torus(slurp("g2_pants.torus"));
  auto q = geodesic_flow(to_exact_surface(spec), Rational(2));
  auto out = from_surface(q, spec);
  for (size_t j = 0; j < out.spines.spines.size(); ++j) CHECK(out.spines.spines[j] == spec.spines.spines[j].scaled(2));
  for (size_t i = 0; i < out.heights.size(); ++i) CHECK(out.heights[i] * 2 == spec.heights[i]);
  CHECK(out.scale == 1);
}

TEST_CASE("unknown lengths are solved from the gluing") {
  const std::string text = slurp("g2_pants.torus");
  auto spec = parse_torus(text);
  auto probe = replace_first(text, "edge: 1 4 length 1/2", "edge: 1 4 length ?");
  CHECK(write_torus(parse_torus(probe)) == write_torus(spec));

  std::string all_unknown = text;
  for (std::string::size_type pos; (pos = all_unknown.find("length 1/2")) != std::string::npos;)
    all_unknown.replace(pos, 10, "length ?");
  CHECK(audit(parse_document(all_unknown)).has("UnderdeterminedLength"));
}

TEST_CASE("forced zero lengths and mismatched perimeters") {
  auto report = audit(parse_document(slurp("zero_length.torus")));
  CHECK(report.has("ZeroLengthForced"));
  CHECK_FALSE(report.has("LengthMismatch"));
  CHECK_THROWS_AS(parse_torus(slurp("zero_length.torus")), Error);

  report = audit(parse_document(slurp("length_mismatch.torus")));
  CHECK(report.has("LengthMismatch"));
  CHECK(audit(parse_document(slurp("g2_pants.torus"))).ok());
}

TEST_CASE("audit reports naming and value problems") {
  const std::string text = slurp("g2_pants.torus");
  CHECK(audit(parse_document(replace_first(text, "c2 = 1\n", "c2 = 0\n"))).has("NonPositiveHeight"));
  CHECK(audit(parse_document(replace_first(text, "c2 = 1\n", ""))).has("MissingHeight"));
  CHECK(audit(parse_document(replace_first(text, "c2 = P0.2 P1.2", "c2 = P0.2 P9.2"))).has("UnknownName"));
  CHECK(audit(parse_document(replace_first(text, "c2 = P0.2 P1.2", "c1 = P0.2 P1.2"))).has("DuplicateGluing"));
  CHECK(audit(parse_document(replace_first(text, "[ribbon P1]", "[ribbon P7]"))).has("MissingRibbon"));
  CHECK(audit(parse_document(replace_first(text, "face->slot: 1 0", "face->slot: 1 2"))).has("FaceSlotNotBijective"));
  CHECK(audit(parse_document(replace_first(text, "genus = 2", "genus = 3"))).has("EulerMismatch"));
  CHECK(audit(parse_document(replace_first(text, "length 1/2", "length 0"))).has("NonPositiveLength"));
  CHECK(audit(parse_document(replace_first(text, "mode = exact", "mode = exact\nscale = 2"))).has("ModeMismatch"));
}

TEST_CASE("parse errors name the line") {
  CHECK(error_line("[surface]\ngenus = x\n") == 2);
  CHECK(error_line("# c\n[nope]\n") == 2);
  CHECK(error_line("genus = 2\n") == 1);
  CHECK(error_line("[pieces]\nP0 genus=0\n") == 2);
  CHECK(error_line("[gluing]\nc0 = P0.0\n") == 2);
  CHECK(error_line("[ribbon P0]\nvertex: 0 1\nedge: 0 1 length 1/0\n") == 3);
  CHECK(error_line("[options]\nmode = fast\n") == 2);
  CHECK(error_line("[heights]\n\n\nc0 = \n") == 4);
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text = slurp("g2_pants.torus");
  auto a = write_torus(parse_torus(text));
  auto b = write_torus(parse_torus("# leading\n\n" + replace_first(text, "[curves]", "[curves]   # names")));
  CHECK(a == b);
}
