#include <string>

#include "doctest.h"
#include "qm/io.hpp"
#include "qm/report.hpp"

using qm::Json;
using qm::Rational;
using qm::SequenceSpec;

TEST_CASE("sequence json round trip") {
  for (const auto& s :
       {SequenceSpec::sign(Rational::parse("-3/7")), SequenceSpec::finite_table({}),
        SequenceSpec::finite_table({Rational(1), Rational::parse("2/5")}),
        SequenceSpec::periodic({Rational::parse("1/2"), Rational(2)})}) {
    CHECK(qm::sequence_from_json(qm::sequence_to_json(s)) == s);
  }
  CHECK_THROWS_AS(qm::sequence_from_json(Json::parse(R"({"form":"weird"})")), qm::ParseError);
  CHECK_THROWS_AS(qm::sequence_from_json(Json::parse(R"({"form":"sign"})")), qm::ParseError);
  CHECK_THROWS_AS(qm::sequence_from_json(Json::parse(R"([1,2])")), qm::ParseError);
  CHECK_THROWS_AS(qm::sequence_from_json(Json::parse(R"({"form":"finite","values":["x"]})")),
                  qm::ParseError);
}

TEST_CASE("word json round trip with wide exponents") {
  qm::Alphabet st{"s", "t"};
  qm::Word x = qm::parse_word("s^123456789012345678901234567890 t^-2", st);
  Json j = qm::word_to_json(x);
  CHECK(j.at(0).at(1).is_string());  // beyond long long, serialized as a string
  CHECK(j.at(1).at(1).is_number_integer());
  CHECK(qm::word_from_json(j, st) == x);
  CHECK_THROWS_AS(qm::word_from_json(Json::parse(R"([["u",1]])"), st), qm::ParseError);
}

TEST_CASE("free product setup from json") {
  Json j = Json::parse(R"({
    "factors": [
      {"id": "A", "kind": "cyclic", "order": 2, "values": []},
      {"id": "B", "kind": "cyclic", "order": 3, "values": ["1/2"]},
      {"id": "Z", "kind": "integers", "sigma": {"form": "sign", "amplitude": "1"}},
      {"id": "T", "kind": "table", "mul": [[0,1],[1,0]], "values": ["0", "0"]}
    ]})");
  qm::FreeProductSetup setup = qm::free_product_from_json(j);
  CHECK(setup.family.factors().size() == 4);
  CHECK(setup.sigma.at("B").eval(qm::BigInt(1)) == Rational::parse("1/2"));
  CHECK(setup.sigma.at("B").eval(qm::BigInt(2)) == Rational::parse("-1/2"));
  CHECK(setup.sigma.at("Z").eval(qm::BigInt(-9)) == Rational(-1));
  CHECK_THROWS_AS(qm::free_product_from_json(Json::parse(R"({"factors":[]})")), qm::ConfigError);
  CHECK_THROWS_AS(
      qm::free_product_from_json(Json::parse(
          R"({"factors":[{"id":"A","kind":"weird"},{"id":"B","kind":"cyclic","order":2}]})")),
      qm::ParseError);
}

TEST_CASE("matrix parsing") {
  qm::Mat2 m = qm::mat2_from_text("[[1,2],[3,7]]");
  CHECK(m.a == 1);
  CHECK(m.d == 7);
  CHECK_THROWS_AS(qm::mat2_from_text("[[1,2],[3]]"), qm::ParseError);
  CHECK_THROWS_AS(qm::mat2_from_text("nonsense"), qm::ParseError);
}

TEST_CASE("complex matrices accept nested and flat layouts") {
  Json nested = Json::parse(R"([[[0,0],[1,0]],[[1,0],[0,0]]])");
  Json flat = Json::parse(R"([[0,0],[1,0],[1,0],[0,0]])");
  qm::CMat a = qm::cmat_from_json(nested);
  qm::CMat b = qm::cmat_from_json(flat);
  CHECK(a.dim() == 2);
  CHECK(a == b);
  CHECK_THROWS_AS(qm::cmat_from_json(Json::parse(R"([[0,0],[1,0],[1,0]])")), qm::ParseError);
}

TEST_CASE("representation and twisted sequence from json") {
  Json rep_j = Json::parse(R"({
    "dim": 2,
    "generators": {
      "s": [[[0,1],[0,0]],[[0,0],[1,0]]],
      "t": [[[1,0],[0,0]],[[0,0],[0,1]]]
    }})");
  qm::UnitaryRep rep = qm::rep_from_json(rep_j);
  CHECK(rep.dim() == 2);

  Json sig_j = Json::parse(R"({
    "dim": 2,
    "generators": {
      "s": [[[1,0],[0,0]]],
      "t": [[[0,0],[0,1]]]
    }})");
  qm::TwistedSequence sigma = qm::twisted_sequence_from_json(sig_j);
  CHECK(sigma.window() == 1);
  CHECK(qm::twisted_oddness_defect(rep, sigma) <= 1e-12);
}

TEST_CASE("metric sequences from json") {
  qm::CircleGroup u1;
  auto sig = qm::circle_sequence_from_json(u1, Json::parse(R"({"form":"sign","entries":[0.3]})"));
  CHECK(sig.sup_norm(u1) == doctest::Approx(0.3));
  qm::RealLine r;
  auto sr = qm::real_sequence_from_json(r, Json::parse(R"({"form":"table","entries":[1.0,-2.5]})"));
  CHECK(sr.sup_norm(r) == doctest::Approx(2.5));
  qm::UnitaryGroup u2(2);
  auto su = qm::unitary_sequence_from_json(
      u2, Json::parse(R"({"form":"sign","entries":[[[[0,1],[0,0]],[[0,0],[1,0]]]]})"));
  CHECK(su.window() == 1);
}

TEST_CASE("report rendering is stable across formats") {
  Json j;
  j["command"] = "demo";
  j["value"] = "3/2";
  j["nested"]["flag"] = true;
  j["list"] = Json::array({1, 2});
  std::string a = qm::render_report(j, qm::ReportFormat::json);
  std::string b = qm::render_report(j, qm::ReportFormat::json);
  CHECK(a == b);  // byte-identical
  std::string csv = qm::render_report(j, qm::ReportFormat::csv);
  CHECK(csv.find("nested.flag") != std::string::npos);
  CHECK(csv.find("list[1]") != std::string::npos);
  std::string human = qm::render_report(j, qm::ReportFormat::human);
  CHECK(human.find("value") != std::string::npos);
  CHECK_THROWS_AS(qm::report_format_from_string("yaml"), qm::ConfigError);
}

TEST_CASE("file loading errors") {
  CHECK_THROWS_AS(qm::load_json_file("/nonexistent/path.json"), qm::ConfigError);
}
