#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qm/errors.hpp"
#include "qm/free_products.hpp"
#include "qm/metric_targets.hpp"
#include "qm/sequences.hpp"
#include "qm/twisted.hpp"
#include "qm/words.hpp"

namespace qm {

using Json = nlohmann::ordered_json;

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

// --- sequences: {"form": "finite"|"periodic"|"sign",
//                 "values": ["p/q", ...], "amplitude": "p/q"} --------------

inline SequenceSpec sequence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("form"))
    throw ParseError("sequence: expected an object with a 'form' key");
  std::string form = j.at("form").get<std::string>();
  auto values = [&] {
    std::vector<Rational> out;
    for (const auto& v : j.value("values", Json::array()))
      out.push_back(Rational::parse(v.get<std::string>()));
    return out;
  };
  if (form == "finite") return SequenceSpec::finite_table(values());
  if (form == "periodic") return SequenceSpec::periodic(values());
  if (form == "sign") {
    if (!j.contains("amplitude")) throw ParseError("sign sequence needs an 'amplitude'");
    return SequenceSpec::sign(Rational::parse(j.at("amplitude").get<std::string>()));
  }
  throw ParseError("sequence: unknown form '" + form + "'");
}

inline Json sequence_to_json(const SequenceSpec& s) {
  Json j;
  switch (s.form()) {
    case SeqForm::finite:
      j["form"] = "finite";
      break;
    case SeqForm::periodic:
      j["form"] = "periodic";
      break;
    case SeqForm::sign:
      j["form"] = "sign";
      j["amplitude"] = s.amplitude().str();
      return j;
  }
  Json vals = Json::array();
  for (const auto& v : s.values()) vals.push_back(v.str());
  j["values"] = std::move(vals);
  return j;
}

inline SequenceSpec load_sequence(const std::string& path) {
  return sequence_from_json(load_json_file(path));
}

// --- words: list of [name, exponent] pairs -------------------------------

inline Json word_to_json(const Word& w) {
  Json j = Json::array();
  for (const auto& s : w.syllables()) {
    Json exp;
    if (s.exp.fits_longlong()) exp = s.exp.to_longlong();
    else exp = s.exp.str();
    j.push_back(Json::array({s.gen, exp}));
  }
  return j;
}

inline Word word_from_json(const Json& j, const Alphabet& alphabet) {
  std::vector<Syllable> raw;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("word: each syllable must be a [name, exponent] pair");
    std::string name = pair.at(0).get<std::string>();
    if (!alphabet.contains(name)) throw ParseError("word: unknown generator '" + name + "'");
    BigInt exp = pair.at(1).is_string() ? BigInt::parse(pair.at(1).get<std::string>())
                                        : BigInt(pair.at(1).get<long long>());
    raw.push_back(Syllable{std::move(name), std::move(exp)});
  }
  return Word::reduce(std::move(raw));
}

// --- free products: {"factors": [{"id", "kind", ...}, ...]} --------------
// kinds: {"kind":"cyclic","order":n,"values":["p/q",...]}  free coordinates
//        {"kind":"table","mul":[[...]],"values":["p/q" per element]}
//        {"kind":"integers","sigma":{sequence json}}

struct FreeProductSetup {
  FactorFamily family;
  OddMapFamily sigma;
};

inline FreeProductSetup free_product_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("factors"))
    throw ParseError("free product: expected an object with a 'factors' array");
  std::vector<FactorGroup> groups;
  std::vector<Json> specs;
  for (const auto& f : j.at("factors")) {
    std::string id = f.at("id").get<std::string>();
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "cyclic") {
      groups.push_back(FactorGroup::cyclic(id, f.at("order").get<long>()));
    } else if (kind == "integers") {
      groups.push_back(FactorGroup::integers(id));
    } else if (kind == "table") {
      std::vector<std::vector<std::uint32_t>> mul;
      for (const auto& row : f.at("mul")) mul.push_back(row.get<std::vector<std::uint32_t>>());
      groups.push_back(FactorGroup::from_table(id, std::move(mul)));
    } else {
      throw ParseError("free product: unknown factor kind '" + kind + "'");
    }
    specs.push_back(f);
  }
  FreeProductSetup setup{FactorFamily(std::move(groups)), OddMapFamily{}};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Json& f = specs[i];
    const FactorGroup& g = setup.family.factors()[i];
    auto rationals = [&](const char* key) {
      std::vector<Rational> out;
      for (const auto& v : f.value(key, Json::array()))
        out.push_back(Rational::parse(v.get<std::string>()));
      return out;
    };
    switch (g.kind()) {
      case FactorGroup::Kind::cyclic:
        setup.sigma.set(OddBoundedMap::cyclic_free(g, rationals("values")));
        break;
      case FactorGroup::Kind::table:
        setup.sigma.set(OddBoundedMap::table(g, rationals("values")));
        break;
      case FactorGroup::Kind::integers:
        setup.sigma.set(OddBoundedMap::integer_sequence(
            g, f.contains("sigma") ? sequence_from_json(f.at("sigma")) : SequenceSpec::zero()));
        break;
    }
  }
  return setup;
}

inline FreeProductSetup load_free_product(const std::string& path) {
  return free_product_from_json(load_json_file(path));
}

// --- 2x2 integer matrices as [[a, b], [c, d]] ----------------------------

inline Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_array() || j.at(0).size() != 2 ||
      !j.at(1).is_array() || j.at(1).size() != 2)
    throw ParseError("matrix: expected [[a,b],[c,d]]");
  return Mat2{j.at(0).at(0).get<long long>(), j.at(0).at(1).get<long long>(),
              j.at(1).at(0).get<long long>(), j.at(1).at(1).get<long long>()};
}

inline Mat2 mat2_from_text(const std::string& text) {
  return mat2_from_json(parse_json_text(text, "matrix"));
}

inline Json mat2_to_json(const Mat2& m) {
  return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})});
}

// --- complex payloads -----------------------------------------------------

inline cplx cplx_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex number: expected [re, im]");
  return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

inline Json cplx_to_json(const cplx& z) { return Json::array({z.real(), z.imag()}); }

// Accepts a d x d matrix either as d rows of d [re,im] entries or as a flat
// row-major list of d*d entries.
inline CMat cmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty array");
  bool nested = j.at(0).is_array() && !j.at(0).empty() && j.at(0).at(0).is_array();
  std::vector<cplx> flat;
  if (nested) {
    for (const auto& row : j)
      for (const auto& entry : row) flat.push_back(cplx_from_json(entry));
  } else {
    for (const auto& entry : j) flat.push_back(cplx_from_json(entry));
  }
  std::size_t d = 1;
  while (d * d < flat.size()) ++d;
  if (d * d != flat.size()) throw ParseError("matrix: entry count is not a perfect square");
  CMat m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) m.at(i, k) = flat[i * d + k];
  return m;
}

inline Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(cplx_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- metric-target sequences ----------------------------------------------
// {"form": "table"|"sign", "entries": [...]} with angles for the circle and
// the real line, matrices for the unitary target.

inline GroupSequence<RealLine> real_sequence_from_json(const RealLine& g, const Json& j) {
  std::string form = j.at("form").get<std::string>();
  if (form == "sign") return GroupSequence<RealLine>::sign_form(g, j.at("entries").at(0).get<double>());
  std::vector<double> entries;
  for (const auto& e : j.at("entries")) entries.push_back(e.get<double>());
  return GroupSequence<RealLine>::table(g, std::move(entries));
}

inline GroupSequence<CircleGroup> circle_sequence_from_json(const CircleGroup& g, const Json& j) {
  std::string form = j.at("form").get<std::string>();
  if (form == "sign")
    return GroupSequence<CircleGroup>::sign_form(g, CircleGroup::wrap(j.at("entries").at(0).get<double>()));
  std::vector<double> entries;
  for (const auto& e : j.at("entries")) entries.push_back(CircleGroup::wrap(e.get<double>()));
  return GroupSequence<CircleGroup>::table(g, std::move(entries));
}

inline GroupSequence<UnitaryGroup> unitary_sequence_from_json(const UnitaryGroup& g,
                                                              const Json& j) {
  std::string form = j.at("form").get<std::string>();
  std::vector<CMat> entries;
  for (const auto& e : j.at("entries")) entries.push_back(cmat_from_json(e));
  if (form == "sign") {
    if (entries.size() != 1) throw ParseError("sign sequence needs exactly one entry");
    return GroupSequence<UnitaryGroup>::sign_form(g, std::move(entries[0]));
  }
  return GroupSequence<UnitaryGroup>::table(g, std::move(entries));
}

// --- twisted payloads ------------------------------------------------------
// rep:   {"dim": d, "generators": {"s": matrix, ...}}
// sigma: {"dim": d, "generators": {"s": [vector per k = 1..K, ...], ...}}
//        vectors are lists of [re, im].

inline UnitaryRep rep_from_json(const Json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::map<std::string, CMat> images;
  for (const auto& [gen, mat] : j.at("generators").items())
    images.emplace(gen, cmat_from_json(mat));
  return UnitaryRep(dim, std::move(images));
}

inline TwistedSequence twisted_sequence_from_json(const Json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::map<std::string, std::vector<CVec>> tables;
  for (const auto& [gen, vecs] : j.at("generators").items()) {
    std::vector<CVec> table;
    for (const auto& vec : vecs) {
      CVec v;
      for (const auto& entry : vec) v.push_back(cplx_from_json(entry));
      table.push_back(std::move(v));
    }
    tables.emplace(gen, std::move(table));
  }
  return TwistedSequence(dim, std::move(tables));
}

}  // namespace qm
