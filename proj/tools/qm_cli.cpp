// Command-line front end: evaluation, defect/homogenization/norm
// certificates, free products and the modular group, metric targets, twisted
// coefficients, and the whole property suite. Exit codes: 0 success,
// 1 verification failure, 2 configuration error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qm/free_products.hpp"
#include "qm/io.hpp"
#include "qm/metric_targets.hpp"
#include "qm/qm_core.hpp"
#include "qm/report.hpp"
#include "qm/selfcheck.hpp"
#include "qm/twisted.hpp"

namespace {

using qm::Json;

struct Budget {
  long max_exp;
  long max_len;
};

Budget parse_budget(const std::string& text, Budget fallback) {
  if (text.empty()) return fallback;
  long k = 0, l = 0;
  if (std::sscanf(text.c_str(), "K=%ld,L=%ld", &k, &l) != 2 || k < 1 || l < 1)
    throw qm::ConfigError("bad budget '" + text + "' (expected K=<int>,L=<int>)");
  return Budget{k, l};
}

qm::Alphabet parse_alphabet(const std::string& csv) {
  std::vector<std::string> names;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) names.push_back(item);
  return qm::Alphabet(names);
}

struct Output {
  std::string format = "human";
  std::uint64_t seed = qm::kDefaultSeed;

  // principal: the one value a human caller is after; other formats get the
  // whole report.
  void emit(const Json& report, const char* principal = nullptr) const {
    qm::ReportFormat fmt = qm::report_format_from_string(format);
    if (fmt == qm::ReportFormat::human && principal != nullptr) {
      const Json& v = report.at(principal);
      std::cout << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      return;
    }
    std::cout << qm::render_report(report, fmt);
  }

  Json header(const std::string& command) const {
    Json j;
    j["command"] = command;
    j["seed"] = seed;
    return j;
  }
};

qm::FreeQM shared_qm(const std::string& sigma_path, const qm::Alphabet& alphabet) {
  return qm::FreeQM::with_shared_sequence(alphabet, qm::load_sequence(sigma_path));
}

int cmd_eval(const Output& out, const std::string& sigma_path, const std::string& word_text,
             const std::string& alphabet_csv) {
  qm::Alphabet alphabet = parse_alphabet(alphabet_csv);
  qm::FreeQM g = shared_qm(sigma_path, alphabet);
  qm::Word x = qm::parse_word(word_text, alphabet);
  Json j = out.header("eval");
  j["word"] = x.str();
  j["syllables"] = qm::word_to_json(x);
  j["value"] = g.eval(x).str();
  out.emit(j, "value");
  return 0;
}

int cmd_defect(const Output& out, const std::string& sigma_path, const Budget& budget,
               const std::string& alphabet_csv) {
  qm::Alphabet alphabet = parse_alphabet(alphabet_csv);
  qm::FreeQM g = shared_qm(sigma_path, alphabet);
  qm::DefectCertificate cert = qm::defect_bruteforce(g, budget.max_exp, budget.max_len, out.seed);
  bool coverage = cert.coverage_met(g.max_window());
  Json j = out.header("defect");
  j.update(qm::to_json(cert));
  j["coverage_met"] = coverage;
  out.emit(j);
  return coverage && !cert.agrees() ? 1 : 0;
}

int cmd_homogenize(const Output& out, const std::string& sigma_path, const std::string& word_text,
                   long long n, const std::string& alphabet_csv) {
  qm::Alphabet alphabet = parse_alphabet(alphabet_csv);
  qm::FreeQM g = shared_qm(sigma_path, alphabet);
  qm::Word x = qm::parse_word(word_text, alphabet);
  qm::Rational closed = qm::homogenize_closed_form(g, x);
  auto [estimate, bound] = qm::homogenize_limit(g, x, n);
  bool agrees = (closed - estimate).abs() <= bound;
  Json j = out.header("homogenize");
  j["word"] = x.str();
  j["closed_form"] = closed.str();
  j["n"] = n;
  j["limit_estimate"] = estimate.str();
  j["error_bound"] = bound.str();
  j["limit_agrees"] = agrees;
  out.emit(j, "closed_form");
  return agrees ? 0 : 1;
}

int cmd_gromov(const Output& out, const std::string& sigma_path, long long k, long long l,
               const std::string& alphabet_csv) {
  qm::Alphabet alphabet = parse_alphabet(alphabet_csv);
  if (alphabet.size() < 2) throw qm::ConfigError("need at least two generators");
  qm::FreeQM g = shared_qm(sigma_path, alphabet);
  const qm::Generator& s = alphabet.generators()[0];
  const qm::Generator& t = alphabet.generators()[1];
  qm::GromovNormReport report;
  if (k != 0 || l != 0) {
    report = qm::gromov_witness(g, s, t, k, l);
  } else {
    report = qm::gromov_witness_at_argmax(g, s, t);
  }
  Json j = out.header("gromov");
  j.update(qm::to_json(report));
  out.emit(j, "norm");
  return report.conclusion.has_value() ? 0 : 1;
}

int cmd_witness(const Output& out, const std::string& sigma_path, long long l, long long k,
                const std::string& alphabet_csv) {
  qm::Alphabet alphabet = parse_alphabet(alphabet_csv);
  if (alphabet.size() < 2) throw qm::ConfigError("need at least two generators");
  qm::FreeQM g = shared_qm(sigma_path, alphabet);
  qm::Rational value =
      qm::injectivity_witness(g, alphabet.generators()[0], alphabet.generators()[1], l, k);
  Json j = out.header("witness");
  j["l"] = l;
  j["k"] = k;
  j["value"] = value.str();
  out.emit(j, "value");
  return 0;
}

int cmd_fp_eval(const Output& out, const std::string& sigma_path, const std::string& word_text) {
  qm::FreeProductSetup setup = qm::load_free_product(sigma_path);
  qm::FPWord x = qm::fp_parse(setup.family, word_text);
  Json j = out.header("fp eval");
  j["word"] = x.str();
  j["value"] = qm::fp_eval(setup.sigma, x).str();
  out.emit(j, "value");
  return 0;
}

int cmd_fp_dim(const Output& out, const std::string& sigma_path, long cyclic_order) {
  Json j = out.header("fp dim");
  if (cyclic_order > 0) {
    auto d = qm::odd_map_dimension(qm::FactorGroup::cyclic("G", cyclic_order));
    j["order"] = cyclic_order;
    j["dim"] = *d;
    out.emit(j, "dim");
    return 0;
  }
  if (sigma_path.empty()) throw qm::ConfigError("fp dim needs --sigma or --cyclic");
  qm::FreeProductSetup setup = qm::load_free_product(sigma_path);
  Json factors = Json::array();
  for (const auto& g : setup.family.factors()) {
    Json f;
    f["id"] = g.id();
    auto d = qm::odd_map_dimension(g);
    if (d) f["dim"] = *d;
    else f["dim"] = "infinite";
    factors.push_back(std::move(f));
  }
  j["factors"] = std::move(factors);
  auto total = qm::v0_dimension(setup.family);
  if (total) j["v0_dim"] = *total;
  else j["v0_dim"] = "infinite";
  out.emit(j, "v0_dim");
  return 0;
}

int cmd_psl2_parse(const Output& out, const std::string& matrix_text) {
  qm::Mat2 m = qm::mat2_from_text(matrix_text);
  qm::FPWord w = qm::psl2_parse(m);
  Json j = out.header("psl2 parse");
  j["matrix"] = qm::mat2_to_json(m);
  j["word"] = w.str();
  j["product"] = qm::mat2_to_json(qm::psl2_matrix(w));
  out.emit(j, "word");
  return 0;
}

int cmd_psl2_eval(const Output& out, const std::string& sigma_path,
                  const std::string& matrix_text) {
  qm::FreeProductSetup setup = qm::load_free_product(sigma_path);
  if (setup.family.at("A").order() != 2 || setup.family.at("B").order() != 3)
    throw qm::ConfigError("psl2 eval needs factors A of order 2 and B of order 3");
  qm::Mat2 m = qm::mat2_from_text(matrix_text);
  qm::FPWord w = qm::psl2_parse(m);
  Json j = out.header("psl2 eval");
  j["matrix"] = qm::mat2_to_json(m);
  j["word"] = w.str();
  j["value"] = qm::fp_eval(setup.sigma, w).str();
  out.emit(j, "value");
  return 0;
}

template <qm::MetricGroupLike G>
int epsrep_run(const Output& out, const G& group, const qm::GroupSequence<G>& sigma, double eps,
               const Budget& budget, long probe_iters) {
  const qm::Alphabet alphabet{"s", "t"};
  qm::EpsRepReport scan =
      qm::eps_defect_bruteforce(group, sigma, alphabet, budget.max_exp, budget.max_len);
  qm::NontrivialityReport nt = qm::nontriviality_check(group, sigma, eps, probe_iters);
  Json j = out.header("epsrep check");
  j["group"] = G::name();
  j["eps"] = eps;
  j["budget"] = "K=" + std::to_string(budget.max_exp) + ",L=" + std::to_string(budget.max_len);
  j["defect_scan"] = qm::to_json(scan);
  j["nontriviality"] = qm::to_json(nt);
  out.emit(j);
  return 0;
}

int cmd_epsrep(const Output& out, const std::string& group_name, const std::string& sigma_path,
               double eps, const std::string& budget_text, long probe_iters) {
  Budget budget = parse_budget(budget_text, Budget{2, 3});
  Json sigma_json = qm::load_json_file(sigma_path);
  if (group_name == "reals") {
    qm::RealLine g;
    auto sigma = qm::real_sequence_from_json(g, sigma_json);
    return epsrep_run(out, g, sigma, eps > 0 ? eps : g.nss_epsilon(), budget, probe_iters);
  }
  if (group_name == "u1") {
    qm::CircleGroup g;
    auto sigma = qm::circle_sequence_from_json(g, sigma_json);
    return epsrep_run(out, g, sigma, eps > 0 ? eps : g.nss_epsilon(), budget, probe_iters);
  }
  if (group_name.size() == 2 && group_name[0] == 'u' && group_name[1] >= '2' &&
      group_name[1] <= '9') {
    qm::UnitaryGroup g(static_cast<std::size_t>(group_name[1] - '0'));
    auto sigma = qm::unitary_sequence_from_json(g, sigma_json);
    return epsrep_run(out, g, sigma, eps > 0 ? eps : g.nss_epsilon(), budget, probe_iters);
  }
  throw qm::ConfigError("unknown group '" + group_name + "' (expected reals, u1, or u2..u9)");
}

int cmd_twisted(const Output& out, const std::string& rep_path, const std::string& sigma_path,
                const std::string& budget_text, long n_reps) {
  Budget budget = parse_budget(budget_text, Budget{2, 3});
  const qm::Alphabet alphabet{"s", "t"};
  std::vector<qm::Word> pool = qm::enumerate_words(alphabet, budget.max_exp, budget.max_len);

  struct Case {
    qm::UnitaryRep rep;
    qm::TwistedSequence sigma;
  };
  std::vector<Case> cases;
  if (rep_path.empty() != sigma_path.empty())
    throw qm::ConfigError("twisted check needs --rep and --sigma together");
  if (!rep_path.empty()) {
    cases.push_back(Case{qm::rep_from_json(qm::load_json_file(rep_path)),
                         qm::twisted_sequence_from_json(qm::load_json_file(sigma_path))});
  } else {
    std::mt19937_64 rng(out.seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (long i = 0; i < n_reps; ++i) {
      qm::UnitaryRep rep(
          2, {{"s", qm::random_unitary(rng, 2)}, {"t", qm::random_unitary(rng, 2)}});
      std::map<std::string, std::vector<qm::CVec>> tables;
      for (const char* gen : {"s", "t"}) {
        std::vector<qm::CVec> vecs;
        for (int k = 0; k < 2; ++k) {
          qm::CVec v(2);
          for (auto& z : v) z = qm::cplx(coord(rng), coord(rng));
          vecs.push_back(std::move(v));
        }
        tables[gen] = std::move(vecs);
      }
      cases.push_back(Case{std::move(rep), qm::TwistedSequence(2, std::move(tables))});
    }
  }

  Json results = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [rep, sigma] = cases[i];
    double oddness = qm::twisted_oddness_defect(rep, sigma);
    double bound = 3 * sigma.sup_norm();
    double observed = 0;
    for (const qm::Word& x : pool)
      for (const qm::Word& y : pool)
        observed = std::max(observed, qm::vec_norm(qm::twisted_coboundary(rep, sigma, x, y)));
    bool ok = oddness <= 1e-9 && observed <= bound + 1e-9;
    all_ok = all_ok && ok;
    Json r;
    r["case"] = i;
    r["dim"] = rep.dim();
    r["oddness_defect"] = oddness;
    r["bound"] = bound;
    r["observed_max"] = observed;
    r["ok"] = ok;
    results.push_back(std::move(r));
  }
  Json j = out.header("twisted check");
  j["budget"] = "K=" + std::to_string(budget.max_exp) + ",L=" + std::to_string(budget.max_len);
  j["cases"] = std::move(results);
  j["ok"] = all_ok;
  out.emit(j);
  return all_ok ? 0 : 1;
}

int cmd_suite(const Output& out, const std::string& budget_text) {
  Budget budget = parse_budget(budget_text, Budget{3, 4});
  qm::SuiteBudget sb;
  sb.max_exp = budget.max_exp;
  sb.max_len = budget.max_len;
  sb.seed = out.seed;
  std::vector<qm::CheckResult> results = qm::run_all_checks(sb);

  bool all_ok = true;
  Json rows = Json::array();
  for (const auto& r : results) {
    all_ok = all_ok && r.passed;
    Json row;
    row["suite"] = r.suite;
    row["check"] = r.name;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    rows.push_back(std::move(row));
  }
  Json j = out.header("suite");
  j["budget"] = "K=" + std::to_string(budget.max_exp) + ",L=" + std::to_string(budget.max_len);
  j["checks"] = std::move(rows);
  j["passed"] = all_ok;

  if (qm::report_format_from_string(out.format) == qm::ReportFormat::human) {
    for (const auto& r : results)
      std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << ": " << r.name
                << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
    std::cout << (all_ok ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  } else {
    out.emit(j);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-morphisms on free groups: construction and certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_option("--format", out.format, "output format: json|csv|human")->default_val("human");
  app.add_option("--seed", out.seed, "seed for all randomized sampling")
      ->default_val(qm::kDefaultSeed);

  std::string sigma_path, word_text, alphabet_csv = "s,t", budget_text, matrix_text;
  std::string group_name = "u1", rep_path;
  long long n_steps = 1024, wk = 0, wl = 0, gk = 0, gl = 0;
  long cyclic_order = 0, probe_iters = 256, n_reps = 5;
  double eps = 0;

  auto* eval = app.add_subcommand("eval", "evaluate g_sigma on a word");
  eval->add_option("--sigma", sigma_path, "sequence JSON file")->required();
  eval->add_option("--word", word_text, "word in the grammar, e.g. \"s^3 t^-2 s\"");
  eval->add_option("--alphabet", alphabet_csv, "comma-separated generators");

  auto* defect = app.add_subcommand("defect", "exact defect vs. brute-force certificate");
  defect->add_option("--sigma", sigma_path)->required();
  defect->add_option("--budget", budget_text, "enumeration budget K=<int>,L=<int>");
  defect->add_option("--alphabet", alphabet_csv);

  auto* homogenize = app.add_subcommand("homogenize", "closed form vs. limit estimate");
  homogenize->add_option("--sigma", sigma_path)->required();
  homogenize->add_option("--word", word_text);
  homogenize->add_option("--n", n_steps, "limit step");
  homogenize->add_option("--alphabet", alphabet_csv);

  auto* gromov = app.add_subcommand("gromov", "norm certificate for the induced class");
  gromov->add_option("--sigma", sigma_path)->required();
  gromov->add_option("--k", gk, "override witness k (default: defect argmax)");
  gromov->add_option("--l", gl, "override witness l");
  gromov->add_option("--alphabet", alphabet_csv);

  auto* witness = app.add_subcommand("witness", "evaluate the unboundedness witness");
  witness->add_option("--sigma", sigma_path)->required();
  witness->add_option("--l", wl)->required();
  witness->add_option("--k", wk)->required();
  witness->add_option("--alphabet", alphabet_csv);

  auto* fp = app.add_subcommand("fp", "free products");
  fp->require_subcommand(1);
  auto* fp_eval = fp->add_subcommand("eval", "evaluate on a free-product word");
  fp_eval->add_option("--sigma", sigma_path, "free-product JSON file")->required();
  fp_eval->add_option("--word", word_text, "word in factor:element tokens");
  auto* fp_dim = fp->add_subcommand("dim", "dimensions of the odd-map spaces");
  fp_dim->add_option("--sigma", sigma_path);
  fp_dim->add_option("--cyclic", cyclic_order, "order of a single cyclic factor");

  auto* psl2 = app.add_subcommand("psl2", "the modular group as Z2 * Z3");
  psl2->require_subcommand(1);
  auto* psl2_parse = psl2->add_subcommand("parse", "decompose a matrix into generators");
  psl2_parse->add_option("--matrix", matrix_text, "[[a,b],[c,d]]")->required();
  auto* psl2_eval = psl2->add_subcommand("eval", "evaluate the quasi-morphism on a matrix");
  psl2_eval->add_option("--sigma", sigma_path)->required();
  psl2_eval->add_option("--matrix", matrix_text)->required();

  auto* epsrep = app.add_subcommand("epsrep", "quasi-morphisms into metric groups");
  epsrep->require_subcommand(1);
  auto* epsrep_check = epsrep->add_subcommand("check", "bound scan and non-triviality");
  epsrep_check->add_option("--group", group_name, "reals | u1 | u2..u9");
  epsrep_check->add_option("--sigma", sigma_path, "group sequence JSON file")->required();
  epsrep_check->add_option("--eps", eps, "no-small-subgroup constant (default per group)");
  epsrep_check->add_option("--budget", budget_text);
  epsrep_check->add_option("--probe-iters", probe_iters);

  auto* twisted = app.add_subcommand("twisted", "unitary coefficients");
  twisted->require_subcommand(1);
  auto* twisted_check = twisted->add_subcommand("check", "oddness and coboundary bound");
  twisted_check->add_option("--rep", rep_path, "representation JSON file");
  twisted_check->add_option("--sigma", sigma_path, "twisted sequence JSON file");
  twisted_check->add_option("--budget", budget_text);
  twisted_check->add_option("--reps", n_reps, "number of seeded random representations");

  auto* suite = app.add_subcommand("suite", "run every module property suite");
  suite->add_option("--budget", budget_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(out, sigma_path, word_text, alphabet_csv);
    if (defect->parsed())
      return cmd_defect(out, sigma_path, parse_budget(budget_text, Budget{3, 4}), alphabet_csv);
    if (homogenize->parsed())
      return cmd_homogenize(out, sigma_path, word_text, n_steps, alphabet_csv);
    if (gromov->parsed()) return cmd_gromov(out, sigma_path, gk, gl, alphabet_csv);
    if (witness->parsed()) return cmd_witness(out, sigma_path, wl, wk, alphabet_csv);
    if (fp_eval->parsed()) return cmd_fp_eval(out, sigma_path, word_text);
    if (fp_dim->parsed()) return cmd_fp_dim(out, sigma_path, cyclic_order);
    if (psl2_parse->parsed()) return cmd_psl2_parse(out, matrix_text);
    if (psl2_eval->parsed()) return cmd_psl2_eval(out, sigma_path, matrix_text);
    if (epsrep_check->parsed())
      return cmd_epsrep(out, group_name, sigma_path, eps, budget_text, probe_iters);
    if (twisted_check->parsed())
      return cmd_twisted(out, rep_path, sigma_path, budget_text, n_reps);
    if (suite->parsed()) return cmd_suite(out, budget_text);
  } catch (const qm::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const qm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
