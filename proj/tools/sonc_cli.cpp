// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).
//
// Command-line surface for the SONC certification toolkit.
//
// Exit codes: 0 positive verdict, 3 negative verdict, 4 inconclusive,
// 1 usage/input error, 2 internal error. Reports are JSON on stdout; human
// summaries go to stderr at -v.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sonc/errors.hpp"
#include "sonc/mediated.hpp"
#include "sonc/samesupport.hpp"
#include "sonc/soncrep.hpp"
#include "sonc/sosb.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitPositive = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitNegative = 3;
constexpr int kExitInconclusive = 4;

struct Options {
  double tol = 1e-8;
  bool exact = false;
  std::string out;
  int verbosity = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inputs are either a file path or inline text; .json files and inline JSON
// use the JSON schema, everything else the text grammar.
std::string load_input(const std::string& arg, bool& is_json) {
  std::string text = arg;
  bool from_json_file = false;
  if (std::filesystem::exists(arg) && std::filesystem::is_regular_file(arg)) {
    text = slurp(arg);
    from_json_file = arg.size() > 5 && arg.substr(arg.size() - 5) == ".json";
  }
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  is_json = from_json_file || (i < text.size() && (text[i] == '{' || text[i] == '['));
  return text;
}

sonc::SparsePolynomial load_polynomial(const std::string& arg, int nvars) {
  bool is_json = false;
  const std::string text = load_input(arg, is_json);
  if (is_json) return sonc::polynomial_from_json(text);
  return sonc::parse_polynomial(text, nvars);
}

void emit(const Options& opts, const ordered_json& report, const std::string& summary) {
  const std::string text = report.dump();
  std::cout << text << "\n";
  if (!opts.out.empty()) {
    std::ofstream out(opts.out, std::ios::binary);
    out << text << "\n";
  }
  if (opts.verbosity > 0) std::cerr << summary << "\n";
}

ordered_json points_json(const std::vector<sonc::Exponent>& pts) {
  ordered_json arr = ordered_json::array();
  for (const sonc::Exponent& p : pts) arr.push_back(p.entries());
  return arr;
}

int run_decide(const Options& opts, const std::string& input, int nvars) {
  const sonc::SparsePolynomial f = load_polynomial(input, nvars);
  sonc::DecideResult result = sonc::decide_sonc(f, opts.tol);
  if (opts.exact && result.kind == sonc::DecideResult::Kind::Sonc &&
      result.certificate && !result.certificate->exact) {
    result.kind = sonc::DecideResult::Kind::Inconclusive;
    result.reason = "certificate could not be rationalized exactly";
  }
  const ordered_json report = ordered_json::parse(sonc::decide_report_json(result));
  emit(opts, report, "decide: " + std::string(report["status"]) + " (" + result.reason + ")");
  switch (result.kind) {
    case sonc::DecideResult::Kind::Sonc: return kExitPositive;
    case sonc::DecideResult::Kind::NotSonc: return kExitNegative;
    case sonc::DecideResult::Kind::Inconclusive: return kExitInconclusive;
  }
  return kExitInternal;
}

int run_circuit(const Options& opts, const std::string& input, int nvars) {
  const sonc::SparsePolynomial f = load_polynomial(input, nvars);
  const sonc::ClassifyResult cls = sonc::classify_circuit(f);
  ordered_json report;
  if (cls.kind == sonc::ClassifyResult::Kind::NotCircuit) {
    report["classification"] = "not_a_circuit";
    report["reason"] = cls.reason;
    emit(opts, report, "circuit: not a circuit (" + cls.reason + ")");
    return kExitNegative;
  }
  if (cls.kind == sonc::ClassifyResult::Kind::MonomialSquares) {
    report["classification"] = "monomial_squares";
    report["verdict"] = "yes";
    emit(opts, report, "circuit: sum of monomial squares");
    return kExitPositive;
  }
  const sonc::CircuitPolynomial& c = *cls.circuit;
  const sonc::CircuitNumber theta = sonc::circuit_number(c);
  const sonc::CircuitVerdict verdict = sonc::is_nonnegative_circuit(c);
  report["classification"] = "circuit";
  report["vertices"] = points_json(c.trellis.vertices);
  ordered_json coeffs = ordered_json::array();
  for (const sonc::Rational& q : c.coeffs) coeffs.push_back(sonc::to_string(q));
  report["coeffs"] = coeffs;
  report["beta"] = c.beta.entries();
  report["d"] = sonc::to_string(c.d);
  ordered_json lambdas = ordered_json::array();
  for (const sonc::Rational& q : c.lambdas.weights) lambdas.push_back(sonc::to_string(q));
  report["lambdas"] = lambdas;
  report["theta"] = theta.to_string();
  report["theta_exact"] = theta.exact;
  report["verdict"] = sonc::to_string(verdict);
  emit(opts, report,
       std::string("circuit: theta = ") + theta.to_string() + ", verdict " +
           sonc::to_string(verdict));
  return verdict == sonc::CircuitVerdict::No ? kExitNegative : kExitPositive;
}

int run_covers(const Options& opts, const std::string& input, int nvars) {
  const sonc::SparsePolynomial f = load_polynomial(input, nvars);
  const sonc::SupportPartition part = sonc::support_partition(f);
  std::vector<sonc::Exponent> lambda_pts;
  for (const auto& [e, c] : part.lambda) lambda_pts.push_back(e);
  ordered_json report;
  report["covers"] = ordered_json::array();
  for (const auto& [beta, d] : part.gamma_d) {
    const sonc::CoverSet cover = sonc::enumerate_covers(lambda_pts, beta);
    ordered_json cj;
    cj["beta"] = beta.entries();
    cj["d"] = sonc::to_string(d);
    cj["simplices"] = ordered_json::array();
    for (const auto& [simplex, bary] : cover.simplices) {
      ordered_json sj;
      sj["vertices"] = points_json(simplex.vertices);
      ordered_json lam = ordered_json::array();
      for (const sonc::Rational& q : bary.weights) lam.push_back(sonc::to_string(q));
      sj["lambdas"] = lam;
      cj["simplices"].push_back(sj);
    }
    report["covers"].push_back(cj);
  }
  emit(opts, report,
       "covers: " + std::to_string(report["covers"].size()) + " gamma points");
  return kExitPositive;
}

sonc::Simplex trellis_from_arg(const std::string& arg) {
  bool is_json = false;
  const std::string text = load_input(arg, is_json);
  const nlohmann::json j = nlohmann::json::parse(text);
  const nlohmann::json& arr = j.is_array() ? j : j.at("trellis");
  std::vector<sonc::Exponent> verts;
  for (const auto& v : arr) verts.emplace_back(v.get<std::vector<int>>());
  return sonc::Simplex::make(std::move(verts));
}

int run_mediated(const Options& opts, const std::string& input, const std::string& contains) {
  const sonc::Simplex trellis = trellis_from_arg(input);
  const sonc::MediatedSet ms = sonc::maximal_mediated_set(trellis);
  const bool h = sonc::is_h_trellis(trellis);
  ordered_json report;
  report["trellis"] = points_json(trellis.vertices);
  report["maximal_mediated_set"] = points_json(ms.points.points);
  report["h_trellis"] = h;
  bool verdict = h;
  if (!contains.empty()) {
    const nlohmann::json j = nlohmann::json::parse(contains);
    const sonc::Exponent p(j.get<std::vector<int>>());
    verdict = ms.points.contains(p);
    report["contains"] = verdict;
  }
  emit(opts, report,
       std::string("mediated: |A*| = ") + std::to_string(ms.points.size()) +
           (h ? ", H-trellis" : ", not an H-trellis"));
  return verdict ? kExitPositive : kExitNegative;
}

ordered_json squares_json(const sonc::SosbDecomposition& dec) {
  ordered_json report;
  report["squares"] = ordered_json::array();
  for (const sonc::BinomialSquare& s : dec.squares) {
    ordered_json sj;
    sj["a"] = s.a_string();
    sj["u"] = s.u().entries();
    sj["b"] = s.b_string();
    sj["v"] = s.v().entries();
    report["squares"].push_back(sj);
  }
  report["monomial_squares"] = ordered_json::array();
  for (const sonc::MonomialSquare& m : dec.monomials) {
    ordered_json mj;
    mj["coef"] = sonc::to_string(m.c);
    mj["exp"] = m.w.entries();
    report["monomial_squares"].push_back(mj);
  }
  return report;
}

int run_sosb(const Options& opts, const std::string& input, int nvars, int scale) {
  const sonc::SparsePolynomial f = load_polynomial(input, nvars);
  const sonc::ClassifyResult cls = sonc::classify_circuit(f);
  if (cls.kind == sonc::ClassifyResult::Kind::NotCircuit) {
    ordered_json err;
    err["error"] = "not a circuit polynomial: " + cls.reason;
    std::cerr << err.dump() << "\n";
    return kExitUsage;
  }
  ordered_json report;
  if (cls.kind == sonc::ClassifyResult::Kind::MonomialSquares) {
    sonc::SosbDecomposition dec;
    for (const auto& [e, c] : f.terms()) dec.monomials.push_back({c, e});
    report = squares_json(dec);
    report["scale"] = 1;
    emit(opts, report, "sosb: already a sum of monomial squares");
    return kExitPositive;
  }
  const sonc::CircuitPolynomial& c = *cls.circuit;
  try {
    sonc::SosbDecomposition dec;
    if (scale > 1) {
      dec = sonc::sonc_to_sosb({c}, scale);
    } else {
      const sonc::MediatedSet ms = sonc::maximal_mediated_set(c.trellis);
      dec = sonc::circuit_to_sosb(c, ms);
    }
    report = squares_json(dec);
    report["scale"] = scale > 1 ? scale : 1;
    emit(opts, report,
         "sosb: " + std::to_string(report["squares"].size()) + " squares");
    return kExitPositive;
  } catch (const sonc::NoMediatedWitnessError& ex) {
    ordered_json err;
    err["error"] = ex.what();
    err["hint"] = "retry with --scale " + std::to_string(std::max(f.nvars(), 2));
    std::cerr << err.dump() << "\n";
    return kExitNegative;
  }
}

int run_transform(const Options& opts, const std::string& input) {
  bool is_json = false;
  const std::string text = load_input(input, is_json);
  const std::vector<sonc::CircuitPolynomial> circuits =
      sonc::circuit_list_from_json(text);
  sonc::DecideResult result;
  result.kind = sonc::DecideResult::Kind::Sonc;
  result.reason = "same-support transform";
  result.certificate = sonc::same_support_transform(circuits, opts.tol);
  const ordered_json report = ordered_json::parse(sonc::decide_report_json(result));
  emit(opts, report,
       "transform: " + std::to_string(report["circuits"].size()) + " circuits, exact=" +
           (result.certificate->exact ? "true" : "false"));
  return kExitPositive;
}

int run_verify(const Options& opts, const std::string& cert_arg, const std::string& poly_arg,
               int nvars) {
  bool is_json = false;
  const sonc::SONCCertificate cert =
      sonc::certificate_from_json(load_input(cert_arg, is_json));
  const sonc::SparsePolynomial f = load_polynomial(poly_arg, nvars);
  sonc::SparsePolynomial residual(f.nvars());
  const bool ok = sonc::verify_certificate(cert, f, &residual);
  ordered_json report;
  report["verified"] = ok;
  double norm = 0;
  for (const auto& [e, c] : residual.terms()) norm += std::fabs(sonc::to_double(c));
  report["residual_norm"] = norm;
  report["residual"] = residual.to_text();
  emit(opts, report, ok ? "verify: certificate reproduces the polynomial exactly"
                        : "verify: MISMATCH, residual " + residual.to_text());
  return ok ? kExitPositive : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SONC nonnegativity certification toolkit"};
  app.require_subcommand(1);

  Options opts;
  app.add_option("--tol", opts.tol, "solver feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--exact", opts.exact, "demand exactly rationalized certificates");
  app.add_option("--out", opts.out, "also write the report to this path");
  app.add_flag("-v", opts.verbosity, "human-readable summary on stderr");

  std::string input, contains, poly;
  int nvars = 0;
  int scale = 0;

  CLI::App* decide = app.add_subcommand("decide", "decide SONC membership");
  decide->add_option("input", input, "polynomial (text, JSON, or file)")->required();
  decide->add_option("--nvars", nvars, "variable count (inferred when omitted)");

  CLI::App* circuit = app.add_subcommand("circuit", "classify a circuit, report theta");
  circuit->add_option("input", input)->required();
  circuit->add_option("--nvars", nvars);

  CLI::App* covers = app.add_subcommand("covers", "enumerate covering simplices");
  covers->add_option("input", input)->required();
  covers->add_option("--nvars", nvars);

  CLI::App* mediated = app.add_subcommand("mediated", "maximal mediated set of a trellis");
  mediated->add_option("input", input, "trellis JSON, e.g. [[0,0],[4,2],[2,4]]")->required();
  mediated->add_option("--contains", contains, "check that a point lies in A*");

  CLI::App* sosb = app.add_subcommand("sosb", "binomial-square decomposition of a circuit");
  sosb->add_option("input", input)->required();
  sosb->add_option("--nvars", nvars);
  sosb->add_option("--scale", scale, "apply x -> x^k before decomposing");

  CLI::App* transform = app.add_subcommand("transform", "same-support transform of a decomposition");
  transform->add_option("input", input, "JSON list of circuits")->required();

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate against a polynomial");
  verify->add_option("certificate", input)->required();
  verify->add_option("polynomial", poly)->required();
  verify->add_option("--nvars", nvars);

  CLI11_PARSE(app, argc, argv);

  try {
    if (decide->parsed()) return run_decide(opts, input, nvars);
    if (circuit->parsed()) return run_circuit(opts, input, nvars);
    if (covers->parsed()) return run_covers(opts, input, nvars);
    if (mediated->parsed()) return run_mediated(opts, input, contains);
    if (sosb->parsed()) return run_sosb(opts, input, nvars, scale);
    if (transform->parsed()) return run_transform(opts, input);
    if (verify->parsed()) return run_verify(opts, input, poly, nvars);
  } catch (const sonc::ParseError& ex) {
    std::cerr << ordered_json{{"error", ex.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const sonc::ZeroPolynomialError& ex) {
    std::cerr << ordered_json{{"error", ex.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const sonc::DeskScaleLimitError& ex) {
    std::cerr << ordered_json{{"error", ex.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << ordered_json{{"error", ex.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << ordered_json{{"error", std::string("bad JSON input: ") + ex.what()}}.dump()
              << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << ordered_json{{"error", ex.what()}}.dump() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
