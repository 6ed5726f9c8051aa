// Copyright 2026 The qsrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsrank/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <exception>

#include "CLI11.hpp"
#include "qsrank/asymptotics.h"
#include "qsrank/bradley_terry.h"
#include "qsrank/cli/input.h"
#include "qsrank/matrix_core.h"
#include "qsrank/quasi_symmetry.h"
#include "qsrank/rankings.h"
#include "qsrank/simd/kernels.h"

namespace qsrank::cli {
namespace {

constexpr char kVersion[] = "0.1.0";

constexpr char kDampedNote[] =
    "alpha < 1: the damped chain is not the influence-weight chain, so the "
    "quasi-symmetry correspondence with Bradley-Terry abilities does not apply";

std::vector<ScoreEntry> Entries(std::span<const double> scores,
                                const std::vector<std::string>& labels) {
  std::vector<ScoreEntry> out;
  out.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out.push_back({labels[i], scores[i], std::nullopt});
  }
  return out;
}

Json VectorToJson(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::string Describe(const Error& e) {
  std::string msg = std::string(ErrorKindName(e.kind())) + ": " + e.what();
  if (!e.labels().empty()) {
    msg += " [labels:";
    for (const auto& l : e.labels()) msg += " " + l;
    msg += "]";
  }
  return msg;
}

Json ErrorJson(const Error& e) {
  Json out = {{"kind", std::string(ErrorKindName(e.kind()))},
              {"message", e.what()}};
  if (!e.labels().empty()) out["labels"] = e.labels();
  return out;
}

std::size_t RequireCount(double k, const char* what) {
  if (!(k >= 1.0) || std::floor(k) != k) {
    throw Error(ErrorKind::kDomain,
                std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(k);
}

// Closed form where one exists, the numerical delta method otherwise.
std::pair<CovarianceMatrix, std::string> TargetCovariance(Structure structure,
                                                          std::size_t n,
                                                          double k) {
  if (structure == Structure::kRoundRobin) {
    return {RoundRobinCovariance(n, k), "closed_form"};
  }
  if (n >= kCircularClosedFormMinN) {
    return {CircularCovariance(n, k), "closed_form"};
  }
  return {NumericalDeltaCovariance(Circular(n, k)), "numerical_delta"};
}

CountMatrix StructureMatrix(Structure structure, std::size_t n, double k) {
  return structure == Structure::kRoundRobin ? RoundRobin(n, k) : Circular(n, k);
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConvergence:
    case ErrorKind::kConsistency:
    case ErrorKind::kDecomposition:
      return kExitNumerical;
    case ErrorKind::kNotQuasiSymmetric:
      return kExitNotQuasiSymmetric;
    default:
      return kExitInput;
  }
}

RunReport RankReport(const CountMatrix& c, const RankOptions& options) {
  RunReport report;
  report.metadata["tolerance"] = options.tol;
  const std::string& m = options.method;
  if (m == "pagerank") {
    const DampingFactor alpha(options.alpha);
    const RankingVector r = PageRank(c, alpha, options.tol);
    report.method = std::string(RankingMethodName(r.method));
    report.alpha = options.alpha;
    report.scores = Entries(r.scores, c.labels());
    report.diagnostics["quasi_symmetry_guarantee"] = r.quasi_symmetry_guarantee;
    if (!alpha.undamped()) report.diagnostics["note"] = kDampedNote;
  } else if (m == "iw") {
    RankingVector r;
    if (options.damped) {
      const DampingFactor alpha(options.alpha);
      r = DampedInfluenceWeight(c, alpha, options.tol);
      report.alpha = options.alpha;
      if (!alpha.undamped()) report.diagnostics["note"] = kDampedNote;
    } else {
      r = InfluenceWeight(c, options.tol);
    }
    report.method = std::string(RankingMethodName(r.method));
    report.scores = Entries(r.scores, c.labels());
    report.diagnostics["quasi_symmetry_guarantee"] = r.quasi_symmetry_guarantee;
  } else if (m == "total") {
    const RankingVector r = TotalInfluence(c, options.tol);
    report.method = std::string(RankingMethodName(r.method));
    report.scores = Entries(r.scores, c.labels());
  } else if (m == "ipp") {
    if (!options.articles) {
      throw Error(ErrorKind::kDomain, "method ipp needs --articles");
    }
    const RankingVector r = InfluencePerPublication(c, *options.articles, options.tol);
    report.method = std::string(RankingMethodName(r.method));
    report.scores = Entries(r.scores, c.labels());
  } else if (m == "bt") {
    FitOptions fit_options;
    fit_options.tol = options.tol;
    const FitReport fit = FitBradleyTerry(c, fit_options);
    report.method = "bradley_terry";
    report.scores = Entries(fit.abilities.mu, c.labels());
    for (std::size_t i = 0; i < report.scores.size(); ++i) {
      report.scores[i].stderr_value =
          std::sqrt(std::max(0.0, fit.covariance(i, i)));
    }
    report.diagnostics["deviance"] = fit.deviance;
    report.diagnostics["iterations"] = fit.iterations;
  } else {
    throw Error(ErrorKind::kParse, "unknown method '" + m +
                                       "' (expected pagerank, iw, total, ipp or bt)");
  }
  return report;
}

CheckQsResult CheckQsReport(const CountMatrix& c, double tol) {
  CheckQsResult result;
  RunReport& report = result.report;
  report.method = "check_qs";
  report.metadata["tolerance"] = tol;
  Json& diag = report.diagnostics;

  const TripletReport triplets = CheckTriplets(c, tol);
  Json one_sided = Json::array();
  for (const auto& [i, j] : triplets.one_sided_pairs) {
    one_sided.push_back({c.label(i), c.label(j)});
  }
  diag["triplets"] = {{"max_relative_gap", triplets.max_relative_gap},
                      {"violations", triplets.violations.size()},
                      {"one_sided_pairs", std::move(one_sided)},
                      {"quasi_symmetric", triplets.is_quasi_symmetric}};

  bool decomposed = false;
  try {
    const QsDecomposition qs = DecomposeQuasiSymmetric(c, tol);
    decomposed = true;
    diag["decomposition"] = {{"d", VectorToJson(qs.d)},
                             {"residual", qs.residual},
                             {"asymmetry", qs.asymmetry}};
    const double total = simd::Sum(qs.d);
    Vector normalized = qs.d;
    for (double& x : normalized) x /= total;
    report.scores = Entries(normalized, c.labels());
  } catch (const Error& e) {
    diag["decomposition"] = {{"error", ErrorJson(e)}};
  }

  if (decomposed) {
    try {
      const CorrespondenceCheck check = VerifyCorrespondence(c, tol);
      diag["correspondence"] = {{"eigen_residual", check.eigen_residual},
                         {"influence_gap", check.influence_gap},
                         {"ability_gap", check.ability_gap},
                         {"deviance", check.deviance},
                         {"holds", check.holds}};
    } catch (const Error& e) {
      diag["correspondence"] = {{"error", ErrorJson(e)}};
    }
  }

  try {
    const ReversibilityReport rev = IsReversible(c, tol);
    diag["reversibility"] = {{"reversible", rev.reversible},
                             {"max_gap", rev.max_gap},
                             {"worst_pair", {c.label(rev.worst_i), c.label(rev.worst_j)}}};
  } catch (const Error& e) {
    diag["reversibility"] = {{"error", ErrorJson(e)}};
  }

  if (!decomposed) {
    // Scores still name every label: undamped influence weight when the chain
    // is well defined, otherwise the labels with a zero placeholder.
    try {
      const RankingVector w = InfluenceWeight(c);
      report.scores = Entries(w.scores, c.labels());
      diag["scores"] = "influence_weight";
    } catch (const Error&) {
      report.scores = Entries(Vector(c.size(), 0.0), c.labels());
      diag["scores"] = "unavailable";
    }
  } else {
    diag["scores"] = "normalized_d";
  }

  result.quasi_symmetric = triplets.is_quasi_symmetric && decomposed;
  diag["quasi_symmetric"] = result.quasi_symmetric;
  return result;
}

AsymptoticsResult AsymptoticsReport(const AsymptoticsOptions& options) {
  AsymptoticsResult result;
  RunReport& report = result.report;
  const std::size_t n = options.n;
  const double k = options.k;
  const CountMatrix c = StructureMatrix(options.structure, n, k);

  CovarianceMatrix cov;
  std::string source;
  if (options.numerical) {
    cov = NumericalDeltaCovariance(c);
    source = "numerical_delta";
  } else if (options.structure == Structure::kRoundRobin) {
    cov = RoundRobinCovariance(n, k);
    source = "closed_form";
  } else {
    cov = CircularCovariance(n, k);
    source = "closed_form";
  }
  report.method = "asymptotic_covariance";
  Vector diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = cov(i, i);
  report.scores = Entries(diag, c.labels());
  report.diagnostics["source"] = source;
  report.diagnostics["covariance"] = MatrixToJson(cov.entries);

  if (options.check) {
    const CovarianceMatrix delta = NumericalDeltaCovariance(c);
    const CovarianceMatrix bt = BradleyTerryCovariance(c, Vector(n, 0.0));
    const double closed_delta = MaxAbsDiff(cov.entries, delta.entries);
    const double closed_bt = MaxAbsDiff(cov.entries, bt.entries);
    const double delta_bt = MaxAbsDiff(delta.entries, bt.entries);
    result.passed = closed_delta < kCheckTolerance && closed_bt < kCheckTolerance &&
                    delta_bt < kCheckTolerance;
    report.diagnostics["check"] = {
        {"delta_method", MatrixToJson(delta.entries)},
        {"bradley_terry", MatrixToJson(bt.entries)},
        {"max_diff_reported_vs_delta", closed_delta},
        {"max_diff_reported_vs_bradley_terry", closed_bt},
        {"max_diff_delta_vs_bradley_terry", delta_bt},
        {"tolerance", kCheckTolerance},
        {"passed", result.passed}};
  }
  report.metadata["structure"] = std::string(StructureName(options.structure));
  report.metadata["n"] = n;
  report.metadata["k"] = k;
  return result;
}

RunReport SimulateReport(const SimulateOptions& options) {
  const std::size_t n = options.n;
  const std::size_t k = RequireCount(options.k, "k");
  StructureMatrix(options.structure, n, static_cast<double>(k));  // validates n

  SimulationConfig config;
  config.abilities.mu.assign(n, 0.0);
  config.abilities.labels = DefaultLabels(n);
  config.games_per_pair = 2 * k;
  config.replications = options.reps;
  config.seed = options.seed;
  config.threads = options.threads;
  const MonteCarloResult mc = MonteCarloCovariance(config, options.structure);
  const auto [target, source] =
      TargetCovariance(options.structure, n, static_cast<double>(k));

  DenseMatrix z(n, n);
  double max_abs_z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double se = mc.standard_errors(i, j);
      z(i, j) = se > 0.0 ? (mc.covariance(i, j) - target(i, j)) / se : 0.0;
      max_abs_z = std::max(max_abs_z, std::abs(z(i, j)));
    }
  }

  RunReport report;
  report.method = "monte_carlo_covariance";
  for (std::size_t i = 0; i < n; ++i) {
    report.scores.push_back(
        {config.abilities.labels[i], mc.covariance(i, i), mc.standard_errors(i, i)});
  }
  report.diagnostics["empirical_covariance"] = MatrixToJson(mc.covariance.entries);
  report.diagnostics["standard_errors"] = MatrixToJson(mc.standard_errors);
  report.diagnostics["target_covariance"] = MatrixToJson(target.entries);
  report.diagnostics["target_source"] = source;
  report.diagnostics["z_scores"] = MatrixToJson(z);
  report.diagnostics["max_abs_z"] = max_abs_z;
  report.diagnostics["replications"] = mc.replications;
  report.diagnostics["rejections"] = mc.rejections;
  report.metadata["structure"] = std::string(StructureName(options.structure));
  report.metadata["n"] = n;
  report.metadata["k"] = k;
  report.metadata["games_per_pair"] = config.games_per_pair;
  report.metadata["seed"] = options.seed;
  return report;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Paired-comparison rankings: PageRank family, Bradley-Terry, "
               "quasi-symmetry diagnostics and asymptotic covariances",
               "qsrank"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format_name = "table";
  std::string input_format_name = "auto";
  std::string input_path;

  // rank
  RankOptions rank;
  std::string articles_path;
  auto* rank_cmd = app.add_subcommand("rank", "Rank the items of a count matrix");
  rank_cmd->add_option("input", input_path, "CSV edge list or labeled matrix")
      ->required();
  rank_cmd->add_option("--method", rank.method, "pagerank, iw, total, ipp or bt")
      ->check(CLI::IsMember({"pagerank", "iw", "total", "ipp", "bt"}))
      ->capture_default_str();
  rank_cmd->add_option("--alpha", rank.alpha, "Damping factor in [0, 1]")
      ->capture_default_str();
  rank_cmd->add_option("--tol", rank.tol, "Convergence tolerance")
      ->capture_default_str();
  rank_cmd->add_option("--articles", articles_path,
                       "CSV label,articles (required for ipp)");
  rank_cmd->add_flag("--damped", rank.damped,
                     "iw: apply A^-1 to damped PageRank at --alpha");
  rank_cmd->add_option("--format", format_name, "table, json or csv")
      ->capture_default_str();
  rank_cmd->add_option("--input-format", input_format_name, "auto, edges or matrix")
      ->capture_default_str();

  // check-qs
  double qs_tol = kDefaultQsTolerance;
  auto* qs_cmd = app.add_subcommand(
      "check-qs", "Test quasi-symmetry; exit status 4 when it fails");
  qs_cmd->add_option("input", input_path, "CSV edge list or labeled matrix")
      ->required();
  qs_cmd->add_option("--tol", qs_tol, "Relative tolerance")->capture_default_str();
  qs_cmd->add_option("--format", format_name, "table, json or csv")
      ->capture_default_str();
  qs_cmd->add_option("--input-format", input_format_name, "auto, edges or matrix")
      ->capture_default_str();

  // asymptotics
  AsymptoticsOptions asym;
  std::string structure_name = "round-robin";
  auto* asym_cmd = app.add_subcommand(
      "asymptotics", "Delta-method covariance of log influence weights");
  asym_cmd->add_option("--structure", structure_name, "round-robin or circular")
      ->capture_default_str();
  asym_cmd->add_option("--n", asym.n, "Number of players")->required();
  asym_cmd->add_option("--k", asym.k, "Wins per ordered pair")->capture_default_str();
  asym_cmd->add_flag("--check", asym.check,
                     "Compare against the numerical delta method and the "
                     "Bradley-Terry covariance");
  asym_cmd->add_flag("--numerical", asym.numerical,
                     "Report the numerical delta method instead of the closed form");
  asym_cmd->add_option("--format", format_name, "table, json or csv")
      ->capture_default_str();

  // simulate
  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo covariance of log influence weights at equal abilities");
  sim_cmd->add_option("--structure", structure_name, "round-robin or circular")
      ->capture_default_str();
  sim_cmd->add_option("--n", sim.n, "Number of players")->required();
  sim_cmd->add_option("--k", sim.k, "Half the games per pair")->capture_default_str();
  sim_cmd->add_option("--reps", sim.reps, "Replications")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "64-bit seed")->capture_default_str();
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  sim_cmd->add_option("--format", format_name, "table, json or csv")
      ->capture_default_str();

  // generate
  std::string kind = "round-robin";
  std::size_t gen_n = 0;
  double gen_k = 1.0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a count matrix as CSV");
  gen_cmd->add_option("--structure", kind, "round-robin, circular or random-qs")
      ->check(CLI::IsMember({"round-robin", "circular", "random-qs"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen_n, "Number of players")->required();
  gen_cmd->add_option("--k", gen_k, "Count per edge")->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Seed for random-qs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const OutputFormat format = ParseOutputFormat(format_name);
    if (*rank_cmd) {
      const std::string text = ReadFile(input_path);
      const CountMatrix c = ParseCountsText(text, ParseInputFormat(input_format_name));
      if (!articles_path.empty()) {
        rank.articles = ParseArticlesText(ReadFile(articles_path), c.labels());
      }
      RunReport report = RankReport(c, rank);
      report.metadata["input_digest"] = Digest(text);
      out << Render(report, format);
      return kExitOk;
    }
    if (*qs_cmd) {
      const std::string text = ReadFile(input_path);
      const CountMatrix c = ParseCountsText(text, ParseInputFormat(input_format_name));
      CheckQsResult result = CheckQsReport(c, qs_tol);
      result.report.metadata["input_digest"] = Digest(text);
      out << Render(result.report, format);
      return result.quasi_symmetric ? kExitOk : kExitNotQuasiSymmetric;
    }
    if (*asym_cmd) {
      asym.structure = ParseStructure(structure_name);
      const AsymptoticsResult result = AsymptoticsReport(asym);
      out << Render(result.report, format);
      return result.passed ? kExitOk : kExitNumerical;
    }
    if (*sim_cmd) {
      sim.structure = ParseStructure(structure_name);
      out << Render(SimulateReport(sim), format);
      return kExitOk;
    }
    if (*gen_cmd) {
      CountMatrix c;
      if (kind == "random-qs") {
        c = RandomQuasiSymmetric(gen_n, gen_seed);
      } else {
        c = StructureMatrix(ParseStructure(kind), gen_n, gen_k);
      }
      out << FormatMatrixCsv(c);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "qsrank: " << Describe(e) << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "qsrank: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qsrank");
  for (const auto& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qsrank::cli
