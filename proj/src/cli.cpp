#include "comporank/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "comporank/error.hpp"
#include "comporank/json_io.hpp"
#include "comporank/pipeline.hpp"
#include "comporank/service.hpp"

namespace comporank {
namespace {

struct RunOptions {
  std::string criteria_path;
  std::string catalog_path;
  double alpha = kDefaultAlpha;
  double threshold = 0.0;
  double cr_threshold = kDefaultCrThreshold;
  std::vector<std::string> require;
  std::optional<double> cost_cap;
  std::optional<double> time_cap;
  std::string format = "json";
  std::size_t alpha_steps = 21;
  std::string addr = "127.0.0.1:8080";
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round_sig12(x));
  return buf;
}

std::string fmt(const std::optional<std::string>& s) { return s ? *s : "-"; }

NeedsSpec needs_from(const RunOptions& o, CriteriaConfig criteria) {
  NeedsSpec needs;
  needs.criteria = std::move(criteria);
  needs.required_services = {o.require.begin(), o.require.end()};
  needs.params.alpha = o.alpha;
  needs.params.satisfaction_threshold = o.threshold;
  needs.params.cost_cap = o.cost_cap;
  needs.params.time_cap = o.time_cap;
  needs.cr_threshold = o.cr_threshold;
  return needs;
}

void print_consistency_table(const QualityAssessment& qa, std::ostream& out) {
  out << std::left << std::setw(24) << "node" << std::setw(18) << "lambda_max" << std::setw(18) << "cr"
      << "verdict\n";
  for (const auto& n : qa.nodes) {
    if (!n.derived) continue;
    out << std::setw(24) << n.node_id << std::setw(18) << fmt(n.derived->lambda_max) << std::setw(18)
        << fmt(n.derived->consistency_ratio) << (n.verdict->accepted ? "accept" : "reject") << "\n";
  }
}

void print_weights_table(const QualityAssessment& qa, std::ostream& out) {
  out << std::left << std::setw(24) << "leaf" << "weight\n";
  for (const auto& l : qa.leaves) out << std::setw(24) << l.id << fmt(l.weight) << "\n";
  out << "\n";
  print_consistency_table(qa, out);
}

void print_report_table(const RankedReport& r, std::ostream& out) {
  out << std::left << std::setw(6) << "rank" << std::setw(20) << "id" << std::setw(18) << "score"
      << std::setw(18) << "quality_term" << std::setw(18) << "penalty_term" << std::setw(18) << "c"
      << "t\n";
  for (std::size_t k = 0; k < r.rankings.size(); ++k) {
    const auto& b = r.rankings[k];
    out << std::setw(6) << (k + 1) << std::setw(20) << b.component_id << std::setw(18) << fmt(b.score)
        << std::setw(18) << fmt(b.quality_term) << std::setw(18) << fmt(b.penalty_term) << std::setw(18)
        << fmt(b.c_i) << fmt(b.t_i) << "\n";
  }
  out << "\nwinner: " << fmt(r.winner) << "\n";
  if (r.advisory) out << "advisory: " << *r.advisory << "\n";
  if (!r.rejected.empty()) {
    out << "rejected:\n";
    for (const auto& x : r.rejected) {
      out << "  " << std::setw(20) << x.component_id << std::setw(14) << to_string(x.stage) << x.reason
          << "\n";
    }
  }
}

void print_sweep_table(const SensitivityResult& s, std::ostream& out) {
  out << std::left << std::setw(16) << "alpha" << std::setw(20) << "winner" << "score\n";
  for (const auto& p : s.points) {
    std::string score = "-";
    if (p.report.winner) score = fmt(p.report.rankings.front().score);
    out << std::setw(16) << fmt(p.alpha) << std::setw(20) << fmt(p.report.winner) << score << "\n";
  }
  out << "\nstable intervals:\n";
  for (const auto& iv : s.intervals) {
    out << "  [" << fmt(iv.alpha_from) << ", " << fmt(iv.alpha_to) << "]  " << fmt(iv.winner) << "\n";
  }
  if (!s.boundaries.empty()) {
    out << "winner changes:\n";
    for (const auto& b : s.boundaries) {
      out << "  " << fmt(b.from_winner) << " -> " << fmt(b.to_winner) << " between " << fmt(b.alpha_low)
          << " and " << fmt(b.alpha_high);
      if (b.alpha_star) out << " at alpha* = " << fmt(*b.alpha_star);
      out << "\n";
    }
  }
}

int cmd_weights(const RunOptions& o, const RandomIndex& ri, std::ostream& out, std::ostream& err) {
  CriteriaConfig cfg = load_criteria(o.criteria_path);
  QualityAssessment qa = assess_quality_model(cfg, o.cr_threshold, ri);
  if (o.format == "table") {
    print_weights_table(qa, out);
  } else {
    out << dump_document(assessment_to_json(qa));
  }
  if (!qa.consistent()) {
    err << "error: at least one comparison matrix has a consistency ratio above " << fmt(o.cr_threshold)
        << "\n";
    return kExitInconsistent;
  }
  return kExitOk;
}

// Prints the consistency breakdown and returns the exit code when the
// criteria are not usable for ranking.
std::optional<int> reject_inconsistent(const QualityAssessment& qa, const RunOptions& o, std::ostream& out,
                                       std::ostream& err) {
  if (qa.consistent()) return std::nullopt;
  if (o.format == "table") {
    print_consistency_table(qa, out);
  } else {
    out << dump_document(assessment_to_json(qa));
  }
  err << "error: criteria matrices are inconsistent; revise the judgments before ranking\n";
  return kExitInconsistent;
}

int cmd_rank(const RunOptions& o, const RandomIndex& ri, std::ostream& out, std::ostream& err) {
  NeedsSpec needs = needs_from(o, load_criteria(o.criteria_path));
  Catalog catalog = load_catalog(std::filesystem::path(o.catalog_path));
  QualityAssessment qa = assess_quality_model(needs.criteria, needs.cr_threshold, ri);
  if (auto code = reject_inconsistent(qa, o, out, err)) return *code;
  RankedReport report = run_pipeline(catalog, needs, qa.leaves);
  if (o.format == "table") {
    print_report_table(report, out);
  } else {
    out << dump_document(report_to_json(report));
  }
  if (!report.winner) {
    err << "no winner: " << report.advisory.value_or("") << "\n";
    return kExitNoWinner;
  }
  return kExitOk;
}

int cmd_sensitivity(const RunOptions& o, const RandomIndex& ri, std::ostream& out, std::ostream& err) {
  NeedsSpec needs = needs_from(o, load_criteria(o.criteria_path));
  Catalog catalog = load_catalog(std::filesystem::path(o.catalog_path));
  QualityAssessment qa = assess_quality_model(needs.criteria, needs.cr_threshold, ri);
  if (auto code = reject_inconsistent(qa, o, out, err)) return *code;
  SensitivityResult sweep = sensitivity_sweep(catalog, needs, alpha_grid(o.alpha_steps), ri);
  if (o.format == "table") {
    print_sweep_table(sweep, out);
  } else {
    out << dump_document(sweep_to_json(sweep));
  }
  return kExitOk;
}

int cmd_serve(const RunOptions& o, const RandomIndex& ri, std::ostream& err) {
  auto colon = o.addr.rfind(':');
  if (colon == std::string::npos) {
    err << "error: --addr must be HOST:PORT\n";
    return kExitError;
  }
  std::string host = o.addr.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(o.addr.substr(colon + 1));
  } catch (const std::exception&) {
    err << "error: invalid port in --addr '" << o.addr << "'\n";
    return kExitError;
  }
  std::optional<Catalog> catalog;
  if (!o.catalog_path.empty()) catalog = load_catalog(std::filesystem::path(o.catalog_path));

  Service service(std::move(catalog), ri);
  httplib::Server server;
  service.mount(server);
  err << "comporank: listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    err << "error: cannot listen on " << o.addr << "\n";
    return kExitError;
  }
  return kExitOk;
}

void add_scoring_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("-c,--criteria", o.criteria_path, "criteria config (JSON)")->required();
  cmd->add_option("-k,--catalog", o.catalog_path, "component catalog (JSON)")->required();
  cmd->add_option("--alpha", o.alpha, "cost share of the penalty, in [0,1]")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--threshold", o.threshold, "minimum score a winner must reach");
  cmd->add_option("--require", o.require, "required services, comma separated")->delimiter(',');
  cmd->add_option("--cost-cap", o.cost_cap, "maximum raw cost")->check(CLI::PositiveNumber);
  cmd->add_option("--time-cap", o.time_cap, "maximum raw time")->check(CLI::PositiveNumber);
  cmd->add_option("--cr-threshold", o.cr_threshold, "largest accepted consistency ratio")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunOptions o;
  CLI::App app{"comporank: select a reusable software component by quality, cost and time"};
  app.require_subcommand(1);

  auto* weights = app.add_subcommand("weights", "derive criterion weights and check consistency");
  weights->add_option("-c,--criteria", o.criteria_path, "criteria config (JSON)")->required();
  weights->add_option("--cr-threshold", o.cr_threshold, "largest accepted consistency ratio")
      ->check(CLI::PositiveNumber);
  weights->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* rank_cmd = app.add_subcommand("rank", "run the selection pipeline once");
  add_scoring_options(rank_cmd, o);

  auto* sweep = app.add_subcommand("sensitivity", "sweep alpha over a uniform grid");
  add_scoring_options(sweep, o);
  sweep->add_option("--alpha-steps", o.alpha_steps, "number of grid points")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "start the HTTP API");
  serve->add_option("--addr", o.addr, "HOST:PORT to listen on");
  serve->add_option("--catalog,-k", o.catalog_path, "catalog served to clients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    const RandomIndex ri = RandomIndex::from_environment();
    if (weights->parsed()) return cmd_weights(o, ri, out, err);
    if (rank_cmd->parsed()) return cmd_rank(o, ri, out, err);
    if (sweep->parsed()) return cmd_sensitivity(o, ri, out, err);
    if (serve->parsed()) return cmd_serve(o, ri, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << " (" << e.subject() << "): " << e.what() << "\n";
    if (e.code() == ErrorCode::InconsistentMatrix) return kExitInconsistent;
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace comporank
