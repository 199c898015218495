#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "margulis/bounds.hpp"
#include "margulis/error.hpp"
#include "margulis/io.hpp"
#include "margulis/packing.hpp"
#include "margulis/verify.hpp"

namespace margulis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  bounds::BoundParams params;
  std::string precision = "double";
  std::string format = "text";
};

namespace detail {

inline int cmd_n(double lambda, const GlobalOptions& g, Precision prec, std::ostream& out) {
  bounds::BoundParams p = g.params;
  p.lambda = lambda;
  const auto n = bounds::compute_N(p, prec);
  const double beta = bounds::beta(p);
  std::optional<double> est;
  if (lambda > bounds::kClosedFormLambdaMin) est = bounds::nestimate(p);
  if (g.format == "json") {
    io::json j = {{"lambda", io::round_12(lambda)},
                  {"n_of_lambda", n},
                  {"beta", io::round_12(beta)},
                  {"nestimate", est ? io::json(io::round_12(*est)) : io::json(nullptr)}};
    out << j.dump() << '\n';
  } else if (g.format == "csv") {
    out << "lambda,N,beta,nestimate\n"
        << io::format_real(lambda) << ',' << n << ',' << io::format_real(beta) << ','
        << (est ? io::format_real(*est) : std::string()) << '\n';
  } else {
    out << "N = " << n << '\n'
        << "beta = " << io::format_real(beta) << '\n'
        << "nestimate = " << (est ? io::format_real(*est) : std::string("unavailable (requires lambda > 0.1)"))
        << '\n';
  }
  return kExitOk;
}

inline int cmd_bounds(double lambda, const GlobalOptions& g, Precision prec, std::ostream& out) {
  bounds::BoundParams p = g.params;
  p.lambda = lambda;
  const auto r = bounds::full_report(p, prec);
  if (g.format == "json") {
    out << io::to_json(r).dump() << '\n';
  } else if (g.format == "csv") {
    out << io::kCsvHeader << '\n' << io::to_csv_row(r) << '\n';
  } else {
    out << io::to_text(r, p);
  }
  return kExitOk;
}

inline int cmd_sweep(double min, double max, double step, const std::string& path, const GlobalOptions& g,
                     Precision prec, std::ostream& out) {
  const auto grid = io::sweep_grid(min, max, step);
  const auto rows = io::sweep(grid, g.params, prec);
  std::string body;
  if (g.format == "json") {
    io::json arr = io::json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    body = arr.dump() + "\n";
  } else {
    body = io::to_csv(rows);
  }
  if (path.empty() || path == "-") {
    out << body;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io::FormatError("cannot write '" + path + "'");
    f << body;
    out << "wrote " << rows.size() << " rows to " << path << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const std::string& suite, const GlobalOptions& g, std::ostream& out) {
  const auto checks = verify::run_suite(suite, g.params);
  bool all = true;
  for (const auto& c : checks) {
    out << c.name << ": " << (c.passed ? "PASS" : "FAIL");
    if (!c.detail.empty()) out << "  [" << c.detail << ']';
    out << '\n';
    all = all && c.passed;
  }
  out << (all ? "all " : "some ") << "checks " << (all ? "passed" : "FAILED") << " (" << checks.size()
      << ")\n";
  return all ? kExitOk : kExitVerifyFailed;
}

inline int cmd_relations(const std::string& input, std::size_t max_len, double tol, const GlobalOptions& g,
                         Precision prec, std::ostream& out) {
  const auto gens = io::read_generators(input);
  const double dx = hypgeom::displacement(gens.x, gens.basepoint);
  const double dy = hypgeom::displacement(gens.y, gens.basepoint);
  const double lambda = std::max(dx, dy);
  out << "displacement of basepoint: x " << io::format_real(dx) << ", y " << io::format_real(dy) << '\n';
  if (lambda > 0.0 && lambda < bounds::kLambdaMax) {
    bounds::BoundParams p = g.params;
    // Displacements are < lambda strictly; use the next double up.
    p.lambda = std::nextafter(lambda, 1.0);
    const auto budget = packing::relation_length_bound(p, prec);
    out << "guaranteed relation length 8N(lambda) = " << budget << " (lambda just above "
        << io::format_real(lambda) << ", if x, y generate a discrete torsion-free group and do not commute)\n";
    if (budget > max_len) {
      out << "note: the search covers lengths <= " << max_len << " only; enumerating up to " << budget
          << " is beyond desk scale (4*3^(L-1) words at length L)\n";
    }
  } else {
    out << "max displacement is not in (0, (log 3)/2): no relation-length guarantee applies\n";
  }
  const auto w = packing::search_relation(gens, max_len, tol);
  if (w) {
    out << "relation: " << w->to_string() << " (length " << w->length() << ")\n";
  } else {
    out << "no relation <= " << max_len << '\n';
  }
  return kExitOk;
}

}  // namespace detail

/// Runs the CLI on the given arguments (argv[0] is the program name).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit Margulis-number bounds: N(lambda), volume, index and rank bounds, and checks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--mu", g.params.mu, "Margulis constant mu")->capture_default_str();
  app.add_option("--v0", g.params.weeks_volume, "Weeks manifold volume V0")->capture_default_str();
  app.add_option("--packing-constant", g.params.packing_constant, "Packing constant K")->capture_default_str();
  app.add_option("--precision", g.precision, "Arithmetic for the N(lambda) scan")
      ->check(CLI::IsMember({"double", "extended"}))
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  double lambda = 0.0;
  auto* n_cmd = app.add_subcommand("n", "Print N(lambda), beta and the nestimate bound");
  n_cmd->add_option("--lambda", lambda, "Displacement bound lambda")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "Print the full bounds report for one lambda");
  bounds_cmd->add_option("--lambda", lambda, "Displacement bound lambda")->required();

  double min = 0.0, max = 0.0, step = 0.0;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the bounds over a lambda grid (CSV)");
  sweep_cmd->add_option("--min", min, "First lambda")->required();
  sweep_cmd->add_option("--max", max, "Last lambda (inclusive)")->required();
  sweep_cmd->add_option("--step", step, "Grid step")->required();
  sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("--suite", suite, "all, freegroup, geometry, bounds or packing")
      ->check(CLI::IsMember({"all", "freegroup", "geometry", "bounds", "packing"}))
      ->capture_default_str();

  std::string input;
  std::size_t max_len = 10;
  double tol = 1e-9;
  auto* rel_cmd = app.add_subcommand("relations", "Search for a short relation between two generator matrices");
  rel_cmd->add_option("--input", input, "Generator JSON file")->required();
  rel_cmd->add_option("--max-len", max_len, "Longest word to try")->capture_default_str();
  rel_cmd->add_option("--tol", tol, "Entrywise tolerance to +-I")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Precision prec = parse_precision(g.precision);
    if (n_cmd->parsed()) return detail::cmd_n(lambda, g, prec, out);
    if (bounds_cmd->parsed()) return detail::cmd_bounds(lambda, g, prec, out);
    if (sweep_cmd->parsed()) return detail::cmd_sweep(min, max, step, out_path, g, prec, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(suite, g, out);
    if (rel_cmd->parsed()) return detail::cmd_relations(input, max_len, tol, g, prec, out);
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace margulis::cli
