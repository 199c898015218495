#pragma once

// Generator-matrix JSON, and text/JSON/CSV rendering of bound reports.
//
// Generator file:
//   {"x": [[re,im],[re,im],[re,im],[re,im]],
//    "y": [[re,im],[re,im],[re,im],[re,im]],
//    "basepoint": {"z": [re,im], "t": t}}        <- optional, default (0, 1)
// Entries are a, b, c, d row-major.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "margulis/bounds.hpp"
#include "margulis/error.hpp"
#include "margulis/hypgeom.hpp"
#include "margulis/packing.hpp"

namespace margulis::io {

using nlohmann::json;

/// Parse errors for generator files and command-line values.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed matrices may be off unit determinant by this much; they are then
/// rescaled to determinant exactly 1 (up to rounding).
inline constexpr double kInputDeterminantTolerance = 1e-6;

namespace detail {

inline hypgeom::Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline hypgeom::Isometry parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 4) {
    throw FormatError("\"" + name + "\": expected four [re, im] entries a, b, c, d");
  }
  std::array<hypgeom::Complex, 4> e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = parse_complex(j[i], "\"" + name + "\"[" + std::to_string(i) + "]");
  const hypgeom::Complex det = e[0] * e[3] - e[1] * e[2];
  if (!(std::abs(det - 1.0) < kInputDeterminantTolerance)) {
    throw FormatError("\"" + name + "\": determinant is not 1 (|det - 1| >= 1e-6)");
  }
  return hypgeom::Isometry::normalized(e[0], e[1], e[2], e[3]);
}

}  // namespace detail

inline packing::GeneratorPair parse_generators(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed generator JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
    throw FormatError("generator JSON must be an object with keys \"x\" and \"y\"");
  }
  packing::GeneratorPair gens{detail::parse_matrix(j["x"], "x"), detail::parse_matrix(j["y"], "y")};
  if (j.contains("basepoint")) {
    const json& bp = j["basepoint"];
    if (!bp.is_object() || !bp.contains("z") || !bp.contains("t") || !bp["t"].is_number()) {
      throw FormatError("\"basepoint\" must be {\"z\": [re, im], \"t\": height}");
    }
    try {
      gens.basepoint = hypgeom::Point(detail::parse_complex(bp["z"], "\"basepoint\".z"), bp["t"].get<double>());
    } catch (const DomainError& e) {
      throw FormatError(std::string("\"basepoint\": ") + e.what());
    }
  }
  return gens;
}

inline packing::GeneratorPair read_generators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open generator file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generators(ss.str());
}

inline json to_json(const packing::GeneratorPair& g) {
  auto cx = [](hypgeom::Complex c) { return json::array({c.real(), c.imag()}); };
  auto mat = [&](const hypgeom::Isometry& m) {
    return json::array({cx(m.a()), cx(m.b()), cx(m.c()), cx(m.d())});
  };
  return {{"x", mat(g.x)},
          {"y", mat(g.y)},
          {"basepoint", {{"z", cx(g.basepoint.z())}, {"t", g.basepoint.t()}}}};
}

/// 12 significant digits, shortest form ("%.12g").
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// The value as printed with 12 significant digits, read back.
inline double round_12(double v) { return std::stod(format_real(v)); }

inline const char* kCsvHeader = "lambda,N,nestimate,vol_exact,vol_closed,index_bound,rank_bound,rel_len";

/// One JSON object with the eight sweep-row fields; unavailable values are null.
inline json to_json(const bounds::BoundsReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(round_12(*v)) : json(nullptr); };
  return {{"lambda", round_12(r.lambda)},
          {"n_of_lambda", r.n_of_lambda},
          {"nestimate", opt(r.nestimate)},
          {"volume_exact", round_12(r.volume_exact)},
          {"volume_closed", opt(r.volume_closed)},
          {"index_bound", round_12(r.index_bound)},
          {"rank_bound", opt(r.rank_bound)},
          {"relation_length_bound", r.relation_length_bound}};
}

inline std::string to_csv_row(const bounds::BoundsReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  std::ostringstream os;
  os << format_real(r.lambda) << ',' << r.n_of_lambda << ',' << opt(r.nestimate) << ','
     << format_real(r.volume_exact) << ',' << opt(r.volume_closed) << ','
     << format_real(r.index_bound) << ',' << opt(r.rank_bound) << ',' << r.relation_length_bound;
  return os.str();
}

inline std::string to_text(const bounds::BoundsReport& r, const bounds::BoundParams& p) {
  auto opt = [](const std::optional<double>& v, const char* why) {
    return v ? format_real(*v) : std::string("unavailable (") + why + ")";
  };
  std::ostringstream os;
  os << "lambda                = " << format_real(r.lambda) << '\n'
     << "mu                    = " << format_real(p.mu) << '\n'
     << "packing constant      = " << format_real(p.packing_constant) << '\n'
     << "V0                    = " << format_real(p.weeks_volume) << '\n'
     << "N                     = " << r.n_of_lambda << '\n'
     << "beta                  = " << format_real(r.beta) << '\n'
     << "nestimate             = " << opt(r.nestimate, "requires lambda > 0.1") << '\n'
     << "relation length bound = " << r.relation_length_bound << '\n'
     << "volume bound (exact)  = " << format_real(r.volume_exact) << '\n'
     << "volume bound (closed) = " << opt(r.volume_closed, "requires lambda > 0.1") << '\n'
     << "index bound           = " << format_real(r.index_bound) << '\n'
     << "rank bound            = " << opt(r.rank_bound, "vacuous: index bound < 1") << '\n';
  return os.str();
}

/// Grid min, min + step, ... up to max (inclusive, with 1e-9 step slack).
inline std::vector<double> sweep_grid(double min, double max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("sweep step must be positive");
  if (!(min > bounds::kClosedFormLambdaMin && min < max && max < bounds::kLambdaMax)) {
    throw DomainError("sweep range must satisfy 0.1 < min < max < (log 3)/2");
  }
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = min + static_cast<double>(i) * step;
  return grid;
}

/// Reports for every grid point, computed by a fixed set of workers over
/// interleaved rows and returned in grid order.
inline std::vector<bounds::BoundsReport> sweep(const std::vector<double>& grid,
                                               const bounds::BoundParams& base,
                                               Precision precision = Precision::standard) {
  std::vector<bounds::BoundsReport> rows(grid.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), grid.size()));
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers) {
        bounds::BoundParams p = base;
        p.lambda = grid[i];
        rows[i] = bounds::full_report(p, precision);
      }
    }));
  }
  for (auto& t : tasks) t.get();
  return rows;
}

inline std::string to_csv(const std::vector<bounds::BoundsReport>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += to_csv_row(r) + "\n";
  return out;
}

}  // namespace margulis::io
