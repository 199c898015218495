// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "margulis/margulis.hpp"
#include "margulis/verify.hpp"
#include "oracles/oracle.hpp"

namespace {

using namespace margulis;
using bounds::BoundParams;
using hypgeom::Isometry;

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool ac1(std::string& detail) {
  for (std::size_t n = 1; n <= 12; ++n) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= 3;
    const auto size = freegroup::enumerate_ball(n).size();
    if (size != 2 * (p - 1) + 1) {
      detail = "n=" + std::to_string(n) + " size=" + std::to_string(size);
      return false;
    }
  }
  detail = "#V_12 = " + std::to_string(freegroup::enumerate_ball(12).size());
  return true;
}

bool ac2(std::string& detail) {
  const auto ball = freegroup::enumerate_ball(4);
  std::size_t words = 0;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    const auto t = ball[i];
    ++words;
    for (std::uint64_t k = 1; k <= 8; ++k) {
      const auto c = freegroup::count_cyclic_powers(t, k);
      const bool generator = t.length() == 1;
      if (c > 2 * k + 1 || (c == 2 * k + 1) != generator) {
        detail = t.to_string() + " k=" + std::to_string(k) + " count=" + std::to_string(c);
        return false;
      }
    }
  }
  detail = std::to_string(words) + " nontrivial words, k=1..8";
  return words == 160 && ball.size() == 161;
}

bool ac3(std::string& detail) {
  const double v = hypgeom::ball_volume(0.052);
  const bool rel = std::abs(v - 0.000589) / 0.000589 < 1e-3;
  const Extended ve = hypgeom::ball_volume<Extended>(Extended(0.052));
  const oracle::Big series = oracle::big_pi() * oracle::series_sinh_minus_x(oracle::Big(0.104));
  const double ext = static_cast<double>(ve);
  const bool pinned = std::abs(ext - 0.00058930) <= 1e-8;
  const bool agree = std::abs(ext - static_cast<double>(series)) <= 1e-8;
  detail = "double " + fmt("%.10g", v) + ", extended " + fmt("%.12g", ext) + ", series " +
           fmt("%.12g", static_cast<double>(series));
  return rel && pinned && agree;
}

bool ac4(std::string& detail) {
  const Extended vol = hypgeom::ball_volume<Extended>(Extended(0.052));
  const Extended ratio = boost::math::constants::pi<Extended>() / vol;
  const double d = std::numbers::pi / hypgeom::ball_volume(0.052);
  detail = "pi / vol b(0.052) = " + fmt("%.10f", static_cast<double>(ratio));
  return d < 5334.0 && ratio > Extended(5330) && ratio < Extended(5334);
}

bool ac5(std::string& detail) {
  const auto grid = verify::default_lambda_grid();
  std::uint64_t max_n = 0;
  for (double lambda : grid) {
    const auto p = BoundParams::with_lambda(lambda);
    const auto n = bounds::compute_N(p, Precision::standard);
    const auto ne = bounds::compute_N(p, Precision::extended);
    if (n != ne) {
      detail = "lambda=" + fmt("%.6f", lambda) + " double " + std::to_string(n) + " extended " + std::to_string(ne);
      return false;
    }
    const bool lower = n == 1 || bounds::margulis_gap(n - 1, p) < 0.0;
    if (!(bounds::margulis_gap(n, p) >= 0.0) || !lower) {
      detail = "sign pattern broken at lambda=" + fmt("%.6f", lambda);
      return false;
    }
    max_n = std::max(max_n, n);
  }
  detail = std::to_string(grid.size()) + " points, max N = " + std::to_string(max_n);
  return grid.size() == 500;
}

bool ac6(std::string& detail) {
  for (double lambda : verify::default_lambda_grid()) {
    const auto p = BoundParams::with_lambda(lambda);
    if (!(static_cast<double>(bounds::compute_N(p)) < bounds::nestimate(p))) {
      detail = "lambda=" + fmt("%.6f", lambda);
      return false;
    }
  }
  const double anchor = 1.0 + 110.0 * 1.11 * std::log(1.11);
  detail = "anchor = " + fmt("%.6f", anchor);
  return std::abs(anchor - 13.7) <= 0.05;
}

bool ac7(std::string& detail) {
  double worst = INFINITY;
  for (double lambda : verify::default_lambda_grid()) {
    const auto p = BoundParams::with_lambda(lambda);
    const double gap = bounds::volume_bound_closed(p) - bounds::volume_bound_exact(p);
    worst = std::min(worst, gap);
    if (gap < 0.0) {
      detail = "lambda=" + fmt("%.6f", lambda);
      return false;
    }
  }
  detail = "min(closed - exact) = " + fmt("%.6g", worst);
  return true;
}

bool ac8(std::string& detail) {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> side(1e-3, 10.0);
  int done = 0;
  double worst = -INFINITY;
  while (done < 10000) {
    const double a = side(rng), b = side(rng), c = side(rng);
    if (!(a < b + c && b < a + c && c < a + b)) continue;
    const double area = hypgeom::triangle_area(hypgeom::Triangle(a, b, c));
    const double bound = std::min(std::numbers::pi, std::min({a, b, c}));
    worst = std::max(worst, area - bound);
    if (!(area < bound + 1e-9)) {
      detail = "sides " + fmt("%.17g", a) + " " + fmt("%.17g", b) + " " + fmt("%.17g", c);
      return false;
    }
    ++done;
  }
  detail = "10000 triangles, max(area - bound) = " + fmt("%.3g", worst);
  return true;
}

bool ac9(std::string& detail) {
  const auto g = io::read_generators(std::string(MARGULIS_FIXTURE_DIR) + "/figure_eight.json");
  const double v = hypgeom::jorgensen_value(g.x, g.y);
  const double id = hypgeom::jorgensen_value(Isometry::identity(), Isometry::identity());
  detail = "figure-eight " + fmt("%.17g", v) + ", identity " + fmt("%g", id);
  return v >= 1.0 - 1e-12 && id == 0.0;
}

bool ac10(std::string& detail) {
  const auto comm = io::read_generators(std::string(MARGULIS_FIXTURE_DIR) + "/commuting_parabolics.json");
  const auto sanov = io::read_generators(std::string(MARGULIS_FIXTURE_DIR) + "/sanov.json");
  const auto w = packing::search_relation(comm, packing::kDefaultSearchCap);
  if (!w || w->length() != 4 || w->to_string() != "xyXY") {
    detail = "commuting pair: " + (w ? w->to_string() : std::string("none"));
    return false;
  }
  for (double lambda : verify::default_lambda_grid()) {
    if (w->length() > packing::relation_length_bound(BoundParams::with_lambda(lambda))) {
      detail = "budget exceeded at lambda=" + fmt("%.6f", lambda);
      return false;
    }
  }
  const auto s = packing::search_relation(sanov, 12, 1e-6);
  detail = "commuting: " + w->to_string() + "; sanov: " + (s ? s->to_string() : std::string("free up to 12"));
  return !s.has_value();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "ball sizes 2(3^n-1)+1 for n=1..12", 10, ac1},
      {"AC2", "cyclic subgroup count <= 2k+1 over V_4", 5, ac2},
      {"AC3", "ball volume of radius 0.052", 1, ac3},
      {"AC4", "packing constant certificate < 5334", 1, ac4},
      {"AC5", "N(lambda) sign pattern, double == 256-bit", 30, ac5},
      {"AC6", "N(lambda) < 1 + 110 beta log beta, anchor 13.7", 5, ac6},
      {"AC7", "exact volume bound <= closed form", 5, ac7},
      {"AC8", "triangle area < min(pi, shortest side)", 5, ac8},
      {"AC9", "Jorgensen value of figure-eight and identity", 1, ac9},
      {"AC10", "relation search: commutator found, Sanov pair free", 60, ac10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    if (!in_time) detail += " (over time limit)";
    ok = ok && in_time;
    failed += !ok;
    std::printf("[%s] %-5s %s (%.2fs / %.0fs)  %s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs, c.time_limit_s,
                detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
