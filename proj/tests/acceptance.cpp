/// \file acceptance.cpp
/// \brief Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on
///        any failure. Writes the measured tables to ./acceptance_results.md.

#include "stis/analysis_lab.hpp"
#include "stis/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

using namespace stis;

namespace {

// Small-cut threshold of the XFEM runs. Without filtering the enriched pressure
// dofs on tiny cuts are uncontrolled (coefficients up to 1e9) and the pressure
// error stops converging; velocity results are insensitive to it.
constexpr double kTheta = 1e-2;

struct Line {
  int id;
  std::string status;  // PASS, FAIL, WAIVED
  std::string detail;
};

std::vector<Line> lines;
std::ostringstream report;

void record(int id, bool ok, const std::string& detail) {
  lines.push_back({id, ok ? "PASS" : "FAIL", detail});
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Every convergence run, keyed by (case, pressure space, N_S, N), run once.
using Key = std::tuple<std::string, PressureSpaceKind, int, int>;
std::map<Key, RunRecord> runs;
double max_div_ratio = 0.0, max_residual = 0.0;
int run_count = 0;

const RunRecord& get(const std::string& id, PressureSpaceKind p, int ns, int nt, int dim = 2) {
  const Key k{id, p, ns, nt};
  auto it = runs.find(k);
  if (it != runs.end()) return it->second;
  ExperimentConfig c;
  c.case_id = id;
  c.ns = {ns};
  c.nt = {nt};
  c.pressure = p;
  c.theta = p == PressureSpaceKind::Xfem ? kTheta : 0.0;
  c.enable_3d = dim == 3;
  c.max_dofs = 10000000;
  std::printf("  running %s %s N_S=%d N=%d ...\n", id.c_str(), to_string(p), ns, nt);
  std::fflush(stdout);
  const auto res = run_convergence(c);
  const RunRecord& r = res.runs.front();
  std::printf("    velocity L2(H1) %.5e, pressure %.5e, residual %.1e, div ratio %.1e (%.0f s)\n",
              r.errors.velocity_l2h1, r.errors.pressure_l2l2, r.max_residual, r.max_divergence_ratio,
              r.march_seconds + r.error_seconds);
  std::fflush(stdout);
  max_div_ratio = std::max(max_div_ratio, r.max_divergence_ratio);
  max_residual = std::max(max_residual, r.max_residual);
  ++run_count;
  report << "| " << id << " | " << to_string(p) << " | " << ns << " | " << nt << " | "
         << format_value(r.errors.velocity_l2h1) << " | " << format_value(r.errors.velocity_l2l2) << " | "
         << format_value(r.errors.pressure_l2l2) << " | " << f("%.1e", r.max_residual) << " | "
         << f("%.1e", r.max_divergence_ratio) << " | " << f("%.0f", r.march_seconds + r.error_seconds) << " |\n";
  return runs.emplace(k, r).first->second;
}

// -- 1 ------------------------------------------------------------------------
void criterion1() {
  const double a = eoc(0.24844, 0.12573), b = eoc(0.04318, 0.01047);
  record(1, std::abs(a - 0.98264) <= 1e-4 && in(b, 2.03, 2.06),
         "eoc(0.24844, 0.12573) = " + f("%.5f", a) + ", eoc(0.04318, 0.01047) = " + f("%.5f", b));
}

// -- 5 ------------------------------------------------------------------------
void criterion5() {
  double worst = 0.0;
  for (auto [ns, nt] : {std::pair{2, 2}, std::pair{3, 4}}) {
    const auto& r = get("poly2d", PressureSpaceKind::Standard, ns, nt);
    worst = std::max({worst, r.errors.velocity_l2h1, r.errors.velocity_l2l2, r.errors.pressure_l2l2});
  }
  record(5, worst <= 1e-9, "poly2d (P2 x P1 velocity, P1 pressure) on (2,2) and (3,4): max error " + f("%.2e", worst));
}

// -- 7 ------------------------------------------------------------------------
// Independent oracle: |{phi <= 0}| / |S| = sum_i (-phi_i)_+^D / prod_{j != i} (phi_j - phi_i).
template <int D>
double fraction_oracle(const std::array<double, D + 1>& v) {
  double s = 0.0;
  for (int i = 0; i <= D; ++i) {
    if (v[i] >= 0.0) continue;
    double den = 1.0;
    for (int j = 0; j <= D; ++j)
      if (j != i) den *= v[j] - v[i];
    s += std::pow(-v[i], D) / den;
  }
  return s;
}

template <int D>
void random_cuts(int count, std::mt19937& gen, double& conservation, double& oracle) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int done = 0;
  while (done < count) {
    Simplex<D> s;
    for (auto& p : s)
      for (int k = 0; k < D; ++k) p[k] = U(gen);
    const double vol = simplex_measure<D>(s);
    if (vol < 1e-3) continue;
    std::array<double, D + 1> v;
    for (auto& x : v) x = U(gen);
    double gap = 1.0;
    for (int i = 0; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j) gap = std::min(gap, std::abs(v[i] - v[j]));
    const auto cut = cut_simplex<D>(s, v);
    double neg = 0.0, pos = 0.0;
    for (const auto& c : cut.neg) neg += simplex_measure<D>(c);
    for (const auto& c : cut.pos) pos += simplex_measure<D>(c);
    conservation = std::max(conservation, std::abs(neg + pos - vol) / vol);
    if (gap > 0.05) oracle = std::max(oracle, std::abs(neg / vol - fraction_oracle<D>(v)));
    ++done;
  }
}

void criterion7() {
  std::mt19937 gen(2024);
  double cons = 0.0, orc = 0.0;
  random_cuts<3>(10000, gen, cons, orc);
  random_cuts<4>(10000, gen, cons, orc);

  // Moving circle of radius 1/2: int_0^1 |Gamma(t)| dt = pi.
  const auto c = make_case_2d("disk2d_smooth");
  std::vector<double> err;
  std::string levels;
  for (int n : {4, 8, 16, 32}) {
    const auto mesh = build_structured_mesh<2>(c.coeff.domain, n);
    const auto tp = build_time_partition(1.0, n);
    double m = 0.0;
    for (int k = 1; k <= n; ++k) {
      const auto geo = build_slab_geometry<2>(c.coeff.phi, slab<2>(mesh, tp, k));
      for (const auto& cut : geo.cuts)
        if (cut) m += cut->interface_measure();
    }
    err.push_back(std::abs(m - M_PI));
    levels += " " + f("%.3e", err.back());
  }
  const double order = eoc(err[2], err[3]);
  record(7, cons <= 1e-12 && orc <= 1e-8 && in(order, 1.8, 2.2),
         "2x10^4 random cuts: volume conservation " + f("%.1e", cons) + ", oracle deviation " + f("%.1e", orc) +
             "; interface measure errors" + levels + ", EOC " + f("%.3f", order));
}

// -- 8 ------------------------------------------------------------------------
void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const AnalysisReport rep = run_analysis_suite();
  const double secs = seconds_since(t0);
  int ok_infsup = 0;
  for (const auto& r : rep.infsup) ok_infsup += r.satisfied();
  const bool cs = std::abs(infsup_bound(1.0, 1.0) - std::sqrt(2.0) / 4.0) <= 1e-15;
  std::cout << rep.to_text();
  record(8, rep.passed() && cs && ok_infsup >= 5 && secs < 60.0,
         "analysis suite " + std::string(rep.passed() ? "passed" : "failed") + ", inf-sup >= c_s on " +
             std::to_string(ok_infsup) + " configurations, " + f("%.1f", secs) + " s");
}

// -- 2, 3, 4, 10 ----------------------------------------------------------------
double smooth_eoc = NAN;

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> e;
  for (int n : {8, 16, 32}) e.push_back(get("disk2d_smooth", PressureSpaceKind::Xfem, n, n).errors.velocity_l2h1);
  const double secs = seconds_since(t0);
  const double a = eoc(e[0], e[1]), b = eoc(e[1], e[2]);
  smooth_eoc = b;
  record(2, in(a, 1.7, 2.3) && in(b, 1.7, 2.3),
         "disk2d_smooth XFEM (8,8)/(16,16)/(32,32): velocity L2(H1) " + format_value(e[0]) + ", " +
             format_value(e[1]) + ", " + format_value(e[2]) + "; EOC " + f("%.3f", a) + ", " + f("%.3f", b) +
             " (" + f("%.0f", secs) + " s)");
}

void criterion3() {
  const auto& x = get("disk2d_smooth", PressureSpaceKind::Xfem, 32, 32);
  const auto& s32 = get("disk2d_smooth", PressureSpaceKind::Standard, 32, 32);
  const auto& s16 = get("disk2d_smooth", PressureSpaceKind::Standard, 16, 32);
  const double ratio = s32.errors.pressure_l2l2 / x.errors.pressure_l2l2;
  const double es = eoc(s16.errors.pressure_l2l2, s32.errors.pressure_l2l2);
  record(3, ratio >= 3.0 && in(es, 0.3, 0.7),
         "pressure at (32,32): standard " + format_value(s32.errors.pressure_l2l2) + " vs XFEM " +
             format_value(x.errors.pressure_l2l2) + " (ratio " + f("%.2f", ratio) +
             "); standard spatial EOC at N=32 " + f("%.3f", es));
}

void criterion4() {
  const auto& a = get("disk2d_smooth", PressureSpaceKind::Xfem, 16, 32);
  const auto& b = get("disk2d_smooth", PressureSpaceKind::Xfem, 32, 32);
  const double es = eoc(a.errors.pressure_l2l2, b.errors.pressure_l2l2);
  record(4, in(es, 1.2, 2.2),
         "XFEM pressure at N=32: N_S=16 " + format_value(a.errors.pressure_l2l2) + ", N_S=32 " +
             format_value(b.errors.pressure_l2l2) + "; spatial EOC " + f("%.3f", es));
}

void criterion10() {
  const auto& a = get("disk2d_kink", PressureSpaceKind::Xfem, 16, 16);
  const auto& b = get("disk2d_kink", PressureSpaceKind::Xfem, 32, 32);
  const double e = eoc(a.errors.velocity_l2h1, b.errors.velocity_l2h1);
  record(10, in(e, 0.3, 1.2) && e < smooth_eoc,
         "disk2d_kink velocity L2(H1) (16,16) " + format_value(a.errors.velocity_l2h1) + ", (32,32) " +
             format_value(b.errors.velocity_l2h1) + "; EOC " + f("%.3f", e) + " vs smooth " + f("%.3f", smooth_eoc));
}

// -- 9 ------------------------------------------------------------------------
void criterion9() {
  const auto& r = get("paper3d_case1", PressureSpaceKind::Xfem, 4, 4, 3);
  const double ref = 0.29649, dev = std::abs(r.errors.velocity_l2h1 - ref) / ref;
  record(9, dev <= 0.25,
         "paper3d_case1 XFEM (4,4): velocity L2(H1) " + format_value(r.errors.velocity_l2h1) + " vs 0.29649 (" +
             f("%.1f", 100.0 * dev) + "% off)");
}

// -- 6 ------------------------------------------------------------------------
void criterion6() {
  record(6, max_div_ratio <= 1e-9 && max_residual <= 1e-9 && run_count > 0,
         "max ||B u_h||_inf / ||u_h||_inf over " + std::to_string(run_count) + " runs " + f("%.2e", max_div_ratio) +
             ", max solver residual " + f("%.2e", max_residual));
}

}  // namespace

int main(int argc, char** argv) {
  bool with_3d = true;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--skip-3d") with_3d = false;

  report << "| case | pressure | N_S | N | velocity L2(H1) | velocity L2(L2) | pressure L2(L2) | residual | div ratio | s |\n"
         << "|---|---|---|---|---|---|---|---|---|---|\n";
  const auto t0 = std::chrono::steady_clock::now();
  auto guarded = [](int id, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      record(id, false, std::string("exception: ") + e.what());
    }
  };
  guarded(1, criterion1);
  guarded(5, criterion5);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(10, criterion10);
  if (with_3d) {
    guarded(9, criterion9);
  } else {
    lines.push_back({9, "WAIVED", "3D run skipped (--skip-3d)"});
    std::printf("[WAIVED] criterion 9: 3D run skipped (--skip-3d)\n");
  }
  guarded(6, criterion6);

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  std::printf("\nsummary (%.0f s):\n", seconds_since(t0));
  bool ok = true;
  std::ofstream md("acceptance_results.md");
  md << "# Acceptance results\n\n| criterion | status | detail |\n|---|---|---|\n";
  for (const auto& l : lines) {
    std::printf("  %-6s %2d  %s\n", l.status.c_str(), l.id, l.detail.c_str());
    md << "| " << l.id << " | " << l.status << " | " << l.detail << " |\n";
    ok = ok && l.status != "FAIL";
  }
  md << "\n## Runs\n\n" << report.str();
  return ok ? 0 : 1;
}
