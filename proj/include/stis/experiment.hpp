/// \file experiment.hpp
/// \brief Experiment configuration, convergence runs over (N_S, N) grids and
///        their CSV / Markdown / JSON outputs.

#pragma once

#include "stis/error_analysis.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stis {

/// Coefficient changes; only accepted for the "custom" case, whose data are
/// regenerated from the base case's exact solution.
struct CoefficientOverrides {
  std::optional<double> rho_neg, rho_pos, mu_neg, mu_pos, tau;

  bool empty() const { return !rho_neg && !rho_pos && !mu_neg && !mu_pos && !tau; }
  bool operator==(const CoefficientOverrides&) const = default;
};

struct ExperimentConfig {
  std::string case_id = "disk2d_smooth";
  std::string custom_base = "disk2d_smooth";  // used when case_id == "custom"
  std::vector<int> ns{8};
  std::vector<int> nt{8};
  bool diagonal = false;  // run the pairs (ns[i], nt[i]) instead of the full grid
  int r = 2;
  int q = 1;
  PressureSpaceKind pressure = PressureSpaceKind::Xfem;
  CoefficientOverrides overrides;
  double theta = 0.0;
  double solver_tolerance = 1e-9;
  std::string out_dir = "stis_out";
  long max_dofs = 2000000;  // per-slab unknown budget
  int threads = 0;          // 0: OpenMP default
  unsigned seed = 1234;
  bool enable_3d = false;

  bool operator==(const ExperimentConfig&) const = default;

  /// Spatial dimension of the (base) case.
  int dimension() const;
  /// Grid points in run order.
  std::vector<std::pair<int, int>> runs() const;

  /// Throws stis::Error on unknown cases, inconsistent grids, overrides on a
  /// built-in case or a 3D case without enable_3d.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;
};

/// "8,16,32x8,16" -> ({8,16,32}, {8,16}). A single list "8,16" gives N = N_S.
void parse_grid(const std::string& spec, std::vector<int>& ns, std::vector<int>& nt);

/// Built-in case with overrides applied (custom: base case with regenerated data).
template <int d>
ProblemCase<d> make_experiment_case(const ExperimentConfig& cfg);

DiscretizationParams discretization(const ExperimentConfig& cfg, int ns, int nt);

struct RunRecord {
  int ns = 0, nt = 0;
  ErrorNorms errors;
  double march_seconds = 0.0;
  double error_seconds = 0.0;
  double max_residual = 0.0;
  double max_divergence_ratio = 0.0;
  nlohmann::json dofs;   // velocity and pressure (base/enriched/filtered) totals
  nlohmann::json slabs;  // per-slab statistics
  nlohmann::json mesh;
};

struct ConvergenceResult {
  ErrorTable velocity_l2h1;
  ErrorTable velocity_l2l2;
  ErrorTable pressure_l2l2;
  std::vector<RunRecord> runs;
};

using ProgressCallback = std::function<void(const std::string&)>;

/// March and measure every grid point. Refuses (stis::Error with the estimate)
/// before running anything when a grid point exceeds max_dofs.
ConvergenceResult run_convergence(const ExperimentConfig& cfg, const ProgressCallback& log = {});

/// velocity_l2h1.csv, velocity_l2l2.csv, pressure_l2l2.csv, summary.md and
/// provenance.json under cfg.out_dir.
void write_outputs(const ExperimentConfig& cfg, const ConvergenceResult& res,
                   const nlohmann::json& extra = {});

nlohmann::json provenance(const ExperimentConfig& cfg, const ConvergenceResult& res);
std::string markdown_summary(const ExperimentConfig& cfg, const ConvergenceResult& res);

/// Coordinate export of the slab-`n` matrix on the first grid point (previous
/// trace taken as zero); returns the path written.
std::string export_slab_matrix(const ExperimentConfig& cfg, int n);

/// Cut decompositions of slab `n` on the first grid point as JSON; returns the path.
std::string dump_decompositions(const ExperimentConfig& cfg, int n);

}  // namespace stis
