/// \file stis_main.cpp
/// \brief Command-line experiment runner: convergence studies, the analysis
///        suite, matrix export and decomposition dumps.

#include "stis/analysis_lab.hpp"
#include "stis/experiment.hpp"

#include <CLI11.hpp>

#ifdef STIS_HAVE_OPENMP
#include <omp.h>
#endif

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace stis;

int main(int argc, char** argv) {
  CLI::App app{"Space-time unfitted FEM for two-phase Stokes: convergence studies and analysis checks"};
  app.set_version_flag("--version", "stis 0.1");

  std::string config_path, emit_path, case_id, grid, pressure, out_dir;
  double theta = -1.0;
  long max_dofs = -1;
  int threads = -1, export_slab = 0, dump_slab = 0;
  bool analysis = false, diagonal = false, enable_3d = false, dry_run = false;

  app.add_option("--config", config_path, "JSON experiment config (flags override its values)")
      ->check(CLI::ExistingFile);
  app.add_option("--emit-config", emit_path, "Write the effective config to this file and exit");
  app.add_option("--case", case_id, "disk2d_smooth | disk2d_kink | poly2d | paper3d_case1 | paper3d_case2 | custom");
  app.add_option("--grid", grid, "N_S list x N list, e.g. 8,16,32x8,16,32 (a single list sets N = N_S)");
  app.add_flag("--diagonal", diagonal, "Run the pairs (N_S[i], N[i]) instead of the full grid");
  app.add_option("--pressure-space", pressure, "standard | xfem")->check(CLI::IsMember({"standard", "xfem"}));
  app.add_option("--theta", theta, "Small-cut threshold in [0,1); 0 disables filtering");
  app.add_option("--out-dir", out_dir, "Output directory for CSV, Markdown and JSON");
  app.add_option("--max-dofs", max_dofs, "Per-slab unknown budget; larger grid points are refused");
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
  app.add_flag("--analysis", analysis, "Run the analysis-lab suite instead of a convergence study");
  app.add_flag("--enable-3d", enable_3d, "Allow the 3D (pentatope) cases");
  app.add_option("--export-matrix", export_slab, "Write the matrix of this slab (first grid point) in COO form");
  app.add_option("--dump-decomposition", dump_slab, "Write the cut decompositions of this slab as JSON");
  app.add_flag("--dry-run", dry_run, "Validate the config and print the run list");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
    if (!case_id.empty()) cfg.case_id = case_id;
    if (!grid.empty()) parse_grid(grid, cfg.ns, cfg.nt);
    if (diagonal) cfg.diagonal = true;
    if (!pressure.empty()) cfg.pressure = pressure_space_from_string(pressure);
    if (app.count("--theta")) cfg.theta = theta;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (app.count("--max-dofs")) cfg.max_dofs = max_dofs;
    if (app.count("--threads")) cfg.threads = threads;
    if (enable_3d) cfg.enable_3d = true;
    cfg.validate();

    if (!emit_path.empty()) {
      cfg.save(emit_path);
      std::cout << "wrote " << emit_path << "\n";
      return 0;
    }
#ifdef STIS_HAVE_OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    if (analysis) {
      AnalysisSuiteConfig acfg;
      acfg.seed = cfg.seed;
      const AnalysisReport rep = run_analysis_suite(acfg);
      std::cout << rep.to_text();
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream(cfg.out_dir + "/analysis.txt") << rep.to_text();
      std::cout << (rep.passed() ? "analysis suite passed" : "analysis suite FAILED") << "\n";
      return rep.passed() ? 0 : 1;
    }
    if (export_slab > 0) {
      std::cout << "wrote " << export_slab_matrix(cfg, export_slab) << "\n";
      return 0;
    }
    if (dump_slab > 0) {
      std::cout << "wrote " << dump_decompositions(cfg, dump_slab) << "\n";
      return 0;
    }
    if (dry_run) {
      std::cout << cfg.to_json().dump(2) << "\n";
      for (const auto& [a, b] : cfg.runs()) std::cout << "run N_S=" << a << " N=" << b << "\n";
      return 0;
    }

    const ConvergenceResult res = run_convergence(cfg, [](const std::string& s) { std::cout << s << std::endl; });
    write_outputs(cfg, res);
    std::cout << "\n" << res.velocity_l2h1.to_text() << "\n" << res.pressure_l2l2.to_text() << "\n";
    std::cout << "outputs in " << cfg.out_dir << "\n";
    for (const auto& r : res.runs) {
      if (r.max_residual > cfg.solver_tolerance) {
        std::cerr << "residual above tolerance on N_S=" << r.ns << " N=" << r.nt << "\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
